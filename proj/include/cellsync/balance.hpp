#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "cellsync/matrix.hpp"
#include "cellsync/network.hpp"
#include "cellsync/partition.hpp"

namespace cellsync {

class NotBalancedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
inline void require_same_size(const Network& net, const Partition& p, const char* who) {
  if (p.size() != net.cells)
    throw std::invalid_argument(std::string(who) + ": partition has " + std::to_string(p.size()) +
                                " cells, network has " + std::to_string(net.cells));
}
}  // namespace detail

/// Column-summed matrix for one arrow type: entry (i, q) is the number of
/// arrows of that type into cell i from cells of class q.
inline IntMatrix class_column_sum(const IntMatrix& adjacency, const Partition& p) {
  IntMatrix out(adjacency.rows(), p.rank());
  for (std::size_t i = 0; i < adjacency.rows(); ++i)
    for (std::size_t j = 0; j < adjacency.cols(); ++j) out(i, p.class_of(j)) += adjacency(i, j);
  return out;
}

/// One class-column-sum matrix per arrow type.
inline std::vector<IntMatrix> class_column_sums(const Network& net, const Partition& p) {
  detail::require_same_size(net, p, "class_column_sums");
  std::vector<IntMatrix> out;
  out.reserve(net.matrices.size());
  for (const auto& m : net.matrices) out.push_back(class_column_sum(m, p));
  return out;
}

/// Reusable balanced-relation tester. Holds scratch buffers so repeated
/// calls during enumeration do not allocate; one instance per thread.
class BalanceTester {
 public:
  explicit BalanceTester(const Network& net) : net_(&net), cell_types_(net.cell_type_partition()) {}

  /// True iff p refines the cell-type partition and, for every arrow type,
  /// all cells of a class receive the same number of arrows from each class.
  bool operator()(const Partition& p) {
    detail::require_same_size(*net_, p, "is_balanced");
    if (!refines(p, cell_types_)) return false;
    const std::size_t n = net_->cells;
    const std::size_t k = p.rank();
    if (k == n) return true;

    reps_.assign(k, n);
    for (std::size_t i = 0; i < n; ++i)
      if (reps_[p.class_of(i)] == n) reps_[p.class_of(i)] = i;

    rep_rows_.resize(k * k);
    row_.resize(k);
    for (const auto& m : net_->matrices) {
      for (std::size_t c = 0; c < k; ++c) sum_row(m, p, reps_[c], &rep_rows_[c * k]);
      for (std::size_t i = 0; i < n; ++i) {
        const ClassId c = p.class_of(i);
        if (reps_[c] == i) continue;
        sum_row(m, p, i, row_.data());
        const Count* expected = &rep_rows_[c * k];
        for (std::size_t q = 0; q < k; ++q)
          if (row_[q] != expected[q]) return false;
      }
    }
    return true;
  }

 private:
  static void sum_row(const IntMatrix& m, const Partition& p, std::size_t i, Count* out) {
    std::fill(out, out + p.rank(), Count{0});
    const auto row = m.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out[p.class_of(j)] += row[j];
  }

  const Network* net_;
  Partition cell_types_;
  std::vector<std::size_t> reps_;
  std::vector<Count> rep_rows_;
  std::vector<Count> row_;
};

/// Row-sum test: p is balanced iff within every class all rows of every
/// class-column-sum matrix coincide (and p respects cell types).
inline bool is_balanced(const Network& net, const Partition& p) { return BalanceTester(net)(p); }

/// The 0/1 projection onto the polydiagonal of p: entry (i, rep(i)) = 1,
/// where rep(i) is the minimal cell of i's class.
inline IntMatrix projection_matrix(const Partition& p) {
  const auto reps = p.representatives();
  IntMatrix proj(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) proj(i, reps[p.class_of(i)]) = 1;
  return proj;
}

/// Independent check of balance through the projection identity
/// P M P = M P for every arrow-type matrix M. Only used as an oracle.
inline bool is_balanced_projection_oracle(const Network& net, const Partition& p) {
  detail::require_same_size(net, p, "is_balanced_projection_oracle");
  if (!refines(p, net.cell_type_partition())) return false;
  const IntMatrix proj = projection_matrix(p);
  for (const auto& m : net.matrices) {
    const IntMatrix mp = m * proj;
    if (proj * mp != mp) return false;
  }
  return true;
}

struct QuotientNetwork {
  Network quotient;
  Partition source_partition;
  std::vector<std::size_t> representatives;  // minimal cell of each class, 0-indexed
};

/// Quotient network of a balanced partition: entry (s, t) of each arrow
/// type is the number of arrows into the representative of class s from
/// cells of class t. Throws NotBalancedError otherwise.
inline QuotientNetwork quotient(const Network& net, const Partition& p) {
  detail::require_same_size(net, p, "quotient");
  if (!is_balanced(net, p)) throw NotBalancedError("quotient: partition " + to_normal_form(p) + " is not balanced");
  QuotientNetwork out{Network{}, p, p.representatives()};
  const std::size_t k = p.rank();
  out.quotient.cells = k;
  out.quotient.arrow_type_names = net.arrow_type_names;
  out.quotient.cell_types.reserve(k);
  for (std::size_t rep : out.representatives) out.quotient.cell_types.push_back(net.cell_types[rep]);
  for (const auto& m : net.matrices) {
    IntMatrix q(k, k);
    for (std::size_t s = 0; s < k; ++s) {
      const auto row = m.row(out.representatives[s]);
      for (std::size_t j = 0; j < row.size(); ++j) q(s, p.class_of(j)) += row[j];
    }
    out.quotient.matrices.push_back(std::move(q));
  }
  return out;
}

}  // namespace cellsync
