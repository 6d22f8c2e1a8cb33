#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cellsync/balance.hpp"
#include "cellsync/enumerate.hpp"
#include "cellsync/matrix.hpp"
#include "cellsync/network.hpp"
#include "cellsync/partition.hpp"
#include "cellsync/topnode.hpp"

namespace cellsync {

enum class SearchMode {
  TopRestricted,  // only refinements of the minimal balanced coloring
  BruteForce,     // every set partition of the cells
};

inline constexpr EnumIndex kDefaultCandidateBudget = 100'000'000;

struct EnumerationOptions {
  SearchMode mode = SearchMode::TopRestricted;
  EnumIndex budget = kDefaultCandidateBudget;
  unsigned jobs = 1;
};

class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(EnumIndex candidates, EnumIndex budget)
      : std::runtime_error("search space of " + describe(candidates) + " candidate partitions exceeds the budget of " +
                           std::to_string(budget)),
        candidates_(candidates),
        budget_(budget) {}

  EnumIndex candidates() const noexcept { return candidates_; }
  EnumIndex budget() const noexcept { return budget_; }

 private:
  static std::string describe(EnumIndex c) { return c == kSaturated ? "more than 2^64" : std::to_string(c); }
  EnumIndex candidates_;
  EnumIndex budget_;
};

/// Candidate space searched for the given mode.
inline RefinementSpace candidate_space(const Network& net, SearchMode mode) {
  return mode == SearchMode::BruteForce ? RefinementSpace(Partition::single_class(net.cells))
                                        : RefinementSpace(minimal_balanced_coloring(net));
}

/// All balanced partitions of the network, sorted by RankOrder. The
/// candidate index space is cut into contiguous chunks that workers filter
/// independently; the merged result is sorted, so output does not depend on
/// the number of jobs.
inline std::vector<Partition> enumerate_balanced(const Network& net, const EnumerationOptions& options = {}) {
  const RefinementSpace space = candidate_space(net, options.mode);
  const EnumIndex total = space.size();
  if (total > options.budget) throw BudgetExceededError(total, options.budget);

  const unsigned jobs = std::max(1U, options.jobs);
  const EnumIndex chunk_count = jobs == 1 ? 1 : std::min<EnumIndex>(total, EnumIndex{jobs} * 8);
  std::vector<std::vector<Partition>> found(chunk_count);

  auto run_chunk = [&](EnumIndex chunk, BalanceTester& tester) {
    const EnumIndex first = total * chunk / chunk_count;
    const EnumIndex last = total * (chunk + 1) / chunk_count;
    if (first == last) return;
    auto cursor = space.at(first);
    for (EnumIndex i = first; i < last; ++i) {
      if (tester(*cursor)) found[chunk].push_back(*cursor);
      cursor.advance();
    }
  };

  if (jobs == 1) {
    BalanceTester tester(net);
    for (EnumIndex c = 0; c < chunk_count; ++c) run_chunk(c, tester);
  } else {
    std::atomic<EnumIndex> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w)
      workers.emplace_back([&] {
        try {
          BalanceTester tester(net);
          for (EnumIndex c = next++; c < chunk_count; c = next++) run_chunk(c, tester);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    workers.clear();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<Partition> balanced;
  for (auto& chunk : found)
    for (auto& p : chunk) balanced.push_back(std::move(p));
  std::sort(balanced.begin(), balanced.end(), RankOrder{});
  return balanced;
}

enum class CoveringMethod {
  WitnessWindow,  // per refinement pair, look for an intermediate node of in-between rank
  FullSquare,     // materialize T = B*B and keep pairs with t_ij == 0
};

/// Partial order of balanced partitions. Node i strictly refines node j iff
/// refinement.test(i, j); node i is covered by node j iff covering.test(i, j).
/// Nodes are sorted by RankOrder, so both matrices are lower triangular, the
/// top node is first and the bottom node last.
struct Lattice {
  std::vector<Partition> nodes;
  std::vector<std::size_t> ranks;
  BitMatrix refinement;  // B
  BitMatrix covering;    // L

  std::size_t size() const noexcept { return nodes.size(); }

  /// (finer, coarser) index pairs of the covering relation, row-major.
  std::vector<std::pair<std::size_t, std::size_t>> covering_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (covering.test(i, j)) out.emplace_back(i, j);
    return out;
  }

  /// Index of a node, or size() if absent.
  std::size_t find(const Partition& p) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), p, RankOrder{});
    return it != nodes.end() && *it == p ? static_cast<std::size_t>(it - nodes.begin()) : size();
  }
};

/// T = B*B as a dense row-major p x p count matrix: t_ij counts the nodes k
/// with b_ik = b_kj = 1.
inline std::vector<std::uint32_t> refinement_square(const BitMatrix& refinement) {
  const std::size_t p = refinement.size();
  const BitMatrix columns = refinement.transposed();
  std::vector<std::uint32_t> t(p * p, 0);
  for (std::size_t i = 0; i < p; ++i) {
    const auto row = refinement.row_words(i);
    for (std::size_t j = 0; j < p; ++j) {
      const auto col = columns.row_words(j);
      std::uint32_t c = 0;
      for (std::size_t w = 0; w < row.size(); ++w) c += static_cast<std::uint32_t>(std::popcount(row[w] & col[w]));
      t[i * p + j] = c;
    }
  }
  return t;
}

/// Builds the lattice from the complete balanced set of one network.
inline Lattice build_lattice(std::vector<Partition> balanced, CoveringMethod method = CoveringMethod::WitnessWindow) {
  std::sort(balanced.begin(), balanced.end(), RankOrder{});
  balanced.erase(std::unique(balanced.begin(), balanced.end()), balanced.end());
  for (const auto& p : balanced)
    if (p.size() != balanced.front().size()) throw std::invalid_argument("build_lattice: mixed cell counts");

  Lattice lat;
  const std::size_t p = balanced.size();
  lat.nodes = std::move(balanced);
  lat.ranks.reserve(p);
  for (const auto& node : lat.nodes) lat.ranks.push_back(node.rank());
  lat.refinement = BitMatrix(p);
  lat.covering = BitMatrix(p);

  // rank_begin[r]: first node index whose rank is >= r
  const std::size_t max_rank = p == 0 ? 0 : lat.ranks.back();
  std::vector<std::size_t> rank_begin(max_rank + 2, p);
  for (std::size_t i = p; i-- > 0;)
    for (std::size_t r = 0; r <= lat.ranks[i]; ++r) rank_begin[r] = std::min(rank_begin[r], i);

  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < rank_begin[lat.ranks[i]]; ++j)
      if (refines(lat.nodes[i], lat.nodes[j])) lat.refinement.set(i, j);

  if (method == CoveringMethod::FullSquare) {
    const auto t = refinement_square(lat.refinement);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (lat.refinement.test(i, j) && t[i * p + j] == 0) lat.covering.set(i, j);
    return lat;
  }

  const BitMatrix columns = lat.refinement.transposed();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (!lat.refinement.test(i, j)) continue;
      // witnesses k satisfy rank(j) < rank(k) < rank(i)
      const std::size_t first = rank_begin[lat.ranks[j] + 1];
      const std::size_t last = rank_begin[lat.ranks[i]];
      if (!lat.refinement.rows_intersect(i, columns, j, first, last)) lat.covering.set(i, j);
    }
  return lat;
}

/// True iff every pair of nodes has a least upper bound and a greatest lower
/// bound inside the node set under refinement.
inline bool is_complete_lattice(const Lattice& lat) {
  const std::size_t p = lat.size();
  if (p == 0) return false;
  // up[i]: nodes that i refines (reflexive); down[i]: nodes refining i (reflexive)
  BitMatrix up = lat.refinement;
  BitMatrix down = lat.refinement.transposed();
  for (std::size_t i = 0; i < p; ++i) {
    up.set(i, i);
    down.set(i, i);
  }
  const std::size_t words = up.words_per_row();
  std::vector<BitMatrix::Word> common(words);

  // Sorted by rank, the least element of a bound set (if any) is its last
  // member and the greatest element its first member.
  auto has_extreme = [&](const BitMatrix& rel, std::size_t a, std::size_t b, bool least) {
    const auto ra = rel.row_words(a);
    const auto rb = rel.row_words(b);
    std::size_t pick = p;
    for (std::size_t w = 0; w < words; ++w) common[w] = ra[w] & rb[w];
    if (least) {
      for (std::size_t w = words; w-- > 0 && pick == p;)
        if (common[w] != 0) pick = w * BitMatrix::kWordBits + (BitMatrix::kWordBits - 1 - std::countl_zero(common[w]));
    } else {
      for (std::size_t w = 0; w < words && pick == p; ++w)
        if (common[w] != 0) pick = w * BitMatrix::kWordBits + std::countr_zero(common[w]);
    }
    if (pick == p) return false;
    const auto rp = rel.row_words(pick);
    for (std::size_t w = 0; w < words; ++w)
      if ((common[w] & ~rp[w]) != 0) return false;
    return true;
  };

  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = a + 1; b < p; ++b) {
      // least upper bound: the coarser nodes common to a and b must all be
      // coarsenings of one of them
      if (!has_extreme(up, a, b, true)) return false;
      if (!has_extreme(down, a, b, false)) return false;
    }
  return true;
}

}  // namespace cellsync
