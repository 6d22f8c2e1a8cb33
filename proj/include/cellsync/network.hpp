#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cellsync/matrix.hpp"
#include "cellsync/partition.hpp"

namespace cellsync {

using CellType = int;

/// A coupled cell network: n cells with type labels and one n x n
/// nonnegative integer matrix per arrow type. Entry (i, j) of a matrix is
/// the number of arrows of that type FROM cell j TO cell i.
///
/// The struct is a plain aggregate so that raw parsed data can be held
/// before validation; see validate().
struct Network {
  std::size_t cells = 0;
  std::vector<CellType> cell_types;
  std::vector<std::string> arrow_type_names;
  std::vector<IntMatrix> matrices;

  std::size_t arrow_types() const noexcept { return matrices.size(); }

  /// Partition induced by the cell-type labels.
  Partition cell_type_partition() const { return Partition::from_labels(cell_types); }

  /// Symbolic matrix entry (i, j) as per-type arrow counts.
  std::vector<Count> entry(std::size_t i, std::size_t j) const {
    std::vector<Count> out;
    out.reserve(matrices.size());
    for (const auto& m : matrices) out.push_back(m(i, j));
    return out;
  }

  friend bool operator==(const Network&, const Network&) = default;
};

/// Convenience constructor for the common single-cell-type case.
inline Network make_network(std::vector<IntMatrix> matrices, std::vector<std::string> names = {},
                            std::vector<CellType> cell_types = {}) {
  Network net;
  net.cells = matrices.empty() ? 0 : matrices.front().rows();
  if (names.empty())
    for (std::size_t k = 0; k < matrices.size(); ++k) names.push_back("e" + std::to_string(k + 1));
  if (cell_types.empty()) cell_types.assign(net.cells, 0);
  net.cell_types = std::move(cell_types);
  net.arrow_type_names = std::move(names);
  net.matrices = std::move(matrices);
  return net;
}

enum class ViolationKind {
  EmptyNetwork,
  CellTypeCount,
  NoArrowTypes,
  ArrowTypeNameCount,
  DuplicateArrowTypeName,
  DimensionMismatch,
  NegativeEntry,
  ArrowTypeInconsistency,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(ViolationKind kind) const {
    for (const auto& v : violations)
      if (v.kind == kind) return true;
    return false;
  }
};

enum class Strictness {
  Strict,      // also enforce arrow-type head/tail cell-type consistency
  Permissive,  // skip the head/tail check
};

/// Collects every violated structural invariant. Never throws.
inline ValidationReport validate(const Network& net, Strictness strictness = Strictness::Strict) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string msg) { report.violations.push_back({kind, std::move(msg)}); };

  if (net.cells == 0) add(ViolationKind::EmptyNetwork, "network has no cells");
  if (net.cell_types.size() != net.cells)
    add(ViolationKind::CellTypeCount, "expected " + std::to_string(net.cells) + " cell types, got " +
                                          std::to_string(net.cell_types.size()));
  if (net.matrices.empty()) add(ViolationKind::NoArrowTypes, "network has no arrow types");
  if (net.arrow_type_names.size() != net.matrices.size())
    add(ViolationKind::ArrowTypeNameCount, std::to_string(net.matrices.size()) + " matrices but " +
                                               std::to_string(net.arrow_type_names.size()) + " arrow type names");
  std::set<std::string> seen;
  for (const auto& name : net.arrow_type_names)
    if (!seen.insert(name).second) add(ViolationKind::DuplicateArrowTypeName, "duplicate arrow type '" + name + "'");

  for (std::size_t k = 0; k < net.matrices.size(); ++k) {
    const IntMatrix& m = net.matrices[k];
    const std::string label =
        k < net.arrow_type_names.size() ? "'" + net.arrow_type_names[k] + "'" : "#" + std::to_string(k + 1);
    if (m.rows() != net.cells || m.cols() != net.cells) {
      add(ViolationKind::DimensionMismatch, "matrix " + label + " is " + std::to_string(m.rows()) + "x" +
                                                std::to_string(m.cols()) + ", expected " +
                                                std::to_string(net.cells) + "x" + std::to_string(net.cells));
      continue;
    }
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) < 0)
          add(ViolationKind::NegativeEntry, "matrix " + label + " entry (" + std::to_string(i + 1) + "," +
                                                std::to_string(j + 1) + ") is negative");

    if (strictness == Strictness::Permissive || net.cell_types.size() != net.cells) continue;
    bool have_pair = false;
    std::pair<CellType, CellType> pair{};  // (head type, tail type)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m(i, j) <= 0) continue;
        const std::pair<CellType, CellType> here{net.cell_types[i], net.cell_types[j]};
        if (!have_pair) {
          pair = here;
          have_pair = true;
        } else if (here != pair) {
          add(ViolationKind::ArrowTypeInconsistency,
              "arrow type " + label + " connects cell types " + std::to_string(pair.second) + "->" +
                  std::to_string(pair.first) + " and " + std::to_string(here.second) + "->" +
                  std::to_string(here.first) + " (arrow " + std::to_string(j + 1) + "->" + std::to_string(i + 1) +
                  ")");
          i = m.rows() - 1;
          break;
        }
      }
  }
  return report;
}

/// Cell type plus per-arrow-type in-degrees (row sums). Two cells are input
/// isomorphic exactly when their signatures are equal.
struct InDegreeSignature {
  CellType cell_type = 0;
  std::vector<Count> per_type_in_degree;

  friend auto operator<=>(const InDegreeSignature&, const InDegreeSignature&) = default;
};

inline InDegreeSignature in_degree_signature(const Network& net, std::size_t cell) {
  InDegreeSignature sig{net.cell_types[cell], {}};
  sig.per_type_in_degree.reserve(net.matrices.size());
  for (const auto& m : net.matrices) sig.per_type_in_degree.push_back(m.row_sum(cell));
  return sig;
}

/// The input-equivalence partition ~I.
inline Partition input_equivalence(const Network& net) {
  std::map<InDegreeSignature, std::size_t> ids;
  std::vector<std::size_t> labels(net.cells);
  for (std::size_t i = 0; i < net.cells; ++i)
    labels[i] = ids.try_emplace(in_degree_signature(net, i), ids.size()).first->second;
  return Partition::from_labels(labels);
}

}  // namespace cellsync
