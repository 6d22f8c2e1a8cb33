#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "cellsync/network.hpp"
#include "cellsync/partition.hpp"

namespace cellsync {

/// What a cell sees in one refinement round: its current color and a sparse
/// tally of its inputs keyed by (arrow type, color of the tail cell). Zero
/// tallies are never stored.
struct RefinementSignature {
  ClassId old_color = 0;
  std::vector<std::pair<std::pair<std::size_t, ClassId>, Count>> tallies;  // sorted by key

  friend auto operator<=>(const RefinementSignature&, const RefinementSignature&) = default;
};

inline RefinementSignature refinement_signature(const Network& net, const Partition& p, std::size_t cell) {
  std::map<std::pair<std::size_t, ClassId>, Count> tally;
  for (std::size_t k = 0; k < net.matrices.size(); ++k) {
    const auto row = net.matrices[k].row(cell);
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) tally[{k, p.class_of(j)}] += row[j];
  }
  return {p.class_of(cell), {tally.begin(), tally.end()}};
}

/// One round of input-driven refinement: cells are regrouped by their
/// RefinementSignature. The result always refines p.
inline Partition refine_once(const Network& net, const Partition& p) {
  if (p.size() != net.cells) throw std::invalid_argument("refine_once: partition/network size mismatch");
  std::map<RefinementSignature, std::size_t> colors;
  std::vector<std::size_t> labels(net.cells);
  for (std::size_t i = 0; i < net.cells; ++i)
    labels[i] = colors.try_emplace(refinement_signature(net, p, i), colors.size()).first->second;
  return Partition::from_labels(labels);
}

/// The coarsest balanced partition (top lattice node), found by refining
/// the cell-type partition until it stops changing. Every balanced
/// partition of the network refines the result.
inline Partition minimal_balanced_coloring(const Network& net) {
  Partition current = net.cell_type_partition();
  for (std::size_t round = 0; round <= net.cells; ++round) {
    Partition next = refine_once(net, current);
    if (next.rank() == current.rank()) return current;
    current = std::move(next);
  }
  return current;
}

/// Like minimal_balanced_coloring() but also returns every intermediate
/// partition, starting from the cell-type partition and ending at the fixpoint.
inline std::vector<Partition> refinement_trace(const Network& net) {
  std::vector<Partition> trace{net.cell_type_partition()};
  while (true) {
    Partition next = refine_once(net, trace.back());
    if (next.rank() == trace.back().rank()) break;
    trace.push_back(std::move(next));
  }
  return trace;
}

}  // namespace cellsync
