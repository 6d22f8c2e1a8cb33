#pragma once

// Shared helpers for the test suites: fixture loading, random networks,
// relabeling, and a definition-level balance oracle.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cellsync/cellsync.hpp"

namespace cellsync::testing {

inline std::string fixture_path(const std::string& name) { return std::string(CELLSYNC_DATA_DIR) + "/" + name; }

inline Network load_fixture(const std::string& name) { return load_network(fixture_path(name)); }

inline Partition P(std::string_view text, std::size_t n) { return parse_partition(text, n); }

inline std::vector<std::string> normal_forms(const std::vector<Partition>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(to_normal_form(p));
  return out;
}

/// Random network with 1..max_types arrow types over n cells. Arrow types
/// respect cell types (each arrow type gets one head/tail cell-type pair).
/// `structured` networks give every cell the same in-degree per arrow type,
/// which yields many more balanced partitions than sparse random ones.
inline Network random_network(std::mt19937& rng, std::size_t n, std::size_t max_types = 3, bool structured = false) {
  std::uniform_int_distribution<std::size_t> type_count(1, max_types);
  const std::size_t m = type_count(rng);
  const std::size_t cell_kinds = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
  std::vector<CellType> types(n, 0);
  if (cell_kinds > 1)
    for (auto& t : types) t = static_cast<CellType>(std::uniform_int_distribution<int>(0, 1)(rng));

  std::vector<IntMatrix> mats;
  for (std::size_t k = 0; k < m; ++k) {
    IntMatrix mat(n, n);
    const CellType head = types[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
    const CellType tail = types[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)];
    std::vector<std::size_t> tails;
    for (std::size_t j = 0; j < n; ++j)
      if (types[j] == tail) tails.push_back(j);
    if (structured) {
      const std::size_t degree = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
      for (std::size_t i = 0; i < n; ++i) {
        if (types[i] != head) continue;
        for (std::size_t d = 0; d < degree; ++d)
          mat(i, tails[std::uniform_int_distribution<std::size_t>(0, tails.size() - 1)(rng)]) += 1;
      }
    } else {
      std::bernoulli_distribution edge(std::uniform_real_distribution<double>(0.15, 0.6)(rng));
      std::uniform_int_distribution<int> weight(1, 2);
      for (std::size_t i = 0; i < n; ++i) {
        if (types[i] != head) continue;
        for (std::size_t j : tails)
          if (edge(rng)) mat(i, j) = weight(rng) == 2 && edge(rng) ? 2 : 1;
      }
    }
    mats.push_back(std::move(mat));
  }
  return make_network(std::move(mats), {}, types);
}

inline Partition random_partition(std::mt19937& rng, std::size_t n) {
  const std::size_t blocks = std::uniform_int_distribution<std::size_t>(1, n)(rng);
  std::vector<std::size_t> labels(n);
  for (auto& l : labels) l = std::uniform_int_distribution<std::size_t>(0, blocks - 1)(rng);
  return Partition::from_labels(labels);
}

inline std::vector<std::size_t> random_permutation(std::mt19937& rng, std::size_t n) {
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::shuffle(sigma.begin(), sigma.end(), rng);
  return sigma;
}

/// Cell i of the input becomes cell sigma[i].
inline Network relabel(const Network& net, const std::vector<std::size_t>& sigma) {
  Network out = net;
  for (std::size_t i = 0; i < net.cells; ++i) out.cell_types[sigma[i]] = net.cell_types[i];
  for (std::size_t k = 0; k < net.matrices.size(); ++k)
    for (std::size_t i = 0; i < net.cells; ++i)
      for (std::size_t j = 0; j < net.cells; ++j) out.matrices[k](sigma[i], sigma[j]) = net.matrices[k](i, j);
  return out;
}

inline Partition relabel(const Partition& p, const std::vector<std::size_t>& sigma) {
  std::vector<ClassId> labels(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) labels[sigma[i]] = p.class_of(i);
  return Partition::from_labels(labels);
}

/// Balance straight from the definition: related cells have the same type
/// and, arrow type by arrow type, the same multiset of tail classes.
inline bool balanced_by_definition(const Network& net, const Partition& p) {
  auto inputs = [&](std::size_t cell) {
    std::vector<std::pair<std::size_t, ClassId>> arrows;
    for (std::size_t k = 0; k < net.matrices.size(); ++k)
      for (std::size_t j = 0; j < net.cells; ++j)
        for (Count a = 0; a < net.matrices[k](cell, j); ++a) arrows.emplace_back(k, p.class_of(j));
    std::sort(arrows.begin(), arrows.end());
    return arrows;
  };
  for (std::size_t c = 0; c < net.cells; ++c)
    for (std::size_t d = c + 1; d < net.cells; ++d) {
      if (p.class_of(c) != p.class_of(d)) continue;
      if (net.cell_types[c] != net.cell_types[d]) return false;
      if (inputs(c) != inputs(d)) return false;
    }
  return true;
}

/// Brute force: every set partition filtered by the projection oracle.
inline std::vector<Partition> balanced_by_projection(const Network& net) {
  std::vector<Partition> out;
  for (const auto& p : enumerate_all(net.cells))
    if (is_balanced_projection_oracle(net, p)) out.push_back(p);
  std::sort(out.begin(), out.end(), RankOrder{});
  return out;
}

}  // namespace cellsync::testing
