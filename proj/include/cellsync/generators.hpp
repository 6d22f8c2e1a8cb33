#pragma once

#include <cstddef>

#include "cellsync/network.hpp"

namespace cellsync {

/// Single arrow type, one arrow between every ordered pair of distinct cells.
inline Network fully_connected_network(std::size_t n) {
  IntMatrix m(n, n, 1);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 0;
  return make_network({m});
}

/// Bidirectionally coupled chain 1 - 2 - ... - n. With `self_coupled_ends`
/// the two end cells also receive a self-loop, making every in-degree 2.
inline Network bidirectional_chain_network(std::size_t n, bool self_coupled_ends = false) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = 1;
    m(i + 1, i) = 1;
  }
  if (self_coupled_ends && n > 0) {
    m(0, 0) += 1;
    m(n - 1, n - 1) += 1;
  }
  return make_network({m});
}

/// Bidirectional ring 1 - 2 - ... - n - 1.
inline Network bidirectional_ring_network(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, (i + 1) % n) += 1;
    m((i + 1) % n, i) += 1;
  }
  return make_network({m});
}

}  // namespace cellsync
