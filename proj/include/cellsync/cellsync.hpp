#pragma once

#include "cellsync/balance.hpp"
#include "cellsync/enumerate.hpp"
#include "cellsync/generators.hpp"
#include "cellsync/io.hpp"
#include "cellsync/lattice.hpp"
#include "cellsync/matrix.hpp"
#include "cellsync/network.hpp"
#include "cellsync/partition.hpp"
#include "cellsync/topnode.hpp"
