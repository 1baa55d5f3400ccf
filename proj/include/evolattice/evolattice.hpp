#pragma once

#include "evolattice/configuration.hpp"
#include "evolattice/exact.hpp"
#include "evolattice/io.hpp"
#include "evolattice/lattice.hpp"
#include "evolattice/payoff_matrix.hpp"
#include "evolattice/rates.hpp"
#include "evolattice/regions.hpp"
#include "evolattice/replicator.hpp"
#include "evolattice/rng.hpp"
#include "evolattice/simulator.hpp"
