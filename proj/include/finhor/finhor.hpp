#pragma once

// Finite-horizon throughput region toolkit for multi-user Gaussian
// interference networks: finite-blocklength link rates, one-slot Pareto
// frontiers, rate margins via queue-draining search, and rate-achieving
// transmission policies.

#include "finhor/bench.hpp"
#include "finhor/errors.hpp"
#include "finhor/io.hpp"
#include "finhor/margin.hpp"
#include "finhor/numerics.hpp"
#include "finhor/oracle.hpp"
#include "finhor/policy.hpp"
#include "finhor/region.hpp"
#include "finhor/scenario.hpp"
#include "finhor/solver.hpp"
