#pragma once

#include <cstddef>
#include <vector>

#include "lipfree/tolerances.hpp"

namespace lipfree {

// Balanced transportation problem: ship supply to demand over a dense
// cost matrix (row-major, m x k), all costs >= 0. Totals must agree
// within tol.tau.
struct TransportationInstance {
    std::vector<double> supply;
    std::vector<double> demand;
    std::vector<double> cost;
};

struct TransportationResult {
    double total_cost = 0;
    std::vector<double> flow;  // m x k row-major
    std::vector<double> potential_source;
    std::vector<double> potential_sink;
    std::size_t augmentations = 0;
};

// Successive shortest augmenting paths with node potentials (Dijkstra
// on reduced costs). Each augmentation exhausts a source or a sink, so
// at most m+k rounds. Independent of the simplex code path by design:
// the two act as cross-checking oracles for each other.
TransportationResult solve_transportation(const TransportationInstance& in,
                                          Tolerances tol = {});

}  // namespace lipfree
