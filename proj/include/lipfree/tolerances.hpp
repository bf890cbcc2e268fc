#pragma once

namespace lipfree {

// Numeric comparison thresholds. Every operation takes one of these by
// value so a caller can tighten or relax comparisons per call; the
// defaults are what the test suite pins.
struct Tolerances {
    double tau = 1e-9;        // metric / generic equality slack
    double tau_feas = 1e-8;   // LP feasibility slack
    double tau_opt = 1e-7;    // LP optimality / duality gap
    double distance_two = 1e-6;  // |norm - 2| threshold in two-LP tests
};

}  // namespace lipfree
