#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lipfree/metric_space.hpp"

namespace lipfree {

// A generated example space. Embedded is present when the space lives
// in an ambient p-norm plane or line; matrix-born spaces (geodesic
// circle, glued interval) carry only the metric.
struct ExampleSpace {
    FiniteMetricSpace space;
    std::optional<EmbeddedPointSet> embedded;
};

// {-1} glued to the [0,1] grid with k+1 nodes. Base at 0. The molecule
// over (1, 0) passes the Daugavet test with the single denting witness
// (-1, 0) at resolution 1/k.
ExampleSpace make_halfline_interval(std::size_t k);

// [0,1] grid with k+1 nodes, base at 0.
ExampleSpace make_interval(std::size_t k);

// [0,1] grid on the x-axis plus two pillar points (0,r), (1,r) in the
// Euclidean plane. Base at (0,0). The molecule over ((1,0),(0,0)) fails
// the Daugavet test (pillar pair witness) yet stays step-connectable.
ExampleSpace make_bridge(std::size_t k, double r);

// Grid on [0,1] with the glued metric d(t,s) = min(t+s, 2-t-s): both
// endpoints of every pair are reachable around either side. Base x0.
ExampleSpace make_quotient_metric(std::size_t k);

// k points on the unit circle with the geodesic metric. Base c0.
ExampleSpace make_circle(std::size_t k);

// n uniform points in the unit square, Euclidean plane, base r0.
ExampleSpace make_random_planar(std::size_t n, std::uint64_t seed);

// Random symmetric matrix with entries in [1,2]: automatically a
// metric. Handy for property tests that need non-geometric spaces.
FiniteMetricSpace make_random_metric(std::size_t n, std::uint64_t seed);

// Dispatcher for the CLI: name in {halfline-interval, interval, bridge,
// quotient-metric, circle, random}. Throws std::invalid_argument on an
// unknown name or out-of-range parameters.
ExampleSpace make_example(const std::string& name, std::size_t k, double r,
                          std::size_t n, std::uint64_t seed);

// Plane grid sample with step `step` covering [x0,x1] x [y0,y1] under
// the given p-norm; `extra` points are prepended so callers get stable
// indices for distinguished points. Base is index 0.
EmbeddedPointSet make_plane_grid(double x0, double x1, double y0, double y1,
                                 double step, double p,
                                 const std::vector<std::vector<double>>& extra);

}  // namespace lipfree
