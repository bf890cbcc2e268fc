#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lipfree/tolerances.hpp"

namespace lipfree {

// Finite pointed metric space: named points, dense symmetric distance
// matrix, one distinguished base point. Immutable after construction.
// The constructor checks structure only (shape, finiteness, index
// ranges); metric axioms are checked by validate_metric so that invalid
// matrices can still be loaded and reported on.
class FiniteMetricSpace {
  public:
    FiniteMetricSpace(std::vector<std::string> names,
                      std::vector<double> dist_row_major, std::size_t base);

    std::size_t size() const { return n_; }
    std::size_t base() const { return base_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    double dist(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    const std::vector<double>& matrix() const { return d_; }

    std::optional<std::size_t> index_of(std::string_view name) const;

    // Smallest nonzero pairwise distance; 0 on a one-point space.
    // Used as the default resolution for discrete classifiers.
    double min_positive_distance() const { return min_pos_; }

  private:
    std::size_t n_;
    std::vector<std::string> names_;
    std::vector<double> d_;
    std::size_t base_;
    double min_pos_;
};

// Points in R^m with an ambient p-norm, p in [1, inf]. Distances are
// computed on demand so large samples never materialize a matrix.
class EmbeddedPointSet {
  public:
    EmbeddedPointSet(std::vector<std::vector<double>> coords, double p,
                     std::size_t base,
                     std::vector<std::string> names = {});

    std::size_t size() const { return coords_.size(); }
    std::size_t dim() const { return dim_; }
    std::size_t base() const { return base_; }
    double p() const { return p_; }
    const std::vector<double>& coord(std::size_t i) const { return coords_[i]; }
    const std::string& name(std::size_t i) const { return names_[i]; }

    double dist(std::size_t i, std::size_t j) const;
    double dist_to(std::size_t i, const std::vector<double>& pt) const;

    // p in (1, inf): the ambient norm has strictly convex balls.
    bool strictly_convex() const;

    FiniteMetricSpace to_metric_space() const;

  private:
    std::vector<std::vector<double>> coords_;
    double p_;
    std::size_t base_;
    std::size_t dim_;
    std::vector<std::string> names_;
};

struct MetricViolation {
    enum class Kind { nonfinite, diagonal, symmetry, positivity, triangle };
    Kind kind;
    std::size_t i = 0, j = 0, k = 0;  // offending indices (k for triangle)
    double lhs = 0, rhs = 0;
    std::string describe(const FiniteMetricSpace& s) const;
};

struct ValidationReport {
    std::vector<MetricViolation> violations;
    bool truncated = false;       // listing capped (pathological inputs)
    std::size_t total_found = 0;  // includes entries beyond the cap
    bool ok() const { return total_found == 0; }
};

// Checks all metric axioms: zero diagonal, symmetry, positivity off the
// diagonal, finiteness, triangle inequality over all ordered triples.
ValidationReport validate_metric(const FiniteMetricSpace& s,
                                 Tolerances tol = {});

// Points z with d(x,z) + d(z,y) <= d(x,y) + eta. Always contains x, y.
std::vector<std::size_t> metric_segment(const FiniteMetricSpace& s,
                                        std::size_t x, std::size_t y,
                                        double eta, Tolerances tol = {});

// Unordered pairs (u,v), u < v, with d(u,v) > h and nothing between
// them at slack eta: metric_segment(u, v, eta) == {u, v}. These are the
// discrete denting witnesses used by the Daugavet classifiers.
std::vector<std::pair<std::size_t, std::size_t>> trivial_segment_pairs(
    const FiniteMetricSpace& s, double eta, double h, Tolerances tol = {});

// Approximate midpoints: d(x,z) and d(y,z) both <= (1+delta)/2 * d(x,y).
std::vector<std::size_t> mid_set(const FiniteMetricSpace& s, std::size_t x,
                                 std::size_t y, double delta,
                                 Tolerances tol = {});

struct PathResult {
    bool connected = false;
    std::vector<std::size_t> points;  // from y to x when connected
    double length = 0;                // sum of step distances
};

// Shortest path from y to x through steps of length <= step.
// Dijkstra on the step graph; deterministic tie-breaking by index.
PathResult shortest_constrained_path(const FiniteMetricSpace& s,
                                     std::size_t x, std::size_t y,
                                     double step, Tolerances tol = {});

// Some step-constrained path from y to x has total length <= d(x,y)+eps.
bool is_connectable(const FiniteMetricSpace& s, std::size_t x, std::size_t y,
                    double eps, double step, Tolerances tol = {});

// Intersection of closed balls B(x, r+eps) and B(y, d(x,y)-r+eps).
// Requires 0 < r < d(x,y). Returned indices ascend.
std::vector<std::size_t> lens(const FiniteMetricSpace& s, std::size_t x,
                              std::size_t y, double r, double eps,
                              Tolerances tol = {});
std::vector<std::size_t> lens(const EmbeddedPointSet& s, std::size_t x,
                              std::size_t y, double r, double eps,
                              Tolerances tol = {});

// Max pairwise distance over a point subset; empty -> nullopt.
std::optional<double> lens_diameter(const FiniteMetricSpace& s,
                                    const std::vector<std::size_t>& members);
std::optional<double> lens_diameter(const EmbeddedPointSet& s,
                                    const std::vector<std::size_t>& members);

struct SegmentCover {
    bool covered = false;
    std::size_t samples = 0;
    std::size_t first_uncovered = 0;  // sample index, valid when !covered
    double worst_gap = 0;             // max over samples of dist to the set
};

// Samples the straight ambient segment [x,y] and tests whether every
// sample lies within tol_dist of some point of the set.
SegmentCover segment_in_set(const EmbeddedPointSet& s, std::size_t x,
                            std::size_t y, double tol_dist,
                            std::size_t n_samples, Tolerances tol = {});

}  // namespace lipfree
