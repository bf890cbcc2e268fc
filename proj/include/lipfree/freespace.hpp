#pragma once

#include <cstddef>
#include <optional>
#include <tuple>
#include <vector>

#include "lipfree/free_element.hpp"
#include "lipfree/lipschitz.hpp"
#include "lipfree/lp.hpp"
#include "lipfree/metric_space.hpp"
#include "lipfree/tolerances.hpp"

namespace lipfree {

struct FreeNormResult {
    double value = 0;              // dual LP optimum = the norm
    LipschitzFunction certificate; // norming function, constant <= 1 + tau_feas
    double primal_cost = 0;        // transportation optimum
    double duality_gap = 0;        // |value - primal_cost|
    double cs_residual = 0;        // max arc flow * (cost - slope) slack
    // Arcs (from, to, mass) of the optimal plan, space point indices.
    std::vector<std::tuple<std::size_t, std::size_t, double>> plan;
};

// Norm of a free element, solved two independent ways: a dual LP over
// Lipschitz values on the support plus base (simplex), and the primal
// transportation plan moving positive mass to negative mass with the
// base absorbing any imbalance (shortest augmenting paths). Both run
// every time; a non-optimal status raises SolverError. The certificate
// is the dual optimum extended to all points by inf envelope, which
// changes no value on the support, so certificate.element(mu) == value
// up to rounding.
FreeNormResult free_norm(const FiniteMetricSpace& s, const FreeElement& mu,
                         Tolerances tol = {});

double distance(const FiniteMetricSpace& s, const FreeElement& a,
                const FreeElement& b, Tolerances tol = {});

struct DistanceTwoCheck {
    bool result = false;
    double lhs = 0;       // d(x,y) + d(u,v)
    double rhs_plain = 0; // d(x,u) + d(y,v)
    double rhs_cross = 0; // d(x,v) + d(y,u)
};

// Metric criterion for the molecules over (x,y) and (u,v) to sit at
// mutual distance two in both signs:
//   d(x,y) + d(u,v) <= min(d(x,u) + d(y,v), d(x,v) + d(y,u)) + tau.
DistanceTwoCheck is_distance_two_pair(const FiniteMetricSpace& s,
                                      std::size_t x, std::size_t y,
                                      std::size_t u, std::size_t v,
                                      Tolerances tol = {});

// The molecule over (u,v) is a discrete denting witness: separation
// above h and trivial segment at slack eta.
bool is_extreme_molecule(const FiniteMetricSpace& s, std::size_t u,
                         std::size_t v, double eta, double h,
                         Tolerances tol = {});

// Slice of the unit ball cut by a normalized functional at depth alpha:
// elements with f(mu) > 1 - alpha.
class SliceSpec {
  public:
    static SliceSpec make(const FiniteMetricSpace& s, const LipschitzFunction& f,
                          double alpha, Tolerances tol = {});
    const LipschitzFunction& functional() const { return f_; }
    double alpha() const { return alpha_; }
    bool contains_molecule(const FiniteMetricSpace& s, std::size_t x,
                           std::size_t y) const;

  private:
    LipschitzFunction f_;
    double alpha_ = 0;
};

// Ordered pairs (u,v), u != v, whose molecule lies in the slice,
// in lexicographic index order.
std::vector<Molecule> molecules_in_slice(const FiniteMetricSpace& s,
                                         const SliceSpec& slice);

// Smallest separation d(u,v) among slice molecules; nullopt when none.
std::optional<double> slice_min_separation(const FiniteMetricSpace& s,
                                           const SliceSpec& slice);

struct SumNormBound {
    double theta = 0;            // min pairwise distance, support + base
    double bound = 0;            // 2(1 - 1/n)
    double actual = 0;           // computed norm of mu + m_{u,v}
    double certified_lower = 0;  // g(mu + m)/L(g) from the slack extension
};

// Quantitative small-separation bound: for norm-one mu and fresh u, v
// with d(u,v) <= theta/(2n), builds the slack extension of the norming
// certificate at c = 1/(1 - 1/n) and verifies
// norm(mu + m_{u,v}) >= 2(1 - 1/n). Throws std::domain_error when the
// separation precondition fails (message names theta and d(u,v)).
SumNormBound sum_norm_lower_bound_check(const FiniteMetricSpace& s,
                                        const FreeElement& mu, std::size_t u,
                                        std::size_t v, int n,
                                        Tolerances tol = {});

}  // namespace lipfree
