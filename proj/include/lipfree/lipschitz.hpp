#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lipfree/free_element.hpp"
#include "lipfree/metric_space.hpp"
#include "lipfree/tolerances.hpp"

namespace lipfree {

// Real-valued function on all points of a space, pinned to 0 at the
// base point. Construction subtracts the base value, so the pairing
// with free elements is exact.
class LipschitzFunction {
  public:
    LipschitzFunction() = default;
    static LipschitzFunction rebased(const FiniteMetricSpace& s,
                                     std::vector<double> raw_values);

    const std::vector<double>& values() const { return v_; }
    double at(std::size_t i) const { return v_[i]; }

    // Slope against the molecule (delta_x - delta_y)/d(x,y).
    double molecule(const FiniteMetricSpace& s, std::size_t x,
                    std::size_t y) const;
    // Pairing sum lambda_i * f(x_i).
    double element(const FreeElement& mu) const;

    LipschitzFunction negated() const;
    LipschitzFunction scaled(double a) const;

  private:
    std::vector<double> v_;
};

// Best (smallest) Lipschitz constant: max |f(i)-f(j)| / d(i,j).
// 0 for constant functions and one-point spaces.
double lipschitz_constant(const FiniteMetricSpace& s,
                          const LipschitzFunction& f);

enum class Envelope { inf, sup };

// Extends values given on a subset N to the whole space at constant L
// without increasing the constant: inf envelope min_n(f(n) + L d(p,n))
// or sup envelope max_n(f(n) - L d(p,n)). Values on N are copied
// verbatim and the result is rebased at the base point, so when the
// data pins the base at 0 the restriction to N agrees bit for bit.
// Throws std::domain_error (naming an offending pair) if the data is
// not L-Lipschitz on N.
LipschitzFunction mcshane_extend(
    const FiniteMetricSpace& s,
    const std::vector<std::pair<std::size_t, double>>& partial, double L,
    Envelope env = Envelope::inf, Tolerances tol = {});

struct SlackExtension {
    LipschitzFunction g;  // constant <= c, agrees with the data on N
    double g_u, g_v;      // assigned values before rebasing
};

// Given 1-Lipschitz data on N and two fresh points u, v, assigns
//   g(u) = min over N of (f(x) + c d(x,u))
//   g(v) = max over N + {u} of (g(x) - c d(x,v))
// and completes by inf envelope at constant c >= 1. The construction
// only forces g(u) - g(v) >= d(u,v) when N, u, v are separated enough
// for the slack c to absorb the detour; when that fails the claimed
// inequality is violated and a domain error reports the margin instead
// of returning a function that breaks the caller's lower bound.
SlackExtension extend_with_slack(
    const FiniteMetricSpace& s,
    const std::vector<std::pair<std::size_t, double>>& partial, std::size_t u,
    std::size_t v, double c, Tolerances tol = {});

// Norming function for the molecule over (x,y):
//   t -> d(x,y)/2 * (d(t,y) - d(t,x)) / (d(t,y) + d(t,x)), rebased.
// The stored y value is pinned so f(x) - f(y) = d(x,y) holds in
// floating point and the molecule slope evaluates to exactly 1.
LipschitzFunction f_xy(const FiniteMetricSpace& s, std::size_t x,
                       std::size_t y, Tolerances tol = {});

struct LocalityProfile {
    struct Row {
        double scale = 0;
        std::optional<double> best_slope;  // max slope over pairs with
                                           // 0 < d < scale; nullopt if none
        std::optional<std::pair<std::size_t, std::size_t>> best_pair;
        std::vector<std::size_t> epsilon_points;
        bool local_at_scale = false;  // best_slope > constant - scale
    };
    double constant = 0;  // Lipschitz constant of the profiled function
    std::vector<Row> rows;
};

// Scans strictly decreasing scales for near-norming slopes on small
// separations. epsilon_points lists points t such that some pair
// within B(t, scale) has separation < scale and slope above
// constant - scale.
LocalityProfile locality_profile(const FiniteMetricSpace& s,
                                 const LipschitzFunction& f,
                                 const std::vector<double>& scales,
                                 Tolerances tol = {});

struct FarFunction {
    LipschitzFunction h;   // the rescaled function, constant <= 1
    int case_applied = 1;  // 1: u outside supp(mu)+base, 2: u inside
    double h_mu = 0;       // pairing with mu
    double h_muv = 0;      // slope on the (u,v) molecule
    double constant = 0;   // measured constant before rescaling
};

// From a norming function g for mu (norm one within tol) and a pair
// (u,v) outside the support constraints, builds h equal to g on
// supp(mu) + base + {u} with h(v) = g(u) + d(u,v), checks the data is
// (1+eps)-Lipschitz, extends, and rescales by 1/(1+eps). The result
// stays in the slice of mu cut at alpha while its slope on m_{u,v} is
// -(1+eps)^-1: far from every function norming that molecule.
FarFunction construct_far_function(const FiniteMetricSpace& s,
                                   const LipschitzFunction& g,
                                   const FreeElement& mu, double alpha,
                                   std::size_t u, std::size_t v, double eps,
                                   Tolerances tol = {});

// Two-plateau function: 0 on the open ball around x of radius
// alpha*d(x,y), (1-alpha)*d(x,y) on the one around y, inf envelope at
// the plateau data's own constant elsewhere. Ball membership backs off
// by tau so points on the boundary stay outside under rounding.
LipschitzFunction plateau_function(const FiniteMetricSpace& s, std::size_t x,
                                   std::size_t y, double alpha,
                                   Tolerances tol = {});

}  // namespace lipfree
