#include "lipfree/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lipfree/freespace.hpp"

namespace lipfree {

namespace {

std::string pair_msg(const FiniteMetricSpace& s, std::size_t a, std::size_t b,
                     double slope, double limit) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "slope %.12g between %s and %s exceeds %.12g",
                  slope, s.name(a).c_str(), s.name(b).c_str(), limit);
    return buf;
}

void check_partial(const FiniteMetricSpace& s,
                   const std::vector<std::pair<std::size_t, double>>& partial,
                   double L, Tolerances tol) {
    if (partial.empty()) throw std::invalid_argument("empty partial data");
    std::set<std::size_t> seen;
    for (auto [i, v] : partial) {
        if (i >= s.size()) throw std::invalid_argument("partial index out of range");
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite partial value");
        if (!seen.insert(i).second)
            throw std::invalid_argument("duplicate point in partial data");
    }
    for (std::size_t a = 0; a < partial.size(); ++a)
        for (std::size_t b = a + 1; b < partial.size(); ++b) {
            double d = s.dist(partial[a].first, partial[b].first);
            double diff = std::fabs(partial[a].second - partial[b].second);
            if (diff > L * d + tol.tau)
                throw std::domain_error(
                    "partial data is not Lipschitz at the stated constant: " +
                    pair_msg(s, partial[a].first, partial[b].first,
                             d > 0 ? diff / d : std::numeric_limits<double>::infinity(),
                             L));
        }
}

}  // namespace

LipschitzFunction LipschitzFunction::rebased(const FiniteMetricSpace& s,
                                             std::vector<double> raw_values) {
    if (raw_values.size() != s.size())
        throw std::invalid_argument("value vector size mismatch");
    LipschitzFunction f;
    double b = raw_values[s.base()];
    for (double& v : raw_values) v -= b;
    raw_values[s.base()] = 0.0;
    f.v_ = std::move(raw_values);
    return f;
}

double LipschitzFunction::molecule(const FiniteMetricSpace& s, std::size_t x,
                                   std::size_t y) const {
    if (x == y) throw std::invalid_argument("molecule needs two distinct points");
    return (v_[x] - v_[y]) / s.dist(x, y);
}

double LipschitzFunction::element(const FreeElement& mu) const {
    double acc = 0;
    for (auto& [i, c] : mu.coeffs()) acc += c * v_[i];
    return acc;
}

LipschitzFunction LipschitzFunction::negated() const {
    LipschitzFunction f = *this;
    for (double& v : f.v_) v = -v;
    return f;
}

LipschitzFunction LipschitzFunction::scaled(double a) const {
    LipschitzFunction f = *this;
    for (double& v : f.v_) v *= a;
    return f;
}

double lipschitz_constant(const FiniteMetricSpace& s, const LipschitzFunction& f) {
    double best = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            double d = s.dist(i, j);
            if (d <= 0) continue;
            best = std::max(best, std::fabs(f.at(i) - f.at(j)) / d);
        }
    return best;
}

LipschitzFunction mcshane_extend(
    const FiniteMetricSpace& s,
    const std::vector<std::pair<std::size_t, double>>& partial, double L,
    Envelope env, Tolerances tol) {
    if (!(L > 0)) throw std::invalid_argument("constant must be positive");
    check_partial(s, partial, L, tol);
    std::vector<double> raw(s.size(), 0.0);
    std::vector<bool> fixed(s.size(), false);
    for (auto [i, v] : partial) {
        raw[i] = v;  // verbatim: restriction to the data agrees bit for bit
        fixed[i] = true;
    }
    for (std::size_t p = 0; p < s.size(); ++p) {
        if (fixed[p]) continue;
        double acc = (env == Envelope::inf)
                         ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
        for (auto [n, v] : partial) {
            double cand = (env == Envelope::inf) ? v + L * s.dist(p, n)
                                                 : v - L * s.dist(p, n);
            acc = (env == Envelope::inf) ? std::min(acc, cand) : std::max(acc, cand);
        }
        raw[p] = acc;
    }
    return LipschitzFunction::rebased(s, std::move(raw));
}

SlackExtension extend_with_slack(
    const FiniteMetricSpace& s,
    const std::vector<std::pair<std::size_t, double>>& partial, std::size_t u,
    std::size_t v, double c, Tolerances tol) {
    if (u >= s.size() || v >= s.size()) throw std::invalid_argument("point index out of range");
    if (u == v) throw std::invalid_argument("u and v must be distinct");
    if (!(c >= 1)) throw std::invalid_argument("slack constant must be >= 1");
    check_partial(s, partial, 1.0, tol);
    for (auto [i, _] : partial)
        if (i == u || i == v)
            throw std::domain_error("u and v must lie outside the data set");

    double gu = std::numeric_limits<double>::infinity();
    for (auto [n, val] : partial) gu = std::min(gu, val + c * s.dist(n, u));
    double gv = -std::numeric_limits<double>::infinity();
    for (auto [n, val] : partial) gv = std::max(gv, val - c * s.dist(n, v));
    gv = std::max(gv, gu - c * s.dist(u, v));

    double duv = s.dist(u, v);
    if (gu - gv < duv - tol.tau) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "slack extension cannot separate u and v: g(u)-g(v) = %.12g "
                      "< d(u,v) = %.12g; the data sits too close to the pair for "
                      "slack %.12g",
                      gu - gv, duv, c);
        throw std::domain_error(buf);
    }

    auto full = partial;
    full.emplace_back(u, gu);
    full.emplace_back(v, gv);
    SlackExtension out{mcshane_extend(s, full, c, Envelope::inf, tol), gu, gv};
    return out;
}

LipschitzFunction f_xy(const FiniteMetricSpace& s, std::size_t x, std::size_t y,
                       Tolerances tol) {
    (void)tol;
    if (x == y) throw std::invalid_argument("needs two distinct points");
    double d = s.dist(x, y);
    if (!(d > 0)) throw std::invalid_argument("zero distance pair");
    std::vector<double> raw(s.size());
    for (std::size_t t = 0; t < s.size(); ++t) {
        double a = s.dist(t, y), b = s.dist(t, x);
        raw[t] = (d / 2.0) * ((a - b) / (a + b));  // denominator >= d > 0
    }
    // Rebase here and pin the pair values so the molecule slope
    // (raw[x] - raw[y]) / d evaluates to 1.0 in floating point, not
    // just up to rounding in the shift. One anchor swap is usually
    // enough: after the first rounding both values sit on the coarse
    // grid and the re-derived difference is exact.
    double shift = raw[s.base()];
    for (double& v : raw) v -= shift;
    if (x != s.base() && y != s.base()) {
        raw[y] = raw[x] - d;
        for (int it = 0; it < 4 && raw[x] - raw[y] != d; ++it) {
            if (it % 2 == 0) raw[x] = raw[y] + d;
            else             raw[y] = raw[x] - d;
        }
    }
    return LipschitzFunction::rebased(s, std::move(raw));
}

LocalityProfile locality_profile(const FiniteMetricSpace& s,
                                 const LipschitzFunction& f,
                                 const std::vector<double>& scales,
                                 Tolerances tol) {
    (void)tol;
    if (scales.empty()) throw std::invalid_argument("need at least one scale");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0)) throw std::invalid_argument("scales must be positive");
        if (i && !(scales[i] < scales[i - 1]))
            throw std::invalid_argument("scales must strictly decrease");
    }
    LocalityProfile prof;
    prof.constant = lipschitz_constant(s, f);
    for (double sc : scales) {
        LocalityProfile::Row row;
        row.scale = sc;
        std::vector<std::pair<std::size_t, std::size_t>> qualifying;
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                double d = s.dist(i, j);
                if (!(d > 0) || !(d < sc)) continue;
                double slope = std::fabs(f.at(i) - f.at(j)) / d;
                if (!row.best_slope || slope > *row.best_slope) {
                    row.best_slope = slope;
                    row.best_pair = {i, j};
                }
                if (slope > prof.constant - sc) qualifying.emplace_back(i, j);
            }
        row.local_at_scale = row.best_slope && *row.best_slope > prof.constant - sc;
        for (std::size_t t = 0; t < s.size(); ++t)
            for (auto [i, j] : qualifying)
                if (s.dist(t, i) <= sc && s.dist(t, j) <= sc) {
                    row.epsilon_points.push_back(t);
                    break;
                }
        prof.rows.push_back(std::move(row));
    }
    return prof;
}

FarFunction construct_far_function(const FiniteMetricSpace& s,
                                   const LipschitzFunction& g,
                                   const FreeElement& mu, double alpha,
                                   std::size_t u, std::size_t v, double eps,
                                   Tolerances tol) {
    if (u >= s.size() || v >= s.size()) throw std::invalid_argument("point index out of range");
    if (u == v) throw std::invalid_argument("u and v must be distinct");
    if (!(alpha > 0) || !(alpha < 1)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    double Lg = lipschitz_constant(s, g);
    if (Lg > 1 + tol.tau)
        throw std::domain_error("norming function must have constant at most one");
    double norm_mu = free_norm(s, mu, tol).value;
    if (std::fabs(norm_mu - 1.0) > 1e-6)
        throw std::domain_error("element must have norm one");
    double gmu = g.element(mu);
    if (!(gmu > (1 - alpha) * norm_mu))
        throw std::domain_error("norming function does not reach the slice depth");
    if (!(gmu / (1 + eps) > 1 - alpha)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "eps too large: g(mu)/(1+eps) = %.12g does not exceed "
                      "1 - alpha = %.12g, the rescaled function escapes the slice",
                      gmu / (1 + eps), 1 - alpha);
        throw std::domain_error(buf);
    }

    std::set<std::size_t> dom;
    for (std::size_t i : mu.support()) dom.insert(i);
    dom.insert(s.base());
    if (dom.count(v)) throw std::domain_error("v must avoid the support and base");
    FarFunction out;
    out.case_applied = dom.count(u) ? 2 : 1;
    dom.insert(u);

    std::vector<std::pair<std::size_t, double>> data;
    for (std::size_t i : dom) data.emplace_back(i, g.at(i));
    data.emplace_back(v, g.at(u) + s.dist(u, v));

    // Audit: the assignment is only usable when it stays within the
    // inflated constant; report the offending pair otherwise.
    double L = 0;
    for (std::size_t a = 0; a < data.size(); ++a)
        for (std::size_t b = a + 1; b < data.size(); ++b) {
            double d = s.dist(data[a].first, data[b].first);
            if (!(d > 0)) continue;
            double slope = std::fabs(data[a].second - data[b].second) / d;
            if (slope > (1 + eps) * (1 + tol.tau))
                throw std::domain_error(
                    "assignment exceeds the inflated constant: " +
                    pair_msg(s, data[a].first, data[b].first, slope, 1 + eps));
            L = std::max(L, slope);
        }
    L = std::max(L, 1e-12);

    LipschitzFunction h = mcshane_extend(s, data, L, Envelope::inf, tol);
    out.h = h.scaled(1.0 / (1 + eps));
    out.h_mu = out.h.element(mu);
    out.h_muv = out.h.molecule(s, u, v);
    out.constant = L;
    return out;
}

LipschitzFunction plateau_function(const FiniteMetricSpace& s, std::size_t x,
                                   std::size_t y, double alpha, Tolerances tol) {
    if (x == y) throw std::invalid_argument("needs two distinct points");
    if (!(alpha > 0) || !(alpha < 0.5))
        throw std::invalid_argument("plateau depth must lie in (0, 1/2)");
    double d = s.dist(x, y);
    std::vector<std::pair<std::size_t, double>> data;
    for (std::size_t t = 0; t < s.size(); ++t) {
        // Open balls: a point within tau of the boundary counts as
        // outside, so rounding in the distances cannot flip membership.
        bool near_x = s.dist(x, t) < alpha * d - tol.tau;
        bool near_y = s.dist(y, t) < alpha * d - tol.tau;
        if (near_x && near_y) throw std::domain_error("plateau balls overlap");
        if (near_x) data.emplace_back(t, 0.0);
        else if (near_y) data.emplace_back(t, (1 - alpha) * d);
    }
    double L = 0;
    for (std::size_t a = 0; a < data.size(); ++a)
        for (std::size_t b = a + 1; b < data.size(); ++b) {
            double dd = s.dist(data[a].first, data[b].first);
            if (dd <= 0) continue;
            L = std::max(L, std::fabs(data[a].second - data[b].second) / dd);
        }
    if (L == 0) L = 1.0;  // single plateau populated: any constant extends
    return mcshane_extend(s, data, L, Envelope::inf, tol);
}

}  // namespace lipfree
