#include "lipfree/freespace.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lipfree/transportation.hpp"

namespace lipfree {

FreeNormResult free_norm(const FiniteMetricSpace& s, const FreeElement& mu,
                         Tolerances tol) {
    FreeNormResult res;
    if (mu.zero()) {
        res.certificate = LipschitzFunction::rebased(s, std::vector<double>(s.size(), 0.0));
        return res;
    }

    // Work on the support plus base: values elsewhere cannot change the
    // pairing, and the envelope extension below restores a full-space
    // certificate without moving any of these values.
    std::vector<std::size_t> pts = mu.support();
    if (!std::binary_search(pts.begin(), pts.end(), s.base())) {
        pts.push_back(s.base());
        std::sort(pts.begin(), pts.end());
    }
    std::size_t ns = pts.size();
    std::vector<std::size_t> var_of(ns, ns);  // pts index -> LP var
    std::size_t nv = 0;
    for (std::size_t i = 0; i < ns; ++i)
        if (pts[i] != s.base()) var_of[i] = nv++;

    LinearProgram lp;
    lp.num_vars = nv;
    lp.objective.assign(nv, 0.0);
    for (std::size_t i = 0; i < ns; ++i)
        if (var_of[i] < nv) lp.objective[var_of[i]] = mu.coeff(pts[i]);
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < ns; ++j) {
            if (i == j) continue;
            LpRow row;
            row.coeffs.assign(nv, 0.0);
            if (var_of[i] < nv) row.coeffs[var_of[i]] += 1.0;
            if (var_of[j] < nv) row.coeffs[var_of[j]] -= 1.0;
            row.rhs = s.dist(pts[i], pts[j]);
            row.rel = '<';
            lp.rows.push_back(std::move(row));
        }
    LpSolution sol = solve_lp(lp, tol);
    if (sol.status != LpStatus::optimal)
        throw SolverError(std::string("norm LP failed: ") + to_string(sol.status));
    res.value = sol.value;

    std::vector<std::pair<std::size_t, double>> partial;
    partial.reserve(ns);
    for (std::size_t i = 0; i < ns; ++i)
        partial.emplace_back(pts[i], var_of[i] < nv ? sol.x[var_of[i]] : 0.0);

    // Primal cross-check: push positive mass to negative mass, the base
    // absorbing any imbalance, over the restricted distance matrix.
    std::vector<std::size_t> sources, sinks;
    std::vector<double> supply, demand;
    double balance = 0;
    for (auto& [i, c] : mu.coeffs()) {
        balance += c;
        if (c > 0) {
            sources.push_back(i);
            supply.push_back(c);
        } else {
            sinks.push_back(i);
            demand.push_back(-c);
        }
    }
    if (balance > 0) {
        sinks.push_back(s.base());
        demand.push_back(balance);
    } else if (balance < 0) {
        sources.push_back(s.base());
        supply.push_back(-balance);
    }
    TransportationInstance inst;
    inst.supply = supply;
    inst.demand = demand;
    inst.cost.resize(supply.size() * demand.size());
    for (std::size_t a = 0; a < sources.size(); ++a)
        for (std::size_t b = 0; b < sinks.size(); ++b)
            inst.cost[a * sinks.size() + b] = s.dist(sources[a], sinks[b]);
    TransportationResult plan = solve_transportation(inst, tol);
    res.primal_cost = plan.total_cost;
    res.duality_gap = std::fabs(res.value - res.primal_cost);

    std::vector<double> f_of(s.size(), 0.0);
    for (auto [i, v] : partial) f_of[i] = v;
    double mass_floor = 1e-13;
    for (std::size_t a = 0; a < sources.size(); ++a)
        for (std::size_t b = 0; b < sinks.size(); ++b) {
            double fl = plan.flow[a * sinks.size() + b];
            if (fl <= mass_floor) continue;
            res.plan.emplace_back(sources[a], sinks[b], fl);
            double slack = s.dist(sources[a], sinks[b]) -
                           (f_of[sources[a]] - f_of[sinks[b]]);
            res.cs_residual = std::max(res.cs_residual, fl * std::fabs(slack));
        }

    double L = 0;
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = i + 1; j < ns; ++j) {
            double d = s.dist(pts[i], pts[j]);
            if (d > 0)
                L = std::max(L, std::fabs(partial[i].second - partial[j].second) / d);
        }
    if (L <= 0 || ns == 1) {
        res.certificate =
            LipschitzFunction::rebased(s, std::vector<double>(s.size(), 0.0));
    } else {
        Tolerances loose = tol;
        loose.tau = std::max(tol.tau, tol.tau_feas);
        res.certificate = mcshane_extend(s, partial, L, Envelope::inf, loose);
    }
    return res;
}

double distance(const FiniteMetricSpace& s, const FreeElement& a,
                const FreeElement& b, Tolerances tol) {
    return free_norm(s, a - b, tol).value;
}

DistanceTwoCheck is_distance_two_pair(const FiniteMetricSpace& s, std::size_t x,
                                      std::size_t y, std::size_t u, std::size_t v,
                                      Tolerances tol) {
    if (x == y || u == v) throw std::invalid_argument("molecules need distinct endpoints");
    DistanceTwoCheck c;
    c.lhs = s.dist(x, y) + s.dist(u, v);
    c.rhs_plain = s.dist(x, u) + s.dist(y, v);
    c.rhs_cross = s.dist(x, v) + s.dist(y, u);
    c.result = c.lhs <= std::min(c.rhs_plain, c.rhs_cross) + tol.tau;
    return c;
}

bool is_extreme_molecule(const FiniteMetricSpace& s, std::size_t u, std::size_t v,
                         double eta, double h, Tolerances tol) {
    if (u == v) throw std::invalid_argument("molecule needs distinct endpoints");
    if (!(s.dist(u, v) > h + tol.tau)) return false;
    return metric_segment(s, u, v, eta, tol).size() == 2;
}

SliceSpec SliceSpec::make(const FiniteMetricSpace& s, const LipschitzFunction& f,
                          double alpha, Tolerances) {
    if (!(alpha > 0) || alpha > 1)
        throw std::invalid_argument("slice depth must lie in (0, 1]");
    double L = lipschitz_constant(s, f);
    if (!(L > 0)) throw std::invalid_argument("constant functions cut no slice");
    SliceSpec sp;
    sp.f_ = f.scaled(1.0 / L);
    sp.alpha_ = alpha;
    return sp;
}

bool SliceSpec::contains_molecule(const FiniteMetricSpace& s, std::size_t x,
                                  std::size_t y) const {
    return f_.molecule(s, x, y) > 1.0 - alpha_;
}

std::vector<Molecule> molecules_in_slice(const FiniteMetricSpace& s,
                                         const SliceSpec& slice) {
    std::vector<Molecule> out;
    for (std::size_t u = 0; u < s.size(); ++u)
        for (std::size_t v = 0; v < s.size(); ++v) {
            if (u == v) continue;
            if (slice.contains_molecule(s, u, v)) out.push_back({u, v});
        }
    return out;
}

std::optional<double> slice_min_separation(const FiniteMetricSpace& s,
                                           const SliceSpec& slice) {
    std::optional<double> best;
    for (std::size_t u = 0; u < s.size(); ++u)
        for (std::size_t v = 0; v < s.size(); ++v) {
            if (u == v) continue;
            if (!slice.contains_molecule(s, u, v)) continue;
            double d = s.dist(u, v);
            if (!best || d < *best) best = d;
        }
    return best;
}

SumNormBound sum_norm_lower_bound_check(const FiniteMetricSpace& s,
                                        const FreeElement& mu, std::size_t u,
                                        std::size_t v, int n, Tolerances tol) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (u == v) throw std::invalid_argument("u and v must be distinct");
    FreeNormResult base_norm = free_norm(s, mu, tol);
    if (std::fabs(base_norm.value - 1.0) > 1e-6)
        throw std::domain_error("element must have norm one");

    auto supp = mu.support();
    std::set<std::size_t> dom(supp.begin(), supp.end());
    dom.insert(s.base());
    if (dom.count(u) || dom.count(v))
        throw std::domain_error("u and v must avoid the support and base");

    SumNormBound out;
    out.theta = std::numeric_limits<double>::infinity();
    for (auto it = dom.begin(); it != dom.end(); ++it)
        for (auto jt = std::next(it); jt != dom.end(); ++jt)
            out.theta = std::min(out.theta, s.dist(*it, *jt));
    if (dom.size() < 2) out.theta = 0;
    double duv = s.dist(u, v);
    if (duv > out.theta / (2.0 * n) + tol.tau) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "separation precondition fails: d(u,v) = %.12g exceeds "
                      "theta/(2n) = %.12g (theta = %.12g, n = %d)",
                      duv, out.theta / (2.0 * n), out.theta, n);
        throw std::domain_error(buf);
    }

    out.bound = 2.0 * (1.0 - 1.0 / n);

    // Certified route: inflate the norming certificate's constant by
    // c = 1/(1-1/n), place u high and v low; the slack extension then
    // norms mu and the molecule simultaneously.
    double c = 1.0 / (1.0 - 1.0 / double(n));
    std::vector<std::pair<std::size_t, double>> data;
    for (std::size_t i : dom) data.emplace_back(i, base_norm.certificate.at(i));
    SlackExtension ext = extend_with_slack(s, data, u, v, c, tol);
    Molecule m{u, v};
    FreeElement summed = mu + m.to_free_element(s);
    double Lg = lipschitz_constant(s, ext.g);
    double num = ext.g.element(summed);
    out.certified_lower = num / std::max(Lg, 1e-12);

    out.actual = free_norm(s, summed, tol).value;
    return out;
}

}  // namespace lipfree
