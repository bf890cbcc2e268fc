#include "lipfree/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "lipfree/lipschitz.hpp"
#include "lipfree/lp.hpp"

namespace lipfree {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::positive: return "positive";
        case Verdict::negative: return "negative";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

std::string fmt_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const char* kDentingNote =
    "denting witnesses are the molecules over trivial-segment pairs "
    "(separation above h, no third point within slack eta); on a finite "
    "space these coincide with the extreme and preserved-extreme molecules";

void check_pair(const FiniteMetricSpace& s, std::size_t x, std::size_t y) {
    if (x >= s.size() || y >= s.size())
        throw std::invalid_argument("point index out of range");
    if (x == y) throw std::invalid_argument("need two distinct points");
}

}  // namespace

ClassificationReport classify_daugavet_molecule(const FiniteMetricSpace& s,
                                                std::size_t x, std::size_t y,
                                                double eta, double h,
                                                Tolerances tol) {
    check_pair(s, x, y);
    ClassificationReport rep;
    rep.query = "daugavet-molecule";
    rep.parameters = {{"x", s.name(x)},
                      {"y", s.name(y)},
                      {"eta", fmt_param(eta)},
                      {"h", fmt_param(h)},
                      {"tau", fmt_param(tol.tau)},
                      {"distance_two_tol", fmt_param(tol.distance_two)}};
    rep.notes.push_back(kDentingNote);

    auto pairs = trivial_segment_pairs(s, eta, h, tol);
    if (pairs.empty()) {
        rep.verdict = Verdict::positive;
        rep.notes.push_back(
            "no denting witnesses exist at this resolution; the test is "
            "vacuously positive");
        return rep;
    }

    Molecule mxy{x, y};
    FreeElement exy = mxy.to_free_element(s);
    bool all_pass = true, any_disagree = false;
    std::vector<Witness> all;
    for (auto [u, v] : pairs) {
        DistanceTwoCheck c = is_distance_two_pair(s, x, y, u, v, tol);
        Molecule muv{u, v};
        FreeElement euv = muv.to_free_element(s);
        double n_minus = free_norm(s, exy - euv, tol).value;
        double n_plus = free_norm(s, exy + euv, tol).value;
        bool lp_ok = std::fabs(n_minus - 2.0) < tol.distance_two &&
                     std::fabs(n_plus - 2.0) < tol.distance_two;
        bool agree = lp_ok == c.result;
        if (!agree) any_disagree = true;
        if (!c.result) all_pass = false;

        Witness w;
        w.kind = "denting-pair";
        w.points = {s.name(u), s.name(v)};
        w.values = {{"lhs", c.lhs},
                    {"rhs", std::min(c.rhs_plain, c.rhs_cross)},
                    {"rhs_plain", c.rhs_plain},
                    {"rhs_cross", c.rhs_cross},
                    {"norm_minus", n_minus},
                    {"norm_plus", n_plus}};
        w.note = c.result ? "distance-two inequality holds"
                          : "distance-two inequality violated";
        all.push_back(std::move(w));

        CrossCheck cc;
        cc.name = "criterion-agreement(" + s.name(u) + "," + s.name(v) + ")";
        cc.passed = agree;
        cc.residual = agree ? 0.0 : 1.0;
        cc.tolerance = 0.5;
        rep.cross_checks.push_back(std::move(cc));
    }

    if (any_disagree) {
        rep.verdict = Verdict::inconclusive;
        rep.witnesses = std::move(all);
        rep.notes.push_back(
            "the metric inequality and the two-LP distance test disagree on "
            "some pair; both certificates are listed");
    } else if (all_pass) {
        rep.verdict = Verdict::positive;
        rep.witnesses = std::move(all);
    } else {
        rep.verdict = Verdict::negative;
        for (auto& w : all)
            if (w.note == "distance-two inequality violated")
                rep.witnesses.push_back(std::move(w));
    }
    return rep;
}

ClassificationReport classify_daugavet_element(const FiniteMetricSpace& s,
                                               const FreeElement& mu,
                                               double eta, double h,
                                               Tolerances tol) {
    ClassificationReport rep;
    rep.query = "daugavet-element";
    std::string desc;
    for (auto& [i, c] : mu.coeffs()) {
        if (!desc.empty()) desc += c < 0 ? " - " : " + ";
        else if (c < 0) desc += "-";
        desc += fmt_param(std::fabs(c)) + "*" + s.name(i);
    }
    rep.parameters = {{"element", desc},
                      {"eta", fmt_param(eta)},
                      {"h", fmt_param(h)},
                      {"distance_two_tol", fmt_param(tol.distance_two)}};
    rep.notes.push_back(kDentingNote);

    double norm = free_norm(s, mu, tol).value;
    if (std::fabs(norm - 1.0) > 1e-6)
        throw std::domain_error("element must have norm one, got " + fmt_param(norm));

    auto pairs = trivial_segment_pairs(s, eta, h, tol);
    if (pairs.empty()) {
        rep.verdict = Verdict::positive;
        rep.notes.push_back(
            "no denting witnesses exist at this resolution; the test is "
            "vacuously positive");
        return rep;
    }

    struct Entry {
        Witness w;
        bool pass;
        double closest;
    };
    std::vector<Entry> entries;
    for (auto [u, v] : pairs) {
        FreeElement euv = Molecule{u, v}.to_free_element(s);
        double n_minus = free_norm(s, mu - euv, tol).value;
        double n_plus = free_norm(s, mu + euv, tol).value;
        bool ok = std::fabs(n_minus - 2.0) < tol.distance_two &&
                  std::fabs(n_plus - 2.0) < tol.distance_two;
        Witness w;
        w.kind = "denting-pair";
        w.points = {s.name(u), s.name(v)};
        w.values = {{"norm_minus", n_minus}, {"norm_plus", n_plus}};
        w.note = ok ? "distance two in both signs" : "distance below two";
        entries.push_back({std::move(w), ok, std::min(n_minus, n_plus)});
    }
    bool all_pass = std::all_of(entries.begin(), entries.end(),
                                [](const Entry& e) { return e.pass; });
    if (all_pass) {
        rep.verdict = Verdict::positive;
        for (auto& e : entries) rep.witnesses.push_back(std::move(e.w));
    } else {
        rep.verdict = Verdict::negative;
        std::stable_sort(entries.begin(), entries.end(),
                         [](const Entry& a, const Entry& b) {
                             return a.closest < b.closest;
                         });
        for (auto& e : entries)
            if (!e.pass) rep.witnesses.push_back(std::move(e.w));
        rep.notes.push_back("violating witnesses listed closest-first");
    }
    return rep;
}

ClassificationReport delta_ball_test(const FiniteMetricSpace& s, std::size_t x,
                                     std::size_t y, std::vector<double> r_list,
                                     double eps, Tolerances tol) {
    check_pair(s, x, y);
    if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
    double d = s.dist(x, y);
    if (r_list.empty()) {
        std::set<double> rs;
        for (std::size_t z = 0; z < s.size(); ++z) {
            double r = s.dist(x, z);
            if (r > 0 && r < d) rs.insert(r);
        }
        r_list.assign(rs.begin(), rs.end());
    }
    for (double r : r_list)
        if (!(r > 0) || !(r < d))
            throw std::invalid_argument("radii must lie strictly between 0 and d(x,y)");

    ClassificationReport rep;
    rep.query = "delta-ball";
    rep.parameters = {{"x", s.name(x)},
                      {"y", s.name(y)},
                      {"eps", fmt_param(eps)},
                      {"radii", std::to_string(r_list.size())}};
    bool all = true;
    for (double r : r_list) {
        auto members = lens(s, x, y, r, eps, tol);
        if (members.empty()) {
            all = false;
            Witness w;
            w.kind = "empty-lens";
            w.points = {s.name(x), s.name(y)};
            w.values = {{"r", r}, {"eps", eps}};
            w.note = "balls B(x, r+eps) and B(y, d-r+eps) miss each other";
            rep.witnesses.push_back(std::move(w));
        }
    }
    rep.verdict = all ? Verdict::positive : Verdict::negative;
    rep.notes.push_back(
        all ? "every tested radius meets both balls; necessary condition holds"
            : "some radius separates the balls; the pair cannot sit near both "
              "endpoints of its own segment");
    return rep;
}

SliceFamily build_slice_family(const FiniteMetricSpace& s, std::size_t x,
                               std::size_t y, double alpha,
                               std::size_t n_random, std::uint64_t seed,
                               bool include_plateau, Tolerances tol) {
    check_pair(s, x, y);
    if (!(alpha > 0) || !(alpha < 0.5))
        throw std::invalid_argument("family depth must lie in (0, 1/2)");
    SliceFamily fam;
    auto orient = [&](LipschitzFunction f) {
        if (f.molecule(s, x, y) < 0) return f.negated();
        return f;
    };
    auto try_add = [&](const std::string& name, LipschitzFunction f, double depth) {
        SliceSpec sp = SliceSpec::make(s, orient(std::move(f)), depth, tol);
        if (!sp.contains_molecule(s, x, y)) {
            fam.notes.push_back(name + " skipped: functional does not reach the "
                                       "molecule at its depth");
            return;
        }
        fam.slices.push_back({name, std::move(sp)});
    };

    Molecule m{x, y};
    FreeNormResult nr = free_norm(s, m.to_free_element(s), tol);
    try_add("certificate", nr.certificate, alpha);
    try_add("rational", f_xy(s, x, y, tol), alpha);

    if (include_plateau)
        try_add("plateau", plateau_function(s, x, y, alpha, tol), 2 * alpha);

    // Random vertices of the optimal dual face: maximize a seeded random
    // objective over Lipschitz values on {x, y, base} pinned to norm the
    // molecule, then extend. Vertices of the restricted face extend to
    // honest slice functionals, and the small LP keeps sweeps cheap.
    std::vector<std::size_t> pts = {x, y};
    if (s.base() != x && s.base() != y) pts.push_back(s.base());
    std::sort(pts.begin(), pts.end());
    std::size_t nv = 0;
    std::vector<std::size_t> var_of(pts.size(), pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i] != s.base()) var_of[i] = nv++;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (std::size_t rix = 0; rix < n_random; ++rix) {
        LinearProgram lp;
        lp.num_vars = nv;
        lp.objective.assign(nv, 0.0);
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (var_of[i] < nv) lp.objective[var_of[i]] = uni(rng);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (i == j) continue;
                LpRow row;
                row.coeffs.assign(nv, 0.0);
                if (var_of[i] < nv) row.coeffs[var_of[i]] += 1.0;
                if (var_of[j] < nv) row.coeffs[var_of[j]] -= 1.0;
                row.rhs = s.dist(pts[i], pts[j]);
                row.rel = '<';
                lp.rows.push_back(std::move(row));
            }
        {
            LpRow eq;
            eq.coeffs.assign(nv, 0.0);
            std::size_t ix = std::find(pts.begin(), pts.end(), x) - pts.begin();
            std::size_t iy = std::find(pts.begin(), pts.end(), y) - pts.begin();
            if (var_of[ix] < nv) eq.coeffs[var_of[ix]] += 1.0;
            if (var_of[iy] < nv) eq.coeffs[var_of[iy]] -= 1.0;
            eq.rhs = s.dist(x, y);
            eq.rel = '=';
            lp.rows.push_back(std::move(eq));
        }
        LpSolution sol = solve_lp(lp, tol);
        if (sol.status != LpStatus::optimal)
            throw SolverError(std::string("slice vertex LP failed: ") +
                              to_string(sol.status));
        std::vector<std::pair<std::size_t, double>> partial;
        for (std::size_t i = 0; i < pts.size(); ++i)
            partial.emplace_back(pts[i], var_of[i] < nv ? sol.x[var_of[i]] : 0.0);
        double L = 0;
        for (std::size_t a = 0; a < partial.size(); ++a)
            for (std::size_t b = a + 1; b < partial.size(); ++b) {
                double dd = s.dist(partial[a].first, partial[b].first);
                if (dd > 0)
                    L = std::max(L, std::fabs(partial[a].second - partial[b].second) / dd);
            }
        Tolerances loose = tol;
        loose.tau = std::max(tol.tau, tol.tau_feas);
        try_add("random-" + std::to_string(rix),
                mcshane_extend(s, partial, std::max(L, 1e-12), Envelope::inf, loose),
                alpha);
    }
    return fam;
}

ClassificationReport delta_slice_test(const FiniteMetricSpace& s, std::size_t x,
                                      std::size_t y, const SliceFamily& family,
                                      double scale, Tolerances tol) {
    check_pair(s, x, y);
    if (!(scale > 0)) throw std::invalid_argument("scale must be positive");
    if (family.slices.empty()) throw std::invalid_argument("empty slice family");
    for (const auto& ns : family.slices)
        if (!ns.slice.contains_molecule(s, x, y))
            throw std::domain_error("slice '" + ns.name +
                                    "' does not contain the molecule");

    ClassificationReport rep;
    rep.query = "delta-slice";
    rep.parameters = {{"x", s.name(x)},
                      {"y", s.name(y)},
                      {"scale", fmt_param(scale)},
                      {"slices", std::to_string(family.slices.size())}};
    for (const auto& n : family.notes) rep.notes.push_back(n);

    bool refuted = false;
    for (const auto& ns : family.slices) {
        auto mols = molecules_in_slice(s, ns.slice);
        std::optional<double> min_sep;
        Molecule closest{0, 0};
        for (const auto& m : mols) {
            double d = s.dist(m.x, m.y);
            if (!min_sep || d < *min_sep) {
                min_sep = d;
                closest = m;
            }
        }
        Witness w;
        w.kind = "slice";
        w.points = {ns.name};
        if (min_sep) {
            w.values = {{"min_separation", *min_sep},
                        {"alpha", ns.slice.alpha()},
                        {"molecules", double(mols.size())}};
            w.points.push_back(s.name(closest.x));
            w.points.push_back(s.name(closest.y));
            if (*min_sep > scale + tol.tau) {
                refuted = true;
                w.note = "every molecule in this slice sits farther apart than "
                         "the scale";
            } else {
                w.note = "contains a molecule within the scale";
            }
        } else {
            refuted = true;
            w.values = {{"alpha", ns.slice.alpha()}, {"molecules", 0.0}};
            w.note = "slice contains no molecules at all";
        }
        rep.witnesses.push_back(std::move(w));
    }
    rep.verdict = refuted ? Verdict::negative : Verdict::positive;
    rep.notes.push_back(
        refuted ? "refuted: some slice isolates the molecule from small "
                  "separations at this scale"
                : "unrefuted at this scale; a finer scale or another slice "
                  "could still refute");
    return rep;
}

ClassificationReport classify_connectable(const FiniteMetricSpace& s,
                                          std::size_t x, std::size_t y,
                                          double eps, double step,
                                          const EmbeddedPointSet* ambient,
                                          double slice_alpha, Tolerances tol) {
    check_pair(s, x, y);
    if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
    if (!(step > 0)) throw std::invalid_argument("step must be positive");
    double d = s.dist(x, y);

    ClassificationReport rep;
    rep.query = "connectable";
    rep.parameters = {{"x", s.name(x)},
                      {"y", s.name(y)},
                      {"eps", fmt_param(eps)},
                      {"step", fmt_param(step)},
                      {"slice_alpha", fmt_param(slice_alpha)}};

    PathResult path = shortest_constrained_path(s, x, y, step, tol);
    bool positive = path.connected && path.length <= d + eps + tol.tau;
    rep.verdict = positive ? Verdict::positive : Verdict::negative;

    Witness w;
    w.kind = path.connected ? "path" : "no-path";
    if (path.connected) {
        for (std::size_t p : path.points) w.points.push_back(s.name(p));
        w.values = {{"length", path.length}, {"direct", d}, {"slack", eps}};
        w.note = positive ? "step path realizes the distance within eps"
                          : "every step path overshoots the distance budget";
    } else {
        w.points = {s.name(x), s.name(y)};
        w.values = {{"direct", d}, {"step", step}};
        w.note = "the step graph disconnects the pair";
    }
    rep.witnesses.push_back(std::move(w));

    if (positive && path.points.size() >= 2) {
        // Any functional cutting a slice around the molecule must nearly
        // norm some single step: total rise f(x)-f(y) > (1-alpha) d over
        // total length <= d+eps forces max step slope past the average.
        double threshold = (1 - slice_alpha) * d / (d + eps);
        Molecule m{x, y};
        FreeNormResult nr = free_norm(s, m.to_free_element(s), tol);
        struct Named {
            const char* name;
            LipschitzFunction f;
        };
        std::vector<Named> fs;
        fs.push_back({"step-slope(certificate)", nr.certificate});
        fs.push_back({"step-slope(rational)", f_xy(s, x, y, tol)});
        for (auto& nf : fs) {
            double L = lipschitz_constant(s, nf.f);
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i + 1 < path.points.size(); ++i) {
                std::size_t a = path.points[i + 1], b = path.points[i];
                best = std::max(best, nf.f.molecule(s, a, b) / L);
            }
            CrossCheck cc;
            cc.name = nf.name;
            cc.passed = best >= threshold - tol.tau;
            cc.residual = std::max(0.0, threshold - best);
            cc.tolerance = tol.tau;
            rep.cross_checks.push_back(std::move(cc));
        }
    }

    if (ambient) {
        std::size_t samples = std::max<std::size_t>(2, std::size_t(std::ceil(d / step)) + 1);
        SegmentCover cover = segment_in_set(*ambient, x, y, step, samples, tol);
        CrossCheck cc;
        cc.name = "ambient-segment-agreement";
        cc.passed = cover.covered == positive;
        cc.residual = cc.passed ? 0.0 : 1.0;
        cc.tolerance = 0.5;
        rep.cross_checks.push_back(cc);
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "ambient p-norm %s strictly convex; straight segment %s "
                      "within step of the set (worst gap %.12g over %zu samples)",
                      ambient->strictly_convex() ? "is" : "is not",
                      cover.covered ? "stays" : "falls outside", cover.worst_gap,
                      cover.samples);
        rep.notes.push_back(buf);
    }
    return rep;
}

ClassificationReport length_space_test(const FiniteMetricSpace& s, double budget,
                                       Tolerances tol) {
    if (!(budget >= 0)) throw std::invalid_argument("budget must be nonnegative");
    ClassificationReport rep;
    rep.query = "length-space";
    rep.parameters = {{"budget", fmt_param(budget)}};
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            double d = s.dist(i, j);
            if (!(d > 0)) continue;
            if (!mid_set(s, i, j, budget / d, tol).empty()) continue;
            Witness w;
            w.kind = "no-midpoint";
            w.points = {s.name(i), s.name(j)};
            w.values = {{"distance", d}, {"delta", budget / d}};
            w.note = "no point lies within (1+delta)/2 of both endpoints";
            rep.witnesses.push_back(std::move(w));
        }
    rep.verdict = rep.witnesses.empty() ? Verdict::positive : Verdict::negative;
    rep.notes.push_back(rep.witnesses.empty()
                            ? "every pair admits an approximate midpoint within "
                              "the absolute slack budget"
                            : "listed pairs admit no approximate midpoint at "
                              "this budget");
    return rep;
}

LensScanResult lens_diameter_scan(const EmbeddedPointSet& s, std::size_t x,
                                  std::size_t y, double r,
                                  const std::vector<std::size_t>& n_list,
                                  Tolerances tol) {
    if (n_list.empty()) throw std::invalid_argument("need at least one n");
    LensScanResult res;
    res.strictly_convex = s.strictly_convex();
    for (std::size_t n : n_list) {
        if (n == 0) throw std::invalid_argument("n must be positive");
        LensScanRow row;
        row.n = n;
        row.eps = 1.0 / double(n);
        auto members = lens(s, x, y, r, row.eps, tol);
        row.members = members.size();
        row.diameter = lens_diameter(s, members);
        res.rows.push_back(row);
    }
    const auto& first = res.rows.front();
    const auto& last = res.rows.back();
    if (first.diameter && last.diameter && *first.diameter > 0)
        res.plateau = !res.strictly_convex &&
                      *last.diameter > 0.25 * (*first.diameter);
    return res;
}

ClassificationReport lens_scan_report(const EmbeddedPointSet& s, std::size_t x,
                                      std::size_t y, double r,
                                      const std::vector<std::size_t>& n_list,
                                      Tolerances tol) {
    LensScanResult scan = lens_diameter_scan(s, x, y, r, n_list, tol);
    ClassificationReport rep;
    rep.query = "lens-scan";
    rep.parameters = {{"x", s.name(x)},
                      {"y", s.name(y)},
                      {"r", fmt_param(r)},
                      {"p", std::isinf(s.p()) ? "inf" : fmt_param(s.p())},
                      {"scales", std::to_string(n_list.size())}};
    for (const auto& row : scan.rows) {
        Witness w;
        w.kind = "lens";
        w.points = {s.name(x), s.name(y)};
        w.values = {{"n", double(row.n)},
                    {"eps", row.eps},
                    {"members", double(row.members)}};
        if (row.diameter) w.values.emplace_back("diameter", *row.diameter);
        w.note = row.diameter ? "" : "lens empty";
        rep.witnesses.push_back(std::move(w));
    }
    rep.verdict = scan.plateau ? Verdict::negative : Verdict::positive;
    rep.notes.push_back(scan.plateau
                            ? "lens diameter plateaus at a positive constant: "
                              "the ambient norm keeps the balls' intersection fat"
                            : "lens diameter shrinks with eps");
    if (!scan.strictly_convex)
        rep.notes.push_back("ambient p-norm is not strictly convex");
    return rep;
}

}  // namespace lipfree
