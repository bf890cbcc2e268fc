#include "lipfree/lp.hpp"

#include <algorithm>
#include <cmath>

namespace lipfree {

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
        case LpStatus::stalled: return "stalled";
    }
    return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEnterTol = 1e-9;   // reduced cost threshold
constexpr double kPivotTol = 1e-11;  // smallest usable pivot element
constexpr double kTieTol = 1e-12;    // ratio-test tie width

// Dense tableau with an explicit reduced-cost row. Basis columns stay
// unit columns; pivots update every row plus the cost row.
struct Tableau {
    std::size_t rows = 0, cols = 0;  // cols excludes the rhs slot
    std::vector<std::vector<double>> t;
    std::vector<double> obj;  // reduced costs, size cols
    double value = 0;
    std::vector<std::size_t> basis;

    double& at(std::size_t r, std::size_t c) { return t[r][c]; }
    double& rhs(std::size_t r) { return t[r][cols]; }

    void pivot(std::size_t r, std::size_t q) {
        double piv = t[r][q];
        for (std::size_t j = 0; j <= cols; ++j) t[r][j] /= piv;
        t[r][q] = 1.0;  // kill roundoff on the pivot itself
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            double f = t[i][q];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
            t[i][q] = 0.0;
        }
        double f = obj[q];
        if (f != 0.0) {
            value += f * t[r][cols];
            for (std::size_t j = 0; j < cols; ++j) obj[j] -= f * t[r][j];
            obj[q] = 0.0;
        }
        basis[r] = q;
    }

    // Loads a fresh objective and eliminates the basic columns so obj
    // holds true reduced costs again.
    void install_objective(const std::vector<double>& c) {
        obj = c;
        value = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            double f = obj[basis[r]];
            if (f == 0.0) continue;
            value += f * t[r][cols];
            for (std::size_t j = 0; j < cols; ++j) obj[j] -= f * t[r][j];
            obj[basis[r]] = 0.0;
        }
    }

    // Bland's rule: smallest eligible entering index; leaving row picked
    // by minimum ratio with ties broken toward the smallest basis index.
    LpStatus run(std::size_t max_iters, std::size_t banned_from,
                 std::size_t* iter_count) {
        while ((*iter_count) < max_iters) {
            std::size_t q = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (j >= banned_from) break;
                if (obj[j] > kEnterTol) {
                    q = j;
                    break;
                }
            }
            if (q == cols) return LpStatus::optimal;
            std::size_t r = rows;
            double best = kInf;
            for (std::size_t i = 0; i < rows; ++i) {
                double a = t[i][q];
                if (a <= kPivotTol) continue;
                double ratio = t[i][cols] / a;
                if (ratio < best - kTieTol ||
                    (ratio < best + kTieTol && (r == rows || basis[i] < basis[r]))) {
                    best = ratio;
                    r = i;
                }
            }
            if (r == rows) return LpStatus::unbounded;
            pivot(r, q);
            ++(*iter_count);
        }
        return LpStatus::stalled;
    }
};

enum class VarKind { free_split, shift_lo, shift_hi };

struct VarMap {
    VarKind kind;
    std::size_t col = 0;   // first internal column
    double shift = 0;      // lo for shift_lo, hi for shift_hi
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, Tolerances tol, std::size_t max_iters) {
    if (lp.num_vars == 0) throw std::invalid_argument("LP needs at least one variable");
    if (lp.objective.size() != lp.num_vars)
        throw std::invalid_argument("objective size mismatch");
    if (!lp.bounds.empty() && lp.bounds.size() != lp.num_vars)
        throw std::invalid_argument("bounds size mismatch");
    for (const auto& row : lp.rows) {
        if (row.coeffs.size() != lp.num_vars)
            throw std::invalid_argument("row coefficient size mismatch");
        if (!std::isfinite(row.rhs)) throw std::invalid_argument("non-finite rhs");
        if (row.rel != '<' && row.rel != '>' && row.rel != '=')
            throw std::invalid_argument("row relation must be '<', '>' or '='");
    }

    // Internal variables: free variables split into a difference of two
    // nonnegatives, bounded ones shifted to start at zero.
    std::vector<VarMap> vmap(lp.num_vars);
    std::size_t ncols = 0;
    std::vector<std::pair<std::size_t, double>> upper_rows;  // (var, hi-lo)
    for (std::size_t v = 0; v < lp.num_vars; ++v) {
        LpBound b = lp.bounds.empty() ? LpBound{} : lp.bounds[v];
        if (!(b.lo <= b.hi)) throw std::invalid_argument("empty variable bound interval");
        if (b.lo == -kInf && b.hi == kInf) {
            vmap[v] = {VarKind::free_split, ncols, 0};
            ncols += 2;
        } else if (b.lo != -kInf) {
            vmap[v] = {VarKind::shift_lo, ncols, b.lo};
            ncols += 1;
            if (b.hi != kInf) upper_rows.emplace_back(v, b.hi - b.lo);
        } else {
            vmap[v] = {VarKind::shift_hi, ncols, b.hi};
            ncols += 1;
        }
    }

    struct RawRow {
        std::vector<double> a;
        double b;
        char rel;
    };
    std::vector<RawRow> raw;
    raw.reserve(lp.rows.size() + upper_rows.size());
    double obj_shift = 0;
    std::vector<double> cost(ncols, 0.0);
    for (std::size_t v = 0; v < lp.num_vars; ++v) {
        double c = lp.objective[v];
        switch (vmap[v].kind) {
            case VarKind::free_split:
                cost[vmap[v].col] = c;
                cost[vmap[v].col + 1] = -c;
                break;
            case VarKind::shift_lo:
                cost[vmap[v].col] = c;
                obj_shift += c * vmap[v].shift;
                break;
            case VarKind::shift_hi:
                cost[vmap[v].col] = -c;
                obj_shift += c * vmap[v].shift;
                break;
        }
    }
    auto expand_row = [&](const std::vector<double>& coeffs, double rhs, char rel) {
        RawRow r;
        r.a.assign(ncols, 0.0);
        r.b = rhs;
        r.rel = rel;
        for (std::size_t v = 0; v < lp.num_vars; ++v) {
            double a = coeffs[v];
            if (a == 0.0) continue;
            switch (vmap[v].kind) {
                case VarKind::free_split:
                    r.a[vmap[v].col] += a;
                    r.a[vmap[v].col + 1] -= a;
                    break;
                case VarKind::shift_lo:
                    r.a[vmap[v].col] += a;
                    r.b -= a * vmap[v].shift;
                    break;
                case VarKind::shift_hi:
                    r.a[vmap[v].col] -= a;
                    r.b -= a * vmap[v].shift;
                    break;
            }
        }
        raw.push_back(std::move(r));
    };
    for (const auto& row : lp.rows) expand_row(row.coeffs, row.rhs, row.rel);
    for (auto [v, width] : upper_rows) {
        RawRow r;
        r.a.assign(ncols, 0.0);
        r.a[vmap[v].col] = 1.0;
        r.b = width;
        r.rel = '<';
        raw.push_back(std::move(r));
    }

    // Standard form: nonnegative rhs, slack for <=, surplus + artificial
    // for >=, artificial for =. Slacks give the initial basis wherever
    // possible.
    std::size_t m = raw.size();
    std::size_t nslack = 0, nart = 0;
    for (auto& r : raw) {
        if (r.b < 0) {
            for (auto& a : r.a) a = -a;
            r.b = -r.b;
            if (r.rel == '<') r.rel = '>';
            else if (r.rel == '>') r.rel = '<';
        }
        if (r.rel == '<') ++nslack;
        else if (r.rel == '>') { ++nslack; ++nart; }
        else ++nart;
    }
    std::size_t slack_start = ncols;
    std::size_t art_start = ncols + nslack;
    std::size_t total = ncols + nslack + nart;

    Tableau tab;
    tab.rows = m;
    tab.cols = total;
    tab.t.assign(m, std::vector<double>(total + 1, 0.0));
    tab.basis.assign(m, 0);
    double scale = 1.0;
    {
        std::size_t si = slack_start, ai = art_start;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < ncols; ++j) tab.t[i][j] = raw[i].a[j];
            tab.t[i][total] = raw[i].b;
            scale = std::max(scale, std::fabs(raw[i].b));
            if (raw[i].rel == '<') {
                tab.t[i][si] = 1.0;
                tab.basis[i] = si++;
            } else if (raw[i].rel == '>') {
                tab.t[i][si] = -1.0;
                ++si;
                tab.t[i][ai] = 1.0;
                tab.basis[i] = ai++;
            } else {
                tab.t[i][ai] = 1.0;
                tab.basis[i] = ai++;
            }
        }
    }

    if (max_iters == 0) max_iters = 2000 + 40 * (m + total);
    LpSolution sol;
    sol.x.assign(lp.num_vars, 0.0);

    if (nart > 0) {
        std::vector<double> phase1(total, 0.0);
        for (std::size_t j = art_start; j < total; ++j) phase1[j] = -1.0;
        tab.install_objective(phase1);
        LpStatus st = tab.run(max_iters, total, &sol.iterations);
        if (st == LpStatus::stalled) {
            sol.status = LpStatus::stalled;
            return sol;
        }
        if (tab.value < -tol.tau_feas * scale) {
            sol.status = LpStatus::infeasible;
            return sol;
        }
        // Swap surviving artificials out of the basis when a structural
        // pivot exists; rows of zeros are redundant and stay inert.
        for (std::size_t r = 0; r < m; ++r) {
            if (tab.basis[r] < art_start) continue;
            for (std::size_t j = 0; j < art_start; ++j) {
                if (std::fabs(tab.t[r][j]) > kPivotTol) {
                    tab.pivot(r, j);
                    break;
                }
            }
        }
    }

    cost.resize(total, 0.0);  // slack and artificial columns cost nothing
    tab.install_objective(cost);
    LpStatus st = tab.run(max_iters, art_start, &sol.iterations);
    sol.status = st;
    if (st != LpStatus::optimal) return sol;

    std::vector<double> xi(total, 0.0);
    for (std::size_t r = 0; r < m; ++r) xi[tab.basis[r]] = tab.t[r][total];
    for (std::size_t v = 0; v < lp.num_vars; ++v) {
        switch (vmap[v].kind) {
            case VarKind::free_split:
                sol.x[v] = xi[vmap[v].col] - xi[vmap[v].col + 1];
                break;
            case VarKind::shift_lo:
                sol.x[v] = vmap[v].shift + xi[vmap[v].col];
                break;
            case VarKind::shift_hi:
                sol.x[v] = vmap[v].shift - xi[vmap[v].col];
                break;
        }
    }
    sol.value = tab.value + obj_shift;
    return sol;
}

}  // namespace lipfree
