#include "lipfree/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace lipfree {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_coord(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    std::string s = buf;
    if (s == "-0") s = "0";
    return s;
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> names,
                                     std::vector<double> dist_row_major,
                                     std::size_t base)
    : n_(names.size()),
      names_(std::move(names)),
      d_(std::move(dist_row_major)),
      base_(base) {
    if (n_ == 0) throw std::invalid_argument("metric space needs at least one point");
    if (d_.size() != n_ * n_)
        throw std::invalid_argument("distance matrix is not " +
                                    std::to_string(n_) + "x" + std::to_string(n_));
    if (base_ >= n_) throw std::invalid_argument("base index out of range");
    min_pos_ = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
            double d = dist(i, j);
            if (d > 0 && (min_pos_ == 0 || d < min_pos_)) min_pos_ = d;
        }
}

std::optional<std::size_t> FiniteMetricSpace::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

EmbeddedPointSet::EmbeddedPointSet(std::vector<std::vector<double>> coords,
                                   double p, std::size_t base,
                                   std::vector<std::string> names)
    : coords_(std::move(coords)), p_(p), base_(base), names_(std::move(names)) {
    if (coords_.empty()) throw std::invalid_argument("point set needs at least one point");
    dim_ = coords_[0].size();
    if (dim_ == 0) throw std::invalid_argument("points need at least one coordinate");
    for (const auto& c : coords_) {
        if (c.size() != dim_) throw std::invalid_argument("inconsistent coordinate dimension");
        for (double v : c)
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite coordinate");
    }
    if (base_ >= coords_.size()) throw std::invalid_argument("base index out of range");
    if (!(p_ >= 1.0) && !std::isinf(p_))
        throw std::invalid_argument("p must lie in [1, inf]");
    if (names_.empty()) {
        names_.reserve(coords_.size());
        for (const auto& c : coords_) {
            if (dim_ == 1) {
                names_.push_back(fmt_coord(c[0]));
            } else {
                std::string s = "(";
                for (std::size_t k = 0; k < dim_; ++k) {
                    if (k) s += ",";
                    s += fmt_coord(c[k]);
                }
                s += ")";
                names_.push_back(std::move(s));
            }
        }
    } else if (names_.size() != coords_.size()) {
        throw std::invalid_argument("names/coords size mismatch");
    }
}

double EmbeddedPointSet::dist_to(std::size_t i, const std::vector<double>& pt) const {
    const auto& a = coords_[i];
    if (std::isinf(p_)) {
        double m = 0;
        for (std::size_t k = 0; k < dim_; ++k) m = std::max(m, std::fabs(a[k] - pt[k]));
        return m;
    }
    if (p_ == 1.0) {
        double s = 0;
        for (std::size_t k = 0; k < dim_; ++k) s += std::fabs(a[k] - pt[k]);
        return s;
    }
    if (p_ == 2.0) {
        double s = 0;
        for (std::size_t k = 0; k < dim_; ++k) {
            double t = a[k] - pt[k];
            s += t * t;
        }
        return std::sqrt(s);
    }
    double s = 0;
    for (std::size_t k = 0; k < dim_; ++k) s += std::pow(std::fabs(a[k] - pt[k]), p_);
    return std::pow(s, 1.0 / p_);
}

double EmbeddedPointSet::dist(std::size_t i, std::size_t j) const {
    return dist_to(i, coords_[j]);
}

bool EmbeddedPointSet::strictly_convex() const {
    return p_ > 1.0 && !std::isinf(p_);
}

FiniteMetricSpace EmbeddedPointSet::to_metric_space() const {
    std::size_t n = size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = dist(i, j);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    return FiniteMetricSpace(names_, std::move(d), base_);
}

std::string MetricViolation::describe(const FiniteMetricSpace& s) const {
    auto nm = [&](std::size_t a) { return s.name(a); };
    char buf[160];
    switch (kind) {
        case Kind::nonfinite:
            std::snprintf(buf, sizeof buf, "d(%s,%s) is not finite", nm(i).c_str(),
                          nm(j).c_str());
            break;
        case Kind::diagonal:
            std::snprintf(buf, sizeof buf, "d(%s,%s) = %.12g, expected 0",
                          nm(i).c_str(), nm(j).c_str(), lhs);
            break;
        case Kind::symmetry:
            std::snprintf(buf, sizeof buf, "d(%s,%s) = %.12g but d(%s,%s) = %.12g",
                          nm(i).c_str(), nm(j).c_str(), lhs, nm(j).c_str(),
                          nm(i).c_str(), rhs);
            break;
        case Kind::positivity:
            std::snprintf(buf, sizeof buf, "d(%s,%s) = %.12g, expected > 0",
                          nm(i).c_str(), nm(j).c_str(), lhs);
            break;
        case Kind::triangle:
            std::snprintf(buf, sizeof buf,
                          "d(%s,%s) = %.12g > %.12g = d(%s,%s) + d(%s,%s)",
                          nm(i).c_str(), nm(j).c_str(), lhs, rhs, nm(i).c_str(),
                          nm(k).c_str(), nm(k).c_str(), nm(j).c_str());
            break;
    }
    return buf;
}

ValidationReport validate_metric(const FiniteMetricSpace& s, Tolerances tol) {
    ValidationReport rep;
    constexpr std::size_t kCap = 100000;
    auto add = [&](MetricViolation v) {
        ++rep.total_found;
        if (rep.violations.size() < kCap)
            rep.violations.push_back(v);
        else
            rep.truncated = true;
    };
    std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double d = s.dist(i, j);
            if (!std::isfinite(d)) {
                add({MetricViolation::Kind::nonfinite, i, j, 0, d, 0});
                continue;
            }
            if (i == j && d != 0.0)
                add({MetricViolation::Kind::diagonal, i, j, 0, d, 0});
            if (i < j) {
                double dj = s.dist(j, i);
                if (std::isfinite(dj) && std::fabs(d - dj) > tol.tau)
                    add({MetricViolation::Kind::symmetry, i, j, 0, d, dj});
                if (d <= 0.0 || dj <= 0.0)
                    add({MetricViolation::Kind::positivity, i, j, 0, std::min(d, dj), 0});
            }
        }
    // Triangle pass only over finite entries: garbage is reported once above.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double dij = s.dist(i, j);
            if (!std::isfinite(dij)) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                double dik = s.dist(i, k), dkj = s.dist(k, j);
                if (!std::isfinite(dik) || !std::isfinite(dkj)) continue;
                if (dij > dik + dkj + tol.tau)
                    add({MetricViolation::Kind::triangle, i, j, k, dij, dik + dkj});
            }
        }
    return rep;
}

std::vector<std::size_t> metric_segment(const FiniteMetricSpace& s, std::size_t x,
                                        std::size_t y, double eta, Tolerances tol) {
    if (x >= s.size() || y >= s.size()) throw std::invalid_argument("point index out of range");
    if (x == y) throw std::invalid_argument("metric_segment needs two distinct points");
    if (eta < 0) throw std::invalid_argument("eta must be nonnegative");
    std::vector<std::size_t> out;
    double d = s.dist(x, y);
    for (std::size_t z = 0; z < s.size(); ++z) {
        if (z == x || z == y) {
            out.push_back(z);
            continue;
        }
        if (s.dist(x, z) + s.dist(z, y) <= d + eta + tol.tau) out.push_back(z);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> trivial_segment_pairs(
    const FiniteMetricSpace& s, double eta, double h, Tolerances tol) {
    if (eta < 0 || h < 0) throw std::invalid_argument("eta and h must be nonnegative");
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t n = s.size();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            double d = s.dist(u, v);
            // Strict separation with slack: a pair exactly at the cutoff
            // (adjacent grid points under roundoff) must not qualify.
            if (!(d > h + tol.tau)) continue;
            bool trivial = true;
            for (std::size_t z = 0; z < n && trivial; ++z) {
                if (z == u || z == v) continue;
                if (s.dist(u, z) + s.dist(z, v) <= d + eta + tol.tau) trivial = false;
            }
            if (trivial) out.emplace_back(u, v);
        }
    return out;
}

std::vector<std::size_t> mid_set(const FiniteMetricSpace& s, std::size_t x,
                                 std::size_t y, double delta, Tolerances tol) {
    if (x >= s.size() || y >= s.size()) throw std::invalid_argument("point index out of range");
    if (x == y) throw std::invalid_argument("mid_set needs two distinct points");
    if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
    double r = (1.0 + delta) / 2.0 * s.dist(x, y);
    std::vector<std::size_t> out;
    for (std::size_t z = 0; z < s.size(); ++z)
        if (s.dist(x, z) <= r + tol.tau && s.dist(y, z) <= r + tol.tau)
            out.push_back(z);
    return out;
}

PathResult shortest_constrained_path(const FiniteMetricSpace& s, std::size_t x,
                                     std::size_t y, double step, Tolerances tol) {
    if (x >= s.size() || y >= s.size()) throw std::invalid_argument("point index out of range");
    if (step <= 0) throw std::invalid_argument("step must be positive");
    std::size_t n = s.size();
    std::vector<double> dist(n, kInf);
    std::vector<std::size_t> pred(n, n);
    std::vector<bool> done(n, false);
    dist[y] = 0;
    for (;;) {
        std::size_t u = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && dist[i] < kInf && (u == n || dist[i] < dist[u])) u = i;
        if (u == n) break;
        done[u] = true;
        if (u == x) break;
        for (std::size_t w = 0; w < n; ++w) {
            if (done[w]) continue;
            double e = s.dist(u, w);
            if (e > step + tol.tau) continue;
            if (dist[u] + e < dist[w]) {
                dist[w] = dist[u] + e;
                pred[w] = u;
            }
        }
    }
    PathResult res;
    if (dist[x] == kInf) return res;
    res.connected = true;
    res.length = dist[x];
    std::vector<std::size_t> rev;
    for (std::size_t c = x; c != y; c = pred[c]) rev.push_back(c);
    rev.push_back(y);
    res.points.assign(rev.rbegin(), rev.rend());
    return res;
}

bool is_connectable(const FiniteMetricSpace& s, std::size_t x, std::size_t y,
                    double eps, double step, Tolerances tol) {
    if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
    PathResult p = shortest_constrained_path(s, x, y, step, tol);
    return p.connected && p.length <= s.dist(x, y) + eps + tol.tau;
}

namespace {

template <typename Space>
std::vector<std::size_t> lens_impl(const Space& s, std::size_t x, std::size_t y,
                                   double r, double eps, Tolerances tol) {
    if (x >= s.size() || y >= s.size()) throw std::invalid_argument("point index out of range");
    if (x == y) throw std::invalid_argument("lens needs two distinct points");
    double d = s.dist(x, y);
    if (!(r > 0) || !(r < d))
        throw std::domain_error("lens radius must lie strictly between 0 and d(x,y)");
    if (eps < 0) throw std::invalid_argument("eps must be nonnegative");
    std::vector<std::size_t> out;
    for (std::size_t z = 0; z < s.size(); ++z)
        if (s.dist(x, z) <= r + eps + tol.tau && s.dist(y, z) <= d - r + eps + tol.tau)
            out.push_back(z);
    return out;
}

template <typename Space>
std::optional<double> lens_diameter_impl(const Space& s,
                                         const std::vector<std::size_t>& members) {
    if (members.empty()) return std::nullopt;
    double m = 0;
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
            m = std::max(m, s.dist(members[a], members[b]));
    return m;
}

}  // namespace

std::vector<std::size_t> lens(const FiniteMetricSpace& s, std::size_t x,
                              std::size_t y, double r, double eps, Tolerances tol) {
    return lens_impl(s, x, y, r, eps, tol);
}

std::vector<std::size_t> lens(const EmbeddedPointSet& s, std::size_t x,
                              std::size_t y, double r, double eps, Tolerances tol) {
    return lens_impl(s, x, y, r, eps, tol);
}

std::optional<double> lens_diameter(const FiniteMetricSpace& s,
                                    const std::vector<std::size_t>& members) {
    return lens_diameter_impl(s, members);
}

std::optional<double> lens_diameter(const EmbeddedPointSet& s,
                                    const std::vector<std::size_t>& members) {
    return lens_diameter_impl(s, members);
}

SegmentCover segment_in_set(const EmbeddedPointSet& s, std::size_t x, std::size_t y,
                            double tol_dist, std::size_t n_samples, Tolerances tol) {
    if (x >= s.size() || y >= s.size()) throw std::invalid_argument("point index out of range");
    if (n_samples < 2) throw std::invalid_argument("need at least two samples");
    if (tol_dist < 0) throw std::invalid_argument("tolerance must be nonnegative");
    SegmentCover cover;
    cover.covered = true;
    cover.samples = n_samples;
    const auto& a = s.coord(x);
    const auto& b = s.coord(y);
    std::vector<double> pt(s.dim());
    for (std::size_t i = 0; i < n_samples; ++i) {
        double t = double(i) / double(n_samples - 1);
        for (std::size_t k = 0; k < s.dim(); ++k) pt[k] = (1.0 - t) * a[k] + t * b[k];
        double best = kInf;
        for (std::size_t z = 0; z < s.size(); ++z) best = std::min(best, s.dist_to(z, pt));
        cover.worst_gap = std::max(cover.worst_gap, best);
        if (best > tol_dist + tol.tau && cover.covered) {
            cover.covered = false;
            cover.first_uncovered = i;
        }
    }
    return cover;
}

}  // namespace lipfree
