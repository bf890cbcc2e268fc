#include "lipfree/examples.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lipfree {

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    std::string s = buf;
    if (s == "-0") s = "0";
    return s;
}

ExampleSpace from_embedded(EmbeddedPointSet e) {
    FiniteMetricSpace m = e.to_metric_space();
    return ExampleSpace{std::move(m), std::move(e)};
}

}  // namespace

ExampleSpace make_halfline_interval(std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    std::vector<std::vector<double>> coords;
    coords.push_back({-1.0});
    for (std::size_t i = 0; i <= k; ++i) coords.push_back({double(i) / double(k)});
    return from_embedded(EmbeddedPointSet(std::move(coords), 2.0, 1));
}

ExampleSpace make_interval(std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    std::vector<std::vector<double>> coords;
    for (std::size_t i = 0; i <= k; ++i) coords.push_back({double(i) / double(k)});
    return from_embedded(EmbeddedPointSet(std::move(coords), 2.0, 0));
}

ExampleSpace make_bridge(std::size_t k, double r) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    if (!(r > 0)) throw std::invalid_argument("pillar height must be positive");
    std::vector<std::vector<double>> coords;
    for (std::size_t i = 0; i <= k; ++i) coords.push_back({double(i) / double(k), 0.0});
    coords.push_back({0.0, r});
    coords.push_back({1.0, r});
    return from_embedded(EmbeddedPointSet(std::move(coords), 2.0, 0));
}

ExampleSpace make_quotient_metric(std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    std::size_t n = k + 1;
    std::vector<std::string> names(n);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = double(i) / double(k);
        names[i] = "x" + fmt9(t[i]);
    }
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = std::min(t[i] + t[j], 2.0 - t[i] - t[j]);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    return ExampleSpace{FiniteMetricSpace(std::move(names), std::move(d), 0),
                        std::nullopt};
}

ExampleSpace make_circle(std::size_t k) {
    if (k < 3) throw std::invalid_argument("circle needs at least three points");
    double step = 2.0 * M_PI / double(k);
    std::vector<std::string> names(k);
    for (std::size_t i = 0; i < k; ++i) names[i] = "c" + std::to_string(i);
    std::vector<double> d(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            std::size_t gap = std::min(j - i, k - (j - i));
            double v = step * double(gap);
            d[i * k + j] = v;
            d[j * k + i] = v;
        }
    return ExampleSpace{FiniteMetricSpace(std::move(names), std::move(d), 0),
                        std::nullopt};
}

ExampleSpace make_random_planar(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<std::vector<double>> coords(n);
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) {
        coords[i] = {uni(rng), uni(rng)};
        names[i] = "r" + std::to_string(i);
    }
    return from_embedded(EmbeddedPointSet(std::move(coords), 2.0, 0, std::move(names)));
}

FiniteMetricSpace make_random_metric(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    std::mt19937_64 rng(seed);
    // Entries in [1,2]: triangle inequality holds automatically.
    std::uniform_real_distribution<double> uni(1.0, 2.0);
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = "p" + std::to_string(i);
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = uni(rng);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    return FiniteMetricSpace(std::move(names), std::move(d), 0);
}

ExampleSpace make_example(const std::string& name, std::size_t k, double r,
                          std::size_t n, std::uint64_t seed) {
    if (name == "halfline-interval") return make_halfline_interval(k);
    if (name == "interval") return make_interval(k);
    if (name == "bridge") return make_bridge(k, r);
    if (name == "quotient-metric") return make_quotient_metric(k);
    if (name == "circle") return make_circle(k);
    if (name == "random") return make_random_planar(n, seed);
    throw std::invalid_argument(
        "unknown example '" + name +
        "' (known: halfline-interval, interval, bridge, quotient-metric, "
        "circle, random)");
}

EmbeddedPointSet make_plane_grid(double x0, double x1, double y0, double y1,
                                 double step, double p,
                                 const std::vector<std::vector<double>>& extra) {
    if (!(step > 0)) throw std::invalid_argument("step must be positive");
    if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("empty grid box");
    std::vector<std::vector<double>> coords = extra;
    std::size_t nx = std::size_t((x1 - x0) / step + 0.5) + 1;
    std::size_t ny = std::size_t((y1 - y0) / step + 0.5) + 1;
    coords.reserve(coords.size() + nx * ny);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            coords.push_back({x0 + double(i) * step, y0 + double(j) * step});
    std::vector<std::string> names(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) names[i] = "g" + std::to_string(i);
    return EmbeddedPointSet(std::move(coords), p, 0, std::move(names));
}

}  // namespace lipfree
