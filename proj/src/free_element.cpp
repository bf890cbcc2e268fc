#include "lipfree/free_element.hpp"

#include <stdexcept>

namespace lipfree {

FreeElement FreeElement::make(
    const FiniteMetricSpace& s,
    const std::vector<std::pair<std::size_t, double>>& terms) {
    FreeElement e;
    for (auto [i, c] : terms) {
        if (i >= s.size()) throw std::invalid_argument("term index out of range");
        e.c_[i] += c;
    }
    e.c_.erase(s.base());
    for (auto it = e.c_.begin(); it != e.c_.end();)
        it = (it->second == 0.0) ? e.c_.erase(it) : std::next(it);
    return e;
}

std::vector<std::size_t> FreeElement::support() const {
    std::vector<std::size_t> out;
    out.reserve(c_.size());
    for (auto& [i, c] : c_) out.push_back(i);
    return out;
}

double FreeElement::coeff(std::size_t i) const {
    auto it = c_.find(i);
    return it == c_.end() ? 0.0 : it->second;
}

FreeElement FreeElement::scaled(double a) const {
    FreeElement e;
    if (a == 0.0) return e;
    for (auto& [i, c] : c_) e.c_[i] = a * c;
    return e;
}

FreeElement operator+(const FreeElement& a, const FreeElement& b) {
    FreeElement e = a;
    for (auto& [i, c] : b.c_) {
        double v = (e.c_[i] += c);
        if (v == 0.0) e.c_.erase(i);
    }
    return e;
}

FreeElement operator-(const FreeElement& a, const FreeElement& b) {
    FreeElement e = a;
    for (auto& [i, c] : b.c_) {
        double v = (e.c_[i] -= c);
        if (v == 0.0) e.c_.erase(i);
    }
    return e;
}

FreeElement Molecule::to_free_element(const FiniteMetricSpace& s) const {
    if (x == y) throw std::invalid_argument("molecule needs two distinct points");
    double d = s.dist(x, y);
    if (!(d > 0)) throw std::invalid_argument("molecule over zero distance");
    return FreeElement::make(s, {{x, 1.0 / d}, {y, -1.0 / d}});
}

}  // namespace lipfree
