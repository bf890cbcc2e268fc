#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "lipfree/metric_space.hpp"

namespace lipfree {

// Finitely supported element sum lambda_i * delta_{x_i} of the free
// space over a metric space. Normal form: the base point never appears
// (delta_base = 0) and exact-zero coefficients are dropped, so support
// and coefficients are canonical. Iteration order is index order.
class FreeElement {
  public:
    FreeElement() = default;

    // Folds duplicate indices, erases the base term and zero terms.
    static FreeElement make(
        const FiniteMetricSpace& s,
        const std::vector<std::pair<std::size_t, double>>& terms);

    const std::map<std::size_t, double>& coeffs() const { return c_; }
    bool zero() const { return c_.empty(); }
    std::vector<std::size_t> support() const;
    double coeff(std::size_t i) const;

    FreeElement scaled(double a) const;
    friend FreeElement operator+(const FreeElement& a, const FreeElement& b);
    friend FreeElement operator-(const FreeElement& a, const FreeElement& b);

  private:
    std::map<std::size_t, double> c_;
};

// Elementary norm-one element (delta_x - delta_y) / d(x,y), x != y.
struct Molecule {
    std::size_t x, y;
    FreeElement to_free_element(const FiniteMetricSpace& s) const;
};

}  // namespace lipfree
