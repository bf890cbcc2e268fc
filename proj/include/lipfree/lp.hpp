#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipfree/tolerances.hpp"

namespace lipfree {

class SolverError : public std::runtime_error {
  public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

enum class LpStatus { optimal, infeasible, unbounded, stalled };

const char* to_string(LpStatus s);

struct LpRow {
    std::vector<double> coeffs;
    double rhs = 0;
    char rel = '<';  // '<' for <=, '>' for >=, '=' for equality
};

struct LpBound {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

// maximize objective . x  subject to rows and optional variable bounds.
// Variables are free unless bounds are given (empty bounds = all free).
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<double> objective;
    std::vector<LpRow> rows;
    std::vector<LpBound> bounds;  // empty or size num_vars
};

struct LpSolution {
    LpStatus status = LpStatus::stalled;
    double value = 0;
    std::vector<double> x;
    std::size_t iterations = 0;
};

// Dense two-phase simplex. Bland's smallest-index rule for both the
// entering and leaving choice: deterministic and cycle-free. max_iters
// 0 picks a cap from the problem size; hitting the cap yields
// LpStatus::stalled, never a silently non-optimal answer.
LpSolution solve_lp(const LinearProgram& lp, Tolerances tol = {},
                    std::size_t max_iters = 0);

}  // namespace lipfree
