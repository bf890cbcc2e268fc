#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lipfree/free_element.hpp"
#include "lipfree/freespace.hpp"
#include "lipfree/metric_space.hpp"
#include "lipfree/tolerances.hpp"

namespace lipfree {

enum class Verdict { positive, negative, inconclusive };

const char* to_string(Verdict v);

struct Witness {
    std::string kind;
    std::vector<std::string> points;
    std::vector<std::pair<std::string, double>> values;
    std::string note;
};

struct CrossCheck {
    std::string name;
    bool passed = false;
    double residual = 0;
    double tolerance = 0;
};

// Uniform result shape for all classification queries. Parameters
// echo every knob that shaped the verdict (resolution, slack, seeds),
// in insertion order, so reports are self-describing and byte-stable.
struct ClassificationReport {
    std::string query;
    std::vector<std::pair<std::string, std::string>> parameters;
    Verdict verdict = Verdict::inconclusive;
    std::vector<Witness> witnesses;
    std::vector<CrossCheck> cross_checks;
    std::vector<std::string> notes;
};

// Molecule test against every discrete denting witness (trivial-segment
// pair at slack eta, separation above h): the four-distance inequality
//   d(x,y) + d(u,v) <= min(d(x,u) + d(y,v), d(x,v) + d(y,u))
// must hold for each. Every pair is cross-checked by the two-LP
// distance test (norm(m_xy - m_uv) and norm(m_xy + m_uv) both 2);
// disagreement between the criteria yields an inconclusive verdict
// carrying both certificates.
ClassificationReport classify_daugavet_molecule(const FiniteMetricSpace& s,
                                                std::size_t x, std::size_t y,
                                                double eta, double h,
                                                Tolerances tol = {});

// Same quantified test for a general norm-one element, LP-only:
// distance to +-m_{u,v} must be 2 for every denting witness. Negative
// verdicts list violating witnesses closest-first.
ClassificationReport classify_daugavet_element(const FiniteMetricSpace& s,
                                               const FreeElement& mu,
                                               double eta, double h,
                                               Tolerances tol = {});

// Necessary lens condition: B(x, r+eps) and B(y, d(x,y)-r+eps) must
// meet for every tested radius. Empty r_list tests every realized
// distance d(x,z) strictly between 0 and d(x,y).
ClassificationReport delta_ball_test(const FiniteMetricSpace& s, std::size_t x,
                                     std::size_t y, std::vector<double> r_list,
                                     double eps, Tolerances tol = {});

struct NamedSlice {
    std::string name;
    SliceSpec slice;
};

struct SliceFamily {
    std::vector<NamedSlice> slices;
    std::vector<std::string> notes;  // skipped builtins etc.
};

// Builtin slices around the molecule over (x,y): its norming
// certificate, the rational norming function, vertices of the optimal
// dual face under seeded random objectives, and the two-plateau
// functional at depth 2*alpha (included only when it contains the
// molecule; skipped builtins are named in notes). Functionals are
// sign-oriented toward the molecule before the containment check.
SliceFamily build_slice_family(const FiniteMetricSpace& s, std::size_t x,
                               std::size_t y, double alpha,
                               std::size_t n_random, std::uint64_t seed,
                               bool include_plateau = true,
                               Tolerances tol = {});

// Refutation-only small-separation probe: negative when some slice in
// the family contains no molecule with separation <= scale. A positive
// verdict means "unrefuted at this scale", never a proof; the report
// says so.
ClassificationReport delta_slice_test(const FiniteMetricSpace& s,
                                      std::size_t x, std::size_t y,
                                      const SliceFamily& family, double scale,
                                      Tolerances tol = {});

// Step-constrained path test: positive when a path from y to x with
// steps <= step has length <= d(x,y) + eps. Positive verdicts carry
// the witness path plus per-slice step-slope checks (some step must
// nearly norm any slice functional containing the molecule). When an
// ambient embedding is supplied, the straight-segment containment test
// runs too and its agreement is reported.
ClassificationReport classify_connectable(const FiniteMetricSpace& s,
                                          std::size_t x, std::size_t y,
                                          double eps, double step,
                                          const EmbeddedPointSet* ambient = nullptr,
                                          double slice_alpha = 0.25,
                                          Tolerances tol = {});

// Approximate-midpoint sweep: every pair must admit a midpoint within
// the absolute slack budget (per-pair relative delta = budget/d(x,y)).
// Negative verdicts list all failing pairs.
ClassificationReport length_space_test(const FiniteMetricSpace& s,
                                       double budget, Tolerances tol = {});

struct LensScanRow {
    std::size_t n = 0;
    double eps = 0;
    std::optional<double> diameter;  // nullopt when the lens is empty
    std::size_t members = 0;
};

struct LensScanResult {
    std::vector<LensScanRow> rows;
    bool strictly_convex = false;
    bool plateau = false;  // diameter stays bounded away from zero
};

// Lens diameters at shrinking slack eps = 1/n over an embedded sample.
// In a strictly convex ambient norm the diameters collapse; p = 1 or
// infinity can plateau at a positive constant, which is flagged.
LensScanResult lens_diameter_scan(const EmbeddedPointSet& s, std::size_t x,
                                  std::size_t y, double r,
                                  const std::vector<std::size_t>& n_list,
                                  Tolerances tol = {});

ClassificationReport lens_scan_report(const EmbeddedPointSet& s, std::size_t x,
                                      std::size_t y, double r,
                                      const std::vector<std::size_t>& n_list,
                                      Tolerances tol = {});

}  // namespace lipfree
