#pragma once

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "lipfree/classify.hpp"
#include "lipfree/examples.hpp"
#include "lipfree/free_element.hpp"
#include "lipfree/freespace.hpp"
#include "lipfree/lipschitz.hpp"
#include "lipfree/metric_space.hpp"

namespace lipfree {

class ParseError : public std::runtime_error {
  public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Space files are JSON, either matrix form
//   {"points": [...], "matrix": [[...], ...], "base": i}
// or embedded form
//   {"points": [...], "coords": [[...], ...], "p": 2 | "inf", "base": i}
// ("points" optional in embedded form; names default to coordinates).
ExampleSpace space_from_json(const nlohmann::json& j);
ExampleSpace load_space(const std::string& path);

nlohmann::ordered_json space_to_json(const ExampleSpace& ex);
void save_space(const ExampleSpace& ex, const std::string& path);

// Element literals: whitespace-separated terms "coef*name" joined by
// "+" / "-", e.g. "1.0*x - 0.5*y + z". Point names may contain any
// non-space characters, so "(0.4,0)" and "-1" resolve fine.
FreeElement parse_element(const FiniteMetricSpace& s, const std::string& lit);

// Function literals (fields split on ';'):
//   "fxy:X;Y"          rational norming function for the molecule over X,Y
//   "dist-to:P"        t -> d(t, P), rebased
//   "plateau:A[;X;Y]"  two-plateau function at depth A (default pair:
//                      base and the farthest point from it)
//   "X=v;Y=w;..."      values on a subset, completed by inf envelope
//                      at the data's own constant
LipschitzFunction parse_function(const FiniteMetricSpace& s,
                                 const std::string& lit);

nlohmann::ordered_json report_to_json(const ClassificationReport& r);
std::string report_to_table(const ClassificationReport& r);

nlohmann::ordered_json norm_to_json(const FiniteMetricSpace& s,
                                    const FreeNormResult& r);
std::string norm_to_table(const FiniteMetricSpace& s, const FreeNormResult& r);

nlohmann::ordered_json validation_to_json(const FiniteMetricSpace& s,
                                          const ValidationReport& r);
std::string validation_to_table(const FiniteMetricSpace& s,
                                const ValidationReport& r);

nlohmann::ordered_json profile_to_json(const FiniteMetricSpace& s,
                                       const LocalityProfile& p);
std::string profile_to_table(const FiniteMetricSpace& s,
                             const LocalityProfile& p);

// Deterministic short formatting used in names and tables.
std::string fmt_num(double v);

}  // namespace lipfree
