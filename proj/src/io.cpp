#include "lipfree/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lipfree {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s = buf;
    if (s == "-0") s = "0";
    return s;
}

ExampleSpace space_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("space file must hold a JSON object");
    if (!j.contains("base") || !j["base"].is_number_unsigned())
        throw ParseError("space file needs a nonnegative integer 'base'");
    std::size_t base = j["base"].get<std::size_t>();

    std::vector<std::string> names;
    if (j.contains("points")) {
        if (!j["points"].is_array()) throw ParseError("'points' must be an array");
        for (const auto& p : j["points"]) {
            if (!p.is_string()) throw ParseError("point names must be strings");
            names.push_back(p.get<std::string>());
        }
    }

    if (j.contains("matrix")) {
        if (j.contains("coords")) throw ParseError("give 'matrix' or 'coords', not both");
        const auto& m = j["matrix"];
        if (!m.is_array() || m.empty()) throw ParseError("'matrix' must be a nonempty array");
        std::size_t n = m.size();
        if (names.empty())
            for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
        if (names.size() != n) throw ParseError("'points' and 'matrix' sizes differ");
        std::vector<double> d;
        d.reserve(n * n);
        for (const auto& row : m) {
            if (!row.is_array() || row.size() != n)
                throw ParseError("'matrix' must be square");
            for (const auto& v : row) {
                if (!v.is_number()) throw ParseError("matrix entries must be numbers");
                d.push_back(v.get<double>());
            }
        }
        try {
            return ExampleSpace{
                FiniteMetricSpace(std::move(names), std::move(d), base),
                std::nullopt};
        } catch (const std::invalid_argument& ex) {
            throw ParseError(ex.what());
        }
    }

    if (!j.contains("coords")) throw ParseError("space file needs 'matrix' or 'coords'");
    const auto& c = j["coords"];
    if (!c.is_array() || c.empty()) throw ParseError("'coords' must be a nonempty array");
    double p = 2.0;
    if (j.contains("p")) {
        if (j["p"].is_string()) {
            if (j["p"].get<std::string>() != "inf")
                throw ParseError("'p' must be a number or \"inf\"");
            p = std::numeric_limits<double>::infinity();
        } else if (j["p"].is_number()) {
            p = j["p"].get<double>();
        } else {
            throw ParseError("'p' must be a number or \"inf\"");
        }
    }
    std::vector<std::vector<double>> coords;
    for (const auto& row : c) {
        if (!row.is_array() || row.empty())
            throw ParseError("each coordinate row must be a nonempty array");
        std::vector<double> pt;
        for (const auto& v : row) {
            if (!v.is_number()) throw ParseError("coordinates must be numbers");
            pt.push_back(v.get<double>());
        }
        coords.push_back(std::move(pt));
    }
    try {
        EmbeddedPointSet e(std::move(coords), p, base, std::move(names));
        FiniteMetricSpace m = e.to_metric_space();
        return ExampleSpace{std::move(m), std::move(e)};
    } catch (const std::invalid_argument& ex) {
        throw ParseError(ex.what());
    }
}

ExampleSpace load_space(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& ex) {
        throw ParseError("invalid JSON in '" + path + "': " + ex.what());
    }
    return space_from_json(j);
}

ordered_json space_to_json(const ExampleSpace& ex) {
    ordered_json j;
    const FiniteMetricSpace& s = ex.space;
    j["points"] = s.names();
    if (ex.embedded) {
        const EmbeddedPointSet& e = *ex.embedded;
        ordered_json coords = ordered_json::array();
        for (std::size_t i = 0; i < e.size(); ++i) coords.push_back(e.coord(i));
        j["coords"] = std::move(coords);
        if (std::isinf(e.p()))
            j["p"] = "inf";
        else
            j["p"] = e.p();
    } else {
        ordered_json m = ordered_json::array();
        for (std::size_t i = 0; i < s.size(); ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t jx = 0; jx < s.size(); ++jx) row.push_back(s.dist(i, jx));
            m.push_back(std::move(row));
        }
        j["matrix"] = std::move(m);
    }
    j["base"] = s.base();
    return j;
}

void save_space(const ExampleSpace& ex, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << space_to_json(ex).dump(2) << "\n";
}

namespace {

std::size_t resolve(const FiniteMetricSpace& s, const std::string& name) {
    auto ix = s.index_of(name);
    if (!ix) throw ParseError("unknown point '" + name + "'");
    return *ix;
}

}  // namespace

FreeElement parse_element(const FiniteMetricSpace& s, const std::string& lit) {
    std::istringstream in(lit);
    std::vector<std::pair<std::size_t, double>> terms;
    std::string tok;
    double sign = 1.0;
    bool expect_term = true;
    while (in >> tok) {
        if (tok == "+" || tok == "-") {
            if (expect_term) throw ParseError("dangling operator in element literal");
            sign = (tok == "-") ? -1.0 : 1.0;
            expect_term = true;
            continue;
        }
        double coef = 1.0;
        std::string name = tok;
        if (auto star = tok.find('*'); star != std::string::npos) {
            std::string num = tok.substr(0, star);
            name = tok.substr(star + 1);
            try {
                std::size_t used = 0;
                coef = std::stod(num, &used);
                if (used != num.size()) throw std::invalid_argument(num);
            } catch (const std::exception&) {
                throw ParseError("bad coefficient '" + num + "'");
            }
        } else if (!name.empty() && (name[0] == '+' || name[0] == '-')) {
            // Allow a sign glued to an unstarred term: "-x".
            sign *= (name[0] == '-') ? -1.0 : 1.0;
            name = name.substr(1);
        }
        if (name.empty()) throw ParseError("empty point name in element literal");
        terms.emplace_back(resolve(s, name), sign * coef);
        sign = 1.0;
        expect_term = false;
    }
    if (expect_term && terms.empty()) throw ParseError("empty element literal");
    if (expect_term) throw ParseError("dangling operator in element literal");
    return FreeElement::make(s, terms);
}

LipschitzFunction parse_function(const FiniteMetricSpace& s, const std::string& lit) {
    auto split = [](const std::string& str, char sep) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (start <= str.size()) {
            std::size_t pos = str.find(sep, start);
            if (pos == std::string::npos) {
                out.push_back(str.substr(start));
                break;
            }
            out.push_back(str.substr(start, pos - start));
            start = pos + 1;
        }
        return out;
    };

    if (lit.rfind("fxy:", 0) == 0) {
        auto parts = split(lit.substr(4), ';');
        if (parts.size() != 2) throw ParseError("fxy literal needs 'fxy:X;Y'");
        return f_xy(s, resolve(s, parts[0]), resolve(s, parts[1]));
    }
    if (lit.rfind("dist-to:", 0) == 0) {
        std::size_t p = resolve(s, lit.substr(8));
        std::vector<double> raw(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) raw[i] = s.dist(i, p);
        return LipschitzFunction::rebased(s, std::move(raw));
    }
    if (lit.rfind("plateau:", 0) == 0) {
        auto parts = split(lit.substr(8), ';');
        if (parts.size() != 1 && parts.size() != 3)
            throw ParseError("plateau literal needs 'plateau:A' or 'plateau:A;X;Y'");
        double alpha = 0;
        try {
            alpha = std::stod(parts[0]);
        } catch (const std::exception&) {
            throw ParseError("bad plateau depth '" + parts[0] + "'");
        }
        std::size_t x, y;
        if (parts.size() == 3) {
            x = resolve(s, parts[1]);
            y = resolve(s, parts[2]);
        } else {
            // Default pair: base and the farthest point from it.
            x = s.base();
            y = s.base();
            for (std::size_t i = 0; i < s.size(); ++i)
                if (s.dist(s.base(), i) > s.dist(s.base(), y)) y = i;
            if (x == y) throw ParseError("space has no point away from the base");
        }
        return plateau_function(s, x, y, alpha);
    }
    // Assignment list: "X=v;Y=w;...", completed at the data's own constant.
    auto parts = split(lit, ';');
    std::vector<std::pair<std::size_t, double>> data;
    for (const auto& part : parts) {
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw ParseError("bad function literal field '" + part + "'");
        std::size_t ix = resolve(s, part.substr(0, eq));
        double v = 0;
        try {
            v = std::stod(part.substr(eq + 1));
        } catch (const std::exception&) {
            throw ParseError("bad value in '" + part + "'");
        }
        data.emplace_back(ix, v);
    }
    if (data.empty()) throw ParseError("empty function literal");
    double L = 0;
    for (std::size_t a = 0; a < data.size(); ++a)
        for (std::size_t b = a + 1; b < data.size(); ++b) {
            double d = s.dist(data[a].first, data[b].first);
            if (d > 0) L = std::max(L, std::fabs(data[a].second - data[b].second) / d);
        }
    if (L == 0) L = 1.0;
    return mcshane_extend(s, data, L);
}

namespace {

ordered_json witness_json(const Witness& w) {
    ordered_json j;
    j["kind"] = w.kind;
    j["points"] = w.points;
    ordered_json vals;
    for (auto& [k, v] : w.values) vals[k] = v;
    j["values"] = std::move(vals);
    if (!w.note.empty()) j["note"] = w.note;
    return j;
}

}  // namespace

ordered_json report_to_json(const ClassificationReport& r) {
    ordered_json j;
    j["query"] = r.query;
    ordered_json params;
    for (auto& [k, v] : r.parameters) params[k] = v;
    j["parameters"] = std::move(params);
    j["verdict"] = to_string(r.verdict);
    ordered_json ws = ordered_json::array();
    for (auto& w : r.witnesses) ws.push_back(witness_json(w));
    j["witnesses"] = std::move(ws);
    ordered_json cs = ordered_json::array();
    for (auto& c : r.cross_checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["passed"] = c.passed;
        cj["residual"] = c.residual;
        cj["tolerance"] = c.tolerance;
        cs.push_back(std::move(cj));
    }
    j["cross_checks"] = std::move(cs);
    j["notes"] = r.notes;
    return j;
}

std::string report_to_table(const ClassificationReport& r) {
    std::ostringstream out;
    out << "query:   " << r.query << "\n";
    out << "verdict: " << to_string(r.verdict) << "\n";
    out << "params:  ";
    for (std::size_t i = 0; i < r.parameters.size(); ++i) {
        if (i) out << "  ";
        out << r.parameters[i].first << "=" << r.parameters[i].second;
    }
    out << "\n";
    if (!r.witnesses.empty()) {
        out << "witnesses:\n";
        for (auto& w : r.witnesses) {
            out << "  " << w.kind << " [";
            for (std::size_t i = 0; i < w.points.size(); ++i) {
                if (i) out << ", ";
                out << w.points[i];
            }
            out << "]";
            for (auto& [k, v] : w.values) out << " " << k << "=" << fmt_num(v);
            if (!w.note.empty()) out << "  (" << w.note << ")";
            out << "\n";
        }
    }
    if (!r.cross_checks.empty()) {
        out << "cross-checks:\n";
        for (auto& c : r.cross_checks)
            out << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name
                << " residual=" << fmt_num(c.residual)
                << " tol=" << fmt_num(c.tolerance) << "\n";
    }
    if (!r.notes.empty()) {
        out << "notes:\n";
        for (auto& n : r.notes) out << "  - " << n << "\n";
    }
    return out.str();
}

ordered_json norm_to_json(const FiniteMetricSpace& s, const FreeNormResult& r) {
    ordered_json j;
    j["norm"] = r.value;
    j["primal_cost"] = r.primal_cost;
    j["duality_gap"] = r.duality_gap;
    j["cs_residual"] = r.cs_residual;
    ordered_json plan = ordered_json::array();
    for (auto& [a, b, m] : r.plan) {
        ordered_json arc;
        arc["from"] = s.name(a);
        arc["to"] = s.name(b);
        arc["mass"] = m;
        plan.push_back(std::move(arc));
    }
    j["plan"] = std::move(plan);
    ordered_json cert;
    for (std::size_t i = 0; i < s.size(); ++i) cert[s.name(i)] = r.certificate.at(i);
    j["certificate"] = std::move(cert);
    return j;
}

std::string norm_to_table(const FiniteMetricSpace& s, const FreeNormResult& r) {
    std::ostringstream out;
    out << "norm:         " << fmt_num(r.value) << "\n";
    out << "primal cost:  " << fmt_num(r.primal_cost) << "\n";
    out << "duality gap:  " << fmt_num(r.duality_gap) << "\n";
    out << "cs residual:  " << fmt_num(r.cs_residual) << "\n";
    out << "plan:\n";
    for (auto& [a, b, m] : r.plan)
        out << "  " << s.name(a) << " -> " << s.name(b) << "  mass " << fmt_num(m)
            << "\n";
    return out.str();
}

ordered_json validation_to_json(const FiniteMetricSpace& s,
                                const ValidationReport& r) {
    ordered_json j;
    j["valid"] = r.ok();
    j["violations_found"] = r.total_found;
    j["truncated"] = r.truncated;
    ordered_json vs = ordered_json::array();
    for (auto& v : r.violations) vs.push_back(v.describe(s));
    j["violations"] = std::move(vs);
    return j;
}

std::string validation_to_table(const FiniteMetricSpace& s,
                                const ValidationReport& r) {
    std::ostringstream out;
    if (r.ok()) {
        out << "metric: valid (" << s.size() << " points)\n";
        return out.str();
    }
    out << "metric: INVALID, " << r.total_found << " violation(s)";
    if (r.truncated) out << " (listing truncated)";
    out << "\n";
    for (auto& v : r.violations) out << "  " << v.describe(s) << "\n";
    return out.str();
}

ordered_json profile_to_json(const FiniteMetricSpace& s, const LocalityProfile& p) {
    ordered_json j;
    j["constant"] = p.constant;
    ordered_json rows = ordered_json::array();
    for (auto& row : p.rows) {
        ordered_json rj;
        rj["scale"] = row.scale;
        if (row.best_slope) {
            rj["best_slope"] = *row.best_slope;
            rj["best_pair"] = {s.name(row.best_pair->first),
                               s.name(row.best_pair->second)};
        } else {
            rj["best_slope"] = nullptr;
        }
        rj["local"] = row.local_at_scale;
        ordered_json eps = ordered_json::array();
        for (std::size_t t : row.epsilon_points) eps.push_back(s.name(t));
        rj["epsilon_points"] = std::move(eps);
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string profile_to_table(const FiniteMetricSpace& s, const LocalityProfile& p) {
    std::ostringstream out;
    out << "constant: " << fmt_num(p.constant) << "\n";
    out << "scale        best_slope   local  eps_points\n";
    for (auto& row : p.rows) {
        char line[128];
        if (row.best_slope)
            std::snprintf(line, sizeof line, "%-12s %-12s %-6s %zu",
                          fmt_num(row.scale).c_str(), fmt_num(*row.best_slope).c_str(),
                          row.local_at_scale ? "yes" : "no",
                          row.epsilon_points.size());
        else
            std::snprintf(line, sizeof line, "%-12s %-12s %-6s %zu",
                          fmt_num(row.scale).c_str(), "(none)", "no",
                          row.epsilon_points.size());
        out << line << "\n";
        (void)s;
    }
    return out.str();
}

}  // namespace lipfree
