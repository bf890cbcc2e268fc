// Command-line front end: space validation and generation, free-norm
// evaluation, point classification, and locality scans. Exit codes:
//   0  completed, verdict positive/unrefuted (or no verdict applies)
//   1  completed, verdict negative (or invalid metric)
//   2  usage or parse error
//   3  solver failure or inconclusive verdict
#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "lipfree/classify.hpp"
#include "lipfree/examples.hpp"
#include "lipfree/io.hpp"
#include "lipfree/lipschitz.hpp"

namespace {

using namespace lipfree;
using nlohmann::ordered_json;

struct Output {
    std::string format = "table";
    std::string path;

    int emit(const ordered_json& structured, const std::string& table) const {
        std::string text =
            format == "structured" ? structured.dump(2) + "\n" : table;
        if (path.empty()) {
            std::cout << text;
            return 0;
        }
        std::ofstream out(path);
        if (!out) {
            std::cerr << "error: cannot write '" << path << "'\n";
            return 2;
        }
        out << text;
        return 0;
    }
};

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::positive: return 0;
        case Verdict::negative: return 1;
        default: return 3;
    }
}

int worst_exit(int a, int b) {
    // inconclusive (3) dominates negative (1) dominates positive (0)
    auto rank = [](int e) { return e == 3 ? 2 : (e == 1 ? 1 : 0); };
    return rank(a) >= rank(b) ? a : b;
}

std::size_t resolve_point(const FiniteMetricSpace& s, const std::string& name) {
    auto ix = s.index_of(name);
    if (!ix) throw ParseError("unknown point '" + name + "'");
    return *ix;
}

CLI::App* add_command(CLI::App& parent, const std::string& name,
                      const std::string& desc, Output* out, Tolerances* tol) {
    CLI::App* sub = parent.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print usage");
    if (out) {
        sub->add_option("--format", out->format, "output format")
            ->check(CLI::IsMember({"table", "structured"}));
        sub->add_option("--out", out->path, "write output to a file");
    }
    if (tol) {
        sub->add_option("--tol-opt", tol->tau_opt, "optimality tolerance");
        sub->add_option("--tol-feas", tol->tau_feas, "feasibility tolerance");
    }
    return sub;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lipschitz-free space toolkit over finite metric spaces"};
    app.set_help_flag("--help", "print usage");
    app.require_subcommand(1);

    Output out;
    Tolerances tol;

    std::string file;
    std::string arg_x, arg_y;
    std::string element_lit, function_lit;
    double eta = -1, h = -1, eps = 0, step = -1, scale = -1, alpha = -1;
    std::uint64_t seed = 1;
    std::size_t n_random = 3;
    std::vector<double> scales;

    // validate
    CLI::App* c_validate =
        add_command(app, "validate", "check a space file's metric axioms", &out, nullptr);
    c_validate->add_option("file", file, "space file")->required();

    // norm
    CLI::App* c_norm =
        add_command(app, "norm", "free norm of an element, both solvers", &out, &tol);
    c_norm->add_option("file", file, "space file")->required();
    c_norm->add_option("element", element_lit, "element literal, e.g. '1*x - 1*y'")
        ->required();

    // classify
    CLI::App* c_classify =
        add_command(app, "classify", "point and space classification", nullptr, nullptr);
    c_classify->require_subcommand(1);

    CLI::App* c_daug = add_command(*c_classify, "daugavet",
                                   "molecule against every denting witness", &out, &tol);
    c_daug->add_option("file", file, "space file")->required();
    c_daug->add_option("x", arg_x, "first point name")->required();
    c_daug->add_option("y", arg_y, "second point name")->required();
    c_daug->add_option("--eta", eta, "segment slack (default: grid resolution)");
    c_daug->add_option("--h", h, "separation floor (default: grid resolution)");

    CLI::App* c_delta = add_command(*c_classify, "delta",
                                    "lens condition plus slice refutation probe", &out, &tol);
    c_delta->add_option("file", file, "space file")->required();
    c_delta->add_option("x", arg_x, "first point name")->required();
    c_delta->add_option("y", arg_y, "second point name")->required();
    c_delta->add_option("--scale", scale,
                        "separation scale for the slice probe (default: grid resolution)");
    c_delta->add_option("--alpha", alpha, "slice depth (default: 0.1)");
    c_delta->add_option("--eps", eps, "lens slack (default: 0)");
    c_delta->add_option("--seed", seed, "seed for random slice functionals");

    CLI::App* c_conn = add_command(*c_classify, "connectable",
                                   "step-constrained path between two points", &out, &tol);
    c_conn->add_option("file", file, "space file")->required();
    c_conn->add_option("x", arg_x, "first point name")->required();
    c_conn->add_option("y", arg_y, "second point name")->required();
    c_conn->add_option("--eps", eps, "length slack (default: 0)");
    c_conn->add_option("--step", step, "max step size (default: grid resolution)");
    c_conn->add_option("--alpha", alpha, "slice depth for cross-checks (default: 0.25)");

    CLI::App* c_length = add_command(*c_classify, "length",
                                     "approximate midpoints for every pair", &out, &tol);
    c_length->add_option("file", file, "space file")->required();
    c_length->add_option("--eps", eps,
                         "midpoint slack budget (default: grid resolution)");

    // example
    std::string ex_name;
    std::size_t ex_k = 10, ex_n = 8;
    double ex_r = 0.5;
    CLI::App* c_example =
        add_command(app, "example", "generate a built-in space file", &out, nullptr);
    c_example->add_option("name", ex_name,
                          "halfline-interval | interval | bridge | quotient-metric | "
                          "circle | random")
        ->required();
    c_example->add_option("--k", ex_k, "grid resolution (default: 10)");
    c_example->add_option("--r", ex_r, "bridge pillar height (default: 0.5)");
    c_example->add_option("--n", ex_n, "random point count (default: 8)");
    c_example->add_option("--seed", seed, "random seed (default: 1)");

    // scan
    CLI::App* c_scan =
        add_command(app, "scan", "locality profile of a function", &out, nullptr);
    c_scan->add_option("file", file, "space file")->required();
    c_scan->add_option("function", function_lit,
                       "function literal: 'fxy:X;Y', 'dist-to:P', 'plateau:A[;X;Y]', "
                       "or 'X=v;Y=w;...'")
        ->required();
    c_scan->add_option("--scale", scales, "scales to probe (sorted descending)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_validate) {
            ExampleSpace ex = load_space(file);
            ValidationReport rep = validate_metric(ex.space);
            out.emit(validation_to_json(ex.space, rep),
                     validation_to_table(ex.space, rep));
            return rep.ok() ? 0 : 1;
        }

        if (*c_norm) {
            ExampleSpace ex = load_space(file);
            FreeElement mu = parse_element(ex.space, element_lit);
            FreeNormResult r = free_norm(ex.space, mu, tol);
            return out.emit(norm_to_json(ex.space, r), norm_to_table(ex.space, r));
        }

        if (*c_daug) {
            ExampleSpace ex = load_space(file);
            std::size_t x = resolve_point(ex.space, arg_x);
            std::size_t y = resolve_point(ex.space, arg_y);
            double res = ex.space.min_positive_distance();
            ClassificationReport rep = classify_daugavet_molecule(
                ex.space, x, y, eta > 0 ? eta : res, h > 0 ? h : res, tol);
            out.emit(report_to_json(rep), report_to_table(rep));
            return verdict_exit(rep.verdict);
        }

        if (*c_delta) {
            ExampleSpace ex = load_space(file);
            std::size_t x = resolve_point(ex.space, arg_x);
            std::size_t y = resolve_point(ex.space, arg_y);
            double res = ex.space.min_positive_distance();
            double a = alpha > 0 ? alpha : 0.1;
            ClassificationReport ball =
                delta_ball_test(ex.space, x, y, {}, eps, tol);
            SliceFamily family =
                build_slice_family(ex.space, x, y, a, n_random, seed, true, tol);
            ClassificationReport slice = delta_slice_test(
                ex.space, x, y, family, scale > 0 ? scale : res, tol);
            for (const auto& n : family.notes) slice.notes.push_back(n);
            ordered_json j;
            j["ball"] = report_to_json(ball);
            j["slice"] = report_to_json(slice);
            out.emit(j, report_to_table(ball) + "\n" + report_to_table(slice));
            return worst_exit(verdict_exit(ball.verdict),
                              verdict_exit(slice.verdict));
        }

        if (*c_conn) {
            ExampleSpace ex = load_space(file);
            std::size_t x = resolve_point(ex.space, arg_x);
            std::size_t y = resolve_point(ex.space, arg_y);
            double res = ex.space.min_positive_distance();
            ClassificationReport rep = classify_connectable(
                ex.space, x, y, eps, step > 0 ? step : res,
                ex.embedded ? &*ex.embedded : nullptr, alpha > 0 ? alpha : 0.25,
                tol);
            out.emit(report_to_json(rep), report_to_table(rep));
            return verdict_exit(rep.verdict);
        }

        if (*c_length) {
            ExampleSpace ex = load_space(file);
            double res = ex.space.min_positive_distance();
            ClassificationReport rep =
                length_space_test(ex.space, eps > 0 ? eps : res, tol);
            out.emit(report_to_json(rep), report_to_table(rep));
            return verdict_exit(rep.verdict);
        }

        if (*c_example) {
            ExampleSpace ex = make_example(ex_name, ex_k, ex_r, ex_n, seed);
            if (!out.path.empty()) {
                save_space(ex, out.path);
                return 0;
            }
            std::cout << space_to_json(ex).dump(2) << "\n";
            return 0;
        }

        if (*c_scan) {
            ExampleSpace ex = load_space(file);
            LipschitzFunction f = parse_function(ex.space, function_lit);
            if (scales.empty()) {
                double d = 0;
                for (std::size_t i = 0; i < ex.space.size(); ++i)
                    for (std::size_t j = 0; j < ex.space.size(); ++j)
                        d = std::max(d, ex.space.dist(i, j));
                for (int i = 0; i < 5; ++i) scales.push_back(d / double(1 << i));
            }
            std::sort(scales.begin(), scales.end(), std::greater<double>());
            scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
            LocalityProfile p = locality_profile(ex.space, f, scales);
            return out.emit(profile_to_json(ex.space, p),
                            profile_to_table(ex.space, p));
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
