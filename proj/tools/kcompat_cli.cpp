#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kcompat/json_io.hpp"
#include "kcompat/kcompat.hpp"
#include "kcompat/qubit_analytic.hpp"

namespace {

constexpr int kExitFeasible = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitUsage = 64;
constexpr int kExitDimCap = 65;
constexpr int kExitNonMonotone = 66;

int verdict_exit(kc::Verdict v) {
    switch (v) {
        case kc::Verdict::Feasible: return kExitFeasible;
        case kc::Verdict::Infeasible: return kExitInfeasible;
        default: return kExitUndecided;
    }
}

void emit(const std::string& payload, const std::string& path) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << payload;
}

void emit_json(const kc::io::json& j, const std::string& path) {
    emit(j.dump(2) + "\n", path);
}

kc::ObservableSet load_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    kc::io::json j;
    in >> j;
    return kc::io::set_from_json(j);
}

std::string format_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void print_meta(const std::string& subcommand, const kc::SolverConfig& cfg) {
    kc::io::json meta;
    meta["subcommand"] = subcommand;
    meta["budget"] = cfg.budget;
    meta["unix_time"] = static_cast<long long>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    std::cerr << meta.dump() << "\n";
}

struct GridSpec {
    double lo = 0.0, hi = 1.0, step = 0.05;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    if (!(in >> g.lo >> colon1 >> g.hi >> colon2 >> g.step) || colon1 != ':' ||
        colon2 != ':' || g.step <= 0.0 || g.lo > g.hi || g.lo < 0.0 || g.hi > 1.0)
        throw std::invalid_argument("grid must be lo:hi:step within [0,1]");
    return g;
}

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double t = g.lo + i * g.step;
        if (t > g.hi + 1e-12) break;
        out.push_back(std::min(t, g.hi));
    }
    return out;
}

kc::ObservableSet pair_family(double t) {
    return kc::ObservableSet({kc::qubit::noisy_spin('x', t), kc::qubit::noisy_spin('y', t)},
                             {"X", "Y"});
}

kc::ObservableSet triple_family(double t) {
    return kc::ObservableSet({kc::qubit::noisy_spin('x', t), kc::qubit::noisy_spin('y', t),
                              kc::qubit::noisy_spin('z', t)},
                             {"X", "Y", "Z"});
}

int classify_error(const std::exception& e) {
    const std::string what = e.what();
    if (what.find("dimension cap") != std::string::npos) return kExitDimCap;
    if (what.find("not monotone") != std::string::npos) return kExitNonMonotone;
    if (what.find("Undecided") != std::string::npos) return kExitUndecided;
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-compatibility of finite-outcome quantum observables"};
    app.require_subcommand(1);

    std::string input, output, family, grid_text = "0:1:0.05", summary_path;
    int k = 1, n = 4, jobs = 1, dim_cap = 16;
    double tol = 1e-3, lo = 0.0, hi = 1.0;
    bool meta = false, no_witness = false;

    kc::SolverConfig solver_cfg;
    if (const char* env = std::getenv("KCOMPAT_BUDGET")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) solver_cfg.budget = parsed;
    }
    int budget = solver_cfg.budget;

    app.add_option("-o,--output", output, "Write the payload to a file instead of stdout");
    app.add_flag("--meta", meta, "Print run metadata to stderr");
    app.add_option("--budget", budget, "Solver iteration budget");

    auto* validate_cmd = app.add_subcommand("validate", "Validate an observable set file");
    validate_cmd->add_option("file", input, "Observable set JSON")->required();

    auto* check_cmd = app.add_subcommand("check", "Decide ordinary (1-)compatibility");
    check_cmd->add_option("file", input, "Observable set JSON")->required();
    check_cmd->add_flag("--no-witness", no_witness, "Omit the witness from the report");

    auto* kcheck_cmd = app.add_subcommand("kcheck", "Decide k-compatibility");
    kcheck_cmd->add_option("file", input, "Observable set JSON")->required();
    kcheck_cmd->add_option("--k", k, "Number of copies")->required();
    kcheck_cmd->add_option("--dim-cap", dim_cap, "Largest allowed multi-copy dimension");
    kcheck_cmd->add_flag("--no-witness", no_witness, "Omit the witness from the report");

    auto* index_cmd = app.add_subcommand("index", "Compute the index of incompatibility");
    index_cmd->add_option("file", input, "Observable set JSON")->required();
    index_cmd->add_option("--dim-cap", dim_cap, "Largest allowed multi-copy dimension");

    auto* stack_cmd = app.add_subcommand("stack", "Build the compatibility stack of a set");
    stack_cmd->add_option("file", input, "Observable set JSON")->required();
    stack_cmd->add_option("--dim-cap", dim_cap, "Largest allowed multi-copy dimension");

    auto* enum_cmd = app.add_subcommand("enum-stacks", "Enumerate canonical stacks");
    enum_cmd->add_option("--n", n, "Number of vertices (1..5)")->required();
    enum_cmd->add_option("--summary", summary_path, "Also write the classification CSV");

    auto* threshold_cmd = app.add_subcommand("threshold", "Bisect a noise threshold");
    threshold_cmd
        ->add_option("--family", family,
                     "One of pair:xy, triple:xyz:k1, triple:xyz:k2")
        ->required();
    threshold_cmd->add_option("--tol", tol, "Bracket width target (>= 1e-4)");
    threshold_cmd->add_option("--lo", lo, "Feasible endpoint");
    threshold_cmd->add_option("--hi", hi, "Infeasible endpoint");

    auto* sweep_cmd = app.add_subcommand("sweep", "Index sweep over a noise grid (CSV)");
    sweep_cmd->add_option("--family", family, "One of pair:xy, triple:xyz:index")
        ->required();
    sweep_cmd->add_option("--grid", grid_text, "lo:hi:step within [0,1]");
    sweep_cmd->add_option("--jobs", jobs, "Parallel solver instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    solver_cfg.budget = budget;
    kc::KCompatConfig kc_cfg;
    kc_cfg.dim_cap = dim_cap;
    kc_cfg.solver = solver_cfg;

    try {
        if (*validate_cmd) {
            if (meta) print_meta("validate", solver_cfg);
            const auto set = load_set(input);
            kc::io::json out;
            bool all_ok = true;
            for (int i = 0; i < set.size(); ++i) {
                const auto report = kc::validate(set.member(i));
                kc::io::json entry;
                entry["name"] = set.names()[static_cast<std::size_t>(i)];
                entry["ok"] = report.ok();
                entry["violations"] = kc::io::json::array();
                for (const auto& v : report.violations)
                    entry["violations"].push_back({{"what", v.what},
                                                   {"outcome", v.outcome},
                                                   {"magnitude", v.magnitude}});
                all_ok = all_ok && report.ok();
                out["observables"].push_back(std::move(entry));
            }
            emit_json(out, output);
            return all_ok ? kExitFeasible : kExitInfeasible;
        }

        if (*check_cmd || *kcheck_cmd) {
            const int copies = *check_cmd ? 1 : k;
            if (copies < 1) {
                std::cerr << "error: k must be >= 1\n";
                return kExitUsage;
            }
            if (meta) print_meta(*check_cmd ? "check" : "kcheck", solver_cfg);
            const auto set = load_set(input);
            const auto report = kc::is_k_compatible(set, copies, kc_cfg);
            emit_json(kc::io::report_to_json(report, !no_witness), output);
            return verdict_exit(report.verdict);
        }

        if (*index_cmd) {
            if (meta) print_meta("index", solver_cfg);
            const auto set = load_set(input);
            const auto result = kc::index_of_incompatibility(set, kc_cfg);
            emit_json(kc::io::index_result_to_json(result), output);
            return kExitFeasible;
        }

        if (*stack_cmd) {
            if (meta) print_meta("stack", solver_cfg);
            const auto set = load_set(input);
            const auto result = kc::build_stack(set, kc_cfg);
            emit_json(kc::io::stack_to_json(result.stack, &result.provenance), output);
            return kExitFeasible;
        }

        if (*enum_cmd) {
            if (meta) print_meta("enum-stacks", solver_cfg);
            if (n < 1 || n > 5) {
                std::cerr << "error: n must be between 1 and 5\n";
                return kExitUsage;
            }
            const auto stacks = kc::stacks::enumerate_stacks(n);
            kc::io::json out = kc::io::json::array();
            for (const auto& s : stacks) out.push_back(kc::io::stack_to_json(s));
            emit_json(out, output);
            if (!summary_path.empty()) {
                const auto table = kc::stacks::classification_table(stacks);
                const int max_pairs = n * (n - 1) / 2;
                std::ostringstream csv;
                csv << "bulk_index";
                for (int p = 0; p <= max_pairs; ++p) csv << ",pairs" << p;
                csv << "\n";
                for (int bulk = 1; bulk <= n; ++bulk) {
                    csv << bulk;
                    for (int p = 0; p <= max_pairs; ++p) {
                        const auto it = table.find({bulk, p});
                        csv << "," << (it == table.end() ? 0 : it->second);
                    }
                    csv << "\n";
                }
                emit(csv.str(), summary_path);
            }
            return kExitFeasible;
        }

        if (*threshold_cmd) {
            if (meta) print_meta("threshold", solver_cfg);
            std::function<kc::FeasibilityReport(double, const kc::SolverConfig&)> probe;
            if (family == "pair:xy") {
                probe = [](double t, const kc::SolverConfig& cfg) {
                    const auto set = pair_family(t);
                    return kc::solve({2, set.members()}, cfg);
                };
            } else if (family == "triple:xyz:k1") {
                probe = [](double t, const kc::SolverConfig& cfg) {
                    const auto set = triple_family(t);
                    return kc::solve({2, set.members()}, cfg);
                };
            } else if (family == "triple:xyz:k2") {
                probe = [&](double t, const kc::SolverConfig& cfg) {
                    kc::KCompatConfig local = kc_cfg;
                    local.solver = cfg;
                    return kc::is_k_compatible(triple_family(t), 2, local);
                };
            } else {
                std::cerr << "error: unknown threshold family: " << family << "\n";
                return kExitUsage;
            }
            const auto result = kc::threshold_bisect(probe, lo, hi, tol, solver_cfg);
            kc::io::json out;
            out["family"] = family;
            out["threshold"] = result.threshold;
            out["bracket"] = {result.bracket_lo, result.bracket_hi};
            out["solver_stats"] = {{"calls", result.solver_calls},
                                   {"total_iterations", result.total_iterations}};
            emit_json(out, output);
            return kExitFeasible;
        }

        if (*sweep_cmd) {
            if (meta) print_meta("sweep", solver_cfg);
            std::function<kc::ObservableSet(double)> make_set;
            if (family == "pair:xy")
                make_set = pair_family;
            else if (family == "triple:xyz:index")
                make_set = triple_family;
            else {
                std::cerr << "error: unknown sweep family: " << family << "\n";
                return kExitUsage;
            }
            const auto points = grid_points(parse_grid(grid_text));
            std::vector<int> indices(points.size(), 0);
            std::vector<std::string> errors(points.size());
            const int workers = std::max(1, jobs);
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&, w]() {
                    for (std::size_t i = static_cast<std::size_t>(w); i < points.size();
                         i += static_cast<std::size_t>(workers)) {
                        try {
                            indices[i] =
                                kc::index_of_incompatibility(make_set(points[i]), kc_cfg)
                                    .index;
                        } catch (const std::exception& e) {
                            errors[i] = e.what();
                        }
                    }
                });
            for (auto& t : pool) t.join();
            for (std::size_t i = 0; i < points.size(); ++i)
                if (!errors[i].empty()) {
                    std::cerr << "error at a = " << format_sig(points[i]) << ": "
                              << errors[i] << "\n";
                    return kExitUndecided;
                }
            std::ostringstream csv;
            csv << "a,index\n";
            for (std::size_t i = 0; i < points.size(); ++i)
                csv << format_sig(points[i]) << "," << indices[i] << "\n";
            emit(csv.str(), output);
            return kExitFeasible;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify_error(e);
    }
    return kExitUsage;
}
