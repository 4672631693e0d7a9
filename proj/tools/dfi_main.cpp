// dfi: discrete Fisher information toolkit CLI.
//
// Subcommands: compute, verify, sweep, random-check, optimize.
// Exit codes: 0 success, 1 claim violation found, 2 input error,
// 3 internal inconsistency.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dfi/families.hpp"
#include "dfi/inequalities.hpp"
#include "dfi/pmf.hpp"
#include "dfi/quantities.hpp"
#include "dfi/tightness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitInconsistency = 3;

// 17 significant digits round-trip doubles exactly.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_bool(bool v) { return v ? "true" : "false"; }

struct OutputTarget {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
        out << text;
    }
};

double default_eps_tail() {
    const char* env = std::getenv("DFI_EPS_TAIL");
    if (env == nullptr || *env == '\0') return dfi::kDefaultEpsTail;
    try {
        std::size_t used = 0;
        const std::string text(env);
        const double v = std::stod(text, &used);
        if (used != text.size() || !(v > 0.0)) throw std::invalid_argument("range");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("DFI_EPS_TAIL must be a positive number");
    }
}

struct PmfInput {
    std::string family_spec;
    std::string pmf_file;
    double eps_tail = dfi::kDefaultEpsTail;

    void add_options(CLI::App* cmd) {
        cmd->add_option("--family", family_spec,
                        "family spec name:param[,param], e.g. geometric:0.25");
        cmd->add_option("--pmf-file", pmf_file, "pmf file (JSON or one probability per line)");
        cmd->add_option("--eps-tail", eps_tail, "tail mass bound for family truncation")
            ->default_val(default_eps_tail());
    }

    dfi::Pmf load(std::optional<dfi::DistributionFamily>* family_out) const {
        if (family_spec.empty() == pmf_file.empty()) {
            throw std::invalid_argument("need exactly one input source: --family or --pmf-file");
        }
        if (!(eps_tail > 0.0)) throw std::invalid_argument("--eps-tail must be positive");
        if (!family_spec.empty()) {
            auto family = dfi::DistributionFamily::parse(family_spec);
            if (family_out) *family_out = family;
            return dfi::from_family(family, eps_tail);
        }
        if (family_out) family_out->reset();
        return dfi::read_pmf_file(pmf_file);
    }
};

nlohmann::ordered_json input_json(const PmfInput& input, const dfi::Pmf& p) {
    nlohmann::ordered_json doc;
    doc["source"] = input.family_spec.empty() ? "file:" + input.pmf_file
                                              : "family:" + input.family_spec;
    doc["support_size"] = p.support_size();
    doc["tail_mass_bound"] = p.tail_mass_bound();
    return doc;
}

// -------------------------------------------------------------- compute

struct OracleComparison {
    std::string field;
    double oracle = 0.0;
    double numeric = 0.0;
};

std::vector<OracleComparison> compare_oracle(const dfi::OracleValues& oracle,
                                             const dfi::QuantityReport& report) {
    std::vector<OracleComparison> rows;
    auto add = [&](const char* field, const std::optional<double>& o, double numeric) {
        if (o) rows.push_back({field, *o, numeric});
    };
    add("dfi", oracle.dfi, report.dfi);
    add("mean", oracle.mean, report.mean);
    add("variance", oracle.variance, report.variance);
    add("max_pmf", oracle.max_pmf, report.max_pmf);
    add("entropy_power", oracle.entropy_power, report.entropy_power);
    return rows;
}

int cmd_compute(const PmfInput& input, const std::string& format, const OutputTarget& out) {
    std::optional<dfi::DistributionFamily> family;
    const auto p = input.load(&family);
    const auto report = dfi::quantity_report(p);
    std::optional<dfi::OracleValues> oracle;
    if (family) oracle = dfi::oracle_for(*family, input.eps_tail);

    std::ostringstream text;
    const std::pair<const char*, double> fields[] = {
        {"dfi", report.dfi},
        {"error_bound_dfi", report.error_bound_dfi},
        {"entropy", report.entropy},
        {"entropy_power", report.entropy_power},
        {"mean", report.mean},
        {"variance", report.variance},
        {"max_pmf", report.max_pmf},
        {"p0", report.p0},
        {"autocorr_lag1", report.autocorr_lag1},
    };
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["input"] = input_json(input, p);
        for (const auto& [name, value] : fields) doc["report"][name] = value;
        if (oracle) {
            for (const auto& row : compare_oracle(*oracle, report)) {
                doc["oracle"][row.field] = row.oracle;
                doc["oracle_abs_diff"][row.field] = std::abs(row.numeric - row.oracle);
            }
        }
        text << doc.dump(2) << '\n';
    } else if (format == "csv") {
        for (std::size_t i = 0; i < std::size(fields); ++i) {
            text << fields[i].first << (i + 1 < std::size(fields) ? ',' : '\n');
        }
        for (std::size_t i = 0; i < std::size(fields); ++i) {
            text << fmt(fields[i].second) << (i + 1 < std::size(fields) ? ',' : '\n');
        }
    } else {
        text << "pmf: support_size=" << p.support_size()
             << " tail_mass_bound=" << fmt(p.tail_mass_bound()) << '\n';
        for (const auto& [name, value] : fields) {
            text << name << " = " << fmt(value) << '\n';
        }
        if (oracle) {
            text << "closed-form comparison:\n";
            for (const auto& row : compare_oracle(*oracle, report)) {
                text << "  " << row.field << ": oracle=" << fmt(row.oracle)
                     << " |diff|=" << fmt(std::abs(row.numeric - row.oracle)) << '\n';
            }
        }
    }
    out.write(text.str());
    return kExitOk;
}

// --------------------------------------------------------------- verify

nlohmann::ordered_json check_json(const dfi::InequalityCheck& c) {
    nlohmann::ordered_json doc;
    doc["name"] = std::string(dfi::to_string(c.name));
    doc["lhs"] = c.lhs;
    doc["rhs"] = c.rhs;
    doc["gap"] = c.gap;
    doc["satisfied"] = c.satisfied;
    doc["equality_case"] = c.equality_case;
    return doc;
}

int cmd_verify(const PmfInput& input, const std::string& format, const OutputTarget& out) {
    const auto p = input.load(nullptr);
    const auto checks = dfi::check_all(p);
    const bool all_ok =
        std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.satisfied; });

    std::ostringstream text;
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["input"] = input_json(input, p);
        doc["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : checks) doc["checks"].push_back(check_json(c));
        doc["all_satisfied"] = all_ok;
        text << doc.dump(2) << '\n';
    } else if (format == "csv") {
        text << "name,lhs,rhs,gap,satisfied,equality_case\n";
        for (const auto& c : checks) {
            text << dfi::to_string(c.name) << ',' << fmt(c.lhs) << ',' << fmt(c.rhs) << ','
                 << fmt(c.gap) << ',' << fmt_bool(c.satisfied) << ',' << fmt_bool(c.equality_case)
                 << '\n';
        }
    } else {
        text << "pmf: support_size=" << p.support_size()
             << " tail_mass_bound=" << fmt(p.tail_mass_bound()) << '\n';
        for (const auto& c : checks) {
            text << dfi::to_string(c.name) << ": lhs=" << fmt(c.lhs) << " rhs=" << fmt(c.rhs)
                 << " gap=" << fmt(c.gap) << " satisfied=" << fmt_bool(c.satisfied);
            if (c.equality_case) text << " (equality case)";
            text << '\n';
        }
        text << (all_ok ? "all checks satisfied\n" : "CHECK VIOLATION FOUND\n");
    }
    out.write(text.str());
    return all_ok ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------- sweep

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument("bad grid entry '" + token + "'");
        grid.push_back(v);
    }
    return grid;
}

int cmd_sweep(const std::string& grid_text, const std::string& format, const OutputTarget& out) {
    const auto grid = parse_grid(grid_text);
    const auto result = dfi::geometric_sweep(grid);

    std::ostringstream text;
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["points"] = nlohmann::ordered_json::array();
        for (const auto& pt : result.points) {
            nlohmann::ordered_json row;
            row["q"] = pt.q;
            row["dfi"] = pt.dfi;
            row["ratio_max_bound"] = pt.ratio_max_bound;
            row["ratio_stam"] = pt.ratio_stam;
            row["residual_max_bound"] = pt.residual_max_bound;
            row["residual_stam"] = pt.residual_stam;
            doc["points"].push_back(row);
        }
        text << doc.dump(2) << '\n';
    } else if (format == "plain") {
        for (const auto& pt : result.points) {
            text << "q=" << fmt(pt.q) << " dfi=" << fmt(pt.dfi)
                 << " ratio_max_bound=" << fmt(pt.ratio_max_bound)
                 << " ratio_stam=" << fmt(pt.ratio_stam)
                 << " residual_max_bound=" << fmt(pt.residual_max_bound)
                 << " residual_stam=" << fmt(pt.residual_stam) << '\n';
        }
    } else {
        text << "q,dfi,ratio_max_bound,ratio_stam,residual_max_bound,residual_stam\n";
        for (const auto& pt : result.points) {
            text << fmt(pt.q) << ',' << fmt(pt.dfi) << ',' << fmt(pt.ratio_max_bound) << ','
                 << fmt(pt.ratio_stam) << ',' << fmt(pt.residual_max_bound) << ','
                 << fmt(pt.residual_stam) << '\n';
        }
    }
    out.write(text.str());
    return kExitOk;
}

// --------------------------------------------------------- random-check

struct CheckSummary {
    std::size_t count = 0;
    double min_gap = std::numeric_limits<double>::infinity();
    std::uint64_t min_gap_index = 0;
    std::size_t equality_cases = 0;
    std::size_t violations = 0;
};

int cmd_random_check(std::uint64_t n, std::uint64_t seed, std::size_t max_support,
                     const std::string& witness_path, const std::string& format,
                     const OutputTarget& out) {
    if (n < 1) throw std::invalid_argument("--n must be >= 1");
    if (max_support < 1) throw std::invalid_argument("--max-support must be >= 1");

    std::map<std::string, CheckSummary> summary;
    nlohmann::ordered_json violations = nlohmann::ordered_json::array();
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto p = dfi::corpus_pmf(seed, i, max_support);
        for (const auto& c : dfi::check_all(p)) {
            auto& s = summary[std::string(dfi::to_string(c.name))];
            ++s.count;
            if (c.gap < s.min_gap) {
                s.min_gap = c.gap;
                s.min_gap_index = i;
            }
            if (c.equality_case) ++s.equality_cases;
            if (!c.satisfied) {
                ++s.violations;
                nlohmann::ordered_json record;
                record["index"] = i;
                record["check"] = check_json(c);
                record["pmf"] = nlohmann::ordered_json::parse(dfi::pmf_to_json(p));
                violations.push_back(record);
            }
        }
    }
    const bool any_violation = !violations.empty();
    if (any_violation) {
        std::ofstream witness(witness_path, std::ios::binary);
        if (witness) witness << violations.dump(2) << '\n';
    }

    std::ostringstream text;
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["config"] = {{"n", n}, {"seed", seed}, {"max_support", max_support}};
        doc["summary"] = nlohmann::ordered_json::array();
        for (const auto& [name, s] : summary) {
            nlohmann::ordered_json row;
            row["name"] = name;
            row["count"] = s.count;
            row["min_gap"] = s.min_gap;
            row["min_gap_index"] = s.min_gap_index;
            row["equality_cases"] = s.equality_cases;
            row["violations"] = s.violations;
            doc["summary"].push_back(row);
        }
        doc["all_satisfied"] = !any_violation;
        text << doc.dump(2) << '\n';
    } else if (format == "csv") {
        text << "name,count,min_gap,min_gap_index,equality_cases,violations\n";
        for (const auto& [name, s] : summary) {
            text << name << ',' << s.count << ',' << fmt(s.min_gap) << ',' << s.min_gap_index
                 << ',' << s.equality_cases << ',' << s.violations << '\n';
        }
    } else {
        text << "corpus: n=" << n << " seed=" << seed << " max_support=" << max_support << '\n';
        for (const auto& [name, s] : summary) {
            text << name << ": count=" << s.count << " min_gap=" << fmt(s.min_gap)
                 << " equality_cases=" << s.equality_cases << " violations=" << s.violations
                 << '\n';
        }
        text << (any_violation ? "VIOLATIONS FOUND (witness written to " + witness_path + ")\n"
                               : "no violations\n");
    }
    out.write(text.str());
    return any_violation ? kExitViolation : kExitOk;
}

// ------------------------------------------------------------- optimize

int cmd_optimize(const dfi::OptimizeOptions& options, const std::string& format,
                 const OutputTarget& out) {
    const auto result = dfi::minimize_stam_product(options);

    std::ostringstream text;
    if (format == "csv") {
        text << "restart,objective,is_best\n";
        for (std::size_t r = 0; r < result.restart_objectives.size(); ++r) {
            const bool is_best = result.restart_objectives[r] == result.objective;
            text << r << ',' << fmt(result.restart_objectives[r]) << ',' << fmt_bool(is_best)
                 << '\n';
        }
    } else if (format == "plain") {
        text << "conjecture data (numerical search, not a proof)\n";
        text << "support=" << options.support << " restarts=" << options.restarts
             << " seed=" << options.seed << " step_tol=" << fmt(options.step_tol) << '\n';
        text << "objective entropy_power*dfi = " << fmt(result.objective) << '\n';
        text << "converged = " << fmt_bool(result.converged) << '\n';
        text << "witness = " << dfi::pmf_to_json(result.witness) << '\n';
    } else {
        nlohmann::ordered_json doc;
        doc["label"] = "conjecture data";
        doc["config"] = {{"support", options.support},
                         {"restarts", options.restarts},
                         {"step_tol", options.step_tol},
                         {"seed", options.seed}};
        doc["objective"] = result.objective;
        doc["converged"] = result.converged;
        doc["restart_objectives"] = result.restart_objectives;
        doc["witness"] = nlohmann::ordered_json::parse(dfi::pmf_to_json(result.witness));
        text << doc.dump(2) << '\n';
    }
    out.write(text.str());
    return kExitOk;
}

int run(int argc, char** argv) {
    CLI::App app{"discrete Fisher information toolkit"};
    app.require_subcommand(1);

    PmfInput compute_input, verify_input;
    std::string compute_format = "plain", verify_format = "plain", sweep_format = "csv";
    std::string random_format = "plain", optimize_format = "json";
    OutputTarget compute_out, verify_out, sweep_out, random_out, optimize_out;

    auto* compute = app.add_subcommand("compute", "all scalar quantities of one pmf");
    compute_input.add_options(compute);
    compute->add_option("--format", compute_format)->check(CLI::IsMember({"plain", "json", "csv"}));
    compute->add_option("--output", compute_out.path, "write to file instead of stdout");

    auto* verify = app.add_subcommand("verify", "evaluate every inequality on one pmf");
    verify_input.add_options(verify);
    verify->add_option("--format", verify_format)->check(CLI::IsMember({"plain", "json", "csv"}));
    verify->add_option("--output", verify_out.path);

    std::string grid_text = "0.5,0.1,0.01,0.001,0.0001";
    auto* sweep = app.add_subcommand("sweep", "geometric q->0 tightness sweep (closed forms)");
    sweep->add_option("--q-grid", grid_text, "comma-separated strictly decreasing q values");
    sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"plain", "json", "csv"}));
    sweep->add_option("--output", sweep_out.path);

    std::uint64_t n = 1000, seed = 0;
    std::size_t max_support = 64;
    std::string witness_path = "dfi_witness.json";
    auto* random_check =
        app.add_subcommand("random-check", "verify inequalities on a seeded random corpus");
    random_check->add_option("--n", n, "corpus size");
    random_check->add_option("--seed", seed);
    random_check->add_option("--max-support", max_support, "support sizes drawn from [1, max]");
    random_check->add_option("--witness-file", witness_path, "violation dump path");
    random_check->add_option("--format", random_format)
        ->check(CLI::IsMember({"plain", "json", "csv"}));
    random_check->add_option("--output", random_out.path);

    dfi::OptimizeOptions optimize_options;
    auto* optimize = app.add_subcommand(
        "optimize", "search for small entropy_power*dfi over the simplex (conjecture data)");
    optimize->add_option("--support", optimize_options.support, "simplex dimension")->required();
    optimize->add_option("--restarts", optimize_options.restarts);
    optimize->add_option("--step-tol", optimize_options.step_tol);
    optimize->add_option("--seed", optimize_options.seed);
    optimize->add_option("--format", optimize_format)
        ->check(CLI::IsMember({"plain", "json", "csv"}));
    optimize->add_option("--output", optimize_out.path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    if (compute->parsed()) return cmd_compute(compute_input, compute_format, compute_out);
    if (verify->parsed()) return cmd_verify(verify_input, verify_format, verify_out);
    if (sweep->parsed()) return cmd_sweep(grid_text, sweep_format, sweep_out);
    if (random_check->parsed()) {
        return cmd_random_check(n, seed, max_support, witness_path, random_format, random_out);
    }
    if (optimize->parsed()) return cmd_optimize(optimize_options, optimize_format, optimize_out);
    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const dfi::InconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << '\n';
        return kExitInconsistency;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
