#include "ftap/cli.hpp"

#include "ftap/emm.hpp"
#include "ftap/errors.hpp"
#include "ftap/report_io.hpp"
#include "ftap/tree_io.hpp"
#include "ftap/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>

namespace ftap::cli {

namespace {

using nlohmann::json;

struct Options {
    bool json = false;
    bool quiet = false;
    std::string file;
    GeneratorParams params;
    std::string mode = "generic";
    std::uint64_t seed = 0;
    std::string out_path;
};

std::string format(const Vector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + "]";
}

class Printer {
public:
    Printer(const Options& opts, std::ostream& out) : opts_(opts), out_(out) {}

    void emit(const json& doc) {
        if (!opts_.quiet) out_ << doc.dump(2) << "\n";
    }
    template <typename F>
    void human(F&& write) {
        if (!opts_.quiet && !opts_.json) write(out_);
    }
    bool json_mode() const { return opts_.json; }

private:
    const Options& opts_;
    std::ostream& out_;
};

void print_strategy(std::ostream& os, const ScenarioTree& tree, const Strategy& strategy) {
    for (const auto& [node, gamma] : strategy) os << "  node " << node << ": gamma = " << format(gamma) << "\n";
    os << "terminal gains:\n";
    for (const auto& [leaf, g] : gains(tree, strategy)) os << "  leaf " << leaf << ": " << to_string(g) << "\n";
}

void print_not_in_ri(std::ostream& os, const GeometryError& e) {
    os << "node " << e.node() << ": origin not in the relative interior of the conditional support\n"
       << "  direction h = " << format(e.certificate().direction) << "\n";
}

int geometry_failure(Printer& printer, const GeometryError& e) {
    if (printer.json_mode()) {
        printer.emit(json{{"error", "geometry"}, {"certificate", certificate_to_json(e.node(), e.certificate())}});
    } else {
        printer.human([&](std::ostream& os) { print_not_in_ri(os, e); });
    }
    return kFails;
}

ScenarioTree load(const Options& opts) {
    auto doc = read_tree_file(opts.file);
    doc.tree.require_valid();
    return std::move(doc.tree);
}

int cmd_validate(const Options& opts, Printer& printer) {
    const auto doc = read_tree_file(opts.file);
    const auto violations = validate(doc.tree);
    if (printer.json_mode()) {
        printer.emit(json{{"valid", violations.empty()}, {"violations", violations_to_json(violations)}});
    } else {
        printer.human([&](std::ostream& os) {
            if (violations.empty()) {
                os << "valid: " << doc.tree.nodes().size() << " nodes, d = " << doc.tree.assets()
                   << ", N = " << doc.tree.horizon() << "\n";
            }
            for (const auto& v : violations) {
                if (v.node) os << "node " << *v.node << ": ";
                os << "[" << v.rule << "] " << v.message << "\n";
            }
        });
    }
    return violations.empty() ? kHolds : kInputError;
}

void print_report(std::ostream& os, const ScenarioTree& tree, const EquivalenceReport& r) {
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    os << "no arbitrage (strategy LP):          " << yes(r.verdict_na_strategy) << "\n"
       << "origin in ri at every node:          " << yes(r.verdict_geometry) << "\n"
       << "martingale measure (construction):   " << yes(r.verdict_emm) << "\n"
       << "martingale measure (oracle LP):      " << yes(r.verdict_emm_oracle) << "\n"
       << "consistent:                          " << yes(r.consistent) << "\n";
    if (r.emm) os << "density bound max z: " << to_string(r.emm->bound) << "\n";
    if (r.failing_node) {
        const auto& cert = std::find_if(r.certificates.begin(), r.certificates.end(),
                                        [&](const NodeCertificate& c) { return c.node == *r.failing_node; })
                               ->certificate;
        os << "first failing node " << *r.failing_node
           << ", direction h = " << format(std::get<NotInRi>(cert).direction) << "\n";
    }
    if (r.arbitrage) {
        os << "arbitrage strategy:\n";
        print_strategy(os, tree, *r.arbitrage);
    }
}

int cmd_check(const Options& opts, Printer& printer) {
    const auto doc = read_tree_file(opts.file);
    doc.tree.require_valid();
    try {
        const auto report = equivalence_report(doc.tree);
        if (printer.json_mode()) {
            printer.emit(report_to_json(report, doc.seed));
        } else {
            printer.human([&](std::ostream& os) { print_report(os, doc.tree, report); });
        }
        return report.verdict_na_strategy ? kHolds : kFails;
    } catch (const InconsistencyError& e) {
        if (printer.json_mode()) {
            auto body = report_to_json(e.report(), doc.seed);
            body["alarm"] = e.what();
            printer.emit(body);
        } else {
            printer.human([&](std::ostream& os) { print_report(os, doc.tree, e.report()); });
        }
        throw;
    }
}

int cmd_find_arbitrage(const Options& opts, Printer& printer) {
    const auto tree = load(opts);
    const auto strategy = oracle_arbitrage_lp(tree);
    if (printer.json_mode()) {
        json body{{"arbitrage", strategy.has_value()}};
        if (strategy) {
            body["strategy"] = strategy_to_json(*strategy);
            json g = json::object();
            for (const auto& [leaf, v] : gains(tree, *strategy)) g[std::to_string(leaf)] = to_string(v);
            body["gains"] = std::move(g);
        }
        printer.emit(body);
    } else {
        printer.human([&](std::ostream& os) {
            if (!strategy) {
                os << "no arbitrage\n";
                return;
            }
            os << "arbitrage found:\n";
            print_strategy(os, tree, *strategy);
        });
    }
    return strategy ? kHolds : kFails;
}

int cmd_build_emm(const Options& opts, Printer& printer) {
    const auto tree = load(opts);
    try {
        const auto emm = build_emm(tree);
        if (printer.json_mode()) {
            printer.emit(emm_to_json(emm));
        } else {
            printer.human([&](std::ostream& os) {
                os << "leaf densities z = dQ/dP:\n";
                for (const auto& [leaf, z] : emm.density.values) os << "  leaf " << leaf << ": " << to_string(z) << "\n";
                os << "bound max z = " << to_string(emm.bound) << "\n";
                for (const auto& step : emm.per_node) {
                    os << "node " << step.node << ": f = " << to_string(step.scale) << ", g = " << format(step.g)
                       << ", g_hat = " << format(step.g_hat) << "\n";
                }
            });
        }
        return kHolds;
    } catch (const GeometryError& e) {
        return geometry_failure(printer, e);
    }
}

int cmd_beta(const Options& opts, Printer& printer) {
    const auto tree = load(opts);
    try {
        const auto beta = beta_exact(tree);
        if (printer.json_mode()) {
            printer.emit(json{{"beta", to_string(beta)}, {"bounded_by_one", beta <= 1}});
        } else {
            printer.human([&](std::ostream& os) { os << "beta = " << to_string(beta) << "\n"; });
        }
        return kHolds;
    } catch (const GeometryError& e) {
        return geometry_failure(printer, e);
    }
}

int cmd_gen(Options opts, Printer& printer) {
    if (opts.mode == "generic") {
        opts.params.mode = GeneratorMode::Generic;
    } else if (opts.mode == "martingale_perturbed") {
        opts.params.mode = GeneratorMode::MartingalePerturbed;
    } else {
        throw InputError("unknown generator mode \"" + opts.mode + "\"");
    }
    const auto tree = random_tree(opts.params, opts.seed);
    const auto doc = tree_to_json(tree, opts.seed);
    if (opts.out_path.empty()) {
        printer.emit(doc);
        return kHolds;
    }
    std::ofstream out(opts.out_path);
    if (!out) throw InputError("cannot write " + opts.out_path);
    out << doc.dump(2) << "\n";
    printer.human([&](std::ostream& os) { os << "wrote " << opts.out_path << " (seed " << opts.seed << ")\n"; });
    return kHolds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opts;
    CLI::App app{"Exact no-arbitrage checks for finite scenario-tree markets", "ftap"};
    app.require_subcommand(1);
    app.add_flag("--json", opts.json, "Machine-readable JSON output");
    app.add_flag("--quiet", opts.quiet, "Suppress regular output; rely on the exit code");

    auto file_command = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->add_option("file", opts.file, "Scenario tree JSON file")->required();
        return sub;
    };
    auto* validate_cmd = file_command("validate", "Check a tree file against the model rules");
    auto* check_cmd = file_command("check", "Run every route and report whether the tree is arbitrage-free");
    auto* arb_cmd = file_command("find-arbitrage", "Search for an arbitrage strategy");
    auto* emm_cmd = file_command("build-emm", "Construct an equivalent martingale measure with bounded density");
    auto* beta_cmd = file_command("beta", "Exact optimum of the scaled gain functional (at most 1 when arbitrage-free)");

    auto* gen_cmd = app.add_subcommand("gen", "Generate a random scenario tree");
    gen_cmd->fallthrough();
    gen_cmd->add_option("--d", opts.params.assets, "Asset count (1..4)");
    gen_cmd->add_option("--N", opts.params.horizon, "Horizon (1..5)");
    gen_cmd->add_option("--min-branching", opts.params.min_branching, "Minimum children per node");
    gen_cmd->add_option("--branching,--max-branching", opts.params.max_branching, "Maximum children per node (1..5)");
    gen_cmd->add_option("--value-range", opts.params.value_range, "Grid range for increments and leaf offsets");
    gen_cmd->add_option("--mode", opts.mode, "generic | martingale_perturbed");
    gen_cmd->add_option("--seed", opts.seed, "PRNG seed");
    gen_cmd->add_option("--out", opts.out_path, "Output file (stdout when omitted)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kHolds;
    } catch (const CLI::ParseError& e) {
        err << "ftap: " << e.what() << "\n";
        return kInputError;
    }
    if (gen_cmd->parsed() && opts.params.min_branching > opts.params.max_branching) {
        opts.params.min_branching = opts.params.max_branching;
    }

    Printer printer(opts, out);
    try {
        if (validate_cmd->parsed()) return cmd_validate(opts, printer);
        if (check_cmd->parsed()) return cmd_check(opts, printer);
        if (arb_cmd->parsed()) return cmd_find_arbitrage(opts, printer);
        if (emm_cmd->parsed()) return cmd_build_emm(opts, printer);
        if (beta_cmd->parsed()) return cmd_beta(opts, printer);
        return cmd_gen(opts, printer);
    } catch (const InputError& e) {
        err << "ftap: " << e.what() << "\n";
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "ftap: " << e.what() << "\n";
        return kInputError;
    } catch (const InconsistencyError& e) {
        err << "ftap: " << e.what() << "\n";
        return kAlarm;
    }
}

}  // namespace ftap::cli
