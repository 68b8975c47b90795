#include "cli.hpp"

#include "pqc/circuit_io.hpp"
#include "pqc/driver.hpp"
#include "pqc/effects.hpp"
#include "pqc/error.hpp"
#include "pqc/eval.hpp"
#include "pqc/syntax.hpp"
#include "pqc/typecheck.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>

namespace pqc {

namespace {

struct Options {
    std::string file;
    std::string gates;
    std::string metric;
    std::string precondition;
    std::optional<std::size_t> restrict;
    std::optional<std::int64_t> bound;
    std::string emit_circuit;
    bool draw = false;
    bool json = false;
};

std::optional<std::filesystem::path> gates_override(const Options& o) {
    if (o.gates.empty()) return std::nullopt;
    return std::filesystem::path(o.gates);
}

Metric require_metric(const std::string& name) {
    auto m = parse_metric(name);
    if (!m) throw Error("UsageError", "unknown metric '" + name + "'; expected gates, depth-naive, width, depth or assert");
    return *m;
}

std::vector<Metric> metrics_for(const std::string& name) {
    if (name.empty() || name == "all") return {std::begin(kAllMetrics), std::end(kAllMetrics)};
    return {require_metric(name)};
}

int cmd_check(const Options& o, std::ostream& out) {
    LoadedProgram lp = load_program(o.file, gates_override(o));
    TypedProgram typed = typecheck_program(lp.program);
    if (o.json) {
        out << nlohmann::json{{"type", print(*typed.type)}}.dump() << "\n";
    } else {
        out << "type: " << print(*typed.type) << "\n";
    }
    return kExitOk;
}

int cmd_run(const Options& o, std::ostream& out) {
    LoadedProgram lp = load_program(o.file, gates_override(o));
    typecheck_program(lp.program);
    ValueConfiguration r = run_program(lp.program);
    const CircuitStats stats = circuit_stats(r.circuit, lp.spec);
    if (!o.emit_circuit.empty()) {
        std::ofstream f(o.emit_circuit);
        if (!f) throw Error("IOError", "cannot write " + o.emit_circuit);
        nlohmann::json j = to_json(r.circuit);
        j["output_labels"] = r.out_ctx.to_string();
        f << j.dump(2) << "\n";
    }
    if (o.json) {
        out << nlohmann::json{{"value", print(*r.value)},
                              {"outputs", r.out_ctx.to_string()},
                              {"gates", stats.gates},
                              {"width", stats.width},
                              {"depth", stats.depth}}
                   .dump()
            << "\n";
    } else {
        out << "value: " << print(*r.value) << "\n";
        out << "outputs: " << r.out_ctx.to_string() << "\n";
        out << "gates: " << stats.gates << "\nwidth: " << stats.width << "\ndepth: " << stats.depth << "\n";
    }
    if (o.draw) out << draw(r.circuit);
    return kExitOk;
}

AssertView assert_view(const Options& o, const Effect& e) {
    AssertView view;
    view.restrict = o.restrict;
    if (e.metric == Metric::Assert && !o.precondition.empty())
        view.precondition = parse_precondition(o.precondition, e.asserts().in_qubits());
    return view;
}

int cmd_analyze(const Options& o, std::ostream& out) {
    const Metric m = require_metric(o.metric);
    LoadedProgram lp = load_program(o.file, gates_override(o));
    auto algebra = make_algebra(m);
    EffectJudgment j = infer_program(lp.program, *algebra, lp.spec);
    const AssertView view = assert_view(o, j.effect);
    nlohmann::json result = effect_json(j.effect, view);
    result["type"] = print(*j.type);
    int code = kExitOk;
    if (o.bound) {
        const bool within = effect_magnitude(j.effect, view) <= *o.bound;
        result["within_bound"] = within;
        if (!within) code = kExitFailure;
    }
    out << result.dump() << "\n";
    return code;
}

int cmd_verify(const Options& o, std::ostream& out) {
    LoadedProgram lp = load_program(o.file, gates_override(o));
    bool all = true;
    nlohmann::json reports = nlohmann::json::array();
    for (Metric m : metrics_for(o.metric)) {
        auto algebra = make_algebra(m);
        VerifyReport r = verify_dynamic(lp.program, *algebra, lp.spec);
        all = all && r.holds;
        if (o.json) {
            reports.push_back(
                {{"metric", metric_name(m)}, {"inferred", effect_json(r.inferred)}, {"observed", effect_json(r.observed)},
                 {"holds", r.holds}});
        } else {
            out << metric_name(m) << ": " << (r.holds ? "ok" : "VIOLATED") << "\n  inferred " << to_string(r.inferred)
                << "\n  observed " << to_string(r.observed) << "\n";
        }
    }
    if (o.json) out << nlohmann::json{{"reports", reports}, {"holds", all}}.dump() << "\n";
    return all ? kExitOk : kExitFailure;
}

int exit_code_for(const Error& e) {
    if (e.code() == "IOError" || e.code() == "UsageError" || e.code() == "MalformedBasisState" ||
        e.code() == "InvalidRestriction")
        return kExitUsage;
    return kExitFailure;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Circuit description language toolchain: typecheck, evaluate and bound circuit metrics", "pqc"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", o.file, "Program file")->required();
        sub->add_option("--gates", o.gates, "Gate-spec file, replacing any gates header");
        sub->add_flag("--json", o.json, "Machine-readable output");
    };
    CLI::App* check = app.add_subcommand("check", "Typecheck a program and print its type");
    add_common(check);
    CLI::App* run = app.add_subcommand("run", "Evaluate a program and print the result and circuit statistics");
    add_common(run);
    run->add_option("--emit-circuit", o.emit_circuit, "Write the produced circuit as JSON");
    run->add_flag("--draw", o.draw, "Print an ASCII diagram of the produced circuit");
    CLI::App* analyze = app.add_subcommand("analyze", "Infer the effect of a program under a circuit algebra");
    add_common(analyze);
    analyze->add_option("--metric", o.metric, "gates | depth-naive | width | depth | assert")->required();
    analyze->add_option("--precondition", o.precondition, "Comma-separated basis states, e.g. 00,11");
    analyze->add_option("--restrict", o.restrict, "Report assertions on the first K output qubits only");
    analyze->add_option("--bound", o.bound, "Exit 1 unless the effect magnitude is at most N");
    CLI::App* verify = app.add_subcommand("verify", "Check that the produced circuit is within the inferred effect");
    add_common(verify);
    verify->add_option("--metric", o.metric, "A metric name or all (default)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check(o, out);
        if (run->parsed()) return cmd_run(o, out);
        if (analyze->parsed()) return cmd_analyze(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
    } catch (const Error& e) {
        err << "error[" << e.code() << "]: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace pqc
