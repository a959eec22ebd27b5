// bgc — one-mode Bosonic Gaussian channel toolbox.
//
// Subcommands:
//   classify   degradability verdict of a channel spec
//   simulate   run a channel (or its complementary map) on a Gaussian state
//   decompose  factor a coupling into squeezers + canonical channel
//   verify     check a degrading-composition identity numerically
//
// Reports go to stdout as deterministic JSON; errors go to stderr as
// {"error": <kind>, "message": ...}. Exit codes: 0 success, 1 check failed,
// 2 parse error, 3 domain/range error, 4 unsupported.

#include <CLI11.hpp>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bgc/channels.hpp"
#include "bgc/coupling.hpp"
#include "bgc/decompose.hpp"
#include "bgc/degradability.hpp"
#include "bgc/gaussian_state.hpp"
#include "bgc/serialize.hpp"

namespace {

struct CommonOptions {
    std::string input;
    std::string state;
    std::string env;
    std::string output;
    int samples = 100;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    bool complementary = false;
    bool oracle = false;
    double k = 0.0;
    std::string identity;
};

/// Accepts either inline JSON (first non-space character is '{') or a path.
nlohmann::json load_json_arg(const std::string& arg, const char* what) {
    std::size_t i = 0;
    while (i < arg.size() && std::isspace(static_cast<unsigned char>(arg[i]))) ++i;
    if (i < arg.size() && arg[i] == '{') {
        return bgc::parse_json_text(arg);
    }
    std::ifstream f(arg);
    if (!f) {
        throw bgc::parse_error(std::string(what) + ": cannot read file " + arg);
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return bgc::parse_json_text(ss.str());
}

void emit_report(const CommonOptions& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(opt.output);
    if (!f) {
        throw std::runtime_error("cannot write output file " + opt.output);
    }
    f << text << "\n";
}

bgc::GaussianState load_env(const CommonOptions& opt) {
    if (opt.env.empty()) {
        return bgc::vacuum_state();
    }
    return bgc::state_from_json(load_json_arg(opt.env, "env"));
}

int run_classify(const CommonOptions& opt) {
    const bgc::ParsedSpec spec = bgc::spec_from_json(load_json_arg(opt.input, "input"));
    bgc::require_env_state(spec.env, "classify");
    const bgc::Classification c = bgc::classify(spec.coupling);
    const bool env_pure = bgc::is_pure_state(spec.env);

    std::string notes = c.notes;
    if (c.weakly_degradable && env_pure) {
        if (!notes.empty()) notes += "; ";
        notes += "degradable (env pure)";
    }

    bgc::JsonWriter w;
    w.begin_object();
    w.key("q").value(c.q);
    w.key("weakly_degradable").value(c.weakly_degradable);
    w.key("anti_degradable").value(c.anti_degradable);
    if (c.degrading_k) w.key("degrading_k").value(*c.degrading_k);
    if (c.antidegrading_k) w.key("antidegrading_k").value(*c.antidegrading_k);
    w.key("equivalent_map").value(bgc::to_string(c.equivalent_map));
    if (c.equivalent_k) w.key("equivalent_k").value(*c.equivalent_k);
    w.key("env_purity").value(env_pure);
    w.key("notes").value(notes);
    w.end_object();
    emit_report(opt, w.str());
    return 0;
}

int run_simulate(const CommonOptions& opt) {
    const bgc::ParsedSpec spec = bgc::spec_from_json(load_json_arg(opt.input, "input"));
    const bgc::GaussianState rho = bgc::state_from_json(load_json_arg(opt.state, "state"));
    const bgc::ChannelSpec general{spec.coupling, spec.env};

    bgc::GaussianState primary;
    bgc::GaussianState reference;
    if (spec.named_k) {
        // Closed-form path, checked against the moment-evolution path.
        const bgc::KChannel ch{*spec.named_k, spec.env};
        primary = opt.complementary ? bgc::apply_k_complementary(ch, rho) : bgc::apply_k(ch, rho);
        reference = opt.complementary ? bgc::apply_general_complementary(general, rho)
                                      : bgc::apply_general(general, rho);
    } else {
        // Moment evolution, checked against reading the exchanged coupling
        // on the other output mode.
        const bgc::ChannelSpec swapped{bgc::swap_coupling(spec.coupling), spec.env};
        primary = opt.complementary ? bgc::apply_general_complementary(general, rho)
                                    : bgc::apply_general(general, rho);
        reference = opt.complementary ? bgc::apply_general(swapped, rho)
                                      : bgc::apply_general_complementary(swapped, rho);
    }

    bgc::JsonWriter w;
    if (!opt.oracle) {
        bgc::write_state(w, primary);
    } else {
        w.begin_object();
        w.key("state");
        bgc::write_state(w, primary);
        w.key("oracle_state");
        bgc::write_state(w, reference);
        w.key("residual").value(bgc::state_distance(primary, reference));
        w.end_object();
    }
    emit_report(opt, w.str());
    return 0;
}

int run_decompose(const CommonOptions& opt) {
    const bgc::ParsedSpec spec = bgc::spec_from_json(load_json_arg(opt.input, "input"));
    bgc::require_env_state(spec.env, "decompose");
    const bgc::Decomposition dec = bgc::decompose(spec.coupling);
    const bgc::DecompositionReport rep =
        bgc::verify_decomposition(spec.coupling, spec.env, opt.samples, opt.seed);

    bgc::JsonWriter w;
    w.begin_object();
    w.key("decomposition");
    bgc::write_decomposition(w, dec);
    w.key("max_residual").value(rep.max_residual);
    w.key("samples").value(rep.samples);
    w.end_object();
    emit_report(opt, w.str());
    return 0;
}

int run_verify(const CommonOptions& opt) {
    const bgc::GaussianState env = load_env(opt);
    bgc::ResidualReport rep;
    if (opt.identity == "weak") {
        rep = bgc::verify_weak_degradability(opt.k, env, opt.samples, opt.seed);
    } else if (opt.identity == "anti") {
        rep = bgc::verify_anti_degradability(opt.k, env, opt.samples, opt.seed);
    } else {
        throw bgc::parse_error("verify: --identity must be \"weak\" or \"anti\"");
    }
    emit_report(opt, bgc::residual_report_to_json(rep));
    return rep.max_residual < opt.tolerance ? 0 : 1;
}

int fail(const char* kind, const std::string& message, int code) {
    bgc::JsonWriter w;
    w.begin_object();
    w.key("error").value(kind);
    w.key("message").value(message);
    w.end_object();
    std::cerr << w.str() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-mode Bosonic Gaussian channel toolbox"};
    app.require_subcommand(1);
    CommonOptions opt;

    auto* classify = app.add_subcommand("classify", "Degradability verdict for a channel spec");
    classify->add_option("--input", opt.input, "Channel spec: JSON file path or inline JSON")
        ->required();
    classify->add_option("--output", opt.output, "Write the report to a file instead of stdout");

    auto* simulate = app.add_subcommand("simulate", "Apply a channel to a Gaussian state");
    simulate->add_option("--input", opt.input, "Channel spec: JSON file path or inline JSON")
        ->required();
    simulate->add_option("--state", opt.state, "Input state: JSON file path or inline JSON")
        ->required();
    simulate->add_flag("--complementary", opt.complementary,
                       "Output the environment side of the interaction");
    simulate->add_flag("--oracle", opt.oracle,
                       "Evaluate through both channel paths and report their residual");
    simulate->add_option("--output", opt.output, "Write the report to a file instead of stdout");

    auto* decompose = app.add_subcommand("decompose", "Factor a coupling into squeezers + canonical channel");
    decompose->add_option("--input", opt.input, "Coupling or channel spec: file path or inline JSON")
        ->required();
    decompose->add_option("--samples", opt.samples, "Random states for the residual check")
        ->check(CLI::PositiveNumber);
    decompose->add_option("--seed", opt.seed, "Sampler seed");
    decompose->add_option("--output", opt.output, "Write the report to a file instead of stdout");

    auto* verify = app.add_subcommand("verify", "Check a degrading-composition identity");
    verify->add_option("--identity", opt.identity, "Which identity: weak or anti")->required();
    verify->add_option("--k", opt.k, "Channel parameter k")->required();
    verify->add_option("--env", opt.env, "Environment state: JSON file path or inline JSON (default vacuum)");
    verify->add_option("--samples", opt.samples, "Random input states")->check(CLI::PositiveNumber);
    verify->add_option("--seed", opt.seed, "Sampler seed");
    verify->add_option("--tolerance", opt.tolerance, "Pass/fail residual threshold")
        ->check(CLI::PositiveNumber);
    verify->add_option("--output", opt.output, "Write the report to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("parse", e.what(), 2);
    }

    try {
        if (app.got_subcommand(classify)) return run_classify(opt);
        if (app.got_subcommand(simulate)) return run_simulate(opt);
        if (app.got_subcommand(decompose)) return run_decompose(opt);
        return run_verify(opt);
    } catch (const bgc::parse_error& e) {
        return fail("parse", e.what(), 2);
    } catch (const bgc::unsupported_error& e) {
        return fail("unsupported", e.what(), 4);
    } catch (const std::domain_error& e) {
        return fail("domain", e.what(), 3);
    } catch (const std::invalid_argument& e) {
        return fail("domain", e.what(), 3);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
}
