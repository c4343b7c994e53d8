#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ksc/channels.hpp"
#include "ksc/io.hpp"
#include "ksc/linalg.hpp"
#include "ksc/measure.hpp"
#include "ksc/ncmodel.hpp"
#include "ksc/noisescan.hpp"
#include "ksc/scenarios.hpp"
#include "verify.hpp"

namespace {

using namespace ksc;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

// Exit codes signal usage/IO problems only; verdicts are data.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Scenario resolve_scenario(const std::string& id) {
    if (id == "kcbs") return kcbs_scenario();
    if (id == "pm") return peres_mermin_scenario();
    try {
        return load_scenario_file(id);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
}

CMat resolve_state(const std::string& spec, const Scenario& s) {
    CMat rho;
    if (spec == "maxmix") {
        rho = maximally_mixed(s.dimension);
    } else if (spec == "kcbs-optimal") {
        rho = kcbs_optimal_state();
    } else if (spec.rfind("basis:", 0) == 0) {
        std::size_t k = 0;
        try {
            k = std::stoul(spec.substr(6));
        } catch (const std::exception&) {
            throw UsageError("state: malformed basis index in '" + spec + "'");
        }
        if (k >= s.dimension) {
            throw UsageError("state: basis index " + std::to_string(k) +
                             " out of range for dimension " + std::to_string(s.dimension));
        }
        rho = basis_projector(s.dimension, k);
    } else if (spec.rfind("file:", 0) == 0) {
        try {
            rho = load_state_file(spec.substr(5));
        } catch (const std::runtime_error& e) {
            throw UsageError(e.what());
        }
    } else {
        throw UsageError("state: unknown spec '" + spec +
                         "' (expected maxmix, kcbs-optimal, basis:k or file:path)");
    }
    if (rho.rows() != s.dimension) {
        throw UsageError("state: dimension " + std::to_string(rho.rows()) +
                         " incompatible with scenario dimension " + std::to_string(s.dimension));
    }
    return rho;
}

NoisePlacement parse_placement(const std::string& name) {
    if (name == "none") return NoisePlacement::None;
    if (name == "before-first") return NoisePlacement::BeforeFirstOnly;
    if (name == "before-each") return NoisePlacement::BeforeEach;
    throw UsageError("placement: unknown value '" + name + "'");
}

Picture parse_picture(const std::string& name) {
    if (name == "schrodinger") return Picture::Schrodinger;
    if (name == "heisenberg") return Picture::Heisenberg;
    if (name == "both") return Picture::Both;
    throw UsageError("picture: unknown value '" + name + "'");
}

std::string context_label(const Scenario& s, std::size_t k) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.contexts[k].size(); ++i) {
        if (i > 0) out += ",";
        out += s.measurements[s.contexts[k][i]].label();
    }
    return out + "}";
}

std::string human(double v) { return format_significant(v, 8); }
std::string csv_num(double v) { return format_fixed(v, 12); }

// ---------------------------------------------------------------- info ----

int cmd_info(const std::string& scenario_id, const std::string& format) {
    const Scenario s = resolve_scenario(scenario_id);
    const Diagnostics diag = validate_scenario(s);
    if (format == "json") {
        ordered_json doc;
        doc["name"] = s.name;
        doc["dimension"] = s.dimension;
        ordered_json labels = ordered_json::array();
        for (const Observable& obs : s.measurements) labels.push_back(obs.label());
        doc["measurements"] = std::move(labels);
        doc["contexts"] = s.contexts;
        doc["inequality"] = {{"gamma", s.inequality.gamma},
                             {"bound", s.inequality.bound},
                             {"direction", std::string(to_string(s.inequality.direction))}};
        doc["valid"] = diag.pass;
        if (!diag.pass) doc["failures"] = diag.failures;
        std::printf("%s\n", doc.dump(2).c_str());
    } else {
        std::printf("scenario: %s\n", s.name.c_str());
        std::printf("dimension: %zu\n", s.dimension);
        std::printf("measurements (%zu):", s.measurements.size());
        for (const Observable& obs : s.measurements) std::printf(" %s", obs.label().c_str());
        std::printf("\ncontexts (%zu):\n", s.contexts.size());
        for (std::size_t k = 0; k < s.contexts.size(); ++k) {
            std::printf("  %zu: %s  gamma=%s\n", k, context_label(s, k).c_str(),
                        human(s.inequality.gamma[k]).c_str());
        }
        std::printf("inequality: sum_k gamma_k <C_k> %s %s\n",
                    std::string(to_string(s.inequality.direction)).c_str(),
                    human(s.inequality.bound).c_str());
        std::printf("validation: %s\n", diag.pass ? "pass" : "FAIL");
        for (const std::string& f : diag.failures) std::printf("  %s\n", f.c_str());
    }
    return diag.pass ? kExitOk : kExitUsage;
}

// ---------------------------------------------------------------- eval ----

ordered_json report_to_json(const Scenario& s, const EvalReport& r) {
    ordered_json doc;
    doc["scenario"] = r.scenario;
    doc["state"] = r.state;
    if (r.noise_p) {
        doc["noise_p"] = *r.noise_p;
    } else {
        doc["noise_p"] = nullptr;
    }
    doc["placement"] = std::string(to_string(r.placement));
    doc["picture"] = std::string(to_string(r.picture));
    ordered_json contexts = ordered_json::array();
    for (std::size_t k = 0; k < r.correlators.size(); ++k) {
        ordered_json ctx;
        ctx["context"] = context_label(s, k);
        ctx["gamma"] = s.inequality.gamma[k];
        ctx["correlator"] = r.correlators[k];
        contexts.push_back(std::move(ctx));
    }
    doc["contexts"] = std::move(contexts);
    doc["value"] = r.value;
    doc["bound"] = r.bound;
    doc["direction"] = std::string(to_string(r.direction));
    doc["violated"] = r.violated;
    return doc;
}

int cmd_eval(const std::string& scenario_id, const std::string& state_spec,
             std::optional<double> p, const std::string& placement_name,
             const std::string& picture_name, const std::string& format) {
    const Scenario s = resolve_scenario(scenario_id);
    const CMat rho = resolve_state(state_spec, s);
    const NoisePlacement placement = parse_placement(placement_name);
    const Picture picture = parse_picture(picture_name);

    if (placement != NoisePlacement::None && !p) {
        throw UsageError("eval: --placement " + placement_name + " requires --p");
    }
    if (placement == NoisePlacement::None && p) {
        throw UsageError("eval: --p requires --placement before-first or before-each");
    }
    std::optional<Channel> noise;
    if (p) {
        if (!(*p >= 0.0 && *p <= 1.0)) throw UsageError("eval: --p outside [0, 1]");
        noise = Channel::depolarizing(*p, s.dimension);
    }

    EvalReport report;
    try {
        report = evaluate_inequality(s, rho, noise ? &*noise : nullptr, placement, picture,
                                     state_spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    if (format == "json") {
        std::printf("%s\n", report_to_json(s, report).dump(2).c_str());
    } else {
        std::printf("scenario: %s\n", report.scenario.c_str());
        std::printf("state: %s\n", report.state.c_str());
        if (report.noise_p) {
            std::printf("noise: p = %s, placement = %s\n", human(*report.noise_p).c_str(),
                        std::string(to_string(report.placement)).c_str());
        } else {
            std::printf("noise: none\n");
        }
        std::printf("picture: %s\n", std::string(to_string(report.picture)).c_str());
        std::printf("context correlators:\n");
        for (std::size_t k = 0; k < report.correlators.size(); ++k) {
            std::printf("  %-16s %s\n", context_label(s, k).c_str(),
                        human(report.correlators[k]).c_str());
        }
        std::printf("value: %s  (bound %s %s)\n", human(report.value).c_str(),
                    std::string(to_string(report.direction)).c_str(), human(report.bound).c_str());
        std::printf("violated: %s\n", report.violated ? "yes" : "no");
    }
    return kExitOk;
}

// --------------------------------------------------------------- sweep ----

int cmd_sweep(const std::string& scenario_id, const std::string& state_spec,
              const std::string& placement_name, double p_min, double p_max, std::size_t steps,
              const std::string& format) {
    const Scenario s = resolve_scenario(scenario_id);
    const CMat rho = resolve_state(state_spec, s);
    const NoisePlacement placement = parse_placement(placement_name);

    SweepSeries series;
    try {
        series = sweep(s, rho, placement, p_min, p_max, steps, state_spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    if (format == "csv") {
        std::printf("p,value,bound,violated\n");
        for (const SweepPoint& pt : series.points) {
            std::printf("%s,%s,%s,%s\n", csv_num(pt.p).c_str(), csv_num(pt.value).c_str(),
                        csv_num(series.bound).c_str(), pt.violated ? "true" : "false");
        }
    } else if (format == "json") {
        ordered_json doc;
        doc["scenario"] = series.scenario;
        doc["placement"] = std::string(to_string(series.placement));
        doc["state"] = series.state;
        doc["bound"] = series.bound;
        doc["direction"] = std::string(to_string(series.direction));
        ordered_json points = ordered_json::array();
        for (const SweepPoint& pt : series.points) {
            points.push_back({{"p", pt.p}, {"value", pt.value}, {"violated", pt.violated}});
        }
        doc["points"] = std::move(points);
        doc["analytic_threshold"] =
            series.analytic_threshold ? ordered_json(*series.analytic_threshold) : ordered_json(nullptr);
        doc["numeric_threshold"] =
            series.numeric_threshold ? ordered_json(*series.numeric_threshold) : ordered_json(nullptr);
        std::printf("%s\n", doc.dump(2).c_str());
    } else {
        std::printf("scenario: %s, state: %s, placement: %s\n", series.scenario.c_str(),
                    series.state.c_str(), std::string(to_string(series.placement)).c_str());
        std::printf("%10s  %14s  %s\n", "p", "value", "violated");
        for (const SweepPoint& pt : series.points) {
            std::printf("%10s  %14s  %s\n", human(pt.p).c_str(), human(pt.value).c_str(),
                        pt.violated ? "yes" : "no");
        }
        if (series.analytic_threshold) {
            std::printf("analytic threshold: %s\n", human(*series.analytic_threshold).c_str());
        }
        if (series.numeric_threshold) {
            std::printf("numeric threshold: %s\n", human(*series.numeric_threshold).c_str());
        }
    }
    return kExitOk;
}

// ----------------------------------------------------------- threshold ----

int cmd_threshold(const std::string& scenario_id, const std::string& state_spec,
                  const std::string& placement_name, double tol, const std::string& format) {
    const Scenario s = resolve_scenario(scenario_id);
    const CMat rho = resolve_state(state_spec, s);
    const NoisePlacement placement = parse_placement(placement_name);
    if (!(tol > 0.0)) throw UsageError("threshold: --tol must be > 0");

    const ThresholdResult result = find_threshold(s, rho, placement, tol);
    const std::optional<double> analytic = analytic_threshold(s, rho, placement);

    const char* outcome = result.kind == ThresholdResult::Kind::Crossing ? "crossing"
                          : result.kind == ThresholdResult::Kind::NeverViolates
                              ? "never violates"
                              : "always violates";
    if (format == "json") {
        ordered_json doc;
        doc["scenario"] = s.name;
        doc["state"] = state_spec;
        doc["placement"] = std::string(to_string(placement));
        doc["tol"] = tol;
        doc["outcome"] = outcome;
        doc["p"] = result.kind == ThresholdResult::Kind::Crossing ? ordered_json(result.p)
                                                                  : ordered_json(nullptr);
        doc["analytic"] = analytic ? ordered_json(*analytic) : ordered_json(nullptr);
        std::printf("%s\n", doc.dump(2).c_str());
    } else {
        if (result.kind == ThresholdResult::Kind::Crossing) {
            std::printf("threshold: %s\n", human(result.p).c_str());
        } else {
            std::printf("threshold: %s\n", outcome);
        }
        if (analytic) std::printf("analytic: %s\n", human(*analytic).c_str());
    }
    return kExitOk;
}

// --------------------------------------------------------------- bound ----

int cmd_bound(const std::string& scenario_id, const std::string& format) {
    const Scenario s = resolve_scenario(scenario_id);
    const ClassicalBound cb = classical_bound(s);

    auto assignment_str = [&](const DeterministicAssignment& a) {
        std::string out;
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            if (i > 0) out += " ";
            out += s.measurements[i].label() + "=" + (a.values[i] > 0 ? "+1" : "-1");
        }
        return out;
    };

    if (format == "json") {
        ordered_json doc;
        doc["scenario"] = s.name;
        doc["assignments"] = std::size_t(1) << s.measurements.size();
        doc["min"] = cb.min;
        doc["argmin"] = cb.argmin.values;
        doc["max"] = cb.max;
        doc["argmax"] = cb.argmax.values;
        doc["inequality_bound"] = s.inequality.bound;
        doc["direction"] = std::string(to_string(s.inequality.direction));
        std::printf("%s\n", doc.dump(2).c_str());
    } else {
        std::printf("scenario: %s (%zu measurements, %llu assignments)\n", s.name.c_str(),
                    s.measurements.size(),
                    static_cast<unsigned long long>(std::size_t(1) << s.measurements.size()));
        std::printf("min: %s\n  witness: %s\n", human(cb.min).c_str(),
                    assignment_str(cb.argmin).c_str());
        std::printf("max: %s\n  witness: %s\n", human(cb.max).c_str(),
                    assignment_str(cb.argmax).c_str());
        std::printf("inequality bound: %s (%s)\n", human(s.inequality.bound).c_str(),
                    std::string(to_string(s.inequality.direction)).c_str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contextuality-under-noise simulator: KCBS and Peres-Mermin scenarios, "
                 "depolarizing channels, sequential correlators in both pictures"};
    app.require_subcommand(1);

    std::string scenario_id, state_spec = "maxmix", format = "human";
    std::string placement_name = "none", picture_name = "both";
    std::optional<double> p;
    double p_min = 0.0, p_max = 1.0, tol = 1e-8;
    std::size_t steps = 11;
    std::uint64_t seed = 0;

    CLI::App* info = app.add_subcommand("info", "Describe a scenario and validate it");
    info->add_option("scenario", scenario_id, "kcbs, pm, or a scenario file path")->required();
    info->add_option("--format", format)->check(CLI::IsMember({"human", "json"}));

    CLI::App* eval = app.add_subcommand("eval", "Evaluate the inequality on a state");
    eval->add_option("scenario", scenario_id, "kcbs, pm, or a scenario file path")->required();
    eval->add_option("--state", state_spec, "maxmix, kcbs-optimal, basis:k, file:path");
    eval->add_option("--p", p, "depolarizing survival probability in [0,1]");
    eval->add_option("--placement", placement_name)
        ->check(CLI::IsMember({"none", "before-first", "before-each"}));
    eval->add_option("--picture", picture_name)
        ->check(CLI::IsMember({"schrodinger", "heisenberg", "both"}));
    eval->add_option("--format", format)->check(CLI::IsMember({"human", "json"}));

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Evaluate across a grid of noise strengths");
    sweep_cmd->add_option("scenario", scenario_id)->required();
    sweep_cmd->add_option("--state", state_spec);
    sweep_cmd->add_option("--placement", placement_name)
        ->check(CLI::IsMember({"none", "before-first", "before-each"}));
    sweep_cmd->add_option("--p-min", p_min);
    sweep_cmd->add_option("--p-max", p_max);
    sweep_cmd->add_option("--steps", steps);
    sweep_cmd->add_option("--format", format)->check(CLI::IsMember({"human", "json", "csv"}));

    CLI::App* threshold = app.add_subcommand("threshold", "Bisect the classicalization point");
    threshold->add_option("scenario", scenario_id)->required();
    threshold->add_option("--state", state_spec);
    threshold->add_option("--placement", placement_name)
        ->check(CLI::IsMember({"none", "before-first", "before-each"}));
    threshold->add_option("--tol", tol);
    threshold->add_option("--format", format)->check(CLI::IsMember({"human", "json"}));

    CLI::App* bound = app.add_subcommand("bound", "Classical bound by assignment enumeration");
    bound->add_option("scenario", scenario_id)->required();
    bound->add_option("--format", format)->check(CLI::IsMember({"human", "json"}));

    CLI::App* verify = app.add_subcommand("verify", "Run the self-verification suite");
    verify->add_option("--seed", seed, "seed for randomized sampling");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (info->parsed()) return cmd_info(scenario_id, format);
        if (eval->parsed()) {
            return cmd_eval(scenario_id, state_spec, p, placement_name, picture_name, format);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(scenario_id, state_spec, placement_name, p_min, p_max, steps, format);
        }
        if (threshold->parsed()) {
            return cmd_threshold(scenario_id, state_spec, placement_name, tol, format);
        }
        if (bound->parsed()) return cmd_bound(scenario_id, format);
        if (verify->parsed()) return run_verify(seed);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitOk;
}
