// Copyright 2026 The qnlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnl/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "qnl/disturbance.hpp"
#include "qnl/errors.hpp"
#include "qnl/lhv.hpp"
#include "qnl/measurement.hpp"
#include "qnl/report.hpp"
#include "qnl/scenario.hpp"

namespace qnl {

namespace {

constexpr double kCheckTolerance = 1e-12;

int emit(const Report& report, const std::string& format,
         const std::optional<std::string>& out_file, std::ostream& out, std::ostream& err) {
    std::string rendered;
    if (format == "text") {
        rendered = to_text(report);
    } else if (format == "json") {
        rendered = to_json(report);
    } else if (format == "csv") {
        rendered = to_csv(report);
    } else {
        err << "unknown format '" << format << "' (expected text, json, csv)\n";
        return 2;
    }
    if (out_file) {
        std::ofstream file(*out_file);
        if (!file) {
            err << "cannot open '" << *out_file << "' for writing\n";
            return 2;
        }
        file << rendered;
        return 0;
    }
    out << rendered;
    return 0;
}

Report base_report(const Scenario& scenario) {
    Report report;
    report.scenario = scenario.name();
    report.metadata.tolerance = kCheckTolerance;
    return report;
}

int cmd_scenario(const Scenario& scenario, const std::string& format,
                 const std::optional<std::string>& out_file, std::ostream& out,
                 std::ostream& err) {
    Report report = base_report(scenario);
    report.predictions = PredictionSection{check_predictions(scenario)};
    const CommutingContext ctx = scenario.joint_context();
    report.distribution =
        DistributionSection{ctx.str(), joint_distribution(scenario.state(), ctx)};
    const int code = emit(report, format, out_file, out, err);
    if (code != 0) {
        return code;
    }
    return report.predictions->check.max_deviation > kCheckTolerance ? 1 : 0;
}

int cmd_lhv(const Scenario& scenario, bool reduced,
            const std::optional<std::string>& event_spec, const std::string& format,
            const std::optional<std::string>& out_file, std::ostream& out,
            std::ostream& err) {
    const LhvCase& lhv_case = scenario.lhv_case(reduced ? "reduced" : "full");
    LhvRun run = run_lhv_case(scenario, lhv_case, event_spec);

    Report report = base_report(scenario);
    report.lhv = LhvSection{std::move(run)};
    const int code = emit(report, format, out_file, out, err);
    if (code != 0) {
        return code;
    }
    const LhvRun& finished = report.lhv->run;
    if (finished.expected_models &&
        *finished.expected_models != finished.report.models.size()) {
        return 1;
    }
    return 0;
}

int cmd_disturb(const Scenario& scenario, const std::string& format,
                const std::optional<std::string>& out_file, std::ostream& out,
                std::ostream& err) {
    Report report = base_report(scenario);
    report.disturbance = DisturbanceSection{loophole_matrix(scenario)};
    report.audit = AuditSection{
        commutation_audit(scenario.quantities(), scenario.joint_context())};
    const int code = emit(report, format, out_file, out, err);
    if (code != 0) {
        return code;
    }
    // The baseline of every report must reproduce the frozen probability-1
    // prediction, and the branch masses must add up to the given-event mass.
    for (const DisturbanceReport& r : report.disturbance->reports) {
        if (std::abs(r.p_before - 1.0) > kCheckTolerance) {
            return 1;
        }
        double branch_mass = 0.0;
        for (const BranchEntry& b : r.branches) {
            branch_mass += b.probability;
        }
        if (std::abs(branch_mass - r.given_probability) > kCheckTolerance) {
            return 1;
        }
    }
    return 0;
}

int cmd_sample(const Scenario& scenario, std::uint64_t n, std::uint64_t seed,
               const std::string& format, const std::optional<std::string>& out_file,
               std::ostream& out, std::ostream& err) {
    const CommutingContext ctx = scenario.joint_context();
    const Distribution exact = joint_distribution(scenario.state(), ctx);
    const auto counts = sample_outcomes(scenario.state(), ctx, n, seed);

    SamplingSection section;
    section.context = ctx.str();
    section.samples = n;
    section.seed = seed;
    for (const auto& [tuple, p] : exact.entries()) {
        const auto it = counts.find(tuple);
        section.rows.push_back(
            SampleRow{tuple, it == counts.end() ? 0 : it->second, p});
    }

    Report report = base_report(scenario);
    report.metadata.seed = seed;
    report.metadata.samples = n;
    report.sampling = std::move(section);
    return emit(report, format, out_file, out, err);
}

class CheckRunner {
  public:
    explicit CheckRunner(std::ostream& out) : out_(out) {}

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        out_ << (ok ? "PASS" : "FAIL") << "  " << name;
        if (!ok && !detail.empty()) {
            out_ << "  (" << detail << ")";
        }
        out_ << "\n";
        if (!ok) {
            ++failures_;
        }
    }

    int failures() const { return failures_; }

  private:
    std::ostream& out_;
    int failures_ = 0;
};

bool all_conditionals_hold(const PredictionCheck& check, const Scenario& scenario) {
    for (std::size_t i = 0; i < scenario.predictions().rows.size(); ++i) {
        const PredictionRow& row = scenario.predictions().rows[i];
        if (!row.given || std::abs(row.probability - 1.0) > kCheckTolerance) {
            continue;
        }
        if (std::abs(check.rows[i].computed - 1.0) > kCheckTolerance) {
            return false;
        }
    }
    return true;
}

bool context_rejects(const Scenario& scenario, const std::string& a, const std::string& b) {
    try {
        const std::vector<std::string> labels{a, b};
        scenario.context_for(labels);
        return false;
    } catch (const NonCommutingError&) {
        return true;
    }
}

void verify_common(CheckRunner& runner, const Scenario& scenario) {
    const PredictionCheck check = check_predictions(scenario);
    runner.check("prediction table reproduced within tolerance",
                 check.max_deviation <= kCheckTolerance,
                 "max deviation " + format_number(check.max_deviation));
    runner.check("probability-1 conditional rows hold exactly",
                 all_conditionals_hold(check, scenario));
}

void verify_lhv_cases(CheckRunner& runner, const Scenario& scenario) {
    for (const LhvCase& lhv_case : scenario.lhv_cases()) {
        const LhvRun run = run_lhv_case(scenario, lhv_case);
        const std::string what = "hidden-variable case '" + lhv_case.name + "': " +
                                 std::to_string(run.report.models.size()) + " of " +
                                 std::to_string(run.report.searched) + " assignments";
        runner.check(what,
                     !run.expected_models ||
                         run.report.models.size() == *run.expected_models,
                     "expected " + std::to_string(run.expected_models.value_or(0)));
    }
}

void verify_disturbance(CheckRunner& runner, const Scenario& scenario,
                        std::size_t expected_reports) {
    const auto reports = loophole_matrix(scenario);
    runner.check("disturbance report count is " + std::to_string(expected_reports),
                 reports.size() == expected_reports,
                 "got " + std::to_string(reports.size()));
    bool all = true;
    for (const DisturbanceReport& r : reports) {
        double branch_mass = 0.0;
        for (const BranchEntry& b : r.branches) {
            branch_mass += b.probability;
        }
        if (std::abs(r.p_before - 1.0) > kCheckTolerance ||
            std::abs(r.p_after - 0.5) > kCheckTolerance ||
            std::abs(branch_mass - r.given_probability) > kCheckTolerance) {
            all = false;
        }
    }
    runner.check("every disturbed prediction drops from 1 to 1/2", all);
}

void verify_cabello(CheckRunner& runner, const Scenario& scenario) {
    verify_common(runner, scenario);

    const CommutingContext ctx = scenario.joint_context();
    const Distribution dist = joint_distribution(scenario.state(), ctx);
    bool eighths = dist.entries().size() == 8;
    for (const auto& [tuple, p] : dist.entries()) {
        eighths = eighths && std::abs(p - 0.125) <= kCheckTolerance;
    }
    runner.check("joint distribution has exactly 8 outcomes of probability 1/8", eighths);
    runner.check("the outcome (+1,+1,+1,-1) occurs",
                 dist.probability(OutcomeTuple({1, 1, 1, -1})) > 0.0);

    bool product_minus_one = true;
    for (const auto& [tuple, p] : dist.entries()) {
        int product = 1;
        for (int v : tuple.values()) {
            product *= v;
        }
        product_minus_one = product_minus_one && product == -1;
    }
    const PauliString yyyy = PauliString::parse("YYYY");
    runner.check("every joint outcome has product -1 and <YYYY> = +1",
                 product_minus_one &&
                     std::abs(expectation(scenario.state(), yyyy) - 1.0) <= kCheckTolerance);

    runner.check("sigma_z on particle 2 clashes with the x2z4 composite",
                 context_rejects(scenario, "B2", "b2B4"));
    runner.check("sigma_z on particle 4 clashes with the z2x4 composite",
                 context_rejects(scenario, "B4", "B2b4"));

    verify_lhv_cases(runner, scenario);
    verify_disturbance(runner, scenario, 4);

    // Order invariance over all 24 permutations of the joint context.
    std::vector<std::size_t> perm{0, 1, 2, 3};
    bool order_invariant = true;
    do {
        std::vector<std::string> labels;
        for (std::size_t i : perm) {
            labels.push_back(ctx.label(i));
        }
        const Distribution permuted =
            joint_distribution(scenario.state(), scenario.context_for(labels));
        for (const auto& [tuple, p] : dist.entries()) {
            std::vector<int> reordered(4);
            for (std::size_t i = 0; i < 4; ++i) {
                reordered[i] = tuple.value(perm[i]);
            }
            if (std::abs(permuted.probability(OutcomeTuple(reordered)) - p) >
                kCheckTolerance) {
                order_invariant = false;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    runner.check("joint statistics are identical under all 24 measurement orders",
                 order_invariant);

    // Seeded sampling: a fixed-seed run stays inside the 4-sigma binomial
    // band around n/8 and reproduces exactly.
    const std::uint64_t n = 80000;
    const std::uint64_t seed = 42;
    const auto counts = sample_outcomes(scenario.state(), ctx, n, seed);
    const double expected = static_cast<double>(n) / 8.0;
    const double sigma = std::sqrt(static_cast<double>(n) * 0.125 * 0.875);
    bool within = counts.size() == 8;
    for (const auto& [tuple, count] : counts) {
        within = within && std::abs(static_cast<double>(count) - expected) <= 4.0 * sigma;
    }
    runner.check("80000 samples with seed 42 stay within 4 sigma of 10000", within);
    runner.check("re-sampling with the same seed reproduces identical counts",
                 sample_outcomes(scenario.state(), ctx, n, seed) == counts);
}

void verify_ghz(CheckRunner& runner, const Scenario& scenario) {
    verify_common(runner, scenario);

    bool definite = true;
    for (const CompositeObservable& c : scenario.composites()) {
        const std::vector<std::string> labels{c.label};
        const Distribution d =
            joint_distribution(scenario.state(), scenario.context_for(labels));
        definite = definite && d.entries().size() == 1;
    }
    runner.check("all four composite observables are outcome-definite", definite);

    const Distribution joint = joint_distribution(scenario.state(), scenario.joint_context());
    runner.check("the joint run always yields (-1,-1,-1,+1)",
                 joint.entries().size() == 1 &&
                     joint.probability(OutcomeTuple({-1, -1, -1, 1})) > 0.0);

    verify_lhv_cases(runner, scenario);
    verify_disturbance(runner, scenario, 4);
}

void verify_hardy(CheckRunner& runner, const Scenario& scenario) {
    verify_common(runner, scenario);

    const PredictionCheck check = check_predictions(scenario);
    bool zeros = true;
    double positive = 0.0;
    for (std::size_t i = 0; i < scenario.predictions().rows.size(); ++i) {
        const PredictionRow& row = scenario.predictions().rows[i];
        if (!row.given && std::abs(row.probability) <= kCheckTolerance) {
            zeros = zeros && std::abs(check.rows[i].computed) <= kCheckTolerance;
        }
        if (!row.given && row.probability > kCheckTolerance) {
            positive = check.rows[i].computed;
        }
    }
    runner.check("the three impossible events have probability 0", zeros);
    runner.check("the forbidden run has probability 1/12 > 0",
                 positive > 0.0 && std::abs(positive - 1.0 / 12.0) <= kCheckTolerance);

    verify_lhv_cases(runner, scenario);
    verify_disturbance(runner, scenario, 2);
}

int cmd_verify(const Scenario& scenario, std::ostream& out) {
    CheckRunner runner(out);
    if (scenario.name() == "cabello") {
        verify_cabello(runner, scenario);
    } else if (scenario.name() == "ghz") {
        verify_ghz(runner, scenario);
    } else {
        verify_hardy(runner, scenario);
    }
    out << (runner.failures() == 0 ? "all checks passed"
                                   : std::to_string(runner.failures()) + " check(s) failed")
        << "\n";
    return runner.failures() == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact statevector laboratory for no-inequality nonlocality arguments"};
    app.name("qnlab");
    app.require_subcommand(1);

    std::string scenario_name;
    std::string format = "text";
    std::optional<std::string> out_file;
    std::optional<std::string> event_spec;
    bool reduced = false;
    std::uint64_t n = 10000;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd, bool with_format = true) {
        cmd->add_option("name", scenario_name, "scenario name (cabello, ghz, hardy)")
            ->required();
        if (with_format) {
            cmd->add_option("--format", format, "output format: text, json, csv")
                ->default_val("text")
                ->check(CLI::IsMember({"text", "json", "csv"}));
            cmd->add_option("--out", out_file, "write the report to a file");
        }
    };

    CLI::App* scenario_cmd = app.add_subcommand(
        "scenario", "recompute and print the scenario's prediction table");
    add_common(scenario_cmd);

    CLI::App* lhv_cmd = app.add_subcommand(
        "lhv", "enumerate deterministic hidden-variable assignments");
    add_common(lhv_cmd);
    lhv_cmd->add_option("--event", event_spec,
                        "observed run, e.g. \"A1A3=+1,a1a3=+1,B2b4=+1,b2B4=-1\"");
    lhv_cmd->add_flag("--reduced", reduced, "use the scenario's reduced constraint set");

    CLI::App* disturb_cmd = app.add_subcommand(
        "disturb", "before/after analysis of every conditional prediction");
    add_common(disturb_cmd);

    CLI::App* sample_cmd =
        app.add_subcommand("sample", "seeded draws from the joint outcome distribution");
    add_common(sample_cmd);
    sample_cmd->add_option("--n", n, "number of draws")->default_val(10000);
    sample_cmd->add_option("--seed", seed, "64-bit generator seed")->default_val(0);

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the scenario's acceptance checks");
    add_common(verify_cmd, false);

    std::vector<const char*> argv;
    argv.push_back("qnlab");
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const Scenario scenario = build_scenario(scenario_name);
        if (scenario_cmd->parsed()) {
            return cmd_scenario(scenario, format, out_file, out, err);
        }
        if (lhv_cmd->parsed()) {
            if (reduced && event_spec) {
                err << "--reduced and --event cannot be combined\n";
                return 2;
            }
            return cmd_lhv(scenario, reduced, event_spec, format, out_file, out, err);
        }
        if (disturb_cmd->parsed()) {
            return cmd_disturb(scenario, format, out_file, out, err);
        }
        if (sample_cmd->parsed()) {
            if (n == 0) {
                err << "--n must be at least 1\n";
                return 2;
            }
            return cmd_sample(scenario, n, seed, format, out_file, out, err);
        }
        return cmd_verify(scenario, out);
    } catch (const UnknownLabelError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }
}

}  // namespace qnl
