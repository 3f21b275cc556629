#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "dsmc/engine.hpp"
#include "dsmc/errors.hpp"
#include "dsmc/scenario.hpp"

namespace {

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w << "\n";
    }
}

void print_summary(const dsmc::SweepSummary& summary) {
    for (const auto& r : summary.rows) {
        std::cout << r.value << "  " << r.controller
                  << "  mean_abs_error=" << r.metrics.mean_abs_error;
        if (r.improvement) {
            std::cout << "  improvement=" << *r.improvement * 100.0 << "%";
        }
        std::cout << "\n";
    }
}

int run_command(const std::string& file, const std::string& out) {
    const dsmc::Scenario s = dsmc::load_scenario_file(file);
    std::vector<std::string> warnings;
    const dsmc::SimTrace trace = dsmc::run_scenario(s, warnings);
    print_warnings(warnings);
    trace.write_csv(out);
    const dsmc::Metrics m = dsmc::compute_metrics(trace, {s.metrics_skip, {}, 1.0});
    std::cout << "wrote " << out << " (" << trace.rows.size() << " steps, mean_abs_error="
              << m.mean_abs_error << " rad/s)\n";
    return 0;
}

int sweep_command(const std::string& file, const std::string& axis_name,
                  const std::vector<std::string>& values,
                  const std::vector<std::string>& controllers,
                  const std::string& baseline, const std::string& out) {
    const dsmc::Scenario base = dsmc::load_scenario_file(file);
    const dsmc::SweepAxis axis = dsmc::sweep_axis_from_name(axis_name);
    const dsmc::SweepSummary summary =
        dsmc::run_sweep(base, axis, values, controllers, baseline);
    summary.write_csv(out);
    print_summary(summary);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int validate_command(const std::string& file) {
    const dsmc::Scenario s = dsmc::load_scenario_file(file);
    print_warnings(s.validate());
    std::cout << "ok\n";
    return 0;
}

int repro_command(const std::string& fig, std::string out) {
    using dsmc::run_sweep;
    using dsmc::SweepAxis;
    if (fig == "fig3") {
        if (out.empty()) out = "fig3_summary.csv";
        const auto summary = run_sweep(dsmc::scenario_preset("fig3"),
                                       SweepAxis::sampling_time, {"0.2", "0.4", "0.8"});
        summary.write_csv(out);
        print_summary(summary);
    } else if (fig == "fig4") {
        if (out.empty()) out = "fig4_summary.csv";
        const auto summary = run_sweep(dsmc::scenario_preset("fig4"), SweepAxis::bits,
                                       {"16", "10", "4"});
        summary.write_csv(out);
        print_summary(summary);
    } else if (fig == "fig5") {
        if (out.empty()) out = "fig5_summary.csv";
        const auto summary =
            run_sweep(dsmc::scenario_preset("fig5"), SweepAxis::sampling_time,
                      {"0.2", "0.8"}, {"second_siso", "second_mimo"}, "second_siso");
        summary.write_csv(out);
        print_summary(summary);
    } else if (fig == "fig6") {
        if (out.empty()) out = "fig6_summary.csv";
        const auto summary =
            run_sweep(dsmc::scenario_preset("fig6"), SweepAxis::controller,
                      {"second_siso/nomu", "second_siso/mu", "second_mimo/nomu",
                       "second_mimo/mu"},
                      {}, "second_siso/nomu");
        summary.write_csv(out);
        print_summary(summary);
    } else if (fig == "fig7") {
        if (out.empty()) out = "fig7_trace.csv";
        const dsmc::SimTrace trace = dsmc::run_scenario(dsmc::scenario_preset("fig7"));
        trace.write_csv(out);
    } else {
        throw dsmc::config_error("unknown figure '" + fig +
                                 "' (expected fig3, fig4, fig5, fig6, or fig7)");
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive discrete sliding mode control simulator (DC motor case study)"};
    app.require_subcommand(1);

    std::string scenario_file, out_file, axis, baseline = "first_siso", fig;
    std::vector<std::string> values;
    std::vector<std::string> controllers = {"first_siso", "second_siso", "second_mimo"};

    auto* run = app.add_subcommand("run", "Run one scenario and write its trace CSV");
    run->add_option("scenario", scenario_file, "Scenario file")->required();
    run->add_option("--out", out_file, "Output CSV path")->default_val("trace.csv");

    auto* sweep = app.add_subcommand("sweep", "Run a one-axis experiment sweep");
    sweep->add_option("scenario", scenario_file, "Base scenario file")->required();
    sweep->add_option("--axis", axis, "sampling_time | bits | controller")->required();
    sweep->add_option("--values", values, "Comma-separated axis values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--controllers", controllers,
                      "Controller presets crossed with the axis")
        ->delimiter(',');
    sweep->add_option("--baseline", baseline, "Baseline controller for improvements");
    sweep->add_option("--out", out_file, "Output CSV path")->default_val("summary.csv");

    auto* repro = app.add_subcommand("repro", "Re-run a built-in experiment preset");
    repro->add_option("figure", fig, "fig3 | fig4 | fig5 | fig6 | fig7")->required();
    repro->add_option("--out", out_file, "Output CSV path");

    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("scenario", scenario_file, "Scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return run_command(scenario_file, out_file);
        if (sweep->parsed()) {
            return sweep_command(scenario_file, axis, values, controllers, baseline,
                                 out_file);
        }
        if (repro->parsed()) return repro_command(fig, out_file);
        if (validate->parsed()) return validate_command(scenario_file);
    } catch (const dsmc::divergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dsmc::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
