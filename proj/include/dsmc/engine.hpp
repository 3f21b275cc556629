#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dsmc/adapt.hpp"
#include "dsmc/metrics.hpp"
#include "dsmc/plant.hpp"
#include "dsmc/scenario.hpp"
#include "dsmc/smc.hpp"
#include "dsmc/trace.hpp"

namespace dsmc {

/// Runs one closed-loop DC motor scenario. Deterministic: identical
/// scenarios produce identical traces. Throws divergence_error when the
/// plant leaves the configured bound, config_error on invalid scenarios.
SimTrace run_scenario(const Scenario& s);

/// As run_scenario, and reports the scenario's validation warnings.
SimTrace run_scenario(const Scenario& s, std::vector<std::string>& warnings);

enum class SweepAxis { sampling_time, bits, controller };

SweepAxis sweep_axis_from_name(const std::string& name);

struct SweepRow {
    std::string axis;
    std::string value;       // axis value for this variant
    std::string controller;  // controller preset token
    Metrics metrics;
    std::optional<double> improvement;  // vs the baseline controller, same axis value
};

struct SweepSummary {
    std::vector<SweepRow> rows;
    std::string to_csv() const;
    void write_csv(const std::string& path) const;

    const SweepRow& find(const std::string& value, const std::string& controller) const;
};

/// Runs the cross of axis values and controller presets on top of the
/// base scenario. For the controller axis the values are the controller
/// tokens themselves. Improvements are reported against the baseline
/// controller at the same axis value.
SweepSummary run_sweep(const Scenario& base, SweepAxis axis,
                       const std::vector<std::string>& values,
                       const std::vector<std::string>& controllers =
                           {"first_siso", "second_siso", "second_mimo"},
                       const std::string& baseline = "first_siso");

/// Generic closed loop for square-input systems driven by the library
/// control laws; the plant is stepped with the exact Euler map (one
/// substep per controller period). Used for the reaching-law and
/// adaptation-law checks on arbitrary systems.
struct GenericLoopConfig {
    LinearModel model;                  // square B
    Eigen::VectorXd x0;
    double period = 0.1;
    int steps = 50;
    std::function<Eigen::VectorXd(int)> reference;  // X_d at step index
    int order = 1;
    Eigen::MatrixXd gain;
    std::optional<UncertaintySpec> true_uncertainty;  // plant perturbation
    std::optional<AdaptationState> adaptation;        // enables the adaptive law
};

struct GenericLoopResult {
    std::vector<Eigen::VectorXd> states;    // x(0..steps)
    std::vector<Eigen::VectorXd> surfaces;  // measured S(0..steps)
    std::vector<Eigen::VectorXd> controls;  // u(0..steps-1)
    std::vector<AdaptationState> estimates; // present when adaptive
};

GenericLoopResult run_generic_loop(const GenericLoopConfig& cfg);

}  // namespace dsmc
