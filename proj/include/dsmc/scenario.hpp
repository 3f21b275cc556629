#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "dsmc/plant.hpp"

namespace dsmc {

/// Piecewise-linear reference, (time, value) knots. Times must be
/// non-decreasing; a repeated time encodes a step. Evaluation clamps to
/// the first/last value outside the knot range.
struct ReferenceProfile {
    std::vector<std::pair<double, double>> knots;

    double at(double t) const;
    void validate() const;

    /// Default 100 s speed profile used by the built-in scenarios.
    static ReferenceProfile standard();
};

struct ControllerSpec {
    int order = 1;        // 1 = first-order law, 2 = second-order law
    bool mimo = false;    // off-diagonal gain entries couple the loops
    bool adaptive = false;
    bool use_uncertainty_term = true;
    bool exact_model = false;  // controller receives the true perturbed parameters
    Eigen::Matrix2d gain = (Eigen::Matrix2d() << 0.5, 0.0, 0.0, 0.5).finished();
    double boundary_layer_speed = 0.01;
    double boundary_layer_current = 0.01;
};

struct AdcSpec {
    bool enabled = true;
    int bits = 10;
    double fsr_speed = 200.0;    // rad/s, centered on offset_speed
    double fsr_current = 400.0;  // A; equilibrium currents reach ~113 A on
                                 // the standard profile, transients higher
    double offset_speed = 0.0;
    double offset_current = 0.0;
};

struct AdaptationSpec {
    Eigen::Matrix2d rho_beta;
    Eigen::Matrix2d rho_alpha;
    Eigen::Array<bool, 2, 2> mask_beta;
    Eigen::Array<bool, 2, 2> mask_alpha;
    Eigen::Matrix2d beta_hat0;   // initial estimates (1 outside the masks)
    Eigen::Matrix2d alpha_hat0;  // initial estimates (0 outside the masks)

    /// Gains and mask for the DC motor scenario: the four additive and
    /// three multiplicative entries adapt; the speed-loop input coupling
    /// stays pinned. Multiplicative gains scale with the square of the
    /// nominal entry so that both estimates of a pair can land on the
    /// true values, and both kinds scale with the square of the typical
    /// regressor magnitude so that update steps stay inside the stable
    /// range across entries.
    static AdaptationSpec standard(const DcMotorParams& p, double base_gain = 5.0);
};

/// Complete description of one closed-loop DC motor run.
struct Scenario {
    DcMotorParams motor;
    double speed0 = 0.0;       // initial rotor speed [rad/s]
    double current0 = 0.0;     // initial armature current [A]
    double divergence_bound = 1e6;

    UncertaintySpec true_uncertainty = UncertaintySpec::identity(2);
    DisturbanceProfile disturbance;
    ReferenceProfile reference = ReferenceProfile::standard();
    ControllerSpec controller;
    AdcSpec adc;
    AdaptationSpec adaptation = AdaptationSpec::standard(DcMotorParams{});

    double duration = 100.0;   // run length [s]
    double period = 0.2;       // controller sampling time T [s]
    double fine_dt = 1e-3;     // plant integration substep [s]
    unsigned seed = 0;         // reserved; runs are deterministic
    double metrics_skip = 2.0; // initial transient excluded from metrics [s]

    /// Throws config_error on inconsistent settings; returns non-fatal
    /// warnings (for example the sampling-theorem check).
    std::vector<std::string> validate() const;
};

/// Parses the flat key-value scenario format. Unknown sections or keys
/// are errors.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Serializes a scenario back into the file format.
std::string scenario_to_config(const Scenario& s);

/// Built-in scenario presets. "default" is the baseline run; "fig3" to
/// "fig7" are the experiment bases behind the repro subcommand.
Scenario scenario_preset(const std::string& name);

/// Applies the 50% parameter error of the adaptation experiment: the
/// controller's initial estimates start at beta_hat = 0.5 on masked
/// multiplicative entries and alpha_hat = 0.5 |a| on masked additive
/// entries, and must be steered back to the nominal values (1, 0).
void apply_half_parameter_error(Scenario& s);

/// Controller presets used by sweeps: first_siso, first_mimo,
/// second_siso, second_mimo, each optionally suffixed by "/mu" or
/// "/nomu" to force the uncertainty switching term on or off.
ControllerSpec controller_preset(const std::string& token, const ControllerSpec& base);

}  // namespace dsmc
