#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace dsmc {

using BoolMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Continuous-time linear plant, dx/dt = A x + B u + c.
///
/// The affine term c carries constant load effects; for the DC motor it
/// holds the torque contribution on the speed state and zero on the
/// current state.
struct LinearModel {
    Eigen::MatrixXd A;  // r x r dynamics, units 1/s
    Eigen::MatrixXd B;  // r x h input map
    Eigen::VectorXd c;  // r-vector affine term
    std::vector<std::string> state_names;
    std::vector<std::string> input_names;

    int order() const { return static_cast<int>(A.rows()); }
    int inputs() const { return static_cast<int>(B.cols()); }

    /// Throws std::invalid_argument on dimension mismatch or non-finite entries.
    void validate() const;
};

/// Physical constants of the DC motor plant.
struct DcMotorParams {
    double inertia = 0.02;        // rotor inertia J [kg m^2]
    double resistance = 2.0;      // armature resistance R [ohm]
    double inductance = 0.5;      // armature inductance L [H]
    double torque_const = 0.015;  // motor torque constant k_m [N m / A]
    double damping = 0.02;        // mechanical damping k_f [N m s]
    double back_emf = 0.015;      // electromotive force constant k_b [V s / rad]
    double load_torque = 0.1;     // nominal torque on the rotor [N m]
};

/// Two-state DC motor model with states (speed [rad/s], current [A]) and
/// voltage input. Throws std::invalid_argument for non-positive constants.
LinearModel dc_motor_model(const DcMotorParams& p);

/// First-order Euler discretization of a LinearModel at period T.
struct DiscreteModel {
    Eigen::MatrixXd Ad;
    Eigen::MatrixXd Bd;
    Eigen::VectorXd cd;
    double T = 0.0;
};

DiscreteModel euler_discretize(const LinearModel& m, double T);

/// Per-entry multiplicative/additive perturbation of the dynamics matrix.
/// Each kind carries its own mask; entries outside it must stay at the
/// neutral value (beta = 1, alpha = 0).
struct UncertaintySpec {
    Eigen::MatrixXd beta;   // dimensionless multipliers
    Eigen::MatrixXd alpha;  // additive terms, units 1/s
    BoolMatrix mask_beta;   // true where the multiplicative term is unknown
    BoolMatrix mask_alpha;  // true where the additive term is unknown

    static UncertaintySpec identity(int r);
    void validate() const;
};

/// Applies A'(p,q) = beta(p,q) * a(p,q) + alpha(p,q) on masked entries.
/// B and c are unchanged. Unmasked entries are copied bit-for-bit.
LinearModel apply_uncertainty(const LinearModel& m, const UncertaintySpec& spec);

/// Piecewise-constant scaling of the nominal load torque. A fraction of
/// 0.2 from time t means the affine term is scaled by 1.2 from t on.
struct DisturbanceProfile {
    std::vector<std::pair<double, double>> steps;  // (start time [s], fraction)

    double fraction_at(double t) const;
    void validate() const;
};

struct PlantState {
    Eigen::VectorXd x;
    double t = 0.0;
};

/// Advances one explicit-Euler substep of size dt with zero-order-held u.
/// The affine term is scaled by (1 + disturbance fraction at the current
/// time). Throws divergence_error when the state magnitude exceeds
/// divergence_bound.
PlantState step_fine(const PlantState& s, const LinearModel& m,
                     const Eigen::VectorXd& u, const DisturbanceProfile& dist,
                     double dt, double divergence_bound = 1e6);

}  // namespace dsmc
