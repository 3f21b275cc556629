#pragma once

#include <Eigen/Dense>
#include <string>

#include "dsmc/adapt.hpp"
#include "dsmc/adc.hpp"
#include "dsmc/plant.hpp"

namespace dsmc {

/// Continuous switching function: clamp(z / boundary_layer, -1, 1).
double sat(double z, double boundary_layer);

struct GainValidation {
    bool ok = false;
    std::string detail;  // names the violated property on failure
};

/// Diagonal gain matrices need every diagonal entry in (0, 1); full
/// matrices need all eigenvalues strictly inside the unit circle.
GainValidation validate_first_order_gains(const Eigen::MatrixXd& gain);

/// Second-order gain matrices must be symmetric positive definite with
/// all eigenvalues below 1, so that S(i+1) = -gain * S(i) contracts.
GainValidation validate_second_order_gains(const Eigen::MatrixXd& gain);

/// Reaching-law gain matrix for the first-order controller; the closed
/// loop enforces S(i+1) = gain * S(i). Construction validates.
struct FirstOrderGains {
    Eigen::MatrixXd gain;
    explicit FirstOrderGains(Eigen::MatrixXd g);
};

/// Gain matrix for the second-order controller; the closed loop enforces
/// S(i+1) = -gain * S(i). Construction validates.
struct SecondOrderGains {
    Eigen::MatrixXd gain;
    explicit SecondOrderGains(Eigen::MatrixXd g);
};

/// Per-surface boundary-layer widths for the switching term.
struct SatConfig {
    Eigen::VectorXd boundary_layer;
    void validate() const;
};

/// First-order control law for a square-B system:
///   u = B^-1 ((1/T)[(G - I) x - G x_d + x_d_next] - A x - c)
/// Throws when B is singular.
Eigen::VectorXd first_order_control(const Eigen::VectorXd& x, const Eigen::VectorXd& x_d,
                                    const Eigen::VectorXd& x_d_next, const LinearModel& m,
                                    double T, const FirstOrderGains& gains);

/// First-order law with the uncertainty switching term
/// -|mu_u| .* sat(s) added per channel.
Eigen::VectorXd first_order_control_modified(const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& x_d,
                                             const Eigen::VectorXd& x_d_next,
                                             const LinearModel& m, double T,
                                             const FirstOrderGains& gains,
                                             const ControlUncertainty& mu_u,
                                             const Eigen::VectorXd& s,
                                             const SatConfig& sat_cfg);

/// Adaptive first-order law: identical to the modified law but with the
/// dynamics matrix replaced by the estimate a_hat().
Eigen::VectorXd adaptive_first_order_control(const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& x_d,
                                             const Eigen::VectorXd& x_d_next,
                                             const LinearModel& m, double T,
                                             const FirstOrderGains& gains,
                                             const AdaptationState& estimates,
                                             const ControlUncertainty& mu_u,
                                             const Eigen::VectorXd& s,
                                             const SatConfig& sat_cfg);

/// Second-order sliding variable one step in arrears: s + gain * s_prev.
Eigen::VectorXd second_order_surface(const Eigen::VectorXd& s, const Eigen::VectorXd& s_prev,
                                     const SecondOrderGains& gains);

/// Second-order control law for a square-B system:
///   u = B^-1 ((1/T)[-(G + I) x + G x_d + x_d_next] - A x - c)
Eigen::VectorXd second_order_control(const Eigen::VectorXd& x, const Eigen::VectorXd& x_d,
                                     const Eigen::VectorXd& x_d_next, const LinearModel& m,
                                     double T, const SecondOrderGains& gains);

/// Second-order law with the switching term -|mu_u| .* sat(xi_prev).
Eigen::VectorXd second_order_control_modified(const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& x_d,
                                              const Eigen::VectorXd& x_d_next,
                                              const LinearModel& m, double T,
                                              const SecondOrderGains& gains,
                                              const ControlUncertainty& mu_u,
                                              const Eigen::VectorXd& xi_prev,
                                              const SatConfig& sat_cfg);

/// Configuration of the cascaded DC motor controller. The gain matrix is
/// the first-order gain when order == 1 and the second-order gain when
/// order == 2; off-diagonal entries couple the speed and current loops.
struct DcCascadeConfig {
    DcMotorParams params;
    double period = 0.2;  // controller sampling time T [s]
    int order = 1;
    Eigen::Matrix2d gain = (Eigen::Matrix2d() << 0.5, 0.0, 0.0, 0.5).finished();
    bool use_uncertainty_term = true;
    double boundary_layer_speed = 0.01;
    double boundary_layer_current = 0.01;
};

struct DcCascadeOutput {
    double current_ref = 0.0;  // synthetic current command [A]
    double voltage = 0.0;      // armature voltage command [V]
    double s1 = 0.0, s2 = 0.0;       // surfaces seen by the controller
    double xi1 = 0.0, xi2 = 0.0;     // second-order surfaces (in arrears)
    double mu_current_ref = 0.0, mu_voltage = 0.0;
};

/// Cascaded speed/current controller for the DC motor. The speed loop
/// commands a synthetic current reference; the current loop commands the
/// armature voltage. One step of memory: the previous surfaces and the
/// previous current command.
class DcCascadeController {
public:
    explicit DcCascadeController(DcCascadeConfig cfg);

    /// Computes both control inputs from post-ADC measurements. The
    /// reference must be known two controller steps ahead; estimates may
    /// be null, in which case the nominal model is used.
    DcCascadeOutput step(double speed_meas, double current_meas, double speed_ref,
                         double speed_ref_next, double speed_ref_next2,
                         double mu_speed, double mu_current,
                         const AdaptationState* estimates);

    void reset();

    const DcCascadeConfig& config() const { return cfg_; }

private:
    DcCascadeConfig cfg_;
    Eigen::Matrix2d a_nominal_;  // per-second model entries
    double input_gain_speed_ = 0.0;   // known current-to-speed gain
    double input_gain_current_ = 0.0; // known voltage-to-current gain
    double load_accel_ = 0.0;         // nominal torque over inertia
    Eigen::Vector2d surface_prev_{0.0, 0.0};
};

}  // namespace dsmc
