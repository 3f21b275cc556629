#include "dsmc/smc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dsmc {

double sat(double z, double boundary_layer) {
    if (!(boundary_layer > 0.0)) {
        throw std::invalid_argument("sat: boundary layer must be positive");
    }
    return std::clamp(z / boundary_layer, -1.0, 1.0);
}

GainValidation validate_first_order_gains(const Eigen::MatrixXd& gain) {
    if (gain.rows() != gain.cols() || gain.rows() < 1) {
        return {false, "gain matrix must be square"};
    }
    if (!gain.allFinite()) {
        return {false, "gain matrix has non-finite entries"};
    }
    const bool diagonal = gain.isDiagonal(0.0);
    if (diagonal) {
        for (Eigen::Index k = 0; k < gain.rows(); ++k) {
            const double rho = gain(k, k);
            if (!(rho > 0.0 && rho < 1.0)) {
                std::ostringstream os;
                os << "diagonal gain " << rho << " at position " << k + 1
                   << " is outside (0, 1)";
                return {false, os.str()};
            }
        }
        return {true, ""};
    }
    const Eigen::VectorXcd eig = Eigen::EigenSolver<Eigen::MatrixXd>(gain, false).eigenvalues();
    const double radius = eig.cwiseAbs().maxCoeff();
    if (!(radius < 1.0)) {
        std::ostringstream os;
        os << "spectral radius " << radius << " is not inside the unit circle";
        return {false, os.str()};
    }
    return {true, ""};
}

GainValidation validate_second_order_gains(const Eigen::MatrixXd& gain) {
    if (gain.rows() != gain.cols() || gain.rows() < 1) {
        return {false, "gain matrix must be square"};
    }
    if (!gain.allFinite()) {
        return {false, "gain matrix has non-finite entries"};
    }
    const double asym = (gain - gain.transpose()).cwiseAbs().maxCoeff();
    if (asym > 0.0) {
        std::ostringstream os;
        os << "matrix is not symmetric (max asymmetry " << asym << ")";
        return {false, os.str()};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gain, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0.0)) {
        std::ostringstream os;
        os << "matrix is not positive definite (eigenvalue " << lo << ")";
        return {false, os.str()};
    }
    if (!(hi < 1.0)) {
        std::ostringstream os;
        os << "eigenvalue " << hi << " is not below 1; the surface map would not contract";
        return {false, os.str()};
    }
    return {true, ""};
}

FirstOrderGains::FirstOrderGains(Eigen::MatrixXd g) : gain(std::move(g)) {
    const auto check = validate_first_order_gains(gain);
    if (!check.ok) {
        throw std::invalid_argument("first-order gains: " + check.detail);
    }
}

SecondOrderGains::SecondOrderGains(Eigen::MatrixXd g) : gain(std::move(g)) {
    const auto check = validate_second_order_gains(gain);
    if (!check.ok) {
        throw std::invalid_argument("second-order gains: " + check.detail);
    }
}

void SatConfig::validate() const {
    if (boundary_layer.size() < 1 || !(boundary_layer.minCoeff() > 0.0)) {
        throw std::invalid_argument("sat config: boundary layers must be positive");
    }
}

namespace {

Eigen::VectorXd solve_input(const Eigen::MatrixXd& B, const Eigen::VectorXd& rhs) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible()) {
        throw std::invalid_argument("control law: input matrix B is singular");
    }
    return lu.solve(rhs);
}

Eigen::VectorXd switching_term(const ControlUncertainty& mu_u, const Eigen::VectorXd& arg,
                               const SatConfig& sat_cfg) {
    sat_cfg.validate();
    Eigen::VectorXd term(arg.size());
    for (Eigen::Index k = 0; k < arg.size(); ++k) {
        term(k) = std::abs(mu_u.mu(k)) * sat(arg(k), sat_cfg.boundary_layer(k));
    }
    return term;
}

Eigen::VectorXd reaching_control(const Eigen::VectorXd& x, const Eigen::VectorXd& x_d,
                                 const Eigen::VectorXd& x_d_next, const Eigen::MatrixXd& A,
                                 const LinearModel& m, double T,
                                 const Eigen::MatrixXd& surface_map) {
    if (!(T > 0.0)) {
        throw std::invalid_argument("control law: sampling period must be positive");
    }
    const auto r = m.order();
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(r, r);
    const Eigen::VectorXd rhs =
        (1.0 / T) * ((surface_map - eye) * x - surface_map * x_d + x_d_next) - A * x - m.c;
    return solve_input(m.B, rhs);
}

}  // namespace

Eigen::VectorXd first_order_control(const Eigen::VectorXd& x, const Eigen::VectorXd& x_d,
                                    const Eigen::VectorXd& x_d_next, const LinearModel& m,
                                    double T, const FirstOrderGains& gains) {
    return reaching_control(x, x_d, x_d_next, m.A, m, T, gains.gain);
}

Eigen::VectorXd first_order_control_modified(const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& x_d,
                                             const Eigen::VectorXd& x_d_next,
                                             const LinearModel& m, double T,
                                             const FirstOrderGains& gains,
                                             const ControlUncertainty& mu_u,
                                             const Eigen::VectorXd& s,
                                             const SatConfig& sat_cfg) {
    return first_order_control(x, x_d, x_d_next, m, T, gains) -
           switching_term(mu_u, s, sat_cfg);
}

Eigen::VectorXd adaptive_first_order_control(const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& x_d,
                                             const Eigen::VectorXd& x_d_next,
                                             const LinearModel& m, double T,
                                             const FirstOrderGains& gains,
                                             const AdaptationState& estimates,
                                             const ControlUncertainty& mu_u,
                                             const Eigen::VectorXd& s,
                                             const SatConfig& sat_cfg) {
    estimates.validate();
    return reaching_control(x, x_d, x_d_next, estimates.a_hat(), m, T, gains.gain) -
           switching_term(mu_u, s, sat_cfg);
}

Eigen::VectorXd second_order_surface(const Eigen::VectorXd& s, const Eigen::VectorXd& s_prev,
                                     const SecondOrderGains& gains) {
    return s + gains.gain * s_prev;
}

Eigen::VectorXd second_order_control(const Eigen::VectorXd& x, const Eigen::VectorXd& x_d,
                                     const Eigen::VectorXd& x_d_next, const LinearModel& m,
                                     double T, const SecondOrderGains& gains) {
    return reaching_control(x, x_d, x_d_next, m.A, m, T, -gains.gain);
}

Eigen::VectorXd second_order_control_modified(const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& x_d,
                                              const Eigen::VectorXd& x_d_next,
                                              const LinearModel& m, double T,
                                              const SecondOrderGains& gains,
                                              const ControlUncertainty& mu_u,
                                              const Eigen::VectorXd& xi_prev,
                                              const SatConfig& sat_cfg) {
    return second_order_control(x, x_d, x_d_next, m, T, gains) -
           switching_term(mu_u, xi_prev, sat_cfg);
}

DcCascadeController::DcCascadeController(DcCascadeConfig cfg) : cfg_(std::move(cfg)) {
    if (!(cfg_.period > 0.0)) {
        throw std::invalid_argument("dc cascade: sampling period must be positive");
    }
    if (cfg_.order != 1 && cfg_.order != 2) {
        throw std::invalid_argument("dc cascade: order must be 1 or 2");
    }
    const auto check = cfg_.order == 1 ? validate_first_order_gains(cfg_.gain)
                                       : validate_second_order_gains(cfg_.gain);
    if (!check.ok) {
        throw std::invalid_argument("dc cascade: " + check.detail);
    }
    if (!(cfg_.boundary_layer_speed > 0.0) || !(cfg_.boundary_layer_current > 0.0)) {
        throw std::invalid_argument("dc cascade: boundary layers must be positive");
    }

    const LinearModel m = dc_motor_model(cfg_.params);
    a_nominal_ = m.A;
    input_gain_speed_ = m.A(0, 1);  // current-to-speed coupling, known exactly
    input_gain_current_ = m.B(1, 0);
    load_accel_ = m.c(0);

    const double sign = cfg_.order == 2 ? -1.0 : 1.0;
    const double divisor = input_gain_speed_ + sign * cfg_.gain(0, 1) / cfg_.period;
    if (std::abs(divisor) < 1e-9 * input_gain_speed_) {
        throw std::invalid_argument(
            "dc cascade: cross-coupling gain over the sampling period cancels the "
            "speed loop's input gain");
    }
}

void DcCascadeController::reset() {
    surface_prev_.setZero();
}

DcCascadeOutput DcCascadeController::step(double speed_meas, double current_meas,
                                          double speed_ref, double speed_ref_next,
                                          double speed_ref_next2, double mu_speed,
                                          double mu_current,
                                          const AdaptationState* estimates) {
    if (!std::isfinite(speed_meas) || !std::isfinite(current_meas)) {
        throw std::invalid_argument("dc cascade: non-finite measurement");
    }

    const double T = cfg_.period;
    const Eigen::Matrix2d& g = cfg_.gain;
    const bool second = cfg_.order == 2;

    // Model entries the controller believes in. The speed loop's input
    // gain stays at the nominal coupling; its additive estimate acts on
    // the measured current instead.
    Eigen::Matrix2d a = a_nominal_;
    if (estimates != nullptr) {
        const Eigen::MatrixXd ah = estimates->a_hat();
        a << ah(0, 0), ah(0, 1), ah(1, 0), ah(1, 1);
    }
    const double coupling_comp = a(0, 1) - input_gain_speed_;
    const double sign = second ? -1.0 : 1.0;  // reaching term is sign * G * S

    DcCascadeOutput out;
    out.s1 = speed_meas - speed_ref;

    // Effective per-loop reaching gains used for uncertainty propagation.
    const DcControlUncertainty mu = dc_propagate_uncertainty(
        mu_speed, mu_current, sign * g(0, 0), sign * g(1, 1), cfg_.params, T);
    out.mu_current_ref = mu.mu_current_ref;
    out.mu_voltage = mu.mu_voltage;

    out.xi1 = out.s1 + g(0, 0) * surface_prev_(0) + g(0, 1) * surface_prev_(1);

    // The speed loop's cross coupling uses s2 = I - I_d, which depends on
    // the command being solved for; the law is affine in it, so solve in
    // closed form instead of lagging the coupling by one step.
    const double divisor = input_gain_speed_ + sign * g(0, 1) / T;
    const double drift1 = a(0, 0) * speed_meas + coupling_comp * current_meas + load_accel_;
    const double numer =
        (sign * (g(0, 0) * out.s1 + g(0, 1) * current_meas) + speed_ref_next - speed_meas) / T -
        drift1;
    double current_ref = numer / divisor;
    if (cfg_.use_uncertainty_term) {
        const double arg = second ? out.xi1 : out.s1;
        current_ref -= std::abs(mu.mu_current_ref) * sat(arg, cfg_.boundary_layer_speed);
    }
    out.current_ref = current_ref;

    out.s2 = current_meas - current_ref;
    const double reach1 = sign * (g(0, 0) * out.s1 + g(0, 1) * out.s2);
    const double reach2 = sign * (g(1, 0) * out.s1 + g(1, 1) * out.s2);
    out.xi2 = out.s2 + g(1, 0) * surface_prev_(0) + g(1, 1) * surface_prev_(1);

    // One-step-ahead current reference for the voltage law. The speed the
    // reaching law commands for the next step is known now; predicting
    // through it instead of through the measured current keeps the inner
    // loop free of the sampling-induced model error on the fast mode.
    const double speed_pred = speed_ref_next + reach1;
    const double current_pred = current_ref + reach2;
    const double drift1_next = a(0, 0) * speed_pred + coupling_comp * current_pred + load_accel_;
    const double numer_next =
        (sign * (g(0, 0) * reach1 + g(0, 1) * current_pred) + speed_ref_next2 - speed_pred) / T -
        drift1_next;
    const double current_ref_next = numer_next / divisor;

    const double drift2 = a(1, 0) * speed_meas + a(1, 1) * current_meas;
    double voltage =
        ((reach2 + current_ref_next - current_meas) / T - drift2) / input_gain_current_;
    if (cfg_.use_uncertainty_term) {
        const double arg = second ? out.xi2 : out.s2;
        voltage -= std::abs(mu.mu_voltage) * sat(arg, cfg_.boundary_layer_current);
    }
    out.voltage = voltage;

    surface_prev_ << out.s1, out.s2;
    return out;
}

}  // namespace dsmc
