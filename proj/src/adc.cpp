#include "dsmc/adc.hpp"

#include <algorithm>
#include <cmath>

namespace dsmc {

void AdcChannel::validate() const {
    if (bits < 1) {
        throw std::invalid_argument("adc: bit depth must be >= 1");
    }
    if (!(full_scale > 0.0) || !std::isfinite(full_scale)) {
        throw std::invalid_argument("adc: full-scale range must be positive");
    }
    if (!std::isfinite(offset)) {
        throw std::invalid_argument("adc: offset must be finite");
    }
}

double sample_and_quantize(double x, const AdcChannel& ch) {
    const double half_range = 0.5 * ch.full_scale;
    const double clamped = std::clamp(x, ch.offset - half_range, ch.offset + half_range);
    const double d = ch.step();
    return ch.offset + std::round((clamped - ch.offset) / d) * d;
}

double predict_measurement_uncertainty(double x_i, double x_prev, const AdcChannel& ch) {
    return x_i - x_prev + 0.5 * ch.step();
}

AdcReading observe(double x_true, AdcChannel& ch) {
    AdcReading r;
    r.value = sample_and_quantize(x_true, ch);
    r.saturated = std::abs(x_true - ch.offset) > 0.5 * ch.full_scale;
    r.mu_hat = ch.last_sample
                   ? predict_measurement_uncertainty(r.value, *ch.last_sample, ch)
                   : 0.5 * ch.step();
    ch.last_sample = r.value;
    return r;
}

ControlUncertainty propagate_uncertainty(const MeasurementUncertainty& mu_x,
                                         const Eigen::MatrixXd& A,
                                         const Eigen::MatrixXd& B, double T,
                                         const Eigen::MatrixXd& reach_gain) {
    const auto r = A.rows();
    if (B.rows() != r || B.cols() != r) {
        throw std::invalid_argument("propagate_uncertainty: B must be square (r = h)");
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (!lu.isInvertible()) {
        throw std::invalid_argument("propagate_uncertainty: input matrix B is singular");
    }
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(r, r);
    const Eigen::VectorXd rhs = (1.0 / T) * ((reach_gain - eye) * mu_x.mu) - A * mu_x.mu;
    return ControlUncertainty{lu.solve(rhs)};
}

DcControlUncertainty dc_propagate_uncertainty(double mu_speed, double mu_current,
                                              double g1, double g2,
                                              const DcMotorParams& p, double T) {
    DcControlUncertainty out;
    out.mu_current_ref = (p.inertia / (T * p.torque_const)) * (g1 - 1.0) * mu_speed +
                         (p.damping / p.torque_const) * mu_speed;
    out.mu_voltage = (p.inductance / T) * (g2 - 1.0) * mu_current +
                     p.back_emf * mu_speed + p.resistance * mu_current;
    return out;
}

}  // namespace dsmc
