#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "dsmc/plant.hpp"

namespace dsmc {

/// One sampled-and-quantized measurement path. Holds one sample of memory
/// for the uncertainty predictor.
struct AdcChannel {
    double period = 0.0;      // sampling time T [s]
    int bits = 10;            // quantizer resolution n
    double full_scale = 1.0;  // FSR, in signal units
    double offset = 0.0;      // center of the conversion range
    std::string name;
    std::optional<double> last_sample;  // previous post-ADC value

    /// Quantization step FSR / 2^n.
    double step() const { return std::ldexp(full_scale, -bits); }

    void validate() const;
};

/// Uniform quantization with saturation: the input is clamped to
/// [offset - FSR/2, offset + FSR/2] and rounded to the nearest multiple of
/// the quantization step about the offset. Pure; channel memory untouched.
double sample_and_quantize(double x, const AdcChannel& ch);

/// Predicted measurement uncertainty from two consecutive post-ADC samples:
/// x_i - x_prev + step/2.
double predict_measurement_uncertainty(double x_i, double x_prev, const AdcChannel& ch);

struct AdcReading {
    double value = 0.0;    // post-ADC sample
    double mu_hat = 0.0;   // predicted uncertainty for this sample
    bool saturated = false;
};

/// Quantizes one sample, predicts its uncertainty, and updates the channel
/// memory. The first sample uses the zero-slope prediction step/2.
AdcReading observe(double x_true, AdcChannel& ch);

struct MeasurementUncertainty {
    Eigen::VectorXd mu;  // predicted uncertainty per measured state
};

struct ControlUncertainty {
    Eigen::VectorXd mu;  // diagonal of the propagated uncertainty matrix
};

/// Propagates measurement uncertainty onto the control inputs of a
/// square-B system: B^-1 ((1/T)(G - I) - A) mu_x, where G is the
/// reaching-law gain matrix. Throws std::invalid_argument when B is
/// singular or not square.
ControlUncertainty propagate_uncertainty(const MeasurementUncertainty& mu_x,
                                         const Eigen::MatrixXd& A,
                                         const Eigen::MatrixXd& B, double T,
                                         const Eigen::MatrixXd& reach_gain);

struct DcControlUncertainty {
    double mu_current_ref = 0.0;  // uncertainty on the synthetic current command
    double mu_voltage = 0.0;      // uncertainty on the voltage command
};

/// Cascade-specific propagation for the DC motor. g1 and g2 are the
/// effective per-loop reaching gains (the diagonal of the gain matrix for
/// the first-order law, its negation for the second-order law).
DcControlUncertainty dc_propagate_uncertainty(double mu_speed, double mu_current,
                                              double g1, double g2,
                                              const DcMotorParams& p, double T);

}  // namespace dsmc
