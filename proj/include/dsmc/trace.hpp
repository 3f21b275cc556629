#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dsmc {

/// One controller-step record of a DC motor run. Column names and order
/// are frozen; see the CSV schema in the README.
struct TraceRow {
    double t = 0.0;
    double theta_ref = 0.0;
    double theta_true = 0.0;
    double theta_meas = 0.0;
    double I_true = 0.0;
    double I_meas = 0.0;
    double I_d = 0.0;
    double V = 0.0;
    double s1 = 0.0, s2 = 0.0;
    double xi1 = 0.0, xi2 = 0.0;
    double mu_theta = 0.0, mu_I = 0.0, mu_Id = 0.0, mu_V = 0.0;
    std::array<double, 4> beta_hat{1.0, 1.0, 1.0, 1.0};   // row-major 2x2
    std::array<double, 4> alpha_hat{0.0, 0.0, 0.0, 0.0};  // row-major 2x2
    double deltaV_1 = 0.0, deltaV_2 = 0.0;
    double deltaV_pred_1 = 0.0, deltaV_pred_2 = 0.0;
    double disturbance_fraction = 0.0;
    std::uint8_t sat_theta = 0;  // 1 when the speed sample saturated the ADC
    std::uint8_t sat_I = 0;
};

struct SimTrace {
    std::vector<TraceRow> rows;

    static const std::vector<std::string>& columns();
    std::string to_csv() const;
    void write_csv(const std::string& path) const;
};

/// Shortest-round-trip decimal formatting used in every CSV we emit.
std::string format_double(double v);

}  // namespace dsmc
