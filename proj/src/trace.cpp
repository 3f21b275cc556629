#include "dsmc/trace.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dsmc {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const std::vector<std::string>& SimTrace::columns() {
    static const std::vector<std::string> cols = {
        "t", "theta_ref", "theta_true", "theta_meas", "I_true", "I_meas", "I_d", "V",
        "s1", "s2", "xi1", "xi2", "mu_theta", "mu_I", "mu_Id", "mu_V",
        "beta_hat_11", "beta_hat_12", "beta_hat_21", "beta_hat_22",
        "alpha_hat_11", "alpha_hat_12", "alpha_hat_21", "alpha_hat_22",
        "deltaV_1", "deltaV_2", "deltaV_pred_1", "deltaV_pred_2",
        "disturbance_fraction", "sat_theta", "sat_I"};
    return cols;
}

std::string SimTrace::to_csv() const {
    std::ostringstream os;
    const auto& cols = columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << cols[i] << (i + 1 < cols.size() ? "," : "\n");
    }
    for (const auto& r : rows) {
        const double values[] = {
            r.t, r.theta_ref, r.theta_true, r.theta_meas, r.I_true, r.I_meas,
            r.I_d, r.V, r.s1, r.s2, r.xi1, r.xi2,
            r.mu_theta, r.mu_I, r.mu_Id, r.mu_V,
            r.beta_hat[0], r.beta_hat[1], r.beta_hat[2], r.beta_hat[3],
            r.alpha_hat[0], r.alpha_hat[1], r.alpha_hat[2], r.alpha_hat[3],
            r.deltaV_1, r.deltaV_2, r.deltaV_pred_1, r.deltaV_pred_2,
            r.disturbance_fraction};
        for (double v : values) {
            os << format_double(v) << ',';
        }
        os << int(r.sat_theta) << ',' << int(r.sat_I) << '\n';
    }
    return os.str();
}

void SimTrace::write_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open trace output file: " + path);
    }
    out << to_csv();
}

}  // namespace dsmc
