#pragma once

#include <optional>
#include <utility>

#include "dsmc/trace.hpp"

namespace dsmc {

struct MetricsOptions {
    double skip_initial = 2.0;  // seconds excluded at the start of the run
    std::optional<std::pair<double, double>> window;  // restrict to [t0, t1]
    double settle_band = 1.0;   // |error| band for the settled fraction [rad/s]
};

/// Speed tracking statistics over theta_true - theta_ref.
struct Metrics {
    double mean_abs_error = 0.0;
    double rms_error = 0.0;
    double max_abs_error = 0.0;
    double max_overshoot = 0.0;      // largest signed exceedance above the reference
    double settled_fraction = 0.0;   // share of samples inside the settle band
    long samples = 0;
    std::optional<double> improvement;  // (e_base - e_new) / e_base, vs a baseline trace
};

Metrics compute_metrics(const SimTrace& trace, const MetricsOptions& opts = {});

/// As above, and fills `improvement` of the result against the baseline's
/// mean absolute error. Throws config_error when the traces do not share
/// a reference profile.
Metrics compute_metrics(const SimTrace& trace, const SimTrace& baseline,
                        const MetricsOptions& opts = {});

}  // namespace dsmc
