#include "dsmc/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "dsmc/errors.hpp"

namespace dsmc {

Metrics compute_metrics(const SimTrace& trace, const MetricsOptions& opts) {
    Metrics m;
    double abs_sum = 0.0, sq_sum = 0.0;
    long settled = 0;
    for (const auto& row : trace.rows) {
        if (row.t < opts.skip_initial) continue;
        if (opts.window && (row.t < opts.window->first || row.t > opts.window->second)) {
            continue;
        }
        const double e = row.theta_true - row.theta_ref;
        abs_sum += std::abs(e);
        sq_sum += e * e;
        m.max_abs_error = std::max(m.max_abs_error, std::abs(e));
        m.max_overshoot = std::max(m.max_overshoot, e);
        if (std::abs(e) <= opts.settle_band) ++settled;
        ++m.samples;
    }
    if (m.samples > 0) {
        m.mean_abs_error = abs_sum / double(m.samples);
        m.rms_error = std::sqrt(sq_sum / double(m.samples));
        m.settled_fraction = double(settled) / double(m.samples);
    }
    return m;
}

Metrics compute_metrics(const SimTrace& trace, const SimTrace& baseline,
                        const MetricsOptions& opts) {
    if (trace.rows.size() != baseline.rows.size()) {
        throw config_error("metrics: traces have different lengths; references do not match");
    }
    for (std::size_t i = 0; i < trace.rows.size(); ++i) {
        if (trace.rows[i].theta_ref != baseline.rows[i].theta_ref ||
            trace.rows[i].t != baseline.rows[i].t) {
            throw config_error("metrics: traces follow different reference profiles");
        }
    }
    Metrics m = compute_metrics(trace, opts);
    const Metrics base = compute_metrics(baseline, opts);
    if (base.mean_abs_error > 0.0) {
        m.improvement = (base.mean_abs_error - m.mean_abs_error) / base.mean_abs_error;
    }
    return m;
}

}  // namespace dsmc
