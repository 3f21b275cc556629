#include "dsmc/engine.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dsmc/adc.hpp"
#include "dsmc/errors.hpp"

namespace dsmc {

namespace {

double to_double_or_throw(const std::string& value, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw config_error(context + ": cannot parse number '" + value + "'");
    }
}

AdaptationState build_adaptation_state(const Scenario& s, const Eigen::Matrix2d& a_nominal) {
    AdaptationState st;
    st.a_nominal = a_nominal;
    st.beta_hat = s.adaptation.beta_hat0;
    st.alpha_hat = s.adaptation.alpha_hat0;
    st.rho_beta = s.adaptation.rho_beta;
    st.rho_alpha = s.adaptation.rho_alpha;
    st.mask_beta = s.adaptation.mask_beta;
    st.mask_alpha = s.adaptation.mask_alpha;
    if (s.controller.exact_model) {
        // Freeze the estimates at the true parameters; the controller then
        // plays the converged adaptive law.
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                if (st.mask_beta(i, j)) st.beta_hat(i, j) = s.true_uncertainty.beta(i, j);
                if (st.mask_alpha(i, j)) st.alpha_hat(i, j) = s.true_uncertainty.alpha(i, j);
            }
        }
    }
    st.validate();
    return st;
}

}  // namespace

SimTrace run_scenario(const Scenario& s) {
    std::vector<std::string> warnings;
    return run_scenario(s, warnings);
}

SimTrace run_scenario(const Scenario& s, std::vector<std::string>& warnings) {
    warnings = s.validate();

    const LinearModel nominal = dc_motor_model(s.motor);
    const LinearModel plant = apply_uncertainty(nominal, s.true_uncertainty);

    DcCascadeConfig ctrl_cfg;
    ctrl_cfg.params = s.motor;
    ctrl_cfg.period = s.period;
    ctrl_cfg.order = s.controller.order;
    ctrl_cfg.gain = s.controller.gain;
    ctrl_cfg.use_uncertainty_term = s.controller.use_uncertainty_term;
    ctrl_cfg.boundary_layer_speed = s.controller.boundary_layer_speed;
    ctrl_cfg.boundary_layer_current = s.controller.boundary_layer_current;
    DcCascadeController controller(ctrl_cfg);

    AdcChannel speed_ch{s.period, s.adc.bits, s.adc.fsr_speed, s.adc.offset_speed, "theta", {}};
    AdcChannel current_ch{s.period, s.adc.bits, s.adc.fsr_current, s.adc.offset_current, "current", {}};
    if (s.adc.enabled) {
        speed_ch.validate();
        current_ch.validate();
    }

    const bool with_estimates = s.controller.adaptive || s.controller.exact_model;
    AdaptationState adapt_state = build_adaptation_state(s, nominal.A);

    const int steps = static_cast<int>(std::llround(s.duration / s.period));
    const int substeps = std::max(1, static_cast<int>(std::llround(s.period / s.fine_dt)));
    const double dt = s.period / substeps;

    PlantState ps{Eigen::Vector2d{s.speed0, s.current0}, 0.0};
    Eigen::VectorXd u(1);

    // Diagonal reaching gains drive the Lyapunov prediction; the
    // second-order analysis is not reconstructed, its diagonal is used as
    // the prediction gain there as well.
    const Eigen::VectorXd reach_diag = s.controller.gain.diagonal();

    SimTrace trace;
    trace.rows.reserve(steps);

    // Lyapunov bookkeeping from the previous step.
    bool have_prev = false;
    Eigen::Vector2d s_prev{0.0, 0.0};
    AdaptationState est_prev = adapt_state;

    for (int i = 0; i < steps; ++i) {
        const double t = i * s.period;

        TraceRow row;
        row.t = t;
        row.theta_true = ps.x(0);
        row.I_true = ps.x(1);
        row.disturbance_fraction = s.disturbance.fraction_at(t);

        double theta_meas = ps.x(0);
        double current_meas = ps.x(1);
        double mu_theta = 0.0, mu_current = 0.0;
        if (s.adc.enabled) {
            const AdcReading r_theta = observe(ps.x(0), speed_ch);
            const AdcReading r_current = observe(ps.x(1), current_ch);
            theta_meas = r_theta.value;
            current_meas = r_current.value;
            mu_theta = r_theta.mu_hat;
            mu_current = r_current.mu_hat;
            row.sat_theta = r_theta.saturated ? 1 : 0;
            row.sat_I = r_current.saturated ? 1 : 0;
        }
        row.theta_meas = theta_meas;
        row.I_meas = current_meas;
        row.mu_theta = mu_theta;
        row.mu_I = mu_current;

        const double ref = s.reference.at(t);
        const double ref1 = s.reference.at(t + s.period);
        const double ref2 = s.reference.at(t + 2.0 * s.period);

        const DcCascadeOutput out =
            controller.step(theta_meas, current_meas, ref, ref1, ref2, mu_theta,
                            mu_current, with_estimates ? &adapt_state : nullptr);

        row.theta_ref = ref;
        row.I_d = out.current_ref;
        row.V = out.voltage;
        row.s1 = out.s1;
        row.s2 = out.s2;
        row.xi1 = s.controller.order == 2 ? out.xi1 : 0.0;
        row.xi2 = s.controller.order == 2 ? out.xi2 : 0.0;
        row.mu_Id = out.mu_current_ref;
        row.mu_V = out.mu_voltage;

        // Lyapunov difference for the transition that ended at this step.
        const Eigen::Vector2d s_now{out.s1, out.s2};
        if (have_prev) {
            const LyapunovDiag diag = lyapunov_delta(
                s_prev, s_now, est_prev, adapt_state, s.true_uncertainty.beta,
                s.true_uncertainty.alpha, reach_diag);
            row.deltaV_1 = diag.dv(0);
            row.deltaV_2 = diag.dv(1);
            row.deltaV_pred_1 = diag.dv_expected(0);
            row.deltaV_pred_2 = diag.dv_expected(1);
        }
        s_prev = s_now;
        est_prev = adapt_state;
        have_prev = true;

        if (s.controller.adaptive) {
            adapt_state = adapt_step(adapt_state, s_now,
                                     Eigen::Vector2d{theta_meas, current_meas}, s.period);
        }

        for (int k = 0; k < 4; ++k) {
            row.beta_hat[k] = adapt_state.beta_hat(k / 2, k % 2);
            row.alpha_hat[k] = adapt_state.alpha_hat(k / 2, k % 2);
        }

        trace.rows.push_back(row);

        u(0) = out.voltage;
        for (int k = 0; k < substeps; ++k) {
            ps = step_fine(ps, plant, u, s.disturbance, dt, s.divergence_bound);
        }
    }
    return trace;
}

SweepAxis sweep_axis_from_name(const std::string& name) {
    if (name == "sampling_time") return SweepAxis::sampling_time;
    if (name == "bits") return SweepAxis::bits;
    if (name == "controller") return SweepAxis::controller;
    throw config_error("unknown sweep axis '" + name +
                       "' (expected sampling_time, bits, or controller)");
}

std::string SweepSummary::to_csv() const {
    std::ostringstream os;
    os << "axis,value,controller,mean_abs_error,rms_error,max_abs_error,"
          "max_overshoot,settled_fraction,improvement_vs_baseline_pct\n";
    for (const auto& r : rows) {
        os << r.axis << ',' << r.value << ',' << r.controller << ','
           << format_double(r.metrics.mean_abs_error) << ','
           << format_double(r.metrics.rms_error) << ','
           << format_double(r.metrics.max_abs_error) << ','
           << format_double(r.metrics.max_overshoot) << ','
           << format_double(r.metrics.settled_fraction) << ',';
        if (r.improvement) os << format_double(*r.improvement * 100.0);
        os << '\n';
    }
    return os.str();
}

void SweepSummary::write_csv(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open summary output file: " + path);
    }
    out << to_csv();
}

const SweepRow& SweepSummary::find(const std::string& value,
                                   const std::string& controller) const {
    for (const auto& r : rows) {
        if (r.value == value && r.controller == controller) return r;
    }
    throw std::out_of_range("sweep row not found: " + value + "/" + controller);
}

SweepSummary run_sweep(const Scenario& base, SweepAxis axis,
                       const std::vector<std::string>& values,
                       const std::vector<std::string>& controllers,
                       const std::string& baseline) {
    if (values.empty()) {
        throw config_error("sweep: at least one axis value is required");
    }

    struct Variant {
        std::string value;
        std::string controller;
        Scenario scenario;
    };
    std::vector<Variant> variants;
    const char* axis_name = axis == SweepAxis::sampling_time ? "sampling_time"
                            : axis == SweepAxis::bits        ? "bits"
                                                             : "controller";

    for (const auto& value : values) {
        Scenario varied = base;
        std::vector<std::string> tokens;
        if (axis == SweepAxis::sampling_time) {
            varied.period = to_double_or_throw(value, "sweep value");
            tokens = controllers;
        } else if (axis == SweepAxis::bits) {
            const double bits = to_double_or_throw(value, "sweep value");
            if (bits != std::floor(bits) || bits < 1) {
                throw config_error("sweep: bits value '" + value + "' is not a positive integer");
            }
            varied.adc.bits = static_cast<int>(bits);
            tokens = controllers;
        } else {
            tokens = {value};
        }
        for (const auto& token : tokens) {
            Variant v{value, token, varied};
            v.scenario.controller = controller_preset(token, varied.controller);
            variants.push_back(std::move(v));
        }
    }

    // One independent engine per variant, results in input order.
    std::vector<SimTrace> traces(variants.size());
    for (std::size_t k = 0; k < variants.size(); ++k) {
        try {
            traces[k] = run_scenario(variants[k].scenario);
        } catch (const divergence_error& e) {
            throw divergence_error("variant " + variants[k].value + "/" +
                                       variants[k].controller + ": " + e.what(),
                                   e.time());
        } catch (const config_error& e) {
            throw config_error("variant " + variants[k].value + "/" +
                               variants[k].controller + ": " + e.what());
        }
    }

    MetricsOptions mopts;
    mopts.skip_initial = base.metrics_skip;

    SweepSummary summary;
    for (std::size_t k = 0; k < variants.size(); ++k) {
        SweepRow row;
        row.axis = axis_name;
        row.value = variants[k].value;
        row.controller = variants[k].controller;

        const SimTrace* base_trace = nullptr;
        for (std::size_t b = 0; b < variants.size(); ++b) {
            const bool same_group = axis == SweepAxis::controller ||
                                    variants[b].value == variants[k].value;
            if (same_group && variants[b].controller == baseline && b != k) {
                base_trace = &traces[b];
                break;
            }
        }
        row.metrics = base_trace ? compute_metrics(traces[k], *base_trace, mopts)
                                 : compute_metrics(traces[k], mopts);
        row.improvement = row.metrics.improvement;
        summary.rows.push_back(std::move(row));
    }
    return summary;
}

GenericLoopResult run_generic_loop(const GenericLoopConfig& cfg) {
    cfg.model.validate();
    const int r = cfg.model.order();
    if (cfg.model.inputs() != r) {
        throw std::invalid_argument("generic loop: B must be square");
    }
    if (!cfg.reference) {
        throw std::invalid_argument("generic loop: reference callback is required");
    }

    LinearModel plant = cfg.model;
    if (cfg.true_uncertainty) {
        plant = apply_uncertainty(cfg.model, *cfg.true_uncertainty);
    }

    std::optional<FirstOrderGains> g1;
    std::optional<SecondOrderGains> g2;
    if (cfg.order == 1) g1.emplace(cfg.gain);
    else if (cfg.order == 2) g2.emplace(cfg.gain);
    else throw std::invalid_argument("generic loop: order must be 1 or 2");

    std::optional<AdaptationState> est = cfg.adaptation;
    const ControlUncertainty no_mu{Eigen::VectorXd::Zero(r)};
    const SatConfig sat_cfg{Eigen::VectorXd::Constant(r, 0.01)};
    const DisturbanceProfile no_disturbance;

    GenericLoopResult result;
    PlantState ps{cfg.x0, 0.0};
    result.states.push_back(ps.x);

    for (int i = 0; i < cfg.steps; ++i) {
        const Eigen::VectorXd xd = cfg.reference(i);
        const Eigen::VectorXd xd_next = cfg.reference(i + 1);
        const Eigen::VectorXd s = ps.x - xd;
        result.surfaces.push_back(s);

        Eigen::VectorXd u;
        if (est) {
            if (cfg.order != 1) {
                throw std::invalid_argument("generic loop: adaptation is defined for the first-order law");
            }
            u = adaptive_first_order_control(ps.x, xd, xd_next, cfg.model, cfg.period,
                                             *g1, *est, no_mu, s, sat_cfg);
            result.estimates.push_back(*est);
            est = adapt_step(*est, s, ps.x, cfg.period);
        } else if (cfg.order == 1) {
            u = first_order_control(ps.x, xd, xd_next, cfg.model, cfg.period, *g1);
        } else {
            u = second_order_control(ps.x, xd, xd_next, cfg.model, cfg.period, *g2);
        }
        result.controls.push_back(u);

        ps = step_fine(ps, plant, u, no_disturbance, cfg.period, 1e12);
        result.states.push_back(ps.x);
    }
    result.surfaces.push_back(ps.x - cfg.reference(cfg.steps));
    if (est) result.estimates.push_back(*est);
    return result;
}

}  // namespace dsmc
