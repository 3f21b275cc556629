#include "dsmc/plant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsmc/errors.hpp"

namespace dsmc {

void LinearModel::validate() const {
    const auto r = A.rows();
    if (r < 1 || A.cols() != r) {
        throw std::invalid_argument("model: A must be square with order >= 1");
    }
    if (B.rows() != r || B.cols() < 1) {
        throw std::invalid_argument("model: B row count must match the state order");
    }
    if (c.size() != r) {
        throw std::invalid_argument("model: affine term size must match the state order");
    }
    if (!A.allFinite() || !B.allFinite() || !c.allFinite()) {
        throw std::invalid_argument("model: matrices contain non-finite entries");
    }
}

LinearModel dc_motor_model(const DcMotorParams& p) {
    const struct { const char* name; double value; } constants[] = {
        {"inertia", p.inertia},         {"resistance", p.resistance},
        {"inductance", p.inductance},   {"torque_const", p.torque_const},
        {"damping", p.damping},         {"back_emf", p.back_emf},
    };
    for (const auto& c : constants) {
        if (!(c.value > 0.0) || !std::isfinite(c.value)) {
            throw std::invalid_argument(std::string("dc motor: ") + c.name +
                                        " must be positive");
        }
    }

    LinearModel m;
    m.A.resize(2, 2);
    m.A << -p.damping / p.inertia, p.torque_const / p.inertia,
           -p.back_emf / p.inductance, -p.resistance / p.inductance;
    m.B.resize(2, 1);
    m.B << 0.0, 1.0 / p.inductance;
    m.c.resize(2);
    m.c << p.load_torque / p.inertia, 0.0;
    m.state_names = {"speed", "current"};
    m.input_names = {"voltage"};
    return m;
}

DiscreteModel euler_discretize(const LinearModel& m, double T) {
    m.validate();
    if (!(T > 0.0)) {
        throw std::invalid_argument("euler_discretize: sampling period must be positive");
    }
    DiscreteModel d;
    d.Ad = T * m.A + Eigen::MatrixXd::Identity(m.order(), m.order());
    d.Bd = T * m.B;
    d.cd = T * m.c;
    d.T = T;
    return d;
}

UncertaintySpec UncertaintySpec::identity(int r) {
    UncertaintySpec s;
    s.beta = Eigen::MatrixXd::Ones(r, r);
    s.alpha = Eigen::MatrixXd::Zero(r, r);
    s.mask_beta = BoolMatrix::Constant(r, r, false);
    s.mask_alpha = BoolMatrix::Constant(r, r, false);
    return s;
}

void UncertaintySpec::validate() const {
    const auto r = beta.rows();
    if (beta.cols() != r || alpha.rows() != r || alpha.cols() != r ||
        mask_beta.rows() != r || mask_beta.cols() != r || mask_alpha.rows() != r ||
        mask_alpha.cols() != r) {
        throw std::invalid_argument("uncertainty: beta, alpha, masks must share one square shape");
    }
    if (!beta.allFinite() || !alpha.allFinite()) {
        throw std::invalid_argument("uncertainty: non-finite entries");
    }
    for (Eigen::Index p = 0; p < r; ++p) {
        for (Eigen::Index q = 0; q < r; ++q) {
            if (!mask_beta(p, q) && beta(p, q) != 1.0) {
                std::ostringstream os;
                os << "uncertainty: beta(" << p + 1 << "," << q + 1
                   << ") is outside the mask but is " << beta(p, q);
                throw std::invalid_argument(os.str());
            }
            if (!mask_alpha(p, q) && alpha(p, q) != 0.0) {
                std::ostringstream os;
                os << "uncertainty: alpha(" << p + 1 << "," << q + 1
                   << ") is outside the mask but is " << alpha(p, q);
                throw std::invalid_argument(os.str());
            }
        }
    }
}

LinearModel apply_uncertainty(const LinearModel& m, const UncertaintySpec& spec) {
    m.validate();
    spec.validate();
    if (spec.beta.rows() != m.order()) {
        throw std::invalid_argument("apply_uncertainty: spec dimension does not match the model order");
    }
    LinearModel out = m;
    for (Eigen::Index p = 0; p < m.A.rows(); ++p) {
        for (Eigen::Index q = 0; q < m.A.cols(); ++q) {
            double value = m.A(p, q);
            if (spec.mask_beta(p, q)) value = spec.beta(p, q) * value;
            if (spec.mask_alpha(p, q)) value += spec.alpha(p, q);
            out.A(p, q) = value;
        }
    }
    return out;
}

double DisturbanceProfile::fraction_at(double t) const {
    double fraction = 0.0;
    for (const auto& [start, value] : steps) {
        if (t < start) break;
        fraction = value;
    }
    return fraction;
}

void DisturbanceProfile::validate() const {
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!std::isfinite(steps[i].first) || !std::isfinite(steps[i].second)) {
            throw std::invalid_argument("disturbance: non-finite schedule entry");
        }
        if (i > 0 && !(steps[i].first > steps[i - 1].first)) {
            throw std::invalid_argument("disturbance: schedule times must be strictly increasing");
        }
    }
}

PlantState step_fine(const PlantState& s, const LinearModel& m,
                     const Eigen::VectorXd& u, const DisturbanceProfile& dist,
                     double dt, double divergence_bound) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("step_fine: dt must be positive");
    }
    if (u.size() != m.inputs() || !u.allFinite()) {
        throw std::invalid_argument("step_fine: input vector must be finite and match the input count");
    }

    const double scale = 1.0 + dist.fraction_at(s.t);
    // Written as the Euler-discretized map so that one dt = T substep
    // reproduces euler_discretize() bit-for-bit.
    PlantState next;
    next.x = (dt * m.A + Eigen::MatrixXd::Identity(m.order(), m.order())) * s.x +
             dt * m.B * u + dt * (scale * m.c);
    next.t = s.t + dt;

    if (!next.x.allFinite() || next.x.cwiseAbs().maxCoeff() > divergence_bound) {
        std::ostringstream os;
        os << "state diverged at t=" << next.t << " s (|x| exceeded "
           << divergence_bound << ")";
        throw divergence_error(os.str(), next.t);
    }
    return next;
}

}  // namespace dsmc
