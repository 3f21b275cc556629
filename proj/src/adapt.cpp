#include "dsmc/adapt.hpp"

#include <sstream>

namespace dsmc {

AdaptationState AdaptationState::pinned(const Eigen::MatrixXd& a_nominal) {
    const auto r = a_nominal.rows();
    AdaptationState st;
    st.beta_hat = Eigen::MatrixXd::Ones(r, r);
    st.alpha_hat = Eigen::MatrixXd::Zero(r, r);
    st.rho_beta = Eigen::MatrixXd::Ones(r, r);
    st.rho_alpha = Eigen::MatrixXd::Ones(r, r);
    st.mask_beta = BoolMatrix::Constant(r, r, false);
    st.mask_alpha = BoolMatrix::Constant(r, r, false);
    st.a_nominal = a_nominal;
    return st;
}

Eigen::MatrixXd AdaptationState::a_hat() const {
    Eigen::MatrixXd out = a_nominal;
    for (Eigen::Index p = 0; p < out.rows(); ++p) {
        for (Eigen::Index q = 0; q < out.cols(); ++q) {
            double value = a_nominal(p, q);
            if (mask_beta(p, q)) value = beta_hat(p, q) * value;
            if (mask_alpha(p, q)) value += alpha_hat(p, q);
            out(p, q) = value;
        }
    }
    return out;
}

void AdaptationState::validate() const {
    const auto r = a_nominal.rows();
    if (a_nominal.cols() != r || beta_hat.rows() != r || beta_hat.cols() != r ||
        alpha_hat.rows() != r || alpha_hat.cols() != r || rho_beta.rows() != r ||
        rho_beta.cols() != r || rho_alpha.rows() != r || rho_alpha.cols() != r ||
        mask_beta.rows() != r || mask_beta.cols() != r || mask_alpha.rows() != r ||
        mask_alpha.cols() != r) {
        throw std::invalid_argument("adaptation: all matrices must share one square shape");
    }
    for (Eigen::Index p = 0; p < r; ++p) {
        for (Eigen::Index q = 0; q < r; ++q) {
            if (mask_beta(p, q) && !(rho_beta(p, q) > 0.0)) {
                std::ostringstream os;
                os << "adaptation: multiplicative gain for masked entry (" << p + 1
                   << "," << q + 1 << ") must be positive";
                throw std::invalid_argument(os.str());
            }
            if (mask_alpha(p, q) && !(rho_alpha(p, q) > 0.0)) {
                std::ostringstream os;
                os << "adaptation: additive gain for masked entry (" << p + 1 << ","
                   << q + 1 << ") must be positive";
                throw std::invalid_argument(os.str());
            }
        }
    }
}

AdaptationState adapt_step(const AdaptationState& st, const Eigen::VectorXd& surface,
                           const Eigen::VectorXd& x, double T) {
    st.validate();
    const auto r = st.a_nominal.rows();
    if (surface.size() != r || x.size() != r) {
        throw std::invalid_argument("adapt_step: surface and state must match the system order");
    }
    if (!(T > 0.0)) {
        throw std::invalid_argument("adapt_step: sampling period must be positive");
    }

    AdaptationState next = st;
    for (Eigen::Index p = 0; p < r; ++p) {
        for (Eigen::Index q = 0; q < r; ++q) {
            const double drive = T * surface(p) * x(q);
            if (st.mask_beta(p, q)) {
                next.beta_hat(p, q) += drive * st.a_nominal(p, q) / st.rho_beta(p, q);
            }
            if (st.mask_alpha(p, q)) {
                next.alpha_hat(p, q) += drive / st.rho_alpha(p, q);
            }
        }
    }
    return next;
}

Eigen::VectorXd lyapunov_value(const Eigen::VectorXd& s, const AdaptationState& st,
                               const Eigen::MatrixXd& beta_true,
                               const Eigen::MatrixXd& alpha_true) {
    const auto r = s.size();
    Eigen::VectorXd v(r);
    for (Eigen::Index p = 0; p < r; ++p) {
        double acc = 0.5 * s(p) * s(p);
        for (Eigen::Index q = 0; q < r; ++q) {
            const double eb = beta_true(p, q) - st.beta_hat(p, q);
            const double ea = alpha_true(p, q) - st.alpha_hat(p, q);
            acc += 0.5 * st.rho_beta(p, q) * eb * eb;
            acc += 0.5 * st.rho_alpha(p, q) * ea * ea;
        }
        v(p) = acc;
    }
    return v;
}

LyapunovDiag lyapunov_delta(const Eigen::VectorXd& s, const Eigen::VectorXd& s_next,
                            const AdaptationState& before, const AdaptationState& after,
                            const Eigen::MatrixXd& beta_true,
                            const Eigen::MatrixXd& alpha_true,
                            const Eigen::VectorXd& reach_diag) {
    if (s.size() != s_next.size() || s.size() != reach_diag.size()) {
        throw std::invalid_argument("lyapunov_delta: inconsistent dimensions");
    }
    LyapunovDiag d;
    d.dv = lyapunov_value(s_next, after, beta_true, alpha_true) -
           lyapunov_value(s, before, beta_true, alpha_true);
    d.dv_expected = -(Eigen::VectorXd::Ones(s.size()) - reach_diag).cwiseProduct(s.cwiseProduct(s));
    d.residual = d.dv - d.dv_expected;
    return d;
}

}  // namespace dsmc
