#pragma once

#include <Eigen/Dense>

#include "dsmc/plant.hpp"

namespace dsmc {

/// Online estimates of the multiplicative/additive uncertainty terms,
/// together with the per-entry adaptation gains and the masks of
/// parameters that are allowed to adapt. Parameters outside their mask
/// stay pinned at beta_hat = 1, alpha_hat = 0.
struct AdaptationState {
    Eigen::MatrixXd beta_hat;
    Eigen::MatrixXd alpha_hat;
    Eigen::MatrixXd rho_beta;   // positive gains, larger = slower adaptation
    Eigen::MatrixXd rho_alpha;
    BoolMatrix mask_beta;
    BoolMatrix mask_alpha;
    Eigen::MatrixXd a_nominal;  // frozen nominal dynamics entries

    /// Identity estimates with nothing masked: a_hat() == a_nominal.
    static AdaptationState pinned(const Eigen::MatrixXd& a_nominal);

    /// The dynamics matrix the controller believes in:
    /// beta_hat(p,q) * a(p,q) + alpha_hat(p,q) on masked entries, the
    /// nominal value bit-for-bit elsewhere.
    Eigen::MatrixXd a_hat() const;

    void validate() const;
};

/// One adaptation update driven by the measured surface and state:
///   beta_hat  += T s_p a_pq x_q / rho_beta_pq
///   alpha_hat += T s_p x_q / rho_alpha_pq
/// on masked entries; unmasked entries are untouched.
AdaptationState adapt_step(const AdaptationState& st, const Eigen::VectorXd& surface,
                           const Eigen::VectorXd& x, double T);

/// Per-surface Lyapunov difference diagnostic. The candidate per surface p is
///   V_p = s_p^2 / 2 + sum_q (rho_beta_pq err_beta^2 + rho_alpha_pq err_alpha^2) / 2
/// with errors measured against the true uncertainty (simulator knowledge).
struct LyapunovDiag {
    Eigen::VectorXd dv;           // measured V(i+1) - V(i)
    Eigen::VectorXd dv_expected;  // -(1 - g_p) s_p^2
    Eigen::VectorXd residual;     // dv - dv_expected
};

LyapunovDiag lyapunov_delta(const Eigen::VectorXd& s, const Eigen::VectorXd& s_next,
                            const AdaptationState& before, const AdaptationState& after,
                            const Eigen::MatrixXd& beta_true,
                            const Eigen::MatrixXd& alpha_true,
                            const Eigen::VectorXd& reach_diag);

/// The per-surface Lyapunov candidate itself (used by the diagnostic and
/// exposed for tests).
Eigen::VectorXd lyapunov_value(const Eigen::VectorXd& s, const AdaptationState& st,
                               const Eigen::MatrixXd& beta_true,
                               const Eigen::MatrixXd& alpha_true);

}  // namespace dsmc
