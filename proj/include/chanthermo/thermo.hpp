#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "chanthermo/capacity.hpp"
#include "chanthermo/info.hpp"
#include "chanthermo/mixing.hpp"
#include "chanthermo/types.hpp"

// Effective temperature and thermodynamic state of a stationary distribution p
// with timescale t_inf (hbar = 1 throughout):
//   gamma_k = mean(log p) - log p_k,  beta = t_inf ||p||_2 sqrt(||gamma||_2^2 + 1),
//   E = gamma / beta,  log Z = -mean(log p),  F = -log Z / beta.

namespace chanthermo {

struct ThermoState {
    Eigen::VectorXd gamma;      // gamma_k = beta * E_k, centered
    double beta = 0.0;          // inverse temperature
    Eigen::VectorXd energies;
    double logZ = 0.0;
    double F = 0.0;             // Helmholtz free energy
    double H = 0.0;             // entropy, nats
    double U_internal = 0.0;
    double t_inf = 0.0;
    Eigen::VectorXd p;
};

inline ThermoState effective_state(const Distribution& p, double t_inf) {
    if (p.min_weight() <= 0.0)
        fail(ErrorCode::DegenerateDistribution,
             "effective_state: distribution must be strictly positive");
    if (!(t_inf > 0.0) || !std::isfinite(t_inf))
        fail(ErrorCode::InfiniteTimescale, "effective_state: t_inf must be positive finite");
    const int n = p.size();
    const Eigen::VectorXd logp = p.weights().array().log();
    const double mean_logp = logp.mean();

    ThermoState st;
    st.p = p.weights();
    st.t_inf = t_inf;
    st.gamma = Eigen::VectorXd::Constant(n, mean_logp) - logp;
    st.beta = t_inf * p.weights().norm() * std::sqrt(st.gamma.squaredNorm() + 1.0);
    st.energies = st.gamma / st.beta;
    st.logZ = -mean_logp;
    st.F = -st.logZ / st.beta;
    st.H = entropy(p);
    st.U_internal = p.weights().dot(st.energies);
    return st;
}

/// Inverse of effective_state: energies and beta back to (p, t_inf).
inline std::pair<Distribution, double> inverse_state(const Eigen::VectorXd& E,
                                                     double beta) {
    if (!(beta > 0.0))
        fail(ErrorCode::NonPositiveBeta, "inverse_state: beta must be > 0");
    const int n = static_cast<int>(E.size());
    const Eigen::VectorXd w = (-beta * E.array()).exp();
    const Distribution p = Distribution::from_weights(w, DistRole::Input);
    const Eigen::VectorXd logp = p.weights().array().log();
    const Eigen::VectorXd gamma = Eigen::VectorXd::Constant(n, logp.mean()) - logp;
    const double t_inf = beta / (p.weights().norm() * std::sqrt(gamma.squaredNorm() + 1.0));
    return {p, t_inf};
}

struct DmcThermo {
    double C = 0.0;                 // capacity, nats
    Eigen::VectorXd p_star;
    double t_mix = 0.0;
    double beta_mix = 0.0;          // +inf sentinel when degenerate
    double F_mix = 0.0;             // 0 plateau when degenerate
    double H = 0.0;                 // entropy of p_star
    bool degenerate = false;        // p_star support deficient
    CapacityResult capacity;
    MixingResult mixing;
};

/// The recipe combining the capacity-achieving distribution with the mixing
/// time of W as the timescale. Where p_star loses support, the limiting values
/// beta^{-1} = 0 and F = 0 are reported instead of evaluating the formulas on
/// clamped probabilities.
inline DmcThermo dmc_thermo(const ChannelMatrix& W, double ba_tol = 1e-10,
                            double support_eps = 1e-6) {
    DmcThermo out;
    out.capacity = blahut_arimoto(W, ba_tol);
    out.C = out.capacity.C;
    out.p_star = out.capacity.p_star;
    out.mixing = spectral_gap(W);
    out.t_mix = out.mixing.t_mix;
    out.H = entropy_nats(out.p_star);
    if (out.p_star.minCoeff() < support_eps) {
        out.degenerate = true;
        out.beta_mix = std::numeric_limits<double>::infinity();
        out.F_mix = 0.0;
        return out;
    }
    if (!out.mixing.finite())
        fail(ErrorCode::InfiniteTimescale, "dmc_thermo: t_mix is infinite");
    const ThermoState st =
        effective_state(Distribution::from_weights(out.p_star, DistRole::CapacityAchieving),
                        out.t_mix);
    out.beta_mix = st.beta;
    out.F_mix = st.F;
    return out;
}

/// Work of factoring the joint distribution V = p_j W_jk into its marginals,
/// with energies read off the Gibbs form E_jk = F - log(V_jk)/beta. Satisfies
/// I(X;Y) = -beta (F + dW) identically in (beta, F).
inline double factoring_work(const ChannelMatrix& W, const Distribution& p,
                             double beta = 1.0, double F = 0.0) {
    if (!(beta > 0.0))
        fail(ErrorCode::NonPositiveBeta, "factoring_work: beta must be > 0");
    const Eigen::MatrixXd V = joint_distribution(W, p);
    const Eigen::VectorXd a = V.rowwise().sum();
    const Eigen::VectorXd b = V.colwise().sum();
    const auto n = V.rows();
    double dW = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            const double v = V(j, k);
            if (v <= 0.0) continue;
            const double E_jk = F - std::log(v) / beta;
            const double E_a = F - std::log(a(j)) / beta;
            const double E_b = F - std::log(b(k)) / beta;
            dW += v * (E_jk - (E_a + E_b));
        }
    return dW;
}

} // namespace chanthermo
