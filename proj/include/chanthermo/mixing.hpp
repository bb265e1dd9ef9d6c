#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <random>

#include "chanthermo/types.hpp"

// L^2 mixing time of a row-stochastic matrix P via the multiplicative
// reversibilization P†P: S = diag(p)(P†P - I), T = (S + Sᵀ)/2, and
// U = -diag(p)^{-1/2} T diag(p)^{-1/2}. The spectral gap is the smallest
// nonzero eigenvalue of U, and t_mix = 1/gap.

namespace chanthermo {

inline constexpr double kEigOneTol = 1e-8;     // eigenvalue-1 multiplicity test
inline constexpr double kZeroEigTol = 1e-10;   // "spec(U) \ {0}" cutoff

/// p with pP = p, via the eigendecomposition of Pᵀ. Errors if eigenvalue 1
/// has multiplicity > 1 (reducible chain) to tolerance.
inline Distribution invariant_distribution(const ChannelMatrix& P) {
    const int n = P.size();
    Eigen::EigenSolver<Eigen::MatrixXd> es(P.entries().transpose());
    int best = -1, near_one = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const double dist = std::abs(es.eigenvalues()(i) - std::complex<double>(1.0, 0.0));
        if (dist < kEigOneTol) ++near_one;
        if (dist < best_dist) { best_dist = dist; best = i; }
    }
    if (near_one > 1)
        fail(ErrorCode::NonUniqueInvariant,
             "eigenvalue 1 has multiplicity " + std::to_string(near_one));
    if (best < 0 || best_dist > 1e-6)
        fail(ErrorCode::NotFound, "no eigenvalue near 1");
    Eigen::VectorXd v = es.eigenvectors().col(best).real();
    if (v.sum() < 0.0) v = -v;
    // clip eigensolver noise; genuinely negative mass is an error
    if (v.minCoeff() < -1e-8 * v.cwiseAbs().maxCoeff())
        fail(ErrorCode::NotFound, "invariant eigenvector has mixed signs");
    v = v.cwiseMax(0.0);
    return Distribution::from_weights(v, DistRole::Invariant);
}

/// Time reversal (L^2 adjoint): P†_{jk} = p_k P_{kj} / p_j. Requires p > 0 and
/// pP = p within 1e-8.
inline Eigen::MatrixXd time_reversal(const ChannelMatrix& P, const Distribution& p) {
    const int n = P.size();
    if (p.size() != n) fail(ErrorCode::DimensionMismatch, "time_reversal: size mismatch");
    if (p.min_weight() <= 0.0)
        fail(ErrorCode::ZeroInvariantMass, "time_reversal: p has zero mass");
    const Eigen::VectorXd resid = P.entries().transpose() * p.weights() - p.weights();
    if (resid.cwiseAbs().maxCoeff() > 1e-8)
        fail(ErrorCode::NotInvariant, "time_reversal: pP != p");
    Eigen::MatrixXd rev(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            rev(j, k) = p(k) * P(k, j) / p(j);
    return rev;
}

struct ReversibilizationParts {
    Eigen::MatrixXd P_dagger;
    Eigen::MatrixXd S;
    Eigen::MatrixXd T;
    Eigen::MatrixXd U;  // symmetric PSD
};

inline ReversibilizationParts reversibilization(const ChannelMatrix& P,
                                                const Distribution& p) {
    const int n = P.size();
    ReversibilizationParts parts;
    parts.P_dagger = time_reversal(P, p);
    parts.S = p.weights().asDiagonal() *
              (parts.P_dagger * P.entries() - Eigen::MatrixXd::Identity(n, n));
    // P†P is p-reversible, so S should already be symmetric; flag violations
    if ((parts.S - parts.S.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        fail(ErrorCode::NotInvariant, "reversibilization: S is not symmetric");
    parts.T = 0.5 * (parts.S + parts.S.transpose());
    const Eigen::VectorXd inv_sqrt = p.weights().cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd u = -(inv_sqrt.asDiagonal() * parts.T * inv_sqrt.asDiagonal());
    parts.U = 0.5 * (u + u.transpose());
    return parts;
}

struct MixingResult {
    double lambda_star = 0.0;                         // spectral gap
    double t_mix = std::numeric_limits<double>::infinity();
    Eigen::VectorXd spectrum_U;                       // ascending eigenvalues of U
    Eigen::VectorXd invariant;

    bool finite() const { return std::isfinite(t_mix); }
};

/// lambda_star = inf(spec(U) \ {0}), t_mix = 1/lambda_star (or +inf when U = 0).
inline MixingResult spectral_gap(const ChannelMatrix& P) {
    const Distribution p = invariant_distribution(P);
    const ReversibilizationParts parts = reversibilization(P, p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(parts.U);
    MixingResult res;
    res.spectrum_U = es.eigenvalues();
    res.invariant = p.weights();
    double lam = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < res.spectrum_U.size(); ++i) {
        const double ev = res.spectrum_U(i);
        if (std::abs(ev) <= kZeroEigTol) continue;
        lam = std::min(lam, ev);
    }
    if (std::isfinite(lam)) {
        res.lambda_star = lam;
        res.t_mix = 1.0 / lam;
    } else {
        res.lambda_star = 0.0;
        res.t_mix = std::numeric_limits<double>::infinity();
    }
    return res;
}

inline double variance(const Eigen::VectorXd& p, const Eigen::VectorXd& f) {
    // pairwise form: Var_p(f) = 1/2 sum_{jk} p_j p_k (f_j - f_k)^2. Unlike
    // E[f^2] - E[f]^2 this is exact under a large constant offset in f, which
    // matters when comparing Rayleigh ratios of near-constant test functions
    // against the spectral gap.
    const auto n = p.size();
    double v = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = j + 1; k < n; ++k) {
            const double diff = f(j) - f(k);
            v += p(j) * p(k) * diff * diff;
        }
    return v;
}

/// Dirichlet form E(f) = 1/2 sum_{jk} p_j A_jk (f_j - f_k)^2 for a stochastic A
/// with invariant p.
inline double dirichlet_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& p,
                             const Eigen::VectorXd& f) {
    const auto n = A.rows();
    double e = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            const double diff = f(j) - f(k);
            e += p(j) * A(j, k) * diff * diff;
        }
    return 0.5 * e;
}

/// Samples random test functions and returns the minimum Rayleigh ratio
/// E_{P†P}(f) / Var_p(f); an upper bound on lambda_star by the variational
/// characterization.
inline double variational_gap_samples(const ChannelMatrix& P, int n_samples,
                                      std::uint64_t seed) {
    const Distribution p = invariant_distribution(P);
    const ReversibilizationParts parts = reversibilization(P, p);
    const Eigen::MatrixXd rev = parts.P_dagger * P.entries();
    const int n = P.size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < n_samples; ++s) {
        Eigen::VectorXd f(n);
        for (int j = 0; j < n; ++j) f(j) = gauss(rng);
        const double var = variance(p.weights(), f);
        if (var <= 1e-14) continue;
        best = std::min(best, dirichlet_form(rev, p.weights(), f) / var);
    }
    return best;
}

} // namespace chanthermo
