#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "chanthermo/info.hpp"
#include "chanthermo/types.hpp"

namespace chanthermo {

inline constexpr double kConditionLimit = 1e12;   // beyond this the channel counts as singular
inline constexpr double kMurogaMargin = 1e-12;    // strict positivity margin for d

enum class CapacityMethod { BlahutArimoto, Muroga };

inline const char* method_name(CapacityMethod m) {
    return m == CapacityMethod::BlahutArimoto ? "blahut-arimoto" : "muroga";
}

struct CapacityResult {
    double C = 0.0;                     // nats
    Eigen::VectorXd p_star;             // capacity-achieving distribution
    CapacityMethod method = CapacityMethod::BlahutArimoto;
    int iterations = 0;
    double gap = 0.0;                   // final upper-minus-lower bound gap (BA)
    bool d_positive = false;            // Muroga applicability
    bool converged = true;              // false iff BA hit max_iter

    Distribution distribution() const {
        return Distribution::from_weights(p_star, DistRole::CapacityAchieving);
    }
};

/// Blahut-Arimoto with certified upper/lower capacity bounds.
/// Stops when max_j D(W_j. || q) - sum_j p_j D(W_j. || q) < tol; C is the lower
/// bound at the final iterate. Starts from the uniform distribution.
inline CapacityResult blahut_arimoto(const ChannelMatrix& W, double tol = 1e-10,
                                     int max_iter = 200000,
                                     std::vector<double>* lower_trace = nullptr) {
    if (!(tol > 0.0)) fail(ErrorCode::InvalidParams, "blahut_arimoto: tol must be > 0");
    if (max_iter < 1) fail(ErrorCode::InvalidParams, "blahut_arimoto: max_iter must be >= 1");
    const int n = W.size();
    const Eigen::MatrixXd& w = W.entries();

    Eigen::VectorXd p = Eigen::VectorXd::Constant(n, 1.0 / n);
    Eigen::VectorXd d(n);  // D(W_j. || q) per row

    CapacityResult res;
    res.method = CapacityMethod::BlahutArimoto;
    double lower = 0.0, upper = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < max_iter; ++it) {
        const Eigen::VectorXd q = w.transpose() * p;
        for (int j = 0; j < n; ++j) {
            double dj = 0.0;
            for (int k = 0; k < n; ++k) {
                const double wjk = w(j, k);
                if (wjk <= 0.0) continue;
                dj += wjk * std::log(wjk / q(k));
            }
            d(j) = dj;
        }
        lower = p.dot(d);
        upper = d.maxCoeff();
        if (lower_trace) lower_trace->push_back(lower);
        if (upper - lower < tol) { ++it; break; }
        // multiplicative update in log space
        Eigen::VectorXd logp(n);
        for (int j = 0; j < n; ++j)
            logp(j) = (p(j) > 0.0 ? std::log(p(j)) : -std::numeric_limits<double>::infinity())
                      + d(j);
        const double m = logp.maxCoeff();
        Eigen::VectorXd pn(n);
        for (int j = 0; j < n; ++j) pn(j) = std::exp(logp(j) - m);
        p = pn / pn.sum();
    }
    res.C = std::max(lower, 0.0);
    res.p_star = p;
    res.iterations = it;
    res.gap = upper - lower;
    res.converged = res.gap < tol;
    return res;
}

namespace detail {

/// Inverse of W with an SVD-based condition estimate; throws SingularChannel
/// when the condition number exceeds kConditionLimit.
inline Eigen::MatrixXd channel_inverse(const ChannelMatrix& W) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(W.entries());
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(W.size() - 1);
    if (!(smin > 0.0) || smax / smin > kConditionLimit)
        fail(ErrorCode::SingularChannel,
             "channel matrix is singular to working precision (cond > 1e12)");
    return W.entries().inverse();
}

} // namespace detail

/// Closed-form capacity for invertible W: with M = W^{-1} and row entropies H,
/// e^C = sum_j exp(-sum_k M_jk H_k) and p = e^{-C} d, valid when d > 0
/// componentwise. When some d_j <= 0 the result carries d_positive = false and
/// no capacity value; the caller must fall back to Blahut-Arimoto.
inline CapacityResult muroga_capacity(const ChannelMatrix& W) {
    const int n = W.size();
    const Eigen::MatrixXd M = detail::channel_inverse(W);
    const Eigen::VectorXd H = row_entropies(W);
    const Eigen::VectorXd a = (-(M * H)).array().exp();  // a_j = exp(-sum_k M_jk H_k)
    const Eigen::VectorXd d = M.transpose() * a;          // d_j = sum_i M_ij a_i

    CapacityResult res;
    res.method = CapacityMethod::Muroga;
    if (d.minCoeff() <= kMurogaMargin) {
        res.d_positive = false;
        res.C = std::numeric_limits<double>::quiet_NaN();
        res.p_star = Eigen::VectorXd();
        return res;
    }
    const double eC = a.sum();
    res.C = std::log(eC);
    res.p_star = d / eC;
    res.d_positive = true;
    return res;
}

struct CapacityGradient {
    Eigen::MatrixXd psi;   // psi^(jk) for j != k; diagonal is NaN sentinel
    Eigen::MatrixXd grad;  // dC/dW_jk = psi^(jk) p_j; diagonal is NaN sentinel
    Eigen::VectorXd p;     // capacity-achieving distribution used
};

/// psi^(jk) = sum_m (M_km - M_jm) H_m + log(W_jk / W_jj) for j != k, NaN on the
/// diagonal. Needs no capacity-achieving distribution.
inline Eigen::MatrixXd psi_matrix(const ChannelMatrix& W) {
    const int n = W.size();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (W(j, k) <= 0.0)
                fail(ErrorCode::ZeroEntry, "psi_matrix: W(" + std::to_string(j) +
                     "," + std::to_string(k) + ") = 0");
    const Eigen::MatrixXd M = detail::channel_inverse(W);
    const Eigen::VectorXd H = row_entropies(W);
    const Eigen::VectorXd mh = M * H;  // (M H)_j = sum_m M_jm H_m
    Eigen::MatrixXd psi =
        Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::quiet_NaN());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (k != j)
                psi(j, k) = (mh(k) - mh(j)) + std::log(W(j, k) / W(j, j));
    return psi;
}

/// Exact capacity gradient under the convention that W_jj = 1 - sum_{k!=j} W_jk
/// are dependent variables: dC/dW_jk = psi^(jk) p_j. Rows with p_j = 0 get
/// grad_jk = 0 (the formula still holds there).
inline CapacityGradient capacity_gradient(const ChannelMatrix& W) {
    const int n = W.size();
    CapacityGradient g;
    g.psi = psi_matrix(W);

    CapacityResult cap = muroga_capacity(W);
    if (!cap.d_positive) cap = blahut_arimoto(W, 1e-12);
    g.p = cap.p_star;

    g.grad = Eigen::MatrixXd::Constant(n, n, std::numeric_limits<double>::quiet_NaN());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (k != j) g.grad(j, k) = g.psi(j, k) * cap.p_star(j);
    return g;
}

/// Central-difference oracle for the gradient theorem: perturbs W_jk -> W_jk +- h
/// with the diagonal absorbing the change (W_jj -> W_jj -+ h) and differences
/// Blahut-Arimoto capacities.
inline double fd_capacity_gradient(const ChannelMatrix& W, int j, int k, double h,
                                   double ba_tol = 1e-12) {
    if (j == k) fail(ErrorCode::InvalidParams, "fd_capacity_gradient: need j != k");
    const int n = W.size();
    if (j < 0 || j >= n || k < 0 || k >= n)
        fail(ErrorCode::OutOfRange, "fd_capacity_gradient: index out of range");
    const double wjk = W(j, k), wjj = W(j, j);
    if (!(wjk + h < 1.0 && wjk - h > 0.0 && wjj + h < 1.0 && wjj - h > 0.0))
        fail(ErrorCode::StepOutOfRange, "fd_capacity_gradient: step leaves (0,1)");

    auto perturbed = [&](double s) {
        Eigen::MatrixXd m = W.entries();
        m(j, k) += s;
        m(j, j) -= s;
        return ChannelMatrix::validated(m);
    };
    const double cp = blahut_arimoto(perturbed(+h), ba_tol).C;
    const double cm = blahut_arimoto(perturbed(-h), ba_tol).C;
    return (cp - cm) / (2.0 * h);
}

/// For W = I + eps*Q, returns max_j |sum_k M_jk H_k - H_j|. The caller checks
/// O(eps^2) scaling by comparing residuals at eps and eps/2.
inline double good_channel_expansion_check(const Eigen::MatrixXd& Q, double eps) {
    if (Q.rows() != Q.cols())
        fail(ErrorCode::InvalidPerturbation, "Q must be square");
    const int n = static_cast<int>(Q.rows());
    for (int j = 0; j < n; ++j) {
        if (std::abs(Q.row(j).sum()) > 1e-12)
            fail(ErrorCode::InvalidPerturbation, "Q rows must sum to 0");
        if (!(Q(j, j) < 0.0))
            fail(ErrorCode::InvalidPerturbation, "Q diagonal must be strictly negative");
        for (int k = 0; k < n; ++k)
            if (k != j && Q(j, k) < 0.0)
                fail(ErrorCode::InvalidPerturbation, "Q off-diagonal must be >= 0");
    }
    if (eps == 0.0) return 0.0;
    const Eigen::MatrixXd raw = Eigen::MatrixXd::Identity(n, n) + eps * Q;
    if ((raw.array() < 0.0).any() || (raw.diagonal().array() <= 0.0).any())
        fail(ErrorCode::InvalidPerturbation, "eps too large: I + eps*Q not stochastic");
    const ChannelMatrix W = ChannelMatrix::validated(raw);
    const Eigen::MatrixXd M = detail::channel_inverse(W);
    const Eigen::VectorXd H = row_entropies(W);
    return ((M * H) - H).cwiseAbs().maxCoeff();
}

} // namespace chanthermo
