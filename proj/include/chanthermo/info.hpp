#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "chanthermo/types.hpp"

// Basic information measures, all in nats. Terms with zero probability are
// skipped outright (0 log 0 := 0), never patched with an epsilon.

namespace chanthermo {

inline double entropy_nats(const Eigen::VectorXd& p) {
    double h = 0.0;
    for (Eigen::Index j = 0; j < p.size(); ++j)
        if (p(j) > 0.0) h -= p(j) * std::log(p(j));
    return h;
}

inline double entropy(const Distribution& p) { return entropy_nats(p.weights()); }

inline double relative_entropy(const Distribution& p, const Distribution& q) {
    if (p.size() != q.size())
        fail(ErrorCode::DimensionMismatch, "relative_entropy: size mismatch");
    double d = 0.0;
    for (Eigen::Index j = 0; j < p.size(); ++j) {
        if (p(j) <= 0.0) continue;
        if (q(j) <= 0.0)
            fail(ErrorCode::SupportViolation,
                 "relative_entropy: p_j > 0 where q_j = 0 at j=" + std::to_string(j));
        d += p(j) * std::log(p(j) / q(j));
    }
    return d;
}

inline Distribution output_distribution(const ChannelMatrix& W, const Distribution& p) {
    if (p.size() != W.size())
        fail(ErrorCode::DimensionMismatch, "output_distribution: size mismatch");
    Eigen::VectorXd q = W.entries().transpose() * p.weights();
    return Distribution::from_weights(q, DistRole::Output);
}

/// V_{jk} = p_j W_{jk}; entries sum to 1.
inline Eigen::MatrixXd joint_distribution(const ChannelMatrix& W, const Distribution& p) {
    if (p.size() != W.size())
        fail(ErrorCode::DimensionMismatch, "joint_distribution: size mismatch");
    return p.weights().asDiagonal() * W.entries();
}

inline double mutual_information(const ChannelMatrix& W, const Distribution& p) {
    if (p.size() != W.size())
        fail(ErrorCode::DimensionMismatch, "mutual_information: size mismatch");
    const Eigen::VectorXd q = W.entries().transpose() * p.weights();
    double mi = 0.0;
    const int n = W.size();
    for (int j = 0; j < n; ++j) {
        if (p(j) <= 0.0) continue;
        for (int k = 0; k < n; ++k) {
            const double w = W(j, k);
            if (w <= 0.0) continue;
            mi += p(j) * w * std::log(w / q(k));
        }
    }
    return mi;
}

inline Eigen::VectorXd row_entropies(const ChannelMatrix& W) {
    const int n = W.size();
    Eigen::VectorXd h(n);
    for (int j = 0; j < n; ++j) h(j) = entropy_nats(W.entries().row(j).transpose());
    return h;
}

struct InfoMeasures {
    double entropy;           // H(p), nats
    double relative_entropy;  // D(V || p (x) q), nats; equals the mutual information
    double mutual_information;
    Eigen::VectorXd row_entropies;
};

inline InfoMeasures channel_measures(const ChannelMatrix& W, const Distribution& p) {
    return InfoMeasures{entropy(p), mutual_information(W, p),
                        mutual_information(W, p), row_entropies(W)};
}

} // namespace chanthermo
