#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "chanthermo/types.hpp"

// Seeded generators for random channels and distributions, shared by the
// property suites and the tests.

namespace chanthermo {

using Rng = std::mt19937_64;

/// Dirichlet(1,...,1) sample: strictly positive a.s.
inline Eigen::VectorXd random_simplex(Rng& rng, int n) {
    std::uniform_real_distribution<double> unif(1e-12, 1.0);
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w(i) = -std::log(unif(rng));
    return w / w.sum();
}

inline Distribution random_distribution(Rng& rng, int n,
                                        DistRole role = DistRole::Input) {
    return Distribution::from_weights(random_simplex(rng, n), role);
}

inline ChannelMatrix random_channel(Rng& rng, int n) {
    Eigen::MatrixXd w(n, n);
    for (int j = 0; j < n; ++j) w.row(j) = random_simplex(rng, n).transpose();
    return ChannelMatrix::validated(w);
}

/// W = 1q: every row equal to a random full-support q, so C = 0.
inline ChannelMatrix random_product_law_channel(Rng& rng, int n) {
    const Eigen::VectorXd q = random_simplex(rng, n);
    Eigen::MatrixXd w(n, n);
    for (int j = 0; j < n; ++j) w.row(j) = q.transpose();
    return ChannelMatrix::validated(w);
}

/// Random generator-style perturbation: rows sum to zero, strictly negative
/// diagonal, nonnegative off-diagonal.
inline Eigen::MatrixXd random_zero_row_sum(Rng& rng, int n) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            if (k != j) { q(j, k) = unif(rng); s += q(j, k); }
        q(j, j) = -s;
    }
    return q;
}

} // namespace chanthermo
