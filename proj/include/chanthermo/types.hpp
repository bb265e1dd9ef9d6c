#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>

#include "chanthermo/errors.hpp"

namespace chanthermo {

inline constexpr double kStochasticTol = 1e-12;   // tolerance for validated objects
inline constexpr double kRenormalizeTol = 1e-9;   // tolerance for renormalizing raw input

/// Row-stochastic square matrix of conditional probabilities W_{jk} = P(y_k | x_j).
/// Immutable after construction; construction validates (and possibly renormalizes)
/// the raw entries.
class ChannelMatrix {
public:
    static ChannelMatrix validated(const Eigen::MatrixXd& raw) {
        if (raw.rows() != raw.cols())
            fail(ErrorCode::NonSquare, "channel matrix must be square, got " +
                 std::to_string(raw.rows()) + "x" + std::to_string(raw.cols()));
        const auto n = raw.rows();
        if (n < 2)
            fail(ErrorCode::NonSquare, "alphabet size must be >= 2");
        if ((raw.array() < 0.0).any())
            fail(ErrorCode::NegativeEntry, "channel matrix has a negative entry");
        Eigen::MatrixXd w = raw;
        bool renormalized = false;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double s = w.row(j).sum();
            const double dev = std::abs(s - 1.0);
            if (dev > kRenormalizeTol)
                fail(ErrorCode::RowSumViolation, "row " + std::to_string(j) +
                     " sums to " + std::to_string(s));
            if (dev > kStochasticTol) {
                w.row(j) /= s;
                renormalized = true;
            }
        }
        return ChannelMatrix(std::move(w), renormalized);
    }

    int size() const { return static_cast<int>(w_.rows()); }
    const Eigen::MatrixXd& entries() const { return w_; }
    double operator()(Eigen::Index j, Eigen::Index k) const { return w_(j, k); }
    bool renormalized() const { return renormalized_; }

private:
    ChannelMatrix(Eigen::MatrixXd w, bool renormalized)
        : w_(std::move(w)), renormalized_(renormalized) {}

    Eigen::MatrixXd w_;
    bool renormalized_;
};

enum class DistRole { Input, Output, Invariant, CapacityAchieving };

inline const char* role_name(DistRole r) {
    switch (r) {
        case DistRole::Input: return "input";
        case DistRole::Output: return "output";
        case DistRole::Invariant: return "invariant";
        case DistRole::CapacityAchieving: return "capacity-achieving";
    }
    return "?";
}

/// Probability vector over n symbols with a role tag.
class Distribution {
public:
    static Distribution validated(const Eigen::VectorXd& raw,
                                  DistRole role = DistRole::Input) {
        if (raw.size() < 1)
            fail(ErrorCode::InvalidInput, "empty distribution");
        if ((raw.array() < 0.0).any())
            fail(ErrorCode::NegativeEntry, "distribution has a negative weight");
        const double s = raw.sum();
        if (std::abs(s - 1.0) > kRenormalizeTol)
            fail(ErrorCode::RowSumViolation, "distribution sums to " + std::to_string(s));
        Eigen::VectorXd w = raw / s;
        return Distribution(std::move(w), role);
    }

    static Distribution uniform(int n, DistRole role = DistRole::Input) {
        return Distribution(Eigen::VectorXd::Constant(n, 1.0 / n), role);
    }

    /// Wraps weights that are already normalized by construction (e.g. algorithm
    /// iterates); normalizes exactly, no tolerance checks.
    static Distribution from_weights(const Eigen::VectorXd& w,
                                     DistRole role = DistRole::Input) {
        Eigen::VectorXd v = w.cwiseMax(0.0);
        const double s = v.sum();
        if (s <= 0.0)
            fail(ErrorCode::InvalidInput, "nonpositive total weight");
        return Distribution(v / s, role);
    }

    int size() const { return static_cast<int>(w_.size()); }
    const Eigen::VectorXd& weights() const { return w_; }
    double operator()(Eigen::Index j) const { return w_(j); }
    DistRole role() const { return role_; }
    double min_weight() const { return w_.minCoeff(); }

private:
    Distribution(Eigen::VectorXd w, DistRole role) : w_(std::move(w)), role_(role) {}

    Eigen::VectorXd w_;
    DistRole role_;
};

} // namespace chanthermo
