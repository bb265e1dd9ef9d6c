#pragma once

#include <Eigen/Dense>
#include <string>

#include "chanthermo/types.hpp"

// Parameterized channel families over the unit square (u, v).

namespace chanthermo {

/// [[1-a, a], [b, 1-b]] with (a, b) = (W_12, W_21).
inline ChannelMatrix biodmc(double a, double b) {
    if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0))
        fail(ErrorCode::OutOfRange, "biodmc: parameters must lie in (0,1)");
    Eigen::MatrixXd w(2, 2);
    w << 1.0 - a, a, b, 1.0 - b;
    return ChannelMatrix::validated(w);
}

struct Constrained3Params {
    double W11 = 0.35;
    double W22 = 0.05;
    double W31 = 0.15;
    double W32 = 0.20;
    double W33 = 0.65;
};

/// 3x3 channel with fixed per-symbol success probabilities; rows 1 and 2 split
/// their failure mass by u and v.
inline ChannelMatrix family_constrained(double u, double v,
                                        const Constrained3Params& prm = {}) {
    if (!(prm.W11 > 0.0 && prm.W11 < 1.0 && prm.W22 > 0.0 && prm.W22 < 1.0))
        fail(ErrorCode::InvalidParams, "family_constrained: W11, W22 must lie in (0,1)");
    if (std::abs(prm.W31 + prm.W32 + prm.W33 - 1.0) > 1e-12)
        fail(ErrorCode::InvalidParams, "family_constrained: row 3 must sum to 1");
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
        fail(ErrorCode::OutOfRange, "family_constrained: (u,v) outside [0,1]^2");
    Eigen::MatrixXd w(3, 3);
    w << prm.W11, (1.0 - prm.W11) * u, (1.0 - prm.W11) * (1.0 - u),
         (1.0 - prm.W22) * (1.0 - v), prm.W22, (1.0 - prm.W22) * v,
         prm.W31, prm.W32, prm.W33;
    return ChannelMatrix::validated(w);
}

struct Convex3Params {
    double a = 0.2;
    Eigen::Matrix3d Wu;
    Eigen::Matrix3d Wv;

    Convex3Params() {
        Wu << 0.25, 0.14, 0.61,
              0.29, 0.67, 0.04,
              0.08, 0.74, 0.18;
        Wv << 0.31, 0.04, 0.65,
              0.50, 0.10, 0.40,
              0.01, 0.58, 0.41;
    }
};

/// Convex combination c0 * 11^T/n + cu * Wu + cv * Wv with
/// c0 = 1 - a(u+v-1), cu = a(u - 1/2), cv = a(v - 1/2); coefficients sum to 1.
inline ChannelMatrix family_convex(double u, double v, const Convex3Params& prm = {}) {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
        fail(ErrorCode::OutOfRange, "family_convex: (u,v) outside [0,1]^2");
    const double c0 = 1.0 - prm.a * (u + v - 1.0);
    const double cu = prm.a * (u - 0.5);
    const double cv = prm.a * (v - 0.5);
    const Eigen::Matrix3d uniform = Eigen::Matrix3d::Constant(1.0 / 3.0);
    const Eigen::Matrix3d w = c0 * uniform + cu * prm.Wu + cv * prm.Wv;
    if ((w.array() < 0.0).any())
        fail(ErrorCode::NegativeEntry, "family_convex: mixing weight a too large");
    return ChannelMatrix::validated(w);
}

enum class FamilyKind { Biodmc, Constrained3, Convex3 };

inline const char* family_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::Biodmc: return "biodmc";
        case FamilyKind::Constrained3: return "constrained3";
        case FamilyKind::Convex3: return "convex3";
    }
    return "?";
}

inline FamilyKind family_from_name(const std::string& s) {
    if (s == "biodmc") return FamilyKind::Biodmc;
    if (s == "constrained3") return FamilyKind::Constrained3;
    if (s == "convex3") return FamilyKind::Convex3;
    fail(ErrorCode::InvalidParams, "unknown family: " + s);
}

struct ChannelFamily {
    FamilyKind kind = FamilyKind::Biodmc;
    Constrained3Params constrained{};
    Convex3Params convex{};

    int alphabet_size() const { return kind == FamilyKind::Biodmc ? 2 : 3; }

    ChannelMatrix evaluate(double u, double v) const {
        switch (kind) {
            case FamilyKind::Biodmc: return biodmc(u, v);
            case FamilyKind::Constrained3: return family_constrained(u, v, constrained);
            case FamilyKind::Convex3: return family_convex(u, v, convex);
        }
        fail(ErrorCode::InvalidParams, "bad family kind");
    }
};

} // namespace chanthermo
