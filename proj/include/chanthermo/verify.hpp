#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "chanthermo/capacity.hpp"
#include "chanthermo/info.hpp"
#include "chanthermo/mixing.hpp"
#include "chanthermo/random.hpp"
#include "chanthermo/reports.hpp"
#include "chanthermo/sweep.hpp"
#include "chanthermo/thermo.hpp"

// Property suites: each check draws its own seeded samples and reports the
// worst residual against a pinned tolerance. The CLI `verify` command and the
// acceptance runner both execute these.

namespace chanthermo {

struct PropertyResult {
    std::string name;
    int samples = 0;
    double worst = 0.0;  // worst residual (or the statistic named in `note`)
    double tol = 0.0;
    bool pass = false;
    std::string note;
};

namespace verify_detail {

inline PropertyResult make(const std::string& name, int samples, double worst,
                           double tol, const std::string& note = "") {
    return PropertyResult{name, samples, worst, tol, worst <= tol, note};
}

inline int size_cycle(int i) {
    static const int sizes[] = {2, 3, 5};
    return sizes[i % 3];
}

} // namespace verify_detail

// ---------------------------------------------------------------- core

inline std::vector<PropertyResult> verify_core(std::uint64_t seed) {
    using verify_detail::make;
    std::vector<PropertyResult> out;
    Rng rng(seed);

    {   // I = H(q) - sum_j p_j H_j
        double worst = 0.0;
        const int N = 500;
        for (int i = 0; i < N; ++i) {
            const int n = verify_detail::size_cycle(i);
            const ChannelMatrix W = random_channel(rng, n);
            const Distribution p = random_distribution(rng, n);
            const double lhs = mutual_information(W, p);
            const double rhs = entropy(output_distribution(W, p)) -
                               p.weights().dot(row_entropies(W));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        out.push_back(make("core/conditional-entropy-identity", N, worst, 1e-10));
    }
    {   // I = D(V || p (x) q)
        double worst = 0.0;
        const int N = 500;
        for (int i = 0; i < N; ++i) {
            const int n = verify_detail::size_cycle(i);
            const ChannelMatrix W = random_channel(rng, n);
            const Distribution p = random_distribution(rng, n);
            const Eigen::MatrixXd V = joint_distribution(W, p);
            const Eigen::VectorXd q = W.entries().transpose() * p.weights();
            Eigen::VectorXd v_flat(n * n), pq_flat(n * n);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    v_flat(j * n + k) = V(j, k);
                    pq_flat(j * n + k) = p(j) * q(k);
                }
            const double d = relative_entropy(Distribution::from_weights(v_flat),
                                              Distribution::from_weights(pq_flat));
            worst = std::max(worst, std::abs(mutual_information(W, p) - d));
        }
        out.push_back(make("core/mi-equals-relative-entropy", N, worst, 1e-10));
    }
    {   // D(p||q) >= 0, and D(p||p) = 0
        double worst = 0.0;
        const int N = 1000;
        for (int i = 0; i < N; ++i) {
            const int n = verify_detail::size_cycle(i);
            const Distribution p = random_distribution(rng, n);
            const Distribution q = random_distribution(rng, n);
            worst = std::max(worst, -relative_entropy(p, q));
            worst = std::max(worst, std::abs(relative_entropy(p, p)));
        }
        out.push_back(make("core/relative-entropy-nonnegative", N, worst, 1e-12));
    }
    {   // output distribution stays normalized
        double worst = 0.0;
        const int N = 500;
        for (int i = 0; i < N; ++i) {
            const int n = verify_detail::size_cycle(i);
            const Distribution q =
                output_distribution(random_channel(rng, n), random_distribution(rng, n));
            worst = std::max(worst, std::abs(q.weights().sum() - 1.0));
        }
        out.push_back(make("core/output-normalization", N, worst, 1e-12));
    }
    return out;
}

// ------------------------------------------------------------ capacity

inline std::vector<PropertyResult> verify_capacity(std::uint64_t seed) {
    using verify_detail::make;
    std::vector<PropertyResult> out;
    Rng rng(seed);

    {   // Muroga vs Blahut-Arimoto on channels where the formula applies
        double worst_c = 0.0, worst_p = 0.0;
        int accepted = 0, attempts = 0;
        while (accepted < 200 && attempts < 5000) {
            ++attempts;
            const ChannelMatrix W = random_channel(rng, 3);
            CapacityResult mur;
            try {
                mur = muroga_capacity(W);
            } catch (const Error&) { continue; }
            if (!mur.d_positive) continue;
            const CapacityResult ba = blahut_arimoto(W, 1e-10);
            worst_c = std::max(worst_c, std::abs(mur.C - ba.C));
            worst_p = std::max(worst_p,
                               (mur.p_star - ba.p_star).cwiseAbs().maxCoeff());
            ++accepted;
        }
        out.push_back(make("capacity/muroga-ba-capacity-agreement", accepted, worst_c, 1e-8));
        out.push_back(make("capacity/muroga-ba-pstar-agreement", accepted, worst_p, 1e-5));
    }
    {   // BA lower bound is nondecreasing
        double worst = 0.0;
        const int N = 50;
        for (int i = 0; i < N; ++i) {
            std::vector<double> trace;
            blahut_arimoto(random_channel(rng, verify_detail::size_cycle(i)), 1e-10,
                           200000, &trace);
            for (std::size_t t = 1; t < trace.size(); ++t)
                worst = std::max(worst, trace[t - 1] - trace[t]);
        }
        out.push_back(make("capacity/ba-lower-bound-monotone", N, worst, 1e-13));
    }
    {   // gradient theorem vs central differences
        double worst = 0.0;
        int accepted = 0, attempts = 0, pairs = 0;
        while (accepted < 50 && attempts < 2000) {
            ++attempts;
            const ChannelMatrix W = random_channel(rng, 3);
            CapacityGradient g;
            try {
                g = capacity_gradient(W);
            } catch (const Error&) { continue; }
            if (g.p.minCoeff() < 1e-3) continue;  // want full-support p_star
            bool usable = true;
            const double h = 1e-5;
            for (int j = 0; j < 3 && usable; ++j)
                for (int k = 0; k < 3; ++k)
                    if (j != k && !(W(j, k) - h > 0 && W(j, k) + h < 1 &&
                                    W(j, j) - h > 0 && W(j, j) + h < 1)) {
                        usable = false;
                        break;
                    }
            if (!usable) continue;
            ++accepted;
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    if (j == k) continue;
                    const double fd = fd_capacity_gradient(W, j, k, h, 1e-12);
                    const double an = g.grad(j, k);
                    worst = std::max(worst,
                                     std::abs(fd - an) / std::max(std::abs(an), 1e-4));
                    ++pairs;
                }
        }
        out.push_back(make("capacity/gradient-vs-finite-difference", pairs, worst, 1e-3,
                           std::to_string(accepted) + " channels"));
    }
    {   // KKT flat directions: p_j ~ 0 implies vanishing finite differences
        double worst = 0.0;
        int found = 0, attempts = 0, checked = 0;
        while (found < 10 && attempts < 3000) {
            ++attempts;
            const ChannelMatrix W = random_channel(rng, 3);
            const CapacityResult ba = blahut_arimoto(W, 1e-12);
            if (ba.p_star.minCoeff() >= 1e-10) continue;
            ++found;
            const double h = 1e-5;
            for (int j = 0; j < 3; ++j) {
                if (ba.p_star(j) >= 1e-10) continue;
                for (int k = 0; k < 3; ++k) {
                    if (j == k) continue;
                    if (!(W(j, k) - h > 0 && W(j, k) + h < 1 && W(j, j) - h > 0 &&
                          W(j, j) + h < 1))
                        continue;
                    worst = std::max(worst,
                                     std::abs(fd_capacity_gradient(W, j, k, h, 1e-12)));
                    ++checked;
                }
            }
        }
        out.push_back(make("capacity/kkt-flat-directions", checked, worst, 1e-6,
                           std::to_string(found) + " channels with a zero component"));
    }
    {   // C = 0 iff all rows equal
        double worst_product = 0.0;  // capacity of product-law channels
        double min_generic = std::numeric_limits<double>::infinity();
        const int N = 100;
        for (int i = 0; i < N; ++i) {
            const int n = verify_detail::size_cycle(i);
            worst_product = std::max(
                worst_product, blahut_arimoto(random_product_law_channel(rng, n), 1e-12).C);
            const ChannelMatrix W = random_channel(rng, n);
            double row_spread = 0.0;
            for (int j = 1; j < n; ++j)
                row_spread = std::max(row_spread,
                                      (W.entries().row(j) - W.entries().row(0))
                                          .cwiseAbs()
                                          .maxCoeff());
            if (row_spread > 1e-10)
                min_generic = std::min(min_generic, blahut_arimoto(W, 1e-12).C);
        }
        out.push_back(make("capacity/zero-capacity-product-law", N, worst_product, 1e-12));
        PropertyResult r;
        r.name = "capacity/positive-capacity-distinct-rows";
        r.samples = N;
        r.worst = min_generic;
        r.tol = 1e-8;
        r.pass = min_generic > 1e-8;
        r.note = "statistic is min capacity; must exceed tol";
        out.push_back(r);
    }
    return out;
}

// ------------------------------------------------------------- mixing

inline std::vector<PropertyResult> verify_mixing(std::uint64_t seed) {
    using verify_detail::make;
    std::vector<PropertyResult> out;
    Rng rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    {   // -E_{P†P}(f) = Var_p(Pf) - Var_p(f), and E(f) = -f^T S f, and p P†P = p
        double worst_var = 0.0, worst_s = 0.0, worst_inv = 0.0;
        const int N = 500;
        for (int i = 0; i < N; ++i) {
            const int n = verify_detail::size_cycle(i);
            const ChannelMatrix P = random_channel(rng, n);
            const Distribution p = invariant_distribution(P);
            const ReversibilizationParts parts = reversibilization(P, p);
            const Eigen::MatrixXd rev = parts.P_dagger * P.entries();
            Eigen::VectorXd f(n);
            for (int j = 0; j < n; ++j) f(j) = gauss(rng);

            const double e = dirichlet_form(rev, p.weights(), f);
            const Eigen::VectorXd pf = P.entries() * f;
            worst_var = std::max(
                worst_var,
                std::abs(-e - (variance(p.weights(), pf) - variance(p.weights(), f))));
            worst_s = std::max(
                worst_s, std::abs(e - (-f.dot(parts.S * f))));
            worst_inv = std::max(worst_inv, (p.weights().transpose() * rev -
                                             p.weights().transpose())
                                                .cwiseAbs()
                                                .maxCoeff());
        }
        out.push_back(make("mixing/dirichlet-variance-identity", N, worst_var, 1e-10));
        out.push_back(make("mixing/dirichlet-quadratic-form", N, worst_s, 1e-10));
        out.push_back(make("mixing/reversibilization-invariance", N, worst_inv, 1e-10));
    }
    {   // lambda_star lower-bounds every sampled variational ratio
        double worst = 0.0;
        const int N = 100;
        for (int i = 0; i < N; ++i) {
            const int n = verify_detail::size_cycle(i);
            const ChannelMatrix P = random_channel(rng, n);
            const MixingResult mr = spectral_gap(P);
            const double sampled = variational_gap_samples(P, 1000, seed + i);
            worst = std::max(worst, mr.lambda_star - sampled);
        }
        out.push_back(make("mixing/variational-upper-bounds-gap", N, worst, 1e-9));
    }
    {   // C = 0 <-> t_mix = 1
        double worst_t = 0.0, worst_c = 0.0;
        const int N = 100;
        for (int i = 0; i < N; ++i) {
            const int n = verify_detail::size_cycle(i);
            const ChannelMatrix W = random_product_law_channel(rng, n);
            worst_t = std::max(worst_t, std::abs(spectral_gap(W).t_mix - 1.0));
            worst_c = std::max(worst_c, blahut_arimoto(W, 1e-12).C);
        }
        out.push_back(make("mixing/product-law-unit-mixing-time", N, worst_t, 1e-9));
        out.push_back(make("mixing/product-law-zero-capacity", N, worst_c, 1e-9));

        double min_excess = std::numeric_limits<double>::infinity();
        int accepted = 0, attempts = 0;
        while (accepted < 100 && attempts < 2000) {
            ++attempts;
            const int n = verify_detail::size_cycle(attempts);
            const ChannelMatrix W = random_channel(rng, n);
            if (blahut_arimoto(W, 1e-10).C <= 0.01) continue;
            ++accepted;
            min_excess = std::min(min_excess, spectral_gap(W).t_mix - 1.0);
        }
        PropertyResult r;
        r.name = "mixing/positive-capacity-mixing-excess";
        r.samples = accepted;
        r.worst = min_excess;
        r.tol = 1e-6;
        r.pass = min_excess > 1e-6;
        r.note = "statistic is min(t_mix - 1); must exceed tol";
        out.push_back(r);
    }
    return out;
}

// ------------------------------------------------------------- thermo

inline std::vector<PropertyResult> verify_thermo(std::uint64_t seed) {
    using verify_detail::make;
    std::vector<PropertyResult> out;
    Rng rng(seed);
    std::uniform_real_distribution<double> tdist(0.1, 10.0);

    {   // Gibbs reconstruction, Helmholtz identity, F <= 0, round trips
        double worst_gibbs = 0.0, worst_helm = 0.0, worst_f = 0.0, worst_rt = 0.0;
        const int N = 1000;
        for (int i = 0; i < N; ++i) {
            const int n = verify_detail::size_cycle(i);
            const Distribution p = random_distribution(rng, n);
            const double t_inf = tdist(rng);
            const ThermoState st = effective_state(p, t_inf);

            const Eigen::VectorXd gibbs =
                (-st.beta * st.energies.array()).exp() / std::exp(st.logZ);
            worst_gibbs = std::max(worst_gibbs,
                                   (gibbs - p.weights()).cwiseAbs().maxCoeff());
            worst_helm = std::max(
                worst_helm, std::abs(st.F - (st.U_internal - st.H / st.beta)));
            worst_f = std::max(worst_f, st.F);

            const auto [p2, t2] = inverse_state(st.energies, st.beta);
            worst_rt = std::max(worst_rt,
                                (p2.weights() - p.weights()).cwiseAbs().maxCoeff());
            worst_rt = std::max(worst_rt, std::abs(t2 - t_inf));
        }
        out.push_back(make("thermo/gibbs-reconstruction", N, worst_gibbs, 1e-10));
        out.push_back(make("thermo/helmholtz-identity", N, worst_helm, 1e-10));
        out.push_back(make("thermo/free-energy-nonpositive", N, worst_f, 1e-12));
        out.push_back(make("thermo/bijection-round-trip", N, worst_rt, 1e-10));
    }
    {   // ||t||_2 = ||t'||_2  <->  ||(E, 1/beta)||_2 = ||(E', 1/beta')||_2
        double worst = 0.0;
        const int N = 500;
        for (int i = 0; i < N; ++i) {
            const int n = verify_detail::size_cycle(i);
            const Distribution p = random_distribution(rng, n);
            const Distribution p2 = random_distribution(rng, n);
            const double t_inf = tdist(rng);
            // matched ||t||_2 by construction
            const double t_inf2 = t_inf * p.weights().norm() / p2.weights().norm();
            const ThermoState a = effective_state(p, t_inf);
            const ThermoState b = effective_state(p2, t_inf2);
            const double na = std::sqrt(a.energies.squaredNorm() + 1.0 / (a.beta * a.beta));
            const double nb = std::sqrt(b.energies.squaredNorm() + 1.0 / (b.beta * b.beta));
            worst = std::max(worst, std::abs(na - nb));
        }
        out.push_back(make("thermo/norm-correspondence", N, worst, 1e-9));
    }
    {   // Ford identity I = -beta (F + dW) for arbitrary (beta, F)
        double worst = 0.0;
        const int N = 1000;
        std::uniform_real_distribution<double> fdist(-3.0, 3.0);
        for (int i = 0; i < N; ++i) {
            const int n = verify_detail::size_cycle(i);
            const ChannelMatrix W = random_channel(rng, n);
            const Distribution p = random_distribution(rng, n);
            const double beta = tdist(rng);
            const double F = fdist(rng);
            const double dW = factoring_work(W, p, beta, F);
            worst = std::max(worst,
                             std::abs(mutual_information(W, p) + beta * (F + dW)));
        }
        out.push_back(make("thermo/ford-factoring-identity", N, worst, 1e-10));
    }
    {   // F_mix climbs toward its 0 plateau when p_star support collapses
        ChannelFamily fam;
        fam.kind = FamilyKind::Constrained3;
        const int N = 80;
        double last_F = -std::numeric_limits<double>::infinity();
        double worst_drop = 0.0;
        bool reached_degenerate = false;
        int tail = 0;
        for (int i = 0; i < N; ++i) {
            const double s = static_cast<double>(i) / (N - 1);
            const double u = 0.5 + (0.06 - 0.5) * s;   // head toward the lower-left
            const double v = 0.5 + (0.06 - 0.5) * s;   // zero-support region
            const DmcThermo t = dmc_thermo(fam.evaluate(u, v), 1e-10, 1e-6);
            if (t.degenerate) { reached_degenerate = true; break; }
            if (t.p_star.minCoeff() < 1e-2) {
                if (tail > 0) worst_drop = std::max(worst_drop, last_F - t.F_mix);
                last_F = t.F_mix;
                ++tail;
            }
        }
        PropertyResult r;
        r.name = "thermo/plateau-monotone-approach";
        r.samples = tail;
        r.worst = worst_drop;
        r.tol = 1e-9;
        r.pass = reached_degenerate && worst_drop <= 1e-9;
        r.note = reached_degenerate ? "crossed zero-support boundary"
                                    : "never reached degenerate region";
        out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------- landscape

struct Eq2Check {
    double grid_step = 0.0;
    double argmin_C_diag_steps = 0.0;       // diagonal distance in grid steps
    double argmin_F_diag_steps = 0.0;
    double argmin_H_diag_steps = 0.0;
    double argmin_CF_separation_steps = 0.0;  // Linf distance between the two
    bool pass = false;
    bool entropy_discriminates = false;     // H argmin off the diagonal
};

/// The argmin-coincidence check on a BIODMC grid: argmin C and argmin F_mix
/// both on the diagonal v = 1 - u (to one grid step) and close to each other
/// (two grid steps); the entropy argmin must not share the diagonal property.
inline Eq2Check check_biodmc_eq2(int nu = 101, int nv = 101, double margin = 0.02,
                                 int workers = 0) {
    ChannelFamily fam;
    fam.kind = FamilyKind::Biodmc;
    const LandscapeGrid grid = sweep(fam, nu, nv, margin, workers);
    const ArgminReport ac = argmin_report(grid, "C");
    const ArgminReport af = argmin_report(grid, "F_mix");
    const ArgminReport ah = argmin_report(grid, "H");

    Eq2Check chk;
    chk.grid_step = grid.step_u();
    chk.argmin_C_diag_steps = ac.best.diag_distance / chk.grid_step;
    chk.argmin_F_diag_steps = af.best.diag_distance / chk.grid_step;
    chk.argmin_H_diag_steps = ah.best.diag_distance / chk.grid_step;
    chk.argmin_CF_separation_steps =
        std::max(std::abs(ac.best.u - af.best.u), std::abs(ac.best.v - af.best.v)) /
        chk.grid_step;
    chk.entropy_discriminates = chk.argmin_H_diag_steps > 1.0;
    chk.pass = chk.argmin_C_diag_steps <= 1.0 + 1e-9 &&
               chk.argmin_F_diag_steps <= 1.0 + 1e-9 &&
               chk.argmin_CF_separation_steps <= 2.0 + 1e-9 &&
               chk.entropy_discriminates;
    return chk;
}

struct CornerGeometryCheck {
    CornerBasinReport basin;
    bool masks_in_expected_regions = false;  // lower-left / upper-left / upper-right
    bool pass = false;
};

/// Zero-support geometry of the constrained 3x3 family with the default
/// constants: three disjoint masks in the expected corners, an F plateau near 0
/// inside them, and most local F minima in the inter-mask band.
inline CornerGeometryCheck check_constrained3_geometry(int nu = 101, int nv = 101,
                                                double margin = 0.02, int workers = 0,
                                                double support_eps = 1e-6,
                                                double min_fraction = 0.7) {
    ChannelFamily fam;
    fam.kind = FamilyKind::Constrained3;
    const LandscapeGrid grid = sweep(fam, nu, nv, margin, workers);
    CornerGeometryCheck chk;
    chk.basin = corner_basin_diagnostics(grid, support_eps);
    const auto& cent = chk.basin.mask_centroids;
    const auto& sz = chk.basin.mask_sizes;
    chk.masks_in_expected_regions =
        sz.size() == 3 && sz[0] > 0 && sz[1] > 0 && sz[2] > 0 &&
        cent[0].first < 0.5 && cent[0].second < 0.5 &&   // p1 = 0: lower left
        cent[1].first < 0.5 && cent[1].second > 0.5 &&   // p2 = 0: upper left
        cent[2].first > 0.5 && cent[2].second > 0.5;     // p3 = 0: upper right
    chk.pass = chk.masks_in_expected_regions && chk.basin.masks_disjoint &&
               chk.basin.max_F_in_masks >= -1e-3 &&
               chk.basin.fraction_in_band >= min_fraction;
    return chk;
}

inline std::vector<PropertyResult> verify_landscape(std::uint64_t seed,
                                                    bool heavy = true) {
    using verify_detail::make;
    std::vector<PropertyResult> out;
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.02, 0.98);

    {   // smoke sweep: complete and valid
        ChannelFamily fam;
        fam.kind = FamilyKind::Biodmc;
        const LandscapeGrid g = sweep(fam, 11, 11, 0.05);
        int bad = 0;
        for (const auto& c : g.cells)
            if (!c.ok()) ++bad;
        out.push_back(make("landscape/biodmc-smoke-sweep",
                           static_cast<int>(g.cells.size()), bad, 0,
                           "statistic is failed-cell count"));
    }
    {   // every family yields a valid channel at random interior points
        int bad = 0;
        const int N = 10000;
        for (int i = 0; i < N; ++i) {
            const double u = unif(rng), v = unif(rng);
            for (FamilyKind kind :
                 {FamilyKind::Biodmc, FamilyKind::Constrained3, FamilyKind::Convex3}) {
                ChannelFamily fam;
                fam.kind = kind;
                try {
                    fam.evaluate(u, v);
                } catch (const Error&) { ++bad; }
            }
        }
        out.push_back(make("landscape/family-validity", 3 * N, bad, 0));
    }
    {   // convex coefficients sum to 1
        double worst = 0.0;
        const Convex3Params prm;
        for (int i = 0; i < 100; ++i) {
            const double u = unif(rng), v = unif(rng);
            const double c0 = 1.0 - prm.a * (u + v - 1.0);
            worst = std::max(worst, std::abs(c0 + prm.a * (u - 0.5) +
                                             prm.a * (v - 0.5) - 1.0));
        }
        out.push_back(make("landscape/convex-coefficient-sum", 100, worst, 1e-15));
    }
    {   // worker count does not change the CSV byte stream
        ChannelFamily fam;
        fam.kind = FamilyKind::Biodmc;
        const std::string a = grid_to_csv(sweep(fam, 21, 21, 0.02, 1));
        const std::string b = grid_to_csv(sweep(fam, 21, 21, 0.02, 4));
        out.push_back(make("landscape/sweep-determinism", 21 * 21, a == b ? 0 : 1, 0));
    }
    {   // C and t_mix - 1 vanish on the BIODMC diagonal
        double worst_c = 0.0, worst_t = 0.0;
        const int N = 41;
        for (int i = 0; i < N; ++i) {
            const double u = 0.02 + 0.96 * i / (N - 1);
            const ChannelMatrix W = biodmc(u, 1.0 - u);
            worst_c = std::max(worst_c, blahut_arimoto(W, 1e-12).C);
            worst_t = std::max(worst_t, std::abs(spectral_gap(W).t_mix - 1.0));
        }
        out.push_back(make("landscape/diagonal-zero-capacity", N, worst_c, 1e-8));
        out.push_back(make("landscape/diagonal-unit-mixing-time", N, worst_t, 1e-8));
    }
    if (heavy) {
        {   // argmin coincidence on the full-resolution BIODMC grid
            const Eq2Check chk = check_biodmc_eq2();
            PropertyResult r;
            r.name = "landscape/biodmc-argmin-coincidence";
            r.samples = 101 * 101;
            r.worst = std::max(chk.argmin_C_diag_steps, chk.argmin_F_diag_steps);
            r.tol = 1.0;
            r.pass = chk.pass;
            r.note = "H argmin diag distance (steps): " +
                     fmt17(chk.argmin_H_diag_steps);
            out.push_back(r);
        }
        {   // constrained3 zero-support geometry
            const CornerGeometryCheck chk = check_constrained3_geometry();
            PropertyResult r;
            r.name = "landscape/constrained3-corner-geometry";
            r.samples = 101 * 101;
            r.worst = 1.0 - chk.basin.fraction_in_band;
            r.tol = 0.3;
            r.pass = chk.pass;
            r.note = "local F minima in band: " + fmt17(chk.basin.fraction_in_band);
            out.push_back(r);
        }
        {   // psi collapses near argmin C for the convex family
            ChannelFamily fam;
            fam.kind = FamilyKind::Convex3;
            const LandscapeGrid g = sweep(fam, 51, 51, 0.02);
            const PsiNeighborhoodReport rep = near_argmin_psi_check(g, fam);
            PropertyResult r;
            r.name = "landscape/convex3-psi-near-argmin";
            r.samples = rep.neighborhood_cells;
            r.worst = rep.ratio;
            r.tol = rep.ratio_threshold;
            r.pass = rep.ratio <= rep.ratio_threshold;
            r.note = "max |dlogZ| where premise holds: " +
                     fmt17(rep.max_abs_dlogZ_premise);
            out.push_back(r);
        }
    }
    return out;
}

inline std::vector<PropertyResult> verify_suite(const std::string& suite,
                                                std::uint64_t seed) {
    if (suite == "core") return verify_core(seed);
    if (suite == "capacity") return verify_capacity(seed);
    if (suite == "mixing") return verify_mixing(seed);
    if (suite == "thermo") return verify_thermo(seed);
    if (suite == "landscape") return verify_landscape(seed);
    if (suite == "all") {
        std::vector<PropertyResult> out;
        for (const char* s : {"core", "capacity", "mixing", "thermo", "landscape"}) {
            auto part = verify_suite(s, seed);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    fail(ErrorCode::InvalidParams, "unknown suite: " + suite);
}

} // namespace chanthermo
