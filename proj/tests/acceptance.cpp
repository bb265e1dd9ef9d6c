// Acceptance suite: end-to-end checks with pinned tolerances, one pass/fail
// line per criterion. Exit status is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "chanthermo/capacity.hpp"
#include "chanthermo/mixing.hpp"
#include "chanthermo/random.hpp"
#include "chanthermo/reports.hpp"
#include "chanthermo/sweep.hpp"
#include "chanthermo/thermo.hpp"
#include "chanthermo/verify.hpp"

using namespace chanthermo;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label,
               const std::function<std::pair<bool, std::string>()>& body) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = body();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%s; %.1fs)\n", pass ? "PASS" : "FAIL", number,
                label.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

ChannelMatrix bsc(double eps) {
    Eigen::MatrixXd w(2, 2);
    w << 1 - eps, eps, eps, 1 - eps;
    return ChannelMatrix::validated(w);
}

std::string f17(double x) { return fmt17(x); }

} // namespace

int main() {
    // 1. BSC capacity against the analytic formula, BA vs Muroga
    criterion(1, "BSC capacity correctness (BA vs analytic, Muroga vs BA)", [] {
        double worst_ba = 0.0, worst_mur = 0.0;
        for (const double eps : {0.05, 0.1, 0.2, 0.3}) {
            const double analytic =
                std::log(2.0) + eps * std::log(eps) + (1 - eps) * std::log(1 - eps);
            const CapacityResult ba = blahut_arimoto(bsc(eps), 1e-10);
            const CapacityResult mur = muroga_capacity(bsc(eps));
            worst_ba = std::max(worst_ba, std::abs(ba.C - analytic));
            worst_mur = std::max(worst_mur, std::abs(mur.C - ba.C));
        }
        return std::make_pair(worst_ba <= 1e-9 && worst_mur <= 1e-8,
                              "max |BA-analytic| = " + f17(worst_ba) +
                                  ", max |Muroga-BA| = " + f17(worst_mur));
    });

    // 2. C = 0 <-> t_mix = 1
    criterion(2, "zero capacity iff unit mixing time", [] {
        Rng rng(0);
        double worst_t = 0.0, worst_c = 0.0;
        for (int i = 0; i < 100; ++i) {
            const int n = (i % 3 == 0) ? 2 : (i % 3 == 1 ? 3 : 5);
            const ChannelMatrix W = random_product_law_channel(rng, n);
            worst_t = std::max(worst_t, std::abs(spectral_gap(W).t_mix - 1.0));
            worst_c = std::max(worst_c, blahut_arimoto(W, 1e-12).C);
        }
        double min_excess = std::numeric_limits<double>::infinity();
        int accepted = 0, attempts = 0;
        while (accepted < 100 && attempts < 2000) {
            ++attempts;
            const int n = (attempts % 3 == 0) ? 2 : (attempts % 3 == 1 ? 3 : 5);
            const ChannelMatrix W = random_channel(rng, n);
            if (blahut_arimoto(W, 1e-10).C <= 0.01) continue;
            ++accepted;
            min_excess = std::min(min_excess, spectral_gap(W).t_mix - 1.0);
        }
        const bool pass = worst_t <= 1e-9 && worst_c <= 1e-9 && accepted == 100 &&
                          min_excess > 1e-6;
        return std::make_pair(pass, "max |t_mix-1| = " + f17(worst_t) +
                                        ", max C = " + f17(worst_c) +
                                        ", min excess = " + f17(min_excess));
    });

    // 3. gradient theorem vs finite differences
    criterion(3, "capacity gradient matches central differences", [] {
        Rng rng(1);
        double worst = 0.0;
        int accepted = 0, attempts = 0;
        const double h = 1e-5;
        while (accepted < 50 && attempts < 2000) {
            ++attempts;
            const ChannelMatrix W = random_channel(rng, 3);
            CapacityGradient g;
            try {
                g = capacity_gradient(W);
            } catch (const Error&) { continue; }
            if (g.p.minCoeff() < 1e-3) continue;
            bool usable = true;
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
                    worst = std::max(worst, std::abs(fd - g.grad(j, k)) /
                                                std::max(std::abs(g.grad(j, k)), 1e-4));
                }
        }
        return std::make_pair(accepted == 50 && worst <= 1e-3,
                              std::to_string(accepted) +
                                  " channels, worst rel err = " + f17(worst));
    });

    // 4. argmin C = argmin F_mix on the BIODMC grid; entropy does not comply
    criterion(4, "BIODMC argmin coincidence on 101x101 grid", [] {
        const Eq2Check chk = check_biodmc_eq2(101, 101, 0.02);
        return std::make_pair(
            chk.pass, "diag steps: C = " + f17(chk.argmin_C_diag_steps) +
                          ", F = " + f17(chk.argmin_F_diag_steps) +
                          ", H = " + f17(chk.argmin_H_diag_steps) +
                          ", C-F separation = " + f17(chk.argmin_CF_separation_steps));
    });

    // 5. thermodynamic identities
    criterion(5, "Gibbs, Helmholtz, bijection, F <= 0 on 1000 random states", [] {
        Rng rng(2);
        std::uniform_real_distribution<double> tdist(0.1, 10.0);
        double worst = 0.0, worst_f = -1.0;
        for (int i = 0; i < 1000; ++i) {
            const int n = 2 + i % 4;
            const Distribution p = random_distribution(rng, n);
            const double t_inf = tdist(rng);
            const ThermoState st = effective_state(p, t_inf);
            const Eigen::VectorXd gibbs =
                (-st.beta * st.energies.array()).exp() / std::exp(st.logZ);
            worst = std::max(worst, (gibbs - p.weights()).cwiseAbs().maxCoeff());
            worst = std::max(worst,
                             std::abs(st.F - (st.U_internal - st.H / st.beta)));
            const auto [p2, t2] = inverse_state(st.energies, st.beta);
            worst = std::max(worst, (p2.weights() - p.weights()).cwiseAbs().maxCoeff());
            worst = std::max(worst, std::abs(t2 - t_inf));
            worst_f = std::max(worst_f, st.F);
        }
        return std::make_pair(worst <= 1e-10 && worst_f <= 0.0,
                              "worst residual = " + f17(worst) +
                                  ", max F = " + f17(worst_f));
    });

    // 6. Ford identity
    criterion(6, "I(X;Y) = -beta (F + dW) on 1000 random tuples", [] {
        Rng rng(3);
        std::uniform_real_distribution<double> bdist(0.1, 10.0), fdist(-3.0, 3.0);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const int n = 2 + i % 4;
            const ChannelMatrix W = random_channel(rng, n);
            const Distribution p = random_distribution(rng, n);
            const double beta = bdist(rng), F = fdist(rng);
            const double dW = factoring_work(W, p, beta, F);
            worst = std::max(worst, std::abs(mutual_information(W, p) + beta * (F + dW)));
        }
        return std::make_pair(worst <= 1e-10, "worst residual = " + f17(worst));
    });

    // 7. constrained-family zero-support geometry
    criterion(7, "constrained3 corner masks and F basin band on 101x101 grid", [] {
        const CornerGeometryCheck chk = check_constrained3_geometry(101, 101, 0.02);
        std::string detail = "masks = [" + std::to_string(chk.basin.mask_sizes[0]) +
                             ", " + std::to_string(chk.basin.mask_sizes[1]) + ", " +
                             std::to_string(chk.basin.mask_sizes[2]) +
                             "], disjoint = " + (chk.basin.masks_disjoint ? "yes" : "no") +
                             ", max F in masks = " + f17(chk.basin.max_F_in_masks) +
                             ", minima in band = " + f17(chk.basin.fraction_in_band) +
                             " (band halfwidth " +
                             std::to_string(chk.basin.band_halfwidth) + " cells)";
        return std::make_pair(chk.pass, detail);
    });

    // 8. good-channel second-order expansion
    criterion(8, "good-channel residual scales as O(eps^2)", [] {
        Rng rng(4);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int i = 0; i < 20; ++i) {
            const int n = 2 + i % 3;
            const Eigen::MatrixXd Q = random_zero_row_sum(rng, n);
            const double r1 = good_channel_expansion_check(Q, 1e-3);
            const double r2 = good_channel_expansion_check(Q, 5e-4);
            const double ratio = r1 / r2;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        return std::make_pair(lo >= 3.5 && hi <= 4.5,
                              "ratio range [" + f17(lo) + ", " + f17(hi) + "]");
    });

    // 9. reversibilization self-consistency
    criterion(9, "Dirichlet-variance identity and variational bound", [] {
        Rng rng(5);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double worst_id = 0.0;
        for (int i = 0; i < 500; ++i) {
            const int n = 2 + i % 4;
            const ChannelMatrix P = random_channel(rng, n);
            const Distribution p = invariant_distribution(P);
            const ReversibilizationParts parts = reversibilization(P, p);
            const Eigen::MatrixXd rev = parts.P_dagger * P.entries();
            Eigen::VectorXd f(n);
            for (int j = 0; j < n; ++j) f(j) = gauss(rng);
            const double e = dirichlet_form(rev, p.weights(), f);
            const Eigen::VectorXd pf = P.entries() * f;
            worst_id = std::max(
                worst_id,
                std::abs(-e - (variance(p.weights(), pf) - variance(p.weights(), f))));
        }
        double worst_bound = 0.0;
        for (int i = 0; i < 100; ++i) {
            const int n = 2 + i % 4;
            const ChannelMatrix P = random_channel(rng, n);
            worst_bound = std::max(worst_bound, spectral_gap(P).lambda_star -
                                                    variational_gap_samples(P, 1000, i));
        }
        return std::make_pair(worst_id <= 1e-10 && worst_bound <= 1e-9,
                              "identity residual = " + f17(worst_id) +
                                  ", gap excess = " + f17(worst_bound));
    });

    std::printf("%d/9 criteria passed\n", 9 - g_failures);
    return g_failures;
}
