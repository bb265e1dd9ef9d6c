#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>
#include <vector>

#include "chanthermo/capacity.hpp"
#include "chanthermo/sweep.hpp"

// Diagnostics over a swept landscape grid: argmin extraction, zero-support
// masks and basin/corner geometry, and near-argmin psi behavior.

namespace chanthermo {

struct GridMinimizer {
    int iu = 0, iv = 0;
    double u = 0.0, v = 0.0;
    double value = 0.0;
    double diag_distance = 0.0;  // Linf distance to v = 1 - u (biodmc grids)
};

struct ArgminReport {
    std::string quantity;
    GridMinimizer best;
    std::vector<GridMinimizer> ties;  // all cells within tie_tol of the minimum
    int failed_cells = 0;
};

inline double grid_quantity(const GridCell& c, const std::string& name) {
    if (name == "C") return c.C;
    if (name == "F_mix") return c.F_mix;
    if (name == "t_mix") return c.t_mix;
    if (name == "H") return c.H;
    if (name == "beta_inv_mix") return c.beta_inv_mix;
    fail(ErrorCode::InvalidParams, "unknown grid quantity: " + name);
}

inline ArgminReport argmin_report(const LandscapeGrid& grid, const std::string& quantity,
                                  double tie_tol = 0.0) {
    ArgminReport rep;
    rep.quantity = quantity;
    double best = std::numeric_limits<double>::infinity();
    int best_iu = -1, best_iv = -1;
    for (int iu = 0; iu < grid.n_u; ++iu)
        for (int iv = 0; iv < grid.n_v; ++iv) {
            const GridCell& c = grid.at(iu, iv);
            if (!c.ok()) { ++rep.failed_cells; continue; }
            const double val = grid_quantity(c, quantity);
            if (val < best) { best = val; best_iu = iu; best_iv = iv; }
        }
    if (best_iu < 0) fail(ErrorCode::AllCellsFailed, "argmin_report: no valid cells");
    auto make = [&](int iu, int iv) {
        const GridCell& c = grid.at(iu, iv);
        GridMinimizer m;
        m.iu = iu; m.iv = iv; m.u = c.u; m.v = c.v;
        m.value = grid_quantity(c, quantity);
        // Linf distance from (u,v) to the line v = 1 - u
        m.diag_distance = std::abs(c.u + c.v - 1.0) / 2.0;
        return m;
    };
    rep.best = make(best_iu, best_iv);
    for (int iu = 0; iu < grid.n_u; ++iu)
        for (int iv = 0; iv < grid.n_v; ++iv) {
            const GridCell& c = grid.at(iu, iv);
            if (!c.ok()) continue;
            if (grid_quantity(c, quantity) <= best + tie_tol)
                rep.ties.push_back(make(iu, iv));
        }
    return rep;
}

struct CornerBasinReport {
    double support_eps = 0.0;
    int band_halfwidth = 0;                 // cells; equidistance tolerance
    std::vector<int> mask_sizes;            // |M_j| per symbol
    std::vector<std::pair<double, double>> mask_centroids;  // (u, v) per nonempty mask
    bool masks_disjoint = true;
    double max_F_in_masks = -std::numeric_limits<double>::infinity();
    int band_size = 0;
    int local_minima = 0;
    int local_minima_in_band = 0;
    double fraction_in_band = 0.0;
    bool any_mask = false;
};

namespace detail {

/// Multi-source Chebyshev distance transform (8-neighbor BFS) from mask cells.
inline std::vector<int> mask_distance(const LandscapeGrid& grid,
                                      const std::vector<char>& mask) {
    const int nu = grid.n_u, nv = grid.n_v;
    std::vector<int> dist(static_cast<std::size_t>(nu) * nv, -1);
    std::deque<int> q;
    for (int idx = 0; idx < nu * nv; ++idx)
        if (mask[idx]) { dist[idx] = 0; q.push_back(idx); }
    while (!q.empty()) {
        const int idx = q.front(); q.pop_front();
        const int iu = idx / nv, iv = idx % nv;
        for (int du = -1; du <= 1; ++du)
            for (int dv = -1; dv <= 1; ++dv) {
                if (du == 0 && dv == 0) continue;
                const int ju = iu + du, jv = iv + dv;
                if (ju < 0 || ju >= nu || jv < 0 || jv >= nv) continue;
                const int jdx = ju * nv + jv;
                if (dist[jdx] < 0) { dist[jdx] = dist[idx] + 1; q.push_back(jdx); }
            }
    }
    return dist;
}

} // namespace detail

/// Zero-support masks M_j = {p_star_j < support_eps}, the equidistance band
/// between distinct masks, and the fraction of grid-local F_mix minima falling
/// inside that band.
inline CornerBasinReport corner_basin_diagnostics(const LandscapeGrid& grid,
                                                  double support_eps = 1e-6,
                                                  int band_halfwidth = 6) {
    const int nu = grid.n_u, nv = grid.n_v, n = grid.alphabet;
    for (const auto& c : grid.cells)
        if (c.ok() && c.p_star.size() != n)
            fail(ErrorCode::MissingPStar, "grid cell lacks p_star");

    CornerBasinReport rep;
    rep.support_eps = support_eps;
    rep.band_halfwidth = band_halfwidth;

    std::vector<std::vector<char>> masks(n,
        std::vector<char>(static_cast<std::size_t>(nu) * nv, 0));
    rep.mask_sizes.assign(n, 0);
    std::vector<double> cu(n, 0.0), cv(n, 0.0);
    for (int idx = 0; idx < nu * nv; ++idx) {
        const GridCell& c = grid.cells[idx];
        if (!c.ok()) continue;
        int hits = 0;
        for (int j = 0; j < n; ++j)
            if (c.p_star(j) < support_eps) {
                masks[j][idx] = 1;
                ++rep.mask_sizes[j];
                cu[j] += c.u; cv[j] += c.v;
                ++hits;
            }
        if (hits > 1) rep.masks_disjoint = false;
        if (hits > 0) rep.max_F_in_masks = std::max(rep.max_F_in_masks, c.F_mix);
    }
    for (int j = 0; j < n; ++j)
        if (rep.mask_sizes[j] > 0) {
            rep.any_mask = true;
            rep.mask_centroids.emplace_back(cu[j] / rep.mask_sizes[j],
                                            cv[j] / rep.mask_sizes[j]);
        } else {
            rep.mask_centroids.emplace_back(std::nan(""), std::nan(""));
        }
    if (!rep.any_mask) return rep;  // full support everywhere: no corners

    std::vector<std::vector<int>> dists;
    for (int j = 0; j < n; ++j)
        if (rep.mask_sizes[j] > 0) dists.push_back(detail::mask_distance(grid, masks[j]));

    // band: cells roughly equidistant from their two nearest distinct masks
    std::vector<char> band(static_cast<std::size_t>(nu) * nv, 0);
    if (dists.size() >= 2) {
        for (int idx = 0; idx < nu * nv; ++idx) {
            std::vector<int> d;
            for (const auto& dm : dists) d.push_back(dm[idx]);
            std::sort(d.begin(), d.end());
            if (d[0] > 0 && d[1] - d[0] <= band_halfwidth) {
                band[idx] = 1;
                ++rep.band_size;
            }
        }
    }

    // strict 4-neighbor local minima of F_mix
    for (int iu = 1; iu + 1 < nu; ++iu)
        for (int iv = 1; iv + 1 < nv; ++iv) {
            const GridCell& c = grid.at(iu, iv);
            if (!c.ok()) continue;
            const GridCell& l = grid.at(iu - 1, iv);
            const GridCell& r = grid.at(iu + 1, iv);
            const GridCell& d = grid.at(iu, iv - 1);
            const GridCell& u = grid.at(iu, iv + 1);
            if (!l.ok() || !r.ok() || !d.ok() || !u.ok()) continue;
            if (c.F_mix < l.F_mix && c.F_mix < r.F_mix && c.F_mix < d.F_mix &&
                c.F_mix < u.F_mix) {
                ++rep.local_minima;
                if (band[iu * nv + iv]) ++rep.local_minima_in_band;
            }
        }
    rep.fraction_in_band =
        rep.local_minima > 0
            ? static_cast<double>(rep.local_minima_in_band) / rep.local_minima
            : 0.0;
    return rep;
}

struct PsiNeighborhoodReport {
    int argmin_iu = 0, argmin_iv = 0;
    double argmin_u = 0.0, argmin_v = 0.0;
    int radius = 0;
    double neighborhood_max_abs_psi = 0.0;
    double global_max_abs_psi = 0.0;
    double ratio = 0.0;                       // neighborhood / global
    double ratio_threshold = 0.1;
    int neighborhood_cells = 0;
    int skipped_singular = 0;
    // conditional claim: where sum_l M_jl/p_l matches across rows j, k,
    // d(log Z)/dW_jk should be near zero (finite-difference probe)
    int premise_pairs = 0;
    double max_abs_dlogZ_premise = 0.0;
};

namespace detail {

inline double fd_logZ(const ChannelMatrix& W, int j, int k, double h, double ba_tol) {
    auto logZ_of = [&](double s) {
        Eigen::MatrixXd m = W.entries();
        m(j, k) += s;
        m(j, j) -= s;
        const CapacityResult cap = blahut_arimoto(ChannelMatrix::validated(m), ba_tol);
        double acc = 0.0;
        for (Eigen::Index i = 0; i < cap.p_star.size(); ++i) {
            const double pi = std::max(cap.p_star(i), 1e-300);
            acc += std::log(pi);
        }
        return -acc / cap.p_star.size();
    };
    return (logZ_of(+h) - logZ_of(-h)) / (2.0 * h);
}

} // namespace detail

/// Compares max |psi^(jk)| over a neighborhood of the grid argmin of C against
/// the grid-global max, and probes the conditional d(log Z)/dW_jk claim where
/// its premise holds.
inline PsiNeighborhoodReport near_argmin_psi_check(const LandscapeGrid& grid,
                                                   const ChannelFamily& family,
                                                   int radius = 3,
                                                   double ratio_threshold = 0.1,
                                                   double premise_rel_tol = 0.05) {
    const ArgminReport amin = argmin_report(grid, "C");
    PsiNeighborhoodReport rep;
    rep.argmin_iu = amin.best.iu;
    rep.argmin_iv = amin.best.iv;
    rep.argmin_u = amin.best.u;
    rep.argmin_v = amin.best.v;
    rep.radius = radius;
    rep.ratio_threshold = ratio_threshold;

    auto max_abs_psi = [](const Eigen::MatrixXd& psi) {
        double m = 0.0;
        for (Eigen::Index j = 0; j < psi.rows(); ++j)
            for (Eigen::Index k = 0; k < psi.cols(); ++k)
                if (j != k) m = std::max(m, std::abs(psi(j, k)));
        return m;
    };

    for (int iu = 0; iu < grid.n_u; ++iu)
        for (int iv = 0; iv < grid.n_v; ++iv) {
            const GridCell& c = grid.at(iu, iv);
            if (!c.ok()) continue;
            const bool near = std::max(std::abs(iu - rep.argmin_iu),
                                       std::abs(iv - rep.argmin_iv)) <= radius;
            try {
                const ChannelMatrix W = family.evaluate(c.u, c.v);
                const Eigen::MatrixXd psi = psi_matrix(W);
                const double m = max_abs_psi(psi);
                rep.global_max_abs_psi = std::max(rep.global_max_abs_psi, m);
                if (near) {
                    rep.neighborhood_max_abs_psi =
                        std::max(rep.neighborhood_max_abs_psi, m);
                    ++rep.neighborhood_cells;
                }
            } catch (const Error&) {
                if (near) ++rep.skipped_singular;
            }
        }
    if (rep.neighborhood_cells == 0)
        fail(ErrorCode::SingularNeighborhood,
             "near_argmin_psi_check: no computable cell near the argmin");
    rep.ratio = rep.global_max_abs_psi > 0.0
                    ? rep.neighborhood_max_abs_psi / rep.global_max_abs_psi
                    : 0.0;

    // conditional d(log Z) claim, probed only on the neighborhood
    const int n = grid.alphabet;
    for (int iu = std::max(0, rep.argmin_iu - radius);
         iu <= std::min(grid.n_u - 1, rep.argmin_iu + radius); ++iu)
        for (int iv = std::max(0, rep.argmin_iv - radius);
             iv <= std::min(grid.n_v - 1, rep.argmin_iv + radius); ++iv) {
            const GridCell& c = grid.at(iu, iv);
            if (!c.ok() || c.degenerate) continue;
            try {
                const ChannelMatrix W = family.evaluate(c.u, c.v);
                const Eigen::MatrixXd M = chanthermo::detail::channel_inverse(W);
                Eigen::VectorXd row_sums(n);  // sum_l M_jl / p_l
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int l = 0; l < n; ++l) s += M(j, l) / c.p_star(l);
                    row_sums(j) = s;
                }
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        if (j == k) continue;
                        const double denom =
                            std::max(std::abs(row_sums(j)), std::abs(row_sums(k)));
                        if (denom <= 0.0) continue;
                        if (std::abs(row_sums(j) - row_sums(k)) / denom >= premise_rel_tol)
                            continue;
                        const double h = 1e-5;
                        if (!(W(j, k) - h > 0.0 && W(j, k) + h < 1.0 &&
                              W(j, j) - h > 0.0 && W(j, j) + h < 1.0))
                            continue;
                        ++rep.premise_pairs;
                        rep.max_abs_dlogZ_premise =
                            std::max(rep.max_abs_dlogZ_premise,
                                     std::abs(detail::fd_logZ(W, j, k, h, 1e-10)));
                    }
            } catch (const Error&) {
                continue;
            }
        }
    return rep;
}

} // namespace chanthermo
