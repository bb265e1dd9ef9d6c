#pragma once

#include <atomic>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "chanthermo/families.hpp"
#include "chanthermo/io.hpp"
#include "chanthermo/thermo.hpp"

namespace chanthermo {

struct GridCell {
    double u = 0.0, v = 0.0;
    double C = 0.0;
    double t_mix = 0.0;
    double beta_inv_mix = 0.0;   // 0 in degenerate cells (beta -> inf limit)
    double F_mix = 0.0;
    double H = 0.0;
    Eigen::VectorXd p_star;
    bool degenerate = false;
    std::string error;           // empty = ok; otherwise error-code name

    bool ok() const { return error.empty(); }
};

struct LandscapeGrid {
    FamilyKind family = FamilyKind::Biodmc;
    int n_u = 0, n_v = 0;
    double margin = 0.0;
    int alphabet = 2;
    std::vector<GridCell> cells;  // row-major: index = iu * n_v + iv

    const GridCell& at(int iu, int iv) const { return cells[iu * n_v + iv]; }
    GridCell& at(int iu, int iv) { return cells[iu * n_v + iv]; }

    double u_of(int iu) const {
        return margin + (1.0 - 2.0 * margin) * iu / (n_u - 1);
    }
    double v_of(int iv) const {
        return margin + (1.0 - 2.0 * margin) * iv / (n_v - 1);
    }
    double step_u() const { return (1.0 - 2.0 * margin) / (n_u - 1); }
    double step_v() const { return (1.0 - 2.0 * margin) / (n_v - 1); }
};

/// Evaluates dmc_thermo over the grid. Per-cell failures are recorded, never
/// fatal. Cells are written into preallocated slots, so output is identical for
/// any worker count.
inline LandscapeGrid sweep(const ChannelFamily& family, int n_u, int n_v,
                           double margin = 0.02, int workers = 0,
                           double ba_tol = 1e-10, double support_eps = 1e-6) {
    if (n_u < 2 || n_v < 2)
        fail(ErrorCode::InvalidParams, "sweep: resolution must be >= 2");
    if (!(margin >= 0.0 && margin < 0.5))
        fail(ErrorCode::InvalidParams, "sweep: margin must lie in [0, 0.5)");
    LandscapeGrid grid;
    grid.family = family.kind;
    grid.n_u = n_u;
    grid.n_v = n_v;
    grid.margin = margin;
    grid.alphabet = family.alphabet_size();
    grid.cells.resize(static_cast<std::size_t>(n_u) * n_v);

    const int total = n_u * n_v;
    auto run_cell = [&](int idx) {
        const int iu = idx / n_v, iv = idx % n_v;
        GridCell& cell = grid.cells[idx];
        cell.u = grid.u_of(iu);
        cell.v = grid.v_of(iv);
        try {
            const ChannelMatrix W = family.evaluate(cell.u, cell.v);
            const DmcThermo t = dmc_thermo(W, ba_tol, support_eps);
            cell.C = t.C;
            cell.t_mix = t.t_mix;
            cell.beta_inv_mix = t.degenerate ? 0.0 : 1.0 / t.beta_mix;
            cell.F_mix = t.F_mix;
            cell.H = t.H;
            cell.p_star = t.p_star;
            cell.degenerate = t.degenerate;
        } catch (const Error& e) {
            cell.error = e.code_name();
            cell.p_star = Eigen::VectorXd::Zero(grid.alphabet);
        }
    };

    int nw = workers;
    if (nw <= 0) nw = static_cast<int>(std::thread::hardware_concurrency());
    if (nw <= 0) nw = 1;
    if (nw == 1) {
        for (int idx = 0; idx < total; ++idx) run_cell(idx);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (int t = 0; t < nw; ++t)
            pool.emplace_back([&] {
                for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1))
                    run_cell(idx);
            });
        for (auto& th : pool) th.join();
    }
    return grid;
}

inline std::string grid_to_csv(const LandscapeGrid& grid) {
    std::ostringstream out;
    out << "# family=" << family_name(grid.family) << " nu=" << grid.n_u
        << " nv=" << grid.n_v << " margin=" << fmt17(grid.margin)
        << " alphabet=" << grid.alphabet << "\n";
    out << "u,v,C,t_mix,beta_inv_mix,F_mix,H";
    for (int i = 1; i <= grid.alphabet; ++i) out << ",p" << i;
    out << ",degenerate,error\n";
    for (const auto& c : grid.cells) {
        out << fmt17(c.u) << ',' << fmt17(c.v) << ',' << fmt17(c.C) << ','
            << fmt17(c.t_mix) << ',' << fmt17(c.beta_inv_mix) << ','
            << fmt17(c.F_mix) << ',' << fmt17(c.H);
        for (int i = 0; i < grid.alphabet; ++i)
            out << ',' << (c.p_star.size() > i ? fmt17(c.p_star(i)) : "0");
        out << ',' << (c.degenerate ? 1 : 0) << ',' << c.error << "\n";
    }
    return out.str();
}

inline void save_grid_csv(const LandscapeGrid& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::InvalidInput, "cannot write file: " + path);
    out << grid_to_csv(grid);
}

inline LandscapeGrid load_grid_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line.rfind("# family=", 0) != 0)
        fail(ErrorCode::InvalidInput, "grid CSV missing metadata line");
    LandscapeGrid grid;
    {
        std::istringstream meta(line.substr(2));
        std::string tok;
        while (meta >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "family") grid.family = family_from_name(val);
            else if (key == "nu") grid.n_u = std::stoi(val);
            else if (key == "nv") grid.n_v = std::stoi(val);
            else if (key == "margin") grid.margin = std::stod(val);
            else if (key == "alphabet") grid.alphabet = std::stoi(val);
        }
    }
    if (!std::getline(in, line))
        fail(ErrorCode::InvalidInput, "grid CSV missing header");
    auto parse_num = [](const std::string& s) {
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        return std::stod(s);
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        // trailing empty error field is eaten by getline
        const std::size_t expect = 9 + static_cast<std::size_t>(grid.alphabet);
        if (f.size() == expect - 1) f.emplace_back();
        if (f.size() != expect)
            fail(ErrorCode::InvalidInput, "grid CSV row has wrong column count");
        GridCell c;
        c.u = parse_num(f[0]);
        c.v = parse_num(f[1]);
        c.C = parse_num(f[2]);
        c.t_mix = parse_num(f[3]);
        c.beta_inv_mix = parse_num(f[4]);
        c.F_mix = parse_num(f[5]);
        c.H = parse_num(f[6]);
        c.p_star.resize(grid.alphabet);
        for (int i = 0; i < grid.alphabet; ++i) c.p_star(i) = parse_num(f[7 + i]);
        c.degenerate = f[7 + grid.alphabet] == "1";
        c.error = f[8 + grid.alphabet];
        grid.cells.push_back(std::move(c));
    }
    if (static_cast<int>(grid.cells.size()) != grid.n_u * grid.n_v)
        fail(ErrorCode::InvalidInput, "grid CSV cell count does not match resolution");
    return grid;
}

} // namespace chanthermo
