#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chanthermo/capacity.hpp"
#include "chanthermo/families.hpp"
#include "chanthermo/io.hpp"
#include "chanthermo/mixing.hpp"
#include "chanthermo/reports.hpp"
#include "chanthermo/sweep.hpp"
#include "chanthermo/thermo.hpp"
#include "chanthermo/verify.hpp"

namespace ct = chanthermo;
using nlohmann::json;

namespace {

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) ct::fail(ct::ErrorCode::InvalidInput, "cannot write: " + out_path);
        out << doc.dump(2) << "\n";
    }
}

int resolve_workers(int cli_workers) {
    if (const char* env = std::getenv("CHANNEL_THERMO_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return cli_workers;
}

ct::ChannelFamily load_family(const std::string& name, const std::string& params_path) {
    ct::ChannelFamily fam;
    fam.kind = ct::family_from_name(name);
    if (params_path.empty()) return fam;
    json prm;
    try {
        prm = json::parse(ct::read_file(params_path));
    } catch (const json::exception& e) {
        ct::fail(ct::ErrorCode::InvalidParams,
                 std::string("params JSON parse error: ") + e.what());
    }
    try {
        if (fam.kind == ct::FamilyKind::Constrained3) {
            auto& c = fam.constrained;
            if (prm.contains("W11")) c.W11 = prm["W11"].get<double>();
            if (prm.contains("W22")) c.W22 = prm["W22"].get<double>();
            if (prm.contains("W31")) c.W31 = prm["W31"].get<double>();
            if (prm.contains("W32")) c.W32 = prm["W32"].get<double>();
            if (prm.contains("W33")) c.W33 = prm["W33"].get<double>();
        } else if (fam.kind == ct::FamilyKind::Convex3) {
            auto& c = fam.convex;
            if (prm.contains("a")) c.a = prm["a"].get<double>();
            auto read3x3 = [](const json& arr, Eigen::Matrix3d& m) {
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) m(j, k) = arr[j][k].get<double>();
            };
            if (prm.contains("Wu")) read3x3(prm["Wu"], c.Wu);
            if (prm.contains("Wv")) read3x3(prm["Wv"], c.Wv);
        }
    } catch (const json::exception& e) {
        ct::fail(ct::ErrorCode::InvalidParams,
                 std::string("malformed params file: ") + e.what());
    }
    return fam;
}

json capacity_json(const ct::CapacityResult& r, bool bits) {
    const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
    json doc;
    doc["C"] = ct::json_number(r.C * scale);
    doc["units"] = bits ? "bits" : "nats";
    doc["p_star"] = ct::vector_to_json(r.p_star);
    doc["method"] = ct::method_name(r.method);
    doc["iterations"] = r.iterations;
    doc["gap"] = ct::json_number(r.gap * scale);
    doc["d_positive"] = r.d_positive;
    doc["converged"] = r.converged;
    return doc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Capacity, mixing time, and effective thermodynamics of "
                 "discrete memoryless channels"};
    app.require_subcommand(1);

    // capacity
    std::string cap_channel, cap_method = "auto", cap_out;
    double cap_tol = 1e-10;
    bool cap_bits = false;
    auto* cap = app.add_subcommand("capacity", "Channel capacity of a single channel");
    cap->add_option("--channel", cap_channel, "channel matrix file (.json or .csv)")
        ->required();
    cap->add_option("--method", cap_method, "ba|muroga|auto")
        ->check(CLI::IsMember({"ba", "muroga", "auto"}));
    cap->add_option("--tol", cap_tol, "Blahut-Arimoto bound gap tolerance (nats)");
    cap->add_flag("--bits", cap_bits, "report in bits instead of nats");
    cap->add_option("--out", cap_out, "output JSON path (default stdout)");

    // mixing
    std::string mix_channel, mix_out;
    auto* mix = app.add_subcommand("mixing", "L2 mixing time of a channel");
    mix->add_option("--channel", mix_channel)->required();
    mix->add_option("--out", mix_out);

    // thermo
    std::string th_channel, th_out;
    double th_support_eps = 1e-6, th_tol = 1e-10;
    auto* th = app.add_subcommand("thermo",
                                  "Effective thermodynamics of a channel "
                                  "(capacity-achieving p, t_mix timescale)");
    th->add_option("--channel", th_channel)->required();
    th->add_option("--support-eps", th_support_eps, "zero-support threshold on p_star");
    th->add_option("--tol", th_tol, "Blahut-Arimoto tolerance");
    th->add_option("--out", th_out);

    // thermo-state
    std::string ts_p, ts_out;
    double ts_tinf = 1.0;
    auto* ts = app.add_subcommand("thermo-state",
                                  "Effective state of a distribution and timescale");
    ts->add_option("--p", ts_p, "distribution JSON file")->required();
    ts->add_option("--t-inf", ts_tinf, "timescale")->required();
    ts->add_option("--out", ts_out);

    // sweep
    std::string sw_family, sw_params, sw_out = "grid.csv";
    int sw_nu = 101, sw_nv = 101, sw_workers = 0;
    double sw_margin = 0.02, sw_ba_tol = 1e-10, sw_support_eps = 1e-6;
    auto* sw = app.add_subcommand("sweep", "Grid sweep of a channel family");
    sw->add_option("--family", sw_family, "biodmc|constrained3|convex3")->required();
    sw->add_option("--params", sw_params, "family parameter JSON file");
    sw->add_option("--nu", sw_nu);
    sw->add_option("--nv", sw_nv);
    sw->add_option("--margin", sw_margin, "open-boundary inset");
    sw->add_option("--workers", sw_workers, "worker threads (0 = all cores)");
    sw->add_option("--ba-tol", sw_ba_tol);
    sw->add_option("--support-eps", sw_support_eps);
    sw->add_option("--out", sw_out, "output CSV path");

    // report
    std::string rp_grid, rp_check, rp_params, rp_out;
    double rp_tie_tol = 0.0, rp_support_eps = 1e-6;
    int rp_radius = 3;
    auto* rp = app.add_subcommand("report", "Diagnostics over a swept grid CSV");
    rp->add_option("--grid", rp_grid, "grid CSV from `sweep`")->required();
    rp->add_option("--check", rp_check, "eq2|corners|psi")
        ->required()
        ->check(CLI::IsMember({"eq2", "corners", "psi"}));
    rp->add_option("--params", rp_params, "family parameter JSON (psi check)");
    rp->add_option("--tie-tol", rp_tie_tol);
    rp->add_option("--support-eps", rp_support_eps);
    rp->add_option("--radius", rp_radius, "psi neighborhood radius in cells");
    rp->add_option("--out", rp_out);

    // verify
    std::string vf_suite = "all", vf_out;
    std::uint64_t vf_seed = 0;
    auto* vf = app.add_subcommand("verify", "Run the property suites");
    vf->add_option("--suite", vf_suite, "core|capacity|mixing|thermo|landscape|all")
        ->check(CLI::IsMember({"core", "capacity", "mixing", "thermo", "landscape",
                               "all"}));
    vf->add_option("--seed", vf_seed);
    vf->add_option("--out", vf_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cap->parsed()) {
            const ct::ChannelMatrix W = ct::load_channel(cap_channel);
            ct::CapacityResult res;
            if (cap_method == "ba") {
                res = ct::blahut_arimoto(W, cap_tol);
            } else if (cap_method == "muroga") {
                res = ct::muroga_capacity(W);
                if (!res.d_positive)
                    ct::fail(ct::ErrorCode::NotApplicable,
                             "Muroga formula not applicable (d has a nonpositive "
                             "component); use --method ba");
            } else {
                try {
                    res = ct::muroga_capacity(W);
                } catch (const ct::Error&) {
                    res.d_positive = false;
                }
                if (!res.d_positive) res = ct::blahut_arimoto(W, cap_tol);
            }
            emit(capacity_json(res, cap_bits), cap_out);
        } else if (mix->parsed()) {
            const ct::MixingResult res = ct::spectral_gap(ct::load_channel(mix_channel));
            json doc;
            doc["lambda_star"] = ct::json_number(res.lambda_star);
            doc["t_mix"] = ct::json_number(res.t_mix);
            doc["spectrum_U"] = ct::vector_to_json(res.spectrum_U);
            doc["invariant"] = ct::vector_to_json(res.invariant);
            emit(doc, mix_out);
        } else if (th->parsed()) {
            const ct::DmcThermo res =
                ct::dmc_thermo(ct::load_channel(th_channel), th_tol, th_support_eps);
            json doc;
            doc["C"] = ct::json_number(res.C);
            doc["p_star"] = ct::vector_to_json(res.p_star);
            doc["t_mix"] = ct::json_number(res.t_mix);
            doc["beta_mix"] = ct::json_number(res.beta_mix);
            doc["F_mix"] = ct::json_number(res.F_mix);
            doc["H"] = ct::json_number(res.H);
            doc["degenerate"] = res.degenerate;
            emit(doc, th_out);
        } else if (ts->parsed()) {
            const ct::ThermoState st =
                ct::effective_state(ct::load_distribution(ts_p), ts_tinf);
            json doc;
            doc["p"] = ct::vector_to_json(st.p);
            doc["t_inf"] = ct::json_number(st.t_inf);
            doc["gamma"] = ct::vector_to_json(st.gamma);
            doc["beta"] = ct::json_number(st.beta);
            doc["energies"] = ct::vector_to_json(st.energies);
            doc["logZ"] = ct::json_number(st.logZ);
            doc["F"] = ct::json_number(st.F);
            doc["H"] = ct::json_number(st.H);
            doc["U_internal"] = ct::json_number(st.U_internal);
            emit(doc, ts_out);
        } else if (sw->parsed()) {
            const ct::ChannelFamily fam = load_family(sw_family, sw_params);
            const ct::LandscapeGrid grid =
                ct::sweep(fam, sw_nu, sw_nv, sw_margin, resolve_workers(sw_workers),
                          sw_ba_tol, sw_support_eps);
            ct::save_grid_csv(grid, sw_out);
            int failed = 0;
            for (const auto& c : grid.cells)
                if (!c.ok()) ++failed;
            json doc;
            doc["cells"] = static_cast<int>(grid.cells.size());
            doc["failed_cells"] = failed;
            doc["out"] = sw_out;
            std::cout << doc.dump(2) << "\n";
        } else if (rp->parsed()) {
            const ct::LandscapeGrid grid = ct::load_grid_csv(rp_grid);
            json doc;
            if (rp_check == "eq2") {
                for (const char* q : {"C", "F_mix", "H"}) {
                    const ct::ArgminReport a = ct::argmin_report(grid, q, rp_tie_tol);
                    json entry;
                    entry["u"] = ct::json_number(a.best.u);
                    entry["v"] = ct::json_number(a.best.v);
                    entry["value"] = ct::json_number(a.best.value);
                    entry["diag_distance"] = ct::json_number(a.best.diag_distance);
                    entry["diag_distance_steps"] =
                        ct::json_number(a.best.diag_distance / grid.step_u());
                    entry["ties"] = static_cast<int>(a.ties.size());
                    doc["argmin"][q] = entry;
                }
                doc["grid_step"] = ct::json_number(grid.step_u());
            } else if (rp_check == "corners") {
                const ct::CornerBasinReport r =
                    ct::corner_basin_diagnostics(grid, rp_support_eps);
                doc["support_eps"] = r.support_eps;
                doc["band_halfwidth_cells"] = r.band_halfwidth;
                doc["mask_sizes"] = r.mask_sizes;
                json cents = json::array();
                for (const auto& [u, v] : r.mask_centroids)
                    cents.push_back({ct::json_number(u), ct::json_number(v)});
                doc["mask_centroids"] = cents;
                doc["masks_disjoint"] = r.masks_disjoint;
                doc["max_F_in_masks"] = ct::json_number(r.max_F_in_masks);
                doc["band_size"] = r.band_size;
                doc["local_F_minima"] = r.local_minima;
                doc["local_F_minima_in_band"] = r.local_minima_in_band;
                doc["fraction_in_band"] = ct::json_number(r.fraction_in_band);
                doc["any_mask"] = r.any_mask;
                if (!r.any_mask) doc["note"] = "full support everywhere: no corners";
            } else {  // psi
                const ct::ChannelFamily fam =
                    load_family(ct::family_name(grid.family), rp_params);
                const ct::PsiNeighborhoodReport r =
                    ct::near_argmin_psi_check(grid, fam, rp_radius);
                doc["argmin"] = {{"u", ct::json_number(r.argmin_u)},
                                 {"v", ct::json_number(r.argmin_v)}};
                doc["radius_cells"] = r.radius;
                doc["neighborhood_max_abs_psi"] =
                    ct::json_number(r.neighborhood_max_abs_psi);
                doc["global_max_abs_psi"] = ct::json_number(r.global_max_abs_psi);
                doc["ratio"] = ct::json_number(r.ratio);
                doc["ratio_threshold"] = r.ratio_threshold;
                doc["neighborhood_cells"] = r.neighborhood_cells;
                doc["skipped_singular"] = r.skipped_singular;
                doc["premise_pairs"] = r.premise_pairs;
                doc["max_abs_dlogZ_premise"] =
                    ct::json_number(r.max_abs_dlogZ_premise);
            }
            emit(doc, rp_out);
        } else if (vf->parsed()) {
            const auto results = ct::verify_suite(vf_suite, vf_seed);
            json doc;
            doc["suite"] = vf_suite;
            doc["seed"] = vf_seed;
            json arr = json::array();
            bool all_pass = true;
            for (const auto& r : results) {
                json e;
                e["name"] = r.name;
                e["samples"] = r.samples;
                e["worst"] = ct::json_number(r.worst);
                e["tol"] = r.tol;
                e["pass"] = r.pass;
                if (!r.note.empty()) e["note"] = r.note;
                arr.push_back(e);
                all_pass = all_pass && r.pass;
            }
            doc["results"] = arr;
            doc["pass"] = all_pass;
            emit(doc, vf_out);
            return all_pass ? 0 : 1;
        }
    } catch (const ct::Error& e) {
        json err;
        err["error"] = e.code_name();
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return ct::is_validation_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "Internal";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}
