// pbound: batch front-end for the Planckian transport-bound toolkit.
//   simulate  MD run from a config file -> trajectory + manifest
//   vacf      trajectory/VACF file -> G_v(t) + transport summary
//   bounds    parameter file -> evaluated bound set (JSON)
//   scan      fluid-data directory + registry -> audit tables + plot data
//   mbcheck   Monte-Carlo check of the classical <h m/p^2> average
//
// Exit codes: 0 success, 2 input/validation error, 3 runtime/numerical
// failure. Bound violations in data are results, not errors.

#include "pbound/bounds.hpp"
#include "pbound/errors.hpp"
#include "pbound/io.hpp"
#include "pbound/mdsim.hpp"
#include "pbound/msd.hpp"
#include "pbound/report.hpp"
#include "pbound/simulation.hpp"
#include "pbound/thermo.hpp"
#include "pbound/transport.hpp"
#include "pbound/units.hpp"
#include "pbound/vacf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pbound;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start).count();
    }
};

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

int cmd_simulate(const std::string& command, const std::string& config_path,
                 const std::string& out_path, const std::string& format,
                 std::string manifest_path) {
    Timer timer;
    const io::KvFile kv = io::parse_kv_file(config_path);
    const io::SimConfigFromFile loaded = io::sim_config_from_kv(kv);

    mdsim::Trajectory traj = mdsim::run(loaded.config);
    const auto traj_format = (format == "bin") ? io::TrajFormat::Binary : io::TrajFormat::Csv;
    io::write_trajectory(traj, out_path, traj_format);

    if (manifest_path.empty()) manifest_path = out_path + ".manifest.json";
    io::Manifest m;
    m.command = command;
    m.config_digest = io::file_digest(config_path);
    m.constants_version = constants_version;
    m.seed = loaded.config.seed;
    m.seed_defaulted = loaded.seed_defaulted;
    m.outputs = {out_path};
    m.duration_ms = timer.ms();
    io::write_manifest(m, manifest_path);
    std::printf("wrote %s (%d samples, %d particles)\n", out_path.c_str(),
                traj.n_samples(), traj.n_particles);
    return 0;
}

json value_with_error(const vacf::ValueWithError& v) {
    return json{{"value", v.value}, {"std_error", v.error}};
}

int cmd_vacf(const std::string& command, const std::string& in_path, double max_lag,
             double gk_cutoff, int n_groups, std::optional<double> msd_at,
             const std::string& out_vacf, const std::string& out_summary,
             std::string manifest_path) {
    Timer timer;
    const io::FileKind kind = io::sniff_file(in_path);
    if (kind == io::FileKind::Unknown)
        throw ValidationError(in_path + ": neither a trajectory nor a VACF file");

    vacf::Vacf curve;
    std::optional<mdsim::Trajectory> traj;
    if (kind == io::FileKind::Trajectory) {
        traj = io::read_trajectory(in_path);
        const double window = traj->times.back() - traj->times.front();
        if (max_lag <= 0.0) max_lag = 0.5 * window;
        if (max_lag > 0.5 * window)
            throw ValidationError("--max-lag exceeds half the production window; maximum " +
                                  std::to_string(0.5 * window));
        curve = vacf::estimate_vacf(*traj, max_lag, n_groups);
    } else {
        curve = io::read_vacf(in_path);
    }

    const vacf::TransportEstimate est = vacf::transport_estimate(curve, gk_cutoff);

    json summary;
    summary["input"] = in_path;
    summary["n_lags"] = curve.lags.size();
    summary["g0"] = curve.g0;
    summary["D"] = value_with_error(est.D);
    summary["D_plus"] = value_with_error(est.D_plus);
    summary["relative_difference"] = (est.D_plus.value - est.D.value) / est.D.value;
    summary["t_v"] = (est.t_v == vacf::kNoZeroCrossing) ? json("inf") : json(est.t_v);
    summary["slope_max"] = est.slope_max;
    summary["triangle_bound"] = value_with_error(est.triangle);
    summary["gk_cutoff"] = est.gk_cutoff;
    summary["plateau_converged"] = est.plateau_converged;

    if (msd_at) {
        if (traj && traj->has_positions()) {
            const double t_eval =
                (*msd_at > 0.0) ? *msd_at
                                : (est.t_v == vacf::kNoZeroCrossing ? curve.lags.back() / 2
                                                                    : est.t_v);
            summary["msd_D"] = value_with_error(vacf::msd_diffusion(*traj, t_eval, max_lag));
            summary["msd_eval_time"] = t_eval;
        } else {
            summary["msd_D"] = nullptr;
            summary["msd_note"] = traj ? "trajectory carries no positions"
                                       : "input is a bare VACF curve; no positions available";
        }
    }

    io::write_vacf(curve, out_vacf);
    std::ofstream out(out_summary);
    if (!out) throw ValidationError("cannot write " + out_summary);
    out << summary.dump(2) << "\n";

    if (manifest_path.empty()) manifest_path = out_summary + ".manifest.json";
    io::Manifest m;
    m.command = command;
    m.config_digest = io::file_digest(in_path);
    m.constants_version = constants_version;
    m.outputs = {out_vacf, out_summary};
    m.duration_ms = timer.ms();
    io::write_manifest(m, manifest_path);
    std::printf("D = %.6g +- %.2g, D+ = %.6g +- %.2g, t_v = %s\n", est.D.value, est.D.error,
                est.D_plus.value, est.D_plus.error,
                est.t_v == vacf::kNoZeroCrossing ? "inf" : std::to_string(est.t_v).c_str());
    return 0;
}

int cmd_bounds(const std::string& params_path, const std::string& out_path) {
    const io::KvFile kv = io::parse_kv_file(params_path);

    std::optional<double> mass;
    if (kv.has("m_kg")) mass = kv.get_double("m_kg");
    else if (kv.has("m_amu")) mass = kv.get_double("m_amu") * constants.amu;
    const std::optional<double> T =
        kv.has("T") ? std::optional<double>(kv.get_double("T")) : std::nullopt;
    const std::optional<double> n =
        kv.has("n") ? std::optional<double>(kv.get_double("n")) : std::nullopt;
    const int d = int(kv.get_long_or("d", 3));

    bounds::BoundSet set;
    if (mass) {
        set.d_bound_chaos = bounds::diffusion_bound_chaos(*mass);
        set.d_bound_chaos_alt = bounds::diffusion_bound_chaos_alt(*mass, d);
        set.nu_bound = bounds::kinematic_viscosity_bound(*mass);
    }
    if (T) {
        set.tau_planck = planckian_time(*T);
        set.lyapunov_max = bounds::lyapunov_bound(*T);
    }
    if (mass && T) set.lambda_T = thermal_de_broglie(*mass, *T);
    if (n) set.eta_bound = bounds::viscosity_bound(*n);
    if (kv.has("sigma_H")) set.t_min = bounds::t_min_bound(kv.get_double("sigma_H"));
    if (mass && T && kv.has("var_Vi") && kv.has("fourth_Vi"))
        set.d_bound_moment = bounds::diffusion_bound_moment(
            kv.get_double("var_Vi"), kv.get_double("fourth_Vi"), *mass, *T);
    if (mass && kv.has("mean_Ki") && kv.has("sigma_Vi"))
        set.d_plus_disorder = bounds::disorder_d_plus_bound(kv.get_double("mean_Ki"),
                                                            kv.get_double("sigma_Vi"), *mass, d);

    json out;
    out["constants_version"] = constants_version;
    int evaluated = 0;
    auto emit = [&](const char* key, const std::optional<double>& v, const char* reason) {
        if (v) {
            out[key] = {{"value", *v}};
            ++evaluated;
        } else {
            out[key] = {{"skipped", reason}};
        }
    };
    emit("d_bound_chaos", set.d_bound_chaos, "requires m");
    emit("d_bound_chaos_alt", set.d_bound_chaos_alt, "requires m");
    if (set.d_bound_chaos_alt)
        out["d_bound_chaos_alt"]["source"] = "observable-dependent variant, external";
    emit("nu_bound", set.nu_bound, "requires m");
    emit("tau_planck", set.tau_planck, "requires T");
    emit("lyapunov_max", set.lyapunov_max, "requires T");
    emit("lambda_T", set.lambda_T, "requires m and T");
    emit("eta_bound", set.eta_bound, "requires n");
    emit("t_min", set.t_min, "requires sigma_H");
    emit("d_bound_moment", set.d_bound_moment, "requires m, T, var_Vi, fourth_Vi");
    emit("d_plus_disorder", set.d_plus_disorder, "requires m, mean_Ki, sigma_Vi");

    if (evaluated == 0) throw ValidationError("no bound is evaluable from the supplied keys");

    const std::string text = out.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream f(out_path);
        if (!f) throw ValidationError("cannot write " + out_path);
        f << text;
        std::printf("wrote %s (%d bounds evaluated)\n", out_path.c_str(), evaluated);
    }
    return 0;
}

int cmd_scan(const std::string& command, std::string data_dir,
             const std::string& registry_path, const std::string& out_dir,
             std::string manifest_path) {
    Timer timer;
    if (const char* env = std::getenv("PBOUND_DATA_DIR"); env && data_dir.empty())
        data_dir = env;
    if (data_dir.empty()) throw ValidationError("no data directory given");

    const auto registry = thermo::load_registry(registry_path);

    std::vector<std::string> files;
    if (fs::is_directory(data_dir)) {
        for (const auto& entry : fs::directory_iterator(data_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".csv")
                files.push_back(entry.path().string());
        std::sort(files.begin(), files.end());
    } else {
        throw ValidationError("not a directory: " + data_dir);
    }

    std::vector<thermo::IsoDataset> datasets(files.size());
    std::vector<int> dropped(files.size(), 0);
    std::exception_ptr first_error;
    // per-file parsing fans out; merge order is the sorted file list
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < files.size(); ++i) {
        try {
            auto res = thermo::parse_fluid_table_file(files[i], registry);
            datasets[i] = std::move(res.dataset);
            dropped[i] = res.dropped_rows;
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    for (std::size_t i = 0; i < files.size(); ++i)
        if (dropped[i] > 0)
            std::fprintf(stderr, "note: %s: dropped %d rows without viscosity\n",
                         files[i].c_str(), dropped[i]);

    const thermo::BoundReport report = thermo::build_report(datasets, registry);
    for (const auto& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    const auto written = thermo::write_report(report, out_dir);

    if (manifest_path.empty()) manifest_path = (fs::path(out_dir) / "manifest.json").string();
    io::Manifest m;
    m.command = command;
    m.config_digest = io::file_digest(registry_path);
    m.constants_version = constants_version;
    m.outputs = written;
    m.duration_ms = timer.ms();
    io::write_manifest(m, manifest_path);
    std::printf("wrote %zu report files under %s\n", written.size(), out_dir.c_str());
    return 0;
}

int cmd_mbcheck(double m_amu, double T, long n_samples, long seed) {
    const auto r = bounds::mb_inverse_p2_check(m_amu * constants.amu, T,
                                               std::uint64_t(n_samples), std::uint64_t(seed));
    std::printf("estimate      %.8e\n", r.estimate);
    std::printf("std_error     %.3e\n", r.std_error);
    std::printf("expected      %.8e   (h / kB T)\n", r.expected);
    std::printf("z             %+.3f\n", r.z);
    std::printf("n_samples     %llu\n", static_cast<unsigned long long>(r.n_samples));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Planckian transport-bound toolkit"};
    app.require_subcommand(1);
    const std::string command = join_args(argc, argv);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run MD from a config file");
    std::string sim_config, sim_out = "trajectory.csv", sim_format = "csv", sim_manifest;
    sim->add_option("--config", sim_config, "key = value run configuration")->required();
    sim->add_option("--out", sim_out, "trajectory output path");
    sim->add_option("--format", sim_format, "csv or bin")
        ->check(CLI::IsMember({"csv", "bin"}));
    sim->add_option("--manifest", sim_manifest, "manifest path (default <out>.manifest.json)");

    // vacf
    auto* vac = app.add_subcommand("vacf", "velocity autocorrelation and transport summary");
    std::string vacf_in, vacf_out = "vacf.csv", vacf_summary = "transport.json", vacf_manifest;
    double vacf_max_lag = 0.0, vacf_gk_cutoff = 0.0;
    int vacf_groups = 8;
    double msd_at_value = 0.0;
    bool msd_flag = false;
    vac->add_option("--in", vacf_in, "trajectory or VACF interchange file")->required();
    vac->add_option("--max-lag", vacf_max_lag, "longest lag (default: half the window)");
    vac->add_option("--gk-cutoff", vacf_gk_cutoff,
                    "Green-Kubo cutoff (default: plateau detection)");
    vac->add_option("--groups", vacf_groups, "particle groups for error bars");
    vac->add_flag("--msd", msd_flag, "add the MSD cross-check (needs positions)");
    vac->add_option("--msd-at", msd_at_value, "MSD derivative evaluation time (default t_v)");
    vac->add_option("--out-vacf", vacf_out, "VACF curve output");
    vac->add_option("--out-summary", vacf_summary, "transport summary JSON output");
    vac->add_option("--manifest", vacf_manifest, "manifest path");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "evaluate every bound the inputs allow");
    std::string bounds_params, bounds_out = "-";
    bnd->add_option("--params", bounds_params, "key = value parameter file")->required();
    bnd->add_option("--out", bounds_out, "output JSON path ('-' for stdout)");

    // scan
    auto* scn = app.add_subcommand("scan", "audit fluid tables against the bounds");
    std::string scan_dir, scan_registry, scan_out = "report", scan_manifest;
    scn->add_option("--data", scan_dir, "directory of fluid CSV files "
                                        "(falls back to $PBOUND_DATA_DIR)");
    scn->add_option("--registry", scan_registry, "kinetic-diameter registry CSV")->required();
    scn->add_option("--out", scan_out, "report output directory");
    scn->add_option("--manifest", scan_manifest, "manifest path");

    // mbcheck
    auto* mbc = app.add_subcommand("mbcheck", "Monte-Carlo <h m/p^2> average");
    double mb_mass = 39.948, mb_T = 300.0;
    long mb_samples = 1000000, mb_seed = 0;
    mbc->add_option("--mass-amu", mb_mass, "particle mass in amu");
    mbc->add_option("--temperature", mb_T, "temperature in K");
    mbc->add_option("--samples", mb_samples, "sample count (>= 1e4)");
    mbc->add_option("--seed", mb_seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(command, sim_config, sim_out, sim_format, sim_manifest);
        if (vac->parsed())
            return cmd_vacf(command, vacf_in, vacf_max_lag, vacf_gk_cutoff, vacf_groups,
                            (msd_flag || msd_at_value > 0.0)
                                ? std::optional<double>(msd_at_value)
                                : std::nullopt,
                            vacf_out, vacf_summary, vacf_manifest);
        if (bnd->parsed()) return cmd_bounds(bounds_params, bounds_out);
        if (scn->parsed())
            return cmd_scan(command, scan_dir, scan_registry, scan_out, scan_manifest);
        if (mbc->parsed()) return cmd_mbcheck(mb_mass, mb_T, mb_samples, mb_seed);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "runtime failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "runtime failure: %s\n", e.what());
        return 3;
    }
    return 2;
}
