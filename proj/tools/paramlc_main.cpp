// paramlc: steady states, semiclassical dynamics, phase diffusion and
// entanglement diagnostics of O(N)-symmetric parametrically driven
// Kerr-oscillator arrays.
//
// Subcommands: ness, entanglement, dynamics, torus, diffusion, vdp,
// oracle-check. Every run writes its outputs plus a manifest.json into
// --out; all numeric CSV columns carry 17 significant digits.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paramlc/exact_ness.hpp"
#include "paramlc/fockspace.hpp"
#include "paramlc/io.hpp"
#include "paramlc/liouville.hpp"
#include "paramlc/model.hpp"
#include "paramlc/semiclassics.hpp"
#include "paramlc/stochastics.hpp"
#include "paramlc/vdp.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace paramlc;

namespace {

json default_config() {
    json cfg;
    cfg["params"] = {{"n_modes", 2}, {"u", 0.1}, {"drive", 1.0}, {"kappa", 1.0}, {"h", 0.0}};
    cfg["sweep"] = nullptr;  // {"variable","min","max","count","scale"}
    cfg["numerics"] = {{"cutoff", 0},   {"tol", 1e-12}, {"dt", 0.0},     {"T", 40.0},
                       {"n_traj", 4000}, {"seed", 1234},  {"m_max", 64},   {"delta_u", 0.0},
                       {"record_stride", 10}};
    cfg["vdp"] = {{"kappa", 0.0}, {"gamma1", 1.0}, {"gamma2", 1.0}, {"m_max", 64}};
    // validation point for oracle-check: small photon number so that the
    // stated cutoff resolves the state to well below the check tolerances
    cfg["oracle"] = {{"u", 1.0}, {"drive", 0.5}, {"kappa", 1.0}, {"h", 0.3}, {"cutoff", 10}};
    cfg["output"] = {{"dir", "out"}, {"dump_rho", false}};
    return cfg;
}

// --set key=value with dotted paths, value parsed as JSON when possible
void apply_override(json& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigInvalid("--set expects key=value, got: " + assignment);
    std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    std::string pointer = "/";
    for (char c : key) pointer += (c == '.') ? '/' : c;
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;
    }
    cfg[json::json_pointer(pointer)] = parsed;
}

int resolve_threads(int cli_threads) {
    if (cli_threads > 0) return cli_threads;
    if (const char* env = std::getenv("PARAMLC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    return hw > 0 ? hw : 1;
}

struct SweepAxis {
    std::string variable;
    std::vector<double> values;
};

std::optional<SweepAxis> parse_sweep(const json& cfg) {
    if (!cfg.contains("sweep") || cfg["sweep"].is_null()) return std::nullopt;
    const auto& s = cfg["sweep"];
    SweepAxis axis;
    axis.variable = s.value("variable", "drive");
    const double lo = s.at("min").get<double>();
    const double hi = s.at("max").get<double>();
    const int count = s.at("count").get<int>();
    const std::string scale = s.value("scale", "linear");
    if (count < 2) throw ConfigInvalid("sweep count must be at least 2");
    if (scale == "log" && !(lo > 0.0)) throw ConfigInvalid("log sweep requires min > 0");
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        axis.values.push_back(scale == "log" ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo));
    }
    return axis;
}

ModelParams params_with(const ModelParams& base, const std::string& variable, double value) {
    ModelParams p = base;
    if (variable == "drive" || variable == "D")
        p.drive = value;
    else if (variable == "u")
        p.u = value;
    else if (variable == "kappa")
        p.kappa = value;
    else if (variable == "h")
        p.h = value;
    else
        throw ConfigInvalid("unknown sweep variable: " + variable);
    return p;
}

// run fn over indices [0, n) on a pool, results stored by index
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int n_workers = std::min(threads, n);
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

const char* phase_name(exact_ness::PhaseClassification pc) {
    if (pc.at_boundary) return "symmetric(boundary)";
    switch (pc.phase) {
        case exact_ness::Phase::symmetric: return "symmetric";
        case exact_ness::Phase::ssb_static: return "ssb_static";
        default: return "limit_cycle_or_torus";
    }
}

Eigen::VectorXcd seed_amplitude(const ModelParams& p, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd a0(p.n_modes);
    for (int i = 0; i < p.n_modes; ++i) a0[i] = std::complex<double>(gauss(rng), gauss(rng));
    a0 *= scale / std::sqrt(double(p.n_modes));
    return a0;
}

int cmd_ness(const json& cfg, const fs::path& out, int threads) {
    const ModelParams base = io::params_from_json(cfg.at("params"));
    const auto axis = parse_sweep(cfg);
    std::vector<double> values = axis ? axis->values : std::vector<double>{base.drive};
    const std::string variable = axis ? axis->variable : "drive";

    struct Row {
        double value, mean_n, fano, order_param;
        std::string phase;
    };
    std::vector<Row> rows(values.size());
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;
    parallel_for(static_cast<int>(values.size()), threads, [&](int i) {
        try {
            const ModelParams p = params_with(base, variable, values[i]);
            Row& r = rows[i];
            r.value = values[i];
            r.mean_n = exact_ness::mean_photon_number(p);
            r.fano = p.drive > 0.0 ? exact_ness::fano(p) : 0.0;
            r.order_param = p.drive > 0.0 ? exact_ness::order_parameter(p) : 0.0;
            r.phase = phase_name(exact_ness::classify_phase(p));
        } catch (const std::exception& e) {
            std::scoped_lock lk(error_mutex);
            failed = true;
            error = e.what();
        }
    });
    if (failed) throw Error("ness sweep failed: " + error);

    io::CsvWriter csv(out / "ness.csv",
                      {variable, "mean_photon_number", "fano", "order_parameter", "phase"});
    for (const Row& r : rows)
        csv.write_row_mixed({io::CsvWriter::format(r.value), io::CsvWriter::format(r.mean_n),
                             io::CsvWriter::format(r.fano), io::CsvWriter::format(r.order_param),
                             r.phase});
    return 0;
}

int cmd_entanglement(const json& cfg, const fs::path& out, int threads) {
    const ModelParams base = io::params_from_json(cfg.at("params"));
    if (base.n_modes != 2) throw ConfigInvalid("entanglement requires N = 2");
    const auto axis = parse_sweep(cfg);
    std::vector<double> values = axis ? axis->values : std::vector<double>{base.drive};
    const int cutoff_cfg = cfg.at("numerics").value("cutoff", 0);
    const bool dump = cfg.at("output").value("dump_rho", false);

    struct Row {
        double d, en_a, en_b, ratio, purity, photons;
    };
    std::vector<Row> rows(values.size());
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;
    parallel_for(static_cast<int>(values.size()), threads, [&](int i) {
        try {
            const ModelParams p = params_with(base, axis ? axis->variable : "drive", values[i]);
            const int cutoff = cutoff_cfg > 0 ? cutoff_cfg : fockspace::suggested_cutoff(p);
            const auto rho_a = fockspace::build_ness_density_matrix(p, cutoff);
            const auto rho_b = fockspace::to_b_basis(p, cutoff);
            Row& r = rows[i];
            r.d = p.drive;
            r.en_a = fockspace::log_negativity(rho_a, 1);
            r.en_b = fockspace::log_negativity(rho_b, 1);
            r.purity = fockspace::purity(rho_a);
            r.photons = fockspace::mean_total_photons(rho_a);
            const auto tmst = fockspace::tmst_reference(r.purity, r.photons);
            r.ratio = tmst.log_negativity > 0.0 ? r.en_a / tmst.log_negativity : 0.0;
            if (dump)
                io::dump_density_matrix(out / ("rho_a_" + std::to_string(i) + ".bin"), rho_a, p);
        } catch (const CutoffTooSmall& e) {
            std::scoped_lock lk(error_mutex);
            failed = true;
            error = "D=" + std::to_string(values[i]) + ": " + e.what();
        } catch (const std::exception& e) {
            std::scoped_lock lk(error_mutex);
            failed = true;
            error = e.what();
        }
    });
    if (failed) throw Error("entanglement sweep failed: " + error);

    io::CsvWriter csv(out / "entanglement.csv",
                      {"D", "E_N_a", "E_N_b", "E_N_ratio_to_TMST", "purity", "photons"});
    for (const Row& r : rows) csv.write_row({r.d, r.en_a, r.en_b, r.ratio, r.purity, r.photons});
    return 0;
}

void write_trajectory_csv(const fs::path& path, const semiclassics::QuadratureTrajectory& traj,
                          const std::vector<semiclassics::TorusState>* torus) {
    const int n = static_cast<int>(traj.x.front().size());
    std::vector<std::string> header{"t"};
    for (int i = 1; i <= n; ++i) header.push_back("x_" + std::to_string(i));
    for (int i = 1; i <= n; ++i) header.push_back("y_" + std::to_string(i));
    header.push_back("n");
    if (torus) {
        const std::size_t blocks = torus->front().rho.size();
        for (std::size_t r = 1; r <= blocks; ++r) {
            header.push_back("rho_" + std::to_string(r));
            header.push_back("theta_" + std::to_string(r));
        }
    }
    io::CsvWriter csv(path, header);
    std::vector<double> row;
    for (std::size_t s = 0; s < traj.size(); ++s) {
        row.clear();
        row.push_back(traj.times[s]);
        for (int i = 0; i < n; ++i) row.push_back(traj.x[s][i]);
        for (int i = 0; i < n; ++i) row.push_back(traj.y[s][i]);
        row.push_back(traj.photon_number[s]);
        if (torus) {
            const auto& st = (*torus)[s];
            for (std::size_t r = 0; r < st.rho.size(); ++r) {
                row.push_back(st.rho[r]);
                row.push_back(st.theta[r]);
            }
        }
        csv.write_row(row);
    }
}

int cmd_dynamics(const json& cfg, const fs::path& out, int) {
    const ModelParams p = io::params_from_json(cfg.at("params"));
    const auto& num = cfg.at("numerics");
    const double dt = num.value("dt", 0.0) > 0.0 ? num["dt"].get<double>()
                                                 : semiclassics::default_dt(p);
    const double total = num.value("T", 40.0);
    const auto seed = num.value("seed", std::uint64_t{1234});
    const int stride = num.value("record_stride", 10);
    const double scale = p.n_ss() > 0.0 ? 1e-3 * std::sqrt(p.n_ss()) : 1e-3;
    const auto traj = semiclassics::integrate(p, seed_amplitude(p, seed, scale), total, dt, stride);
    write_trajectory_csv(out / "trajectory.csv", traj, nullptr);

    json summary;
    summary["theta"] = traj.theta;
    summary["final_photon_number"] = traj.photon_number.back();
    summary["n_ss"] = p.n_ss();
    std::ofstream(out / "dynamics.json") << summary.dump(2) << '\n';
    return 0;
}

int cmd_torus(const json& cfg, const fs::path& out, int) {
    const ModelParams p = io::params_from_json(cfg.at("params"));
    const auto& num = cfg.at("numerics");
    const double dt = num.value("dt", 0.0) > 0.0 ? num["dt"].get<double>()
                                                 : semiclassics::default_dt(p);
    const double total = num.value("T", 40.0);
    const auto seed = num.value("seed", std::uint64_t{1234});
    const int stride = num.value("record_stride", 10);
    const double scale = p.n_ss() > 0.0 ? 1e-3 * std::sqrt(p.n_ss()) : 1e-3;
    const auto a0 = seed_amplitude(p, seed, scale);

    const auto traj = semiclassics::integrate(p, a0, total, dt, stride);
    const auto torus = semiclassics::torus_trajectory(p, a0, total, dt, stride);
    write_trajectory_csv(out / "torus.csv", traj, &torus);

    const auto form = semiclassics::block_canonical_form(p.coupling);
    const auto freqs = semiclassics::torus_frequencies(torus);
    json summary;
    summary["lambdas"] = form.lambdas;
    summary["has_zero_mode"] = form.has_zero_mode;
    summary["extracted_frequencies"] = freqs;
    if (form.lambdas.size() >= 2) {
        summary["classification"] =
            semiclassics::torus_classify(form.lambdas, 1'000'000) ==
                    semiclassics::TorusKind::periodic
                ? "periodic"
                : "quasiperiodic";
    }
    std::ofstream(out / "torus.json") << summary.dump(2) << '\n';
    return 0;
}

int cmd_diffusion(const json& cfg, const fs::path& out, int threads) {
    const ModelParams p = io::params_from_json(cfg.at("params"));
    const auto& num = cfg.at("numerics");
    const double dt = num.value("dt", 0.0) > 0.0 ? num["dt"].get<double>() : 1e-3 / p.kappa;
    const double total = num.value("T", 200.0);
    const int n_traj = num.value("n_traj", 4000);
    const auto seed = num.value("seed", std::uint64_t{1234});

    stochastics::SdeOptions opts;
    opts.threads = threads;
    const auto est = stochastics::simulate_phase_sde(p, n_traj, total, dt, seed, opts);

    io::CsvWriter csv(out / "diffusion.csv", {"t", "var_phi", "mean_phi"});
    for (std::size_t k = 0; k < est.sample_times.size(); ++k)
        csv.write_row({est.sample_times[k], est.var_phi[k], est.mean_phi[k]});

    json summary;
    summary["d_phi_hat"] = est.d_phi_hat;
    summary["stderr"] = est.std_error;
    summary["analytic"] = est.analytic;
    summary["n_trajectories"] = est.n_trajectories;
    summary["seed"] = est.seed;
    summary["ratio_to_schawlow_townes"] = est.d_phi_hat / (p.kappa / (4.0 * p.n_ss()));
    summary["ratio_to_schawlow_townes_analytic"] = stochastics::schawlow_townes_ratio(p);
    std::ofstream(out / "diffusion.json") << summary.dump(2) << '\n';
    return 0;
}

int cmd_vdp(const json& cfg, const fs::path& out, int) {
    const auto& v = cfg.at("vdp");
    vdp::VdpParams p;
    p.kappa = v.value("kappa", 0.0);
    p.gamma1 = v.value("gamma1", 1.0);
    p.gamma2 = v.value("gamma2", 1.0);
    const int m_max = v.value("m_max", 64);

    const auto rho = vdp::vdp_fock_distribution(p, m_max);
    io::CsvWriter csv(out / "vdp_fock.csv", {"m", "rho_m"});
    for (std::size_t m = 0; m < rho.size(); ++m)
        csv.write_row({static_cast<double>(m), rho[m]});

    json summary;
    summary["mean_photon_number"] = vdp::vdp_mean_photon(p);
    summary["fano"] = vdp::vdp_fano(p);
    summary["recursion_residual"] = vdp::vdp_recursion_residual(p, rho);
    std::ofstream(out / "vdp.json") << summary.dump(2) << '\n';
    return 0;
}

int cmd_oracle_check(const json& cfg, const fs::path& out, int) {
    const auto& oc = cfg.at("oracle");
    ModelParams p = ModelParams::two_mode(oc.value("u", 1.0), oc.value("drive", 0.5),
                                          oc.value("kappa", 1.0));
    const int cutoff = oc.value("cutoff", 10);

    const double exact_n = exact_ness::mean_photon_number(p);
    const double exact_fano = exact_ness::fano(p);
    const auto rho_direct = fockspace::build_ness_density_matrix(p, cutoff);
    const double en_direct = fockspace::log_negativity(rho_direct, 1);

    ModelParams ph = p;
    ph.h = 0.0;
    const auto sol0 = liouville::steady_state_nullvector(liouville::build_liouvillian(ph, cutoff));
    const auto obs0 = liouville::observables(sol0.rho);
    ph.h = oc.value("h", 0.3);
    const auto solh = liouville::steady_state_nullvector(liouville::build_liouvillian(ph, cutoff));
    const auto obsh = liouville::observables(solh.rho);

    const auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    struct Check {
        const char* name;
        double err, tol;
    };
    const std::vector<Check> checks{
        {"mean_n oracle vs exact", rel(obs0.mean_n, exact_n), 1e-5},
        {"fano oracle vs exact", rel(obs0.fano, exact_fano), 1e-5},
        {"log_negativity oracle vs direct", rel(obs0.log_negativity, en_direct), 1e-5},
        {"mean_n h-invariance", rel(obsh.mean_n, obs0.mean_n), 1e-5},
        {"fano h-invariance", rel(obsh.fano, obs0.fano), 1e-5},
        {"log_negativity h-invariance", rel(obsh.log_negativity, obs0.log_negativity), 1e-5},
    };

    json report;
    report["params"] = io::params_to_json(p);
    report["cutoff"] = cutoff;
    bool all_ok = true;
    double max_err = 0.0;
    for (const auto& c : checks) {
        const bool ok = c.err < c.tol;
        all_ok = all_ok && ok;
        max_err = std::max(max_err, c.err);
        std::cout << (ok ? "PASS " : "FAIL ") << c.name << ": rel err " << c.err << " (tol "
                  << c.tol << ")\n";
        report["checks"][c.name] = {{"rel_err", c.err}, {"tol", c.tol}, {"pass", ok}};
    }
    report["max_rel_err"] = max_err;
    std::ofstream(out / "oracle_check.json") << report.dump(2) << '\n';
    std::cout << (all_ok ? "PASS" : "FAIL") << " oracle-check: max rel err " << max_err << "\n";
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"paramlc: parametrically driven O(N) limit-cycle toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    int threads = 0;
    std::int64_t seed = -1;
    app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "RNG seed override");
    app.add_option("--threads", threads, "worker threads (fallback: PARAMLC_THREADS, then hardware)");
    app.add_option("--set", overrides, "config override key=value (repeatable)");

    for (const char* name : {"ness", "entanglement", "dynamics", "torus", "diffusion", "vdp",
                             "oracle-check"})
        app.add_subcommand(name)->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        json cfg = default_config();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            json user = json::parse(in);
            cfg.merge_patch(user);
        }
        for (const auto& o : overrides) apply_override(cfg, o);
        if (seed >= 0) cfg["numerics"]["seed"] = seed;
        const int n_threads = resolve_threads(threads);

        const fs::path out(out_dir);
        fs::create_directories(out);

        const std::string command = app.get_subcommands().front()->get_name();
        const auto t0 = std::chrono::steady_clock::now();
        int rc = 1;
        if (command == "ness") rc = cmd_ness(cfg, out, n_threads);
        else if (command == "entanglement") rc = cmd_entanglement(cfg, out, n_threads);
        else if (command == "dynamics") rc = cmd_dynamics(cfg, out, n_threads);
        else if (command == "torus") rc = cmd_torus(cfg, out, n_threads);
        else if (command == "diffusion") rc = cmd_diffusion(cfg, out, n_threads);
        else if (command == "vdp") rc = cmd_vdp(cfg, out, n_threads);
        else if (command == "oracle-check") rc = cmd_oracle_check(cfg, out, n_threads);

        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        io::write_manifest(out, command, cfg, cfg["numerics"]["seed"].get<std::uint64_t>(), wall);
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
