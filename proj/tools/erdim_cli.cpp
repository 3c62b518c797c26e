#include "erdim_cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "erdim/complexity.hpp"
#include "erdim/exact_model.hpp"
#include "erdim/fitting.hpp"
#include "erdim/lindblad.hpp"
#include "erdim/trotter.hpp"

namespace erdim::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "erdim 0.1.0";

struct ConfigError : Error {
    using Error::Error;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Accumulates metadata lines and rows, then lands on disk atomically so
// error paths never leave partial output behind.
class CsvOutput {
  public:
    void meta(const std::string& line) { meta_ << "# " << line << "\n"; }
    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) body_ << (i ? "," : "") << cols[i];
        body_ << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
        body_ << "\n";
    }

    void write(const std::string& path) const {
        const std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary);
            if (!out) throw ConfigError("cannot open output file " + tmp);
            out << meta_.str() << body_.str();
            if (!out) throw NumericalError("failed writing " + tmp);
        }
        std::filesystem::rename(tmp, path);
    }

  private:
    std::ostringstream meta_;
    std::ostringstream body_;
};

struct LoadedConfig {
    json block;
    std::uint64_t hash = 0;
};

LoadedConfig load_config(const std::string& path, const std::string& subcommand) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();
    json parsed;
    try {
        parsed = json::parse(bytes);
    } catch (const json::exception& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    if (!parsed.is_object() || !parsed.contains(subcommand))
        throw ConfigError("config lacks the top-level key \"" + subcommand + "\"");
    LoadedConfig out;
    out.block = parsed.at(subcommand);
    out.hash = fnv1a(bytes);
    if (!out.block.is_object())
        throw ConfigError("config key \"" + subcommand + "\" must be an object");
    return out;
}

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& context) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const auto& k : allowed)
            if (k == key) known = true;
        if (!known) throw ConfigError("unknown key \"" + context + key + "\"");
    }
}

double require_number(const json& obj, const std::string& key, const std::string& context) {
    if (!obj.contains(key)) throw ConfigError("missing required key \"" + context + key + "\"");
    if (!obj.at(key).is_number())
        throw ConfigError("key \"" + context + key + "\" must be a number");
    return obj.at(key).get<double>();
}

long long require_int(const json& obj, const std::string& key, const std::string& context) {
    if (!obj.contains(key)) throw ConfigError("missing required key \"" + context + key + "\"");
    if (!obj.at(key).is_number_integer())
        throw ConfigError("key \"" + context + key + "\" must be an integer");
    return obj.at(key).get<long long>();
}

std::string require_string(const json& obj, const std::string& key, const std::string& context) {
    if (!obj.contains(key)) throw ConfigError("missing required key \"" + context + key + "\"");
    if (!obj.at(key).is_string())
        throw ConfigError("key \"" + context + key + "\" must be a string");
    return obj.at(key).get<std::string>();
}

double optional_number(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    return obj.at(key).get<double>();
}

std::vector<double> uniform_grid(double t_end, int n) {
    if (n < 2) throw ConfigError("key \"points\" must be at least 2");
    if (t_end <= 0.0) throw ConfigError("key \"t_max\" must be positive");
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = t_end * i / (n - 1);
    return t;
}

ExactModel parse_exact_model(const json& obj, const std::string& context) {
    reject_unknown_keys(obj, {"omega", "omega_min", "omega_max", "delta_omega", "g"}, context);
    ExactModel m;
    m.omega = require_number(obj, "omega", context);
    m.omega_min = require_number(obj, "omega_min", context);
    m.omega_max = require_number(obj, "omega_max", context);
    m.delta_omega = require_number(obj, "delta_omega", context);
    m.g = require_number(obj, "g", context);
    try {
        m.validate();
    } catch (const ValidationError& e) {
        throw ConfigError(std::string(e.what()) + " (under \"" + context + "\")");
    }
    return m;
}

struct CommonArgs {
    std::string config;
    std::string out;
    int threads = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

int resolve_threads(const CommonArgs& a) {
    if (a.threads > 0) return a.threads;
    if (const char* env = std::getenv("ERDIM_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

void stamp(CsvOutput& csv, const char* sub, const LoadedConfig& cfg, std::uint64_t seed) {
    csv.meta(kVersion);
    csv.meta(std::string("subcommand=") + sub);
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof(hashbuf), "config_hash=0x%016llx",
                  static_cast<unsigned long long>(cfg.hash));
    csv.meta(hashbuf);
    csv.meta("seed=" + std::to_string(seed));
}

// ---------------------------------------------------------------- estimate

PhysicalParams parse_physical_params(const json& block) {
    reject_unknown_keys(block, {"n", "gamma", "big_t", "tau", "epsilon"}, "estimate.");
    PhysicalParams p;
    p.n = static_cast<int>(require_int(block, "n", "estimate."));
    p.gamma = require_number(block, "gamma", "estimate.");
    p.big_t = require_number(block, "big_t", "estimate.");
    p.tau = require_number(block, "tau", "estimate.");
    p.epsilon = require_number(block, "epsilon", "estimate.");
    try {
        p.validate();
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("estimate: ") + e.what());
    }
    return p;
}

int cmd_estimate(const CommonArgs& args) {
    const LoadedConfig cfg = load_config(args.config, "estimate");
    const PhysicalParams p = parse_physical_params(cfg.block);

    const ComplexityEstimate est = effective_dimension(p);
    CsvOutput csv;
    stamp(csv, "estimate", cfg, args.seed);
    csv.header({"n", "gamma", "big_t", "tau", "epsilon", "gamma_tau", "n_gamma_t", "alpha_star",
                "r_suff", "d_er", "log2_d_er", "d_er_ceil", "qubits"});
    csv.row({std::to_string(p.n), fmt(p.gamma), fmt(p.big_t), fmt(p.tau), fmt(p.epsilon),
             fmt(p.gamma_tau()), fmt(p.n_gamma_t()), fmt(est.alpha_star), fmt(est.r_suff),
             fmt(est.d_er), fmt(std::log2(est.d_er)), std::to_string(est.d_er_ceil),
             std::to_string(est.qubits)});
    csv.write(args.out);
    return 0;
}

// ----------------------------------------------------------------- heatmap

int cmd_heatmap(const CommonArgs& args) {
    const LoadedConfig cfg = load_config(args.config, "heatmap");
    reject_unknown_keys(cfg.block,
                        {"ngt_min", "ngt_max", "gt_min", "gt_max", "resolution", "epsilon"},
                        "heatmap.");
    const double ngt_min = require_number(cfg.block, "ngt_min", "heatmap.");
    const double ngt_max = require_number(cfg.block, "ngt_max", "heatmap.");
    const double gt_min = require_number(cfg.block, "gt_min", "heatmap.");
    const double gt_max = require_number(cfg.block, "gt_max", "heatmap.");
    const int resolution = static_cast<int>(require_int(cfg.block, "resolution", "heatmap."));
    const double epsilon = require_number(cfg.block, "epsilon", "heatmap.");

    HeatmapGrid grid;
    try {
        grid = heatmap(ngt_min, ngt_max, gt_min, gt_max, resolution, epsilon,
                       resolve_threads(args));
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("heatmap: ") + e.what());
    }

    CsvOutput csv;
    stamp(csv, "heatmap", cfg, args.seed);
    csv.meta("epsilon=" + fmt(epsilon));
    csv.header({"n_gamma_t", "gamma_tau", "log2_d_er", "d_er_ceil", "qubits"});
    for (std::size_t i = 0; i < grid.ngt_axis.size(); ++i)
        for (std::size_t j = 0; j < grid.gt_axis.size(); ++j) {
            const double log2_der = grid.at(i, j);
            const double d_er = std::exp2(log2_der);
            const long long ceilv = static_cast<long long>(std::ceil(d_er - 1e-9));
            const int qubits = static_cast<int>(
                std::ceil(std::log2(static_cast<double>(ceilv)) - 1e-12));
            csv.row({fmt(grid.ngt_axis[i]), fmt(grid.gt_axis[j]), fmt(log2_der),
                     std::to_string(ceilv), std::to_string(qubits)});
        }
    csv.write(args.out);
    return 0;
}

// --------------------------------------------------------------- exact-run

int cmd_exact_run(const CommonArgs& args) {
    const LoadedConfig cfg = load_config(args.config, "exact-run");
    reject_unknown_keys(cfg.block, {"model", "t_max", "points", "solver", "step", "epsilon"},
                        "exact-run.");
    if (!cfg.block.contains("model"))
        throw ConfigError("missing required key \"exact-run.model\"");
    const ExactModel model = parse_exact_model(cfg.block.at("model"), "exact-run.model.");
    const double t_max = require_number(cfg.block, "t_max", "exact-run.");
    const int points = static_cast<int>(require_int(cfg.block, "points", "exact-run."));
    const std::string solver =
        cfg.block.contains("solver") ? require_string(cfg.block, "solver", "exact-run.") : "both";
    if (solver != "finite" && solver != "continuum" && solver != "both")
        throw ConfigError("key \"exact-run.solver\" must be finite, continuum or both");
    const double tau = 1.0 / model.omega_max;
    const double step = optional_number(cfg.block, "step", tau / 20.0);
    const double epsilon = optional_number(cfg.block, "epsilon", 0.05);

    const auto times = uniform_grid(t_max, points);

    CsvOutput csv;
    stamp(csv, "exact-run", cfg, args.seed);
    const PhysicalParams p = derived_params(model, epsilon);
    const ComplexityEstimate est = effective_dimension(p);
    csv.meta("modes=" + std::to_string(model.mode_count()));
    csv.meta("derived n=" + std::to_string(p.n) + " gamma=" + fmt(p.gamma) +
             " big_t=" + fmt(p.big_t) + " tau=" + fmt(p.tau) + " epsilon=" + fmt(p.epsilon));
    csv.meta("estimate d_er=" + fmt(est.d_er) + " log2_d_er=" + fmt(std::log2(est.d_er)) +
             " qubits=" + std::to_string(est.qubits));
    csv.meta("time_unit=1/omega_max");

    std::vector<std::string> cols = {"t"};
    const bool do_finite = (solver != "continuum");
    const bool do_continuum = (solver != "finite");
    Trajectory fin, con;
    if (do_finite) {
        fin = solve_finite(model, times);
        cols.push_back("sigma_z_finite");
    }
    if (do_continuum) {
        con = solve_continuum(model, times, step);
        cols.push_back("sigma_z_continuum");
    }
    csv.header(cols);
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::vector<std::string> cells = {fmt(times[k] * model.omega_max)};
        if (do_finite) cells.push_back(fmt(fin.observables.at("sigma_z")[k]));
        if (do_continuum) cells.push_back(fmt(con.observables.at("sigma_z")[k]));
        csv.row(cells);
    }
    csv.write(args.out);
    return 0;
}

// --------------------------------------------------------------------- fit

int cmd_fit(const CommonArgs& args) {
    const LoadedConfig cfg = load_config(args.config, "fit");
    reject_unknown_keys(
        cfg.block, {"target_model", "t_max", "points", "method", "seed", "epsilon", "expected"},
        "fit.");
    if (!cfg.block.contains("target_model"))
        throw ConfigError("missing required key \"fit.target_model\"");
    const ExactModel model = parse_exact_model(cfg.block.at("target_model"), "fit.target_model.");
    const double t_max = require_number(cfg.block, "t_max", "fit.");
    const int points = static_cast<int>(require_int(cfg.block, "points", "fit."));
    const std::string method =
        cfg.block.contains("method") ? require_string(cfg.block, "method", "fit.") : "both";
    if (method != "markov" && method != "embedding" && method != "both")
        throw ConfigError("key \"fit.method\" must be markov, embedding or both");
    std::uint64_t seed = args.seed;
    if (!args.seed_given && cfg.block.contains("seed"))
        seed = static_cast<std::uint64_t>(require_int(cfg.block, "seed", "fit."));
    const double epsilon = optional_number(cfg.block, "epsilon", 0.05);

    const Trajectory target = solve_finite(model, uniform_grid(t_max, points));

    CsvOutput csv;
    stamp(csv, "fit", cfg, seed);
    const PhysicalParams p = derived_params(model, epsilon);
    const ComplexityEstimate est = effective_dimension(p);
    csv.meta("derived n=" + std::to_string(p.n) + " gamma=" + fmt(p.gamma) +
             " big_t=" + fmt(p.big_t) + " tau=" + fmt(p.tau));
    csv.meta("estimate d_er=" + fmt(est.d_er) + " log2_d_er=" + fmt(std::log2(est.d_er)) +
             " qubits=" + std::to_string(est.qubits));
    csv.meta("time_unit=1/omega_max");

    const bool do_markov = (method != "embedding");
    const bool do_embedding = (method != "markov");
    std::vector<double> markov_sz, embedding_sz;
    if (do_markov) {
        const FitResult r = fit_markov(target, model.omega, seed);
        std::ostringstream line;
        line << "markov";
        for (const auto& [k, v] : r.params) line << " " << k << "=" << fmt(v);
        line << " mse=" << fmt(r.mse) << " evaluations=" << r.evaluations;
        csv.meta(line.str());
        MarkovParams mp;
        mp.omega = r.param("omega");
        mp.gamma_down = r.param("gamma_down");
        mp.gamma_up = r.param("gamma_up");
        ComplexMatrix rho0(2, 2);
        rho0(0, 0) = 1.0;
        markov_sz = propagate(gad_generator(mp), rho0, target.times).observables.at("sigma_z");
    }
    if (do_embedding) {
        const FitResult r = fit_embedding(target, seed);
        std::ostringstream line;
        line << "embedding";
        for (const auto& [k, v] : r.params) line << " " << k << "=" << fmt(v);
        line << " mse=" << fmt(r.mse) << " evaluations=" << r.evaluations;
        csv.meta(line.str());
        EmbeddingParams ep;
        ep.omega1 = r.param("omega1");
        ep.omega2 = r.param("omega2");
        ep.g_tilde = r.param("g_tilde");
        ep.gamma1_down = r.param("gamma1_down");
        ep.gamma1_up = r.param("gamma1_up");
        ep.gamma2_down = r.param("gamma2_down");
        ep.gamma2_up = r.param("gamma2_up");
        ComplexMatrix rho0(4, 4);
        rho0(1, 1) = 1.0;
        const Trajectory traj = propagate(embedding2_generator(ep), rho0, target.times);
        for (const auto& v : *traj.states) {
            const ComplexMatrix rho_s = partial_trace(devectorize(v), 2, 2, Keep::A);
            embedding_sz.push_back((rho_s(0, 0) - rho_s(1, 1)).real());
        }
    }

    std::vector<std::string> cols = {"t", "sigma_z_target"};
    if (do_markov) cols.push_back("sigma_z_markov");
    if (do_embedding) cols.push_back("sigma_z_embedding");
    csv.header(cols);
    const auto& ref = target.observables.at("sigma_z");
    for (std::size_t k = 0; k < target.times.size(); ++k) {
        std::vector<std::string> cells = {fmt(target.times[k] * model.omega_max), fmt(ref[k])};
        if (do_markov) cells.push_back(fmt(markov_sz[k]));
        if (do_embedding) cells.push_back(fmt(embedding_sz[k]));
        csv.row(cells);
    }
    csv.write(args.out);
    return 0;
}

// ------------------------------------------------------------ lindblad-run

int cmd_lindblad_run(const CommonArgs& args) {
    const LoadedConfig cfg = load_config(args.config, "lindblad-run");
    reject_unknown_keys(cfg.block, {"generator", "params", "t_max", "points", "expected"},
                        "lindblad-run.");
    const std::string kind = require_string(cfg.block, "generator", "lindblad-run.");
    if (!cfg.block.contains("params"))
        throw ConfigError("missing required key \"lindblad-run.params\"");
    const json& pj = cfg.block.at("params");
    const double t_max = require_number(cfg.block, "t_max", "lindblad-run.");
    const int points = static_cast<int>(require_int(cfg.block, "points", "lindblad-run."));
    const std::string ctx = "lindblad-run.params.";

    GkslGenerator gen;
    ComplexMatrix rho0;
    int sys_dim = 2;
    int env_dim = 1;
    if (kind == "gad") {
        reject_unknown_keys(pj, {"omega", "gamma_down", "gamma_up"}, ctx);
        MarkovParams p;
        p.omega = require_number(pj, "omega", ctx);
        p.gamma_down = require_number(pj, "gamma_down", ctx);
        p.gamma_up = require_number(pj, "gamma_up", ctx);
        try {
            gen = gad_generator(p);
        } catch (const ValidationError& e) {
            throw ConfigError(std::string("lindblad-run: ") + e.what());
        }
        rho0 = ComplexMatrix(2, 2);
        rho0(0, 0) = 1.0;
    } else if (kind == "embedding2") {
        reject_unknown_keys(pj,
                            {"omega1", "omega2", "g_tilde", "gamma1_down", "gamma1_up",
                             "gamma2_down", "gamma2_up"},
                            ctx);
        EmbeddingParams p;
        p.omega1 = require_number(pj, "omega1", ctx);
        p.omega2 = require_number(pj, "omega2", ctx);
        p.g_tilde = require_number(pj, "g_tilde", ctx);
        p.gamma1_down = require_number(pj, "gamma1_down", ctx);
        p.gamma1_up = require_number(pj, "gamma1_up", ctx);
        p.gamma2_down = require_number(pj, "gamma2_down", ctx);
        p.gamma2_up = require_number(pj, "gamma2_up", ctx);
        try {
            gen = embedding2_generator(p);
        } catch (const ValidationError& e) {
            throw ConfigError(std::string("lindblad-run: ") + e.what());
        }
        rho0 = ComplexMatrix(4, 4);
        rho0(1, 1) = 1.0;  // excited system x ground reservoir
        env_dim = 2;
    } else if (kind == "pseudomode") {
        reject_unknown_keys(pj, {"omega0", "omega", "omega_rabi", "gamma_decay", "cutoff", "n0"},
                            ctx);
        PseudomodeParams p;
        p.omega0 = require_number(pj, "omega0", ctx);
        p.omega = require_number(pj, "omega", ctx);
        p.omega_rabi = require_number(pj, "omega_rabi", ctx);
        p.gamma_decay = require_number(pj, "gamma_decay", ctx);
        p.cutoff = static_cast<int>(require_int(pj, "cutoff", ctx));
        p.n0 = optional_number(pj, "n0", 0.0);
        try {
            gen = pseudomode_generator(p);
        } catch (const ValidationError& e) {
            throw ConfigError(std::string("lindblad-run: ") + e.what());
        }
        rho0 = ComplexMatrix(gen.dim, gen.dim);
        rho0(0, 0) = 1.0;  // excited qubit x mode vacuum
        env_dim = p.cutoff;
    } else {
        throw ConfigError("key \"lindblad-run.generator\" must be gad, embedding2 or pseudomode");
    }

    const Trajectory traj = propagate(gen, rho0, uniform_grid(t_max, points));

    CsvOutput csv;
    stamp(csv, "lindblad-run", cfg, args.seed);
    csv.meta("generator=" + kind);
    csv.header({"t", "sigma_z", "excited_population"});
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const ComplexMatrix rho = devectorize((*traj.states)[k]);
        const ComplexMatrix rho_s =
            (env_dim > 1) ? partial_trace(rho, sys_dim, env_dim, Keep::A) : rho;
        const double sz = (rho_s(0, 0) - rho_s(1, 1)).real();
        csv.row({fmt(traj.times[k]), fmt(sz), fmt(rho_s(0, 0).real())});
    }
    csv.write(args.out);
    return 0;
}

// -------------------------------------------------------------- trn-verify

ComplexMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (auto& z : m.data()) z = Complex(g(rng), g(rng));
    return m;
}

ComplexMatrix random_unit_hermitian(int n, std::mt19937_64& rng) {
    ComplexMatrix a = random_matrix(n, n, rng);
    ComplexMatrix h = a + a.adjoint();
    h *= Complex(0.5, 0.0);
    const auto evals = hermitian_eigenvalues(h);
    const double top = std::max(std::abs(evals.front()), std::abs(evals.back()));
    h *= Complex(1.0 / top, 0.0);
    return h;
}

ComplexMatrix random_density(int n, std::mt19937_64& rng) {
    const ComplexMatrix a = random_matrix(n, n, rng);
    ComplexMatrix m = a * a.adjoint();
    m *= Complex(1.0 / m.trace().real(), 0.0);
    return m;
}

CoupledModel random_trn_model(int dr, double gamma, std::mt19937_64& rng) {
    CoupledModel m;
    m.hs = random_unit_hermitian(2, rng);
    m.hr = random_unit_hermitian(dr, rng);
    m.couplings = {{random_unit_hermitian(2, rng), random_unit_hermitian(dr, rng)}};
    m.gamma = gamma;
    std::uniform_real_distribution<double> u(0.2, 0.8);
    const double w = u(rng);
    ComplexMatrix s1 = random_density(2, rng);
    s1 *= Complex(w, 0.0);
    ComplexMatrix s2 = random_density(2, rng);
    s2 *= Complex(1.0 - w, 0.0);
    m.initial = {{s1, random_density(dr, rng)}, {s2, random_density(dr, rng)}};
    return m;
}

int cmd_trn_verify(const CommonArgs& args) {
    const LoadedConfig cfg = load_config(args.config, "trn-verify");
    reject_unknown_keys(cfg.block, {"seed", "instances", "tau"}, "trn-verify.");
    std::uint64_t seed = args.seed;
    if (!args.seed_given && cfg.block.contains("seed"))
        seed = static_cast<std::uint64_t>(require_int(cfg.block, "seed", "trn-verify."));
    const long long instances =
        cfg.block.contains("instances") ? require_int(cfg.block, "instances", "trn-verify.") : 20;
    if (instances < 1) throw ConfigError("key \"trn-verify.instances\" must be positive");
    const double tau = optional_number(cfg.block, "tau", 0.1);

    CsvOutput csv;
    stamp(csv, "trn-verify", cfg, seed);
    csv.header({"instance", "d_r", "steps", "gamma_tau", "r", "alpha", "cut", "s_alpha", "bound",
                "eps", "ok"});

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    long long violations = 0;
    for (long long inst = 0; inst < instances; ++inst) {
        const int dr = 2 + static_cast<int>(rng() % 3);
        const int steps = 4 + static_cast<int>(rng() % 13);
        const double gt = std::pow(10.0, -3.0 + u01(rng));
        const CoupledModel model = random_trn_model(dr, gt / tau, rng);
        const TimelineMps trn = build_trn(model, tau, steps);

        std::vector<SchmidtSpectrum> spectra;
        for (int cut = 1; cut < steps; ++cut) spectra.push_back(schmidt_cut(trn, cut));

        for (int r = 1; r <= dr * dr; ++r) {
            const double eps = truncate(trn, r).eps_achieved;
            for (int ai = 1; ai <= 9; ++ai) {
                const double alpha = 0.1 * ai;
                double s_max = -1e300;
                int cut_max = 1;
                for (std::size_t c = 0; c < spectra.size(); ++c) {
                    const double s = renyi_entropy(spectra[c], alpha);
                    if (s > s_max) {
                        s_max = s;
                        cut_max = static_cast<int>(c) + 1;
                    }
                }
                const double rhs = (1.0 - alpha) / alpha * (s_max - std::log(r / (1.0 - alpha)));
                const bool ok = (eps <= 0.0) || (std::log(eps) <= rhs);
                if (!ok) ++violations;
                csv.row({std::to_string(inst), std::to_string(dr), std::to_string(steps), fmt(gt),
                         std::to_string(r), fmt(alpha), std::to_string(cut_max), fmt(s_max),
                         fmt(rhs), fmt(eps), ok ? "1" : "0"});
            }
        }
    }
    csv.meta("violations=" + std::to_string(violations));
    csv.write(args.out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Simulation-complexity toolkit for open quantum dynamics"};
    app.require_subcommand(1);

    CommonArgs common;
    const char* subnames[] = {"estimate", "heatmap", "exact-run", "fit", "lindblad-run",
                              "trn-verify"};
    const char* subhelp[] = {
        "Effective reservoir dimension from physical parameters",
        "log2(d_er) over a log-spaced parameter grid",
        "Exactly solvable multimode-bath qubit, finite and continuum solvers",
        "Best Markov and two-level-reservoir fits of an exact trajectory",
        "Semigroup trajectory of a GKSL model",
        "Truncation-bound report over random timeline chains"};
    for (int i = 0; i < 6; ++i) {
        CLI::App* sub = app.add_subcommand(subnames[i], subhelp[i]);
        sub->add_option("--config", common.config, "JSON config file")->required();
        sub->add_option("--out", common.out, "Output CSV path")->required();
        sub->add_option("--threads", common.threads, "Worker threads (or ERDIM_THREADS)");
        sub->add_option("--seed", common.seed, "Seed override")->trigger_on_parse();
    }

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help() << std::endl;
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }

    std::string chosen;
    for (const auto* sub : app.get_subcommands()) {
        chosen = sub->get_name();
        common.seed_given = sub->count("--seed") > 0;
    }

    try {
        if (chosen == "estimate") return cmd_estimate(common);
        if (chosen == "heatmap") return cmd_heatmap(common);
        if (chosen == "exact-run") return cmd_exact_run(common);
        if (chosen == "fit") return cmd_fit(common);
        if (chosen == "lindblad-run") return cmd_lindblad_run(common);
        if (chosen == "trn-verify") return cmd_trn_verify(common);
        std::cerr << "error: unknown subcommand" << std::endl;
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical error in " << chosen << ": " << e.what() << std::endl;
        return 3;
    }
}

}  // namespace erdim::cli
