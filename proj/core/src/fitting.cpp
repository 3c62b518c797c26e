#include "erdim/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace erdim {

double FitResult::param(const std::string& name) const {
    for (const auto& [k, v] : params)
        if (k == name) return v;
    throw RangeError("fit result has no parameter named " + name);
}

namespace {

std::string point_to_string(const std::vector<double>& x) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

struct SingleRun {
    std::vector<double> x;
    double f = 0.0;
    long evaluations = 0;
    std::vector<double> history;
};

SingleRun run_simplex(const Objective& objective, const std::vector<double>& x0,
                      const FitOptions& opt) {
    const int n = static_cast<int>(x0.size());
    SingleRun run;
    auto eval = [&](const std::vector<double>& x) {
        const double v = objective(x);
        ++run.evaluations;
        if (!std::isfinite(v))
            throw NumericalError("nelder_mead: objective is non-finite at " + point_to_string(x));
        return v;
    };

    std::vector<std::vector<double>> xs(n + 1, x0);
    for (int i = 0; i < n; ++i)
        xs[i + 1][i] += (x0[i] != 0.0) ? 0.05 * std::abs(x0[i]) : 0.00025;
    std::vector<double> fs(n + 1);
    for (int i = 0; i <= n; ++i) fs[i] = eval(xs[i]);

    auto order = [&]() {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::vector<std::vector<double>> xs2(n + 1);
        std::vector<double> fs2(n + 1);
        for (int i = 0; i <= n; ++i) {
            xs2[i] = xs[idx[i]];
            fs2[i] = fs[idx[i]];
        }
        xs.swap(xs2);
        fs.swap(fs2);
    };

    auto diameter = [&]() {
        double d = 0.0;
        for (int i = 1; i <= n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += (xs[i][j] - xs[0][j]) * (xs[i][j] - xs[0][j]);
            d = std::max(d, std::sqrt(s));
        }
        return d;
    };

    while (run.evaluations < opt.max_iter) {
        order();
        run.history.push_back(fs[0]);
        if (diameter() < opt.tol) break;

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) centroid[j] += xs[i][j] / n;

        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (int j = 0; j < n; ++j) p[j] = centroid[j] + coef * (centroid[j] - xs[n][j]);
            return p;
        };

        const std::vector<double> xr = blend(1.0);  // reflection
        const double fr = eval(xr);
        if (fr < fs[0]) {
            const std::vector<double> xe = blend(2.0);  // expansion
            const double fe = eval(xe);
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            const bool outside = fr < fs[n];
            const std::vector<double> xc =
                outside ? blend(0.5)
                        : [&] {
                              std::vector<double> p(n);
                              for (int j = 0; j < n; ++j)
                                  p[j] = centroid[j] + 0.5 * (xs[n][j] - centroid[j]);
                              return p;
                          }();
            const double fc = eval(xc);
            if (fc < (outside ? fr : fs[n])) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {  // shrink toward the best vertex
                    for (int j = 0; j < n; ++j) xs[i][j] = xs[0][j] + 0.5 * (xs[i][j] - xs[0][j]);
                    fs[i] = eval(xs[i]);
                }
            }
        }
    }
    order();
    run.history.push_back(fs[0]);
    run.x = xs[0];
    run.f = fs[0];
    return run;
}

}  // namespace

FitResult nelder_mead(const Objective& objective, const std::vector<double>& x0,
                      const FitOptions& options) {
    if (x0.empty()) throw ValidationError("nelder_mead: empty start point");
    {
        const double f0 = objective(x0);
        if (!std::isfinite(f0))
            throw NumericalError("nelder_mead: objective is non-finite at " + point_to_string(x0));
    }
    FitResult best;
    best.seed = options.seed;
    long total_evals = 1;
    const int restarts = std::max(1, options.restarts);
    for (int restart = 0; restart < restarts; ++restart) {
        std::vector<double> start = x0;
        if (restart > 0) {
            std::mt19937_64 rng(options.seed * 0x9E3779B97F4A7C15ULL + restart);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            for (auto& xi : start) xi += u(rng) * std::max(0.5, 0.25 * std::abs(xi));
        }
        const SingleRun run = run_simplex(objective, start, options);
        total_evals += run.evaluations;
        if (best.params.empty() || run.f < best.mse) {
            best.mse = run.f;
            best.history = run.history;
            best.params.clear();
            for (std::size_t i = 0; i < run.x.size(); ++i)
                best.params.emplace_back("x" + std::to_string(i), run.x[i]);
        }
    }
    best.evaluations = total_evals;
    return best;
}

namespace {

const std::vector<double>& sigma_z_target(const Trajectory& target) {
    auto it = target.observables.find("sigma_z");
    if (it == target.observables.end() || it->second.size() != target.times.size())
        throw ValidationError("fit target lacks an aligned sigma_z series");
    if (target.times.empty() || target.times.front() != 0.0)
        throw ValidationError("fit target grid must start at t = 0");
    return it->second;
}

double series_mse(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return acc / static_cast<double>(a.size());
}

ComplexMatrix excited_state() {
    ComplexMatrix rho(2, 2);
    rho(0, 0) = 1.0;
    return rho;
}

// Crude oscillation-period estimate from zero crossings around the tail mean.
double dominant_period(const std::vector<double>& t, const std::vector<double>& y) {
    const std::size_t n = y.size();
    double tail = 0.0;
    const std::size_t k0 = n - std::max<std::size_t>(1, n / 5);
    for (std::size_t i = k0; i < n; ++i) tail += y[i];
    tail /= static_cast<double>(n - k0);
    int crossings = 0;
    double first = -1.0, last = -1.0;
    for (std::size_t i = 1; i < n; ++i) {
        if ((y[i - 1] - tail) * (y[i] - tail) < 0.0) {
            ++crossings;
            last = t[i];
            if (first < 0.0) first = t[i];
        }
    }
    if (crossings >= 2) return 2.0 * (last - first) / (crossings - 1);
    return t.back() - t.front();
}

}  // namespace

double markov_mse(const MarkovParams& p, const Trajectory& target) {
    const auto& ref = sigma_z_target(target);
    const Trajectory traj = propagate(gad_generator(p), excited_state(), target.times);
    return series_mse(traj.observables.at("sigma_z"), ref);
}

double embedding_mse(const EmbeddingParams& p, const Trajectory& target) {
    const auto& ref = sigma_z_target(target);
    ComplexMatrix ground(2, 2);
    ground(1, 1) = 1.0;
    const ComplexMatrix rho0 = kron(excited_state(), ground);
    const Trajectory traj = propagate(embedding2_generator(p), rho0, target.times);
    const auto& states = *traj.states;
    std::vector<double> sz;
    sz.reserve(states.size());
    for (const auto& v : states) {
        const ComplexMatrix rho_s = partial_trace(devectorize(v), 2, 2, Keep::A);
        sz.push_back((rho_s(0, 0) - rho_s(1, 1)).real());
    }
    return series_mse(sz, ref);
}

FitResult fit_markov(const Trajectory& target, double omega, std::uint64_t seed) {
    const auto& ref = sigma_z_target(target);

    // Steady population and a half-life estimate seed the rate guesses.
    const std::size_t n = ref.size();
    double tail = 0.0;
    const std::size_t k0 = n - std::max<std::size_t>(1, n / 10);
    for (std::size_t i = k0; i < n; ++i) tail += ref[i];
    tail /= static_cast<double>(n - k0);
    const double p_inf = std::clamp(0.5 * (1.0 + tail), 1e-3, 0.9);
    double t_half = target.times.back() * 0.5;
    for (std::size_t i = 1; i < n; ++i) {
        if (ref[i] <= 0.5 * (ref.front() + tail)) {
            t_half = target.times[i];
            break;
        }
    }
    const double rate0 = std::log(2.0) / std::max(t_half, 1e-6 * target.times.back());

    const Objective objective = [&](const std::vector<double>& x) {
        MarkovParams p;
        p.omega = omega;
        p.gamma_down = std::exp(std::clamp(x[0], -60.0, 30.0));
        p.gamma_up = std::exp(std::clamp(x[1], -60.0, 30.0));
        return markov_mse(p, target);
    };

    FitOptions opt;
    opt.seed = seed;
    const std::vector<double> x0 = {std::log(std::max(rate0 * (1.0 - p_inf), 1e-8)),
                                    std::log(std::max(rate0 * p_inf, 1e-8))};
    const FitResult raw = nelder_mead(objective, x0, opt);

    FitResult out = raw;
    out.params = {{"omega", omega},
                  {"gamma_down", std::exp(std::clamp(raw.param("x0"), -60.0, 30.0))},
                  {"gamma_up", std::exp(std::clamp(raw.param("x1"), -60.0, 30.0))}};
    return out;
}

FitResult fit_embedding(const Trajectory& target, std::uint64_t seed) {
    const auto& ref = sigma_z_target(target);
    const double period = dominant_period(target.times, ref);
    const double g_guess = std::clamp(M_PI / std::max(period, 1e-9), 1e-3, 1e3);

    const Objective objective = [&](const std::vector<double>& x) {
        EmbeddingParams p;
        p.omega1 = x[0];
        p.omega2 = x[1];
        p.g_tilde = x[2];
        p.gamma1_down = std::exp(std::clamp(x[3], -60.0, 30.0));
        p.gamma1_up = std::exp(std::clamp(x[4], -60.0, 30.0));
        p.gamma2_down = std::exp(std::clamp(x[5], -60.0, 30.0));
        p.gamma2_up = std::exp(std::clamp(x[6], -60.0, 30.0));
        return embedding_mse(p, target);
    };

    FitOptions opt;
    opt.seed = seed;
    opt.max_iter = 4000;
    const std::vector<double> x0 = {1.0, 1.0, g_guess, -3.0, -4.0, -3.0, -4.0};
    const FitResult raw = nelder_mead(objective, x0, opt);

    FitResult out = raw;
    out.params = {{"omega1", raw.param("x0")},
                  {"omega2", raw.param("x1")},
                  {"g_tilde", raw.param("x2")},
                  {"gamma1_down", std::exp(std::clamp(raw.param("x3"), -60.0, 30.0))},
                  {"gamma1_up", std::exp(std::clamp(raw.param("x4"), -60.0, 30.0))},
                  {"gamma2_down", std::exp(std::clamp(raw.param("x5"), -60.0, 30.0))},
                  {"gamma2_up", std::exp(std::clamp(raw.param("x6"), -60.0, 30.0))}};
    return out;
}

}  // namespace erdim
