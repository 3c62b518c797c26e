#include "erdim/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace erdim {

namespace {

constexpr double kAlphaLo = 1e-4;
constexpr double kAlphaHi = 1.0 - 1e-4;

double renyi_bound_asymptotic(double ngt, double gt, double alpha) {
    return 2.0 * ngt * (std::pow(gt, alpha - 1.0) - alpha) / (1.0 - alpha);
}

// ln of the rank objective (1-a) eps^{-a/(1-a)} exp(S_a).
double ln_objective(double ngt, double gt, double eps, double alpha) {
    const double s = (ngt > 0.0) ? renyi_bound_asymptotic(ngt, gt, alpha) : 0.0;
    return std::log1p(-alpha) - alpha / (1.0 - alpha) * std::log(eps) + s;
}

struct MinResult {
    double ln_value;
    double alpha;
};

MinResult minimize_ln_objective(double ngt, double gt, double eps) {
    // Bracket on a 1e-3 grid, then golden-section inside the bracket.
    double best = std::numeric_limits<double>::infinity();
    double best_alpha = kAlphaLo;
    for (double a = kAlphaLo; a < kAlphaHi; a += 1e-3) {
        const double v = ln_objective(ngt, gt, eps, a);
        if (!std::isfinite(v)) continue;
        if (v < best) {
            best = v;
            best_alpha = a;
        }
    }
    if (!std::isfinite(best))
        throw NumericalError("complexity: objective non-finite across the alpha grid");

    double lo = std::max(kAlphaLo, best_alpha - 1e-3);
    double hi = std::min(kAlphaHi, best_alpha + 1e-3);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = ln_objective(ngt, gt, eps, x1);
    double f2 = ln_objective(ngt, gt, eps, x2);
    for (int it = 0; it < 200 && (hi - lo) > 1e-12; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = ln_objective(ngt, gt, eps, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = ln_objective(ngt, gt, eps, x2);
        }
    }
    const double am = 0.5 * (lo + hi);
    const double fm = ln_objective(ngt, gt, eps, am);
    MinResult r{fm, am};
    if (f1 < r.ln_value) r = {f1, x1};
    if (f2 < r.ln_value) r = {f2, x2};
    if (best < r.ln_value) r = {best, best_alpha};

    // The alpha->0+ boundary value of the log objective is 2nT/tau, which
    // undercuts every clipped grid point in the memoryless limit T -> 0.
    const double ln_origin = (gt > 0.0) ? 2.0 * ngt / gt : 0.0;
    if (ln_origin < r.ln_value) r = {ln_origin, kAlphaLo};
    return r;
}

ComplexityEstimate estimate_from_combos(double ngt, double gt, double eps) {
    const MinResult m = minimize_ln_objective(ngt, gt, eps);
    ComplexityEstimate est;
    est.r_suff = std::max(1.0, std::exp(m.ln_value));
    est.d_er = std::sqrt(est.r_suff);
    if (est.d_er < 9.0e18) {
        est.d_er_ceil = static_cast<long long>(std::ceil(est.d_er - 1e-9));
        est.qubits = static_cast<int>(
            std::ceil(std::log2(static_cast<double>(est.d_er_ceil)) - 1e-12));
    } else {
        // Beyond integer range; the qubit count still follows from the log.
        est.d_er_ceil = std::numeric_limits<long long>::max();
        est.qubits = static_cast<int>(std::ceil(std::log2(est.d_er) - 1e-12));
    }
    est.alpha_star = m.alpha;
    return est;
}

}  // namespace

double renyi_bound(const PhysicalParams& p, double alpha, BoundMode mode) {
    p.validate();
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("renyi_bound: alpha must lie strictly inside (0,1)");
    const double gt = p.gamma_tau();
    const double n = static_cast<double>(p.n);
    if (mode == BoundMode::Asymptotic) {
        return renyi_bound_asymptotic(p.n_gamma_t(), gt, alpha);
    }
    const double steps = p.big_t / p.tau;
    const double num = steps * std::log1p(2.0 * n * std::pow(gt, alpha));
    const double den = alpha * steps * std::log1p(2.0 * n * gt);
    return (num - den) / (1.0 - alpha);
}

double sufficient_rank(const PhysicalParams& p) {
    p.validate();
    return estimate_from_combos(p.n_gamma_t(), p.gamma_tau(), p.epsilon).r_suff;
}

ComplexityEstimate effective_dimension(const PhysicalParams& p) {
    p.validate();
    return estimate_from_combos(p.n_gamma_t(), p.gamma_tau(), p.epsilon);
}

HeatmapGrid heatmap(double ngt_min, double ngt_max, double gt_min, double gt_max,
                    int resolution, double epsilon, int threads) {
    if (!(ngt_min > 0.0 && ngt_max > ngt_min))
        throw ValidationError("heatmap: invalid n*gamma*T range");
    if (!(gt_min > 0.0 && gt_max > gt_min && gt_max < 1.0))
        throw ValidationError("heatmap: gamma*tau range must lie in (0,1)");
    if (resolution < 2) throw ValidationError("heatmap: resolution must be >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ValidationError("heatmap: epsilon must lie in (0,1)");

    HeatmapGrid grid;
    grid.epsilon = epsilon;
    grid.ngt_axis.resize(resolution);
    grid.gt_axis.resize(resolution);
    for (int i = 0; i < resolution; ++i) {
        const double f = static_cast<double>(i) / (resolution - 1);
        grid.ngt_axis[i] = std::exp(std::log(ngt_min) + f * (std::log(ngt_max) - std::log(ngt_min)));
        grid.gt_axis[i] = std::exp(std::log(gt_min) + f * (std::log(gt_max) - std::log(gt_min)));
    }
    // Endpoints land exactly on the configured bounds.
    grid.ngt_axis.front() = ngt_min;
    grid.ngt_axis.back() = ngt_max;
    grid.gt_axis.front() = gt_min;
    grid.gt_axis.back() = gt_max;
    grid.cells.assign(static_cast<std::size_t>(resolution) * resolution, 0.0);

    auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            const std::size_t i = idx / resolution;
            const std::size_t j = idx % resolution;
            const auto est = estimate_from_combos(grid.ngt_axis[i], grid.gt_axis[j], epsilon);
            grid.cells[idx] = std::log2(est.d_er);
        }
    };

    const std::size_t total = grid.cells.size();
    const int nthreads = std::clamp(threads, 1, 64);
    if (nthreads == 1) {
        eval_range(0, total);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const std::size_t b = std::min(total, t * chunk);
            const std::size_t e = std::min(total, b + chunk);
            if (b < e) pool.emplace_back(eval_range, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return grid;
}

}  // namespace erdim
