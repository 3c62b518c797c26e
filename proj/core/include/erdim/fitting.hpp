#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "erdim/lindblad.hpp"

namespace erdim {

using Objective = std::function<double(const std::vector<double>&)>;

struct FitOptions {
    int max_iter = 2000;     // objective-evaluation budget per restart
    double tol = 1e-10;      // simplex diameter for convergence
    std::uint64_t seed = 0;
    int restarts = 5;        // deterministic perturbed restarts of x0
};

struct FitResult {
    std::vector<std::pair<std::string, double>> params;
    double mse = 0.0;
    long evaluations = 0;
    std::uint64_t seed = 0;
    std::vector<double> history;  // best vertex value per iteration of the winning run

    double param(const std::string& name) const;
};

/// Downhill simplex with the standard reflection/expansion/contraction/
/// shrink coefficients (1, 2, 0.5, 0.5). Restarts perturb x0
/// deterministically from the seed; the best run wins.
FitResult nelder_mead(const Objective& objective, const std::vector<double>& x0,
                      const FitOptions& options);

/// Mean squared error of a generalized-amplitude-damping trajectory from
/// rho_S(0) = |1><1| against the target's sigma_z series.
double markov_mse(const MarkovParams& p, const Trajectory& target);

/// Same for the two-qubit embedding from |1><1| x |0><0|.
double embedding_mse(const EmbeddingParams& p, const Trajectory& target);

/// Best Markov approximation: optimizes (log gamma_down, log gamma_up) at
/// fixed qubit splitting; rates stay positive by construction.
FitResult fit_markov(const Trajectory& target, double omega, std::uint64_t seed);

/// Fixed two-level effective reservoir: optimizes all seven generator
/// parameters, the four rates through their logarithms.
FitResult fit_embedding(const Trajectory& target, std::uint64_t seed);

}  // namespace erdim
