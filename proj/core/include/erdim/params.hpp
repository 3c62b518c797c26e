#pragma once

#include "erdim/errors.hpp"

namespace erdim {

/// Reduced parameter set of an open dynamics problem: number of coupled
/// degrees of freedom n, coupling strength gamma, reservoir correlation
/// time T, minimal timescale tau, and target accuracy epsilon.
struct PhysicalParams {
    int n = 1;
    double gamma = 0.0;
    double big_t = 0.0;
    double tau = 0.0;
    double epsilon = 0.0;

    double gamma_tau() const { return gamma * tau; }
    double n_gamma_t() const { return n * gamma * big_t; }

    // T = 0 is admitted as the exact memoryless limit.
    void validate() const {
        if (n < 1) throw ValidationError("params: n must be >= 1");
        if (gamma <= 0.0) throw ValidationError("params: gamma must be positive");
        if (big_t < 0.0) throw ValidationError("params: T must be non-negative");
        if (tau <= 0.0) throw ValidationError("params: tau must be positive");
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw ValidationError("params: epsilon must lie in (0,1)");
        if (gamma * tau >= 1.0) throw ValidationError("params: gamma*tau must be below 1");
    }
};

}  // namespace erdim
