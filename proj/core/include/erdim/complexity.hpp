#pragma once

#include <vector>

#include "erdim/params.hpp"

namespace erdim {

/// Result of minimizing the effective-reservoir dimension objective.
struct ComplexityEstimate {
    double d_er = 1.0;      // minimized real-valued dimension, >= 1
    long long d_er_ceil = 1;
    int qubits = 0;         // ceil(log2(d_er_ceil))
    double r_suff = 1.0;    // sufficient bond dimension, = d_er^2
    double alpha_star = 0.0;
};

/// Log-log grid of the qubit count log2(d_er) over (n gamma T, gamma tau).
struct HeatmapGrid {
    std::vector<double> ngt_axis;
    std::vector<double> gt_axis;
    std::vector<double> cells;  // row-major, cells[i*gt_axis.size()+j]
    double epsilon = 0.0;

    double at(std::size_t i, std::size_t j) const { return cells[i * gt_axis.size() + j]; }
};

enum class BoundMode { Exact, Asymptotic };

/// Renyi-entropy bound on the timeline network's temporal correlations.
/// Exact mode evaluates ln{[1+2n(gt)^a]^{T/tau} / (1+2n gt)^{a T/tau}}/(1-a);
/// asymptotic mode its weak-coupling limit 2 n gamma T ((gt)^{a-1}-a)/(1-a).
double renyi_bound(const PhysicalParams& p, double alpha, BoundMode mode);

/// Sufficient bond dimension min_a (1-a) eps^{-a/(1-a)} exp(S_a), minimized
/// by golden section after bracketing on a 1e-3 grid; floored at 1.
double sufficient_rank(const PhysicalParams& p);

/// Effective reservoir dimension (square root of the sufficient rank) with
/// the minimizing alpha and integer ceilings.
ComplexityEstimate effective_dimension(const PhysicalParams& p);

/// Heatmap of log2(d_er) over log-spaced axes; cells can be evaluated by a
/// small worker pool with deterministic placement.
HeatmapGrid heatmap(double ngt_min, double ngt_max, double gt_min, double gt_max,
                    int resolution, double epsilon, int threads = 1);

}  // namespace erdim
