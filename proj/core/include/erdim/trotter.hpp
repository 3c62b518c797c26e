#pragma once

#include <utility>
#include <vector>

#include "erdim/lindblad.hpp"
#include "erdim/params.hpp"

namespace erdim {

/// Small system coupled to a stand-in reservoir (d_R <= 8) through n
/// product terms, with a possibly correlated separable initial state
/// rho(0) = sum_l sigma_S^(l) x sigma_R^(l).
struct CoupledModel {
    ComplexMatrix hs;
    ComplexMatrix hr;
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> couplings;  // (A_i, B_i)
    double gamma = 0.0;
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> initial;    // (sigma_S, sigma_R)

    int sys_dim() const { return hs.rows(); }
    int res_dim() const { return hr.rows(); }
    void validate() const;
};

/// One Trotter step split into the free layer (vectorized-space factors of
/// Phi0 on each side) and the 2n+1 interaction terms A_i (system side) and
/// B_i (reservoir side); index 0 carries the identity on both sides.
struct TrotterLayers {
    double tau = 0.0;
    ComplexMatrix phi0_sys;
    ComplexMatrix phi0_res;
    std::vector<ComplexMatrix> a_ops;
    std::vector<ComplexMatrix> b_ops;

    int sys_dim() const;
    int res_dim() const;
};

/// Rank-3 site tensor of the timeline chain, indices [left, phys, right].
struct SiteTensor {
    int left = 0, phys = 0, right = 0;
    std::vector<Complex> a;

    SiteTensor() = default;
    SiteTensor(int l, int p, int r)
        : left(l), phys(p), right(r),
          a(static_cast<std::size_t>(l) * p * r, Complex(0.0, 0.0)) {}

    Complex& at(int l, int i, int r) {
        return a[(static_cast<std::size_t>(l) * phys + i) * right + r];
    }
    const Complex& at(int l, int i, int r) const {
        return a[(static_cast<std::size_t>(l) * phys + i) * right + r];
    }
};

/// Timeline reservoir network in matrix-product form. Site m carries the
/// reservoir factor of one Trotter step at time m*tau; the physical index
/// of dimension 2n+1 labels the interaction term. `normalization` is the
/// 2-norm relating the stored chain to the unit-norm multipartite state.
struct TimelineMps {
    ComplexMatrix left_boundary;          // rows: initial-state terms l
    std::vector<SiteTensor> sites;
    std::vector<Complex> right_boundary;  // vectorized identity on the reservoir
    double normalization = 0.0;

    int steps() const { return static_cast<int>(sites.size()); }
    int max_bond() const;
};

/// Builds Phi0 factors and the interaction terms, including the -i/+i
/// factors and sqrt(gamma*tau) weights. Requires gamma*tau <= 0.1.
TrotterLayers build_trotter_layers(const CoupledModel& m, double tau);

/// Applies (Phi0 Phi_int)^steps to a vectorized joint state, interaction
/// layer first within each step. First order in gamma*tau.
std::vector<Complex> trotter_propagate(const TrotterLayers& layers,
                                       const std::vector<Complex>& rho0_vec, int steps);

/// Assembles the timeline chain for `steps` Trotter steps; untruncated
/// bond dimension is d_R^2 everywhere. d_R <= 8 and steps <= 64.
TimelineMps build_trn(const CoupledModel& m, double tau, int steps);

/// Schmidt spectrum of the unit-normalized chain across the cut between
/// sites m and m+1 (0 < m < N), from an SVD at the canonical center.
SchmidtSpectrum schmidt_cut(const TimelineMps& trn, int m);

/// Spectra of all internal cuts m = 1..N-1 from a single canonical pass;
/// element m-1 equals schmidt_cut(trn, m).
std::vector<SchmidtSpectrum> schmidt_all_cuts(const TimelineMps& trn);

/// Renyi entropy (1/(1-alpha)) ln sum_k lambda_k^alpha, alpha in (0,1).
double renyi_entropy(const SchmidtSpectrum& spec, double alpha);

struct TruncationResult {
    TimelineMps mps;
    double eps_achieved = 0.0;  // Frobenius distance to the unit-norm original
};

/// Left-to-right canonicalization followed by a right-to-left truncation
/// sweep keeping at most r Schmidt values per bond. The reported error is
/// the exact Frobenius distance, not the discarded-weight bound.
TruncationResult truncate(const TimelineMps& trn, int r);

/// Contracts the chain with the system half of the network and returns
/// rho_S after every step. Per-step extraction applies the stored trace
/// functional at each bond, so the chain must be untruncated.
Trajectory contract_with_system(const TimelineMps& trn, const TrotterLayers& layers,
                                const std::vector<ComplexMatrix>& sys_initial);

/// Reorders a vectorized joint state from the standard (S,R,S*,R*) index
/// grouping to the blocked (S,S*,R,R*) grouping used by the layers.
std::vector<Complex> group_system_reservoir(const std::vector<Complex>& v, int ds, int dr);
std::vector<Complex> ungroup_system_reservoir(const std::vector<Complex>& v, int ds, int dr);

/// Conjugates a superoperator in the blocked (S,S*,R,R*) ordering back to
/// the standard (S,R,S*,R*) ordering.
ComplexMatrix to_standard_ordering(const ComplexMatrix& grouped, int ds, int dr);

}  // namespace erdim
