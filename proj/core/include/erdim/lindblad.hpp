#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "erdim/algebra.hpp"

namespace erdim {

/// Hamiltonian plus weighted jump operators defining a GKSL generator.
struct GkslGenerator {
    int dim = 0;
    ComplexMatrix hamiltonian;
    std::vector<std::pair<ComplexMatrix, double>> jumps;  // (operator, rate >= 0)

    void validate() const;
};

/// Generalized amplitude damping parameters: splitting and the two rates.
struct MarkovParams {
    double omega = 0.0;
    double gamma_down = 0.0;
    double gamma_up = 0.0;
};

/// Two-qubit system+reservoir embedding, all seven adjustable parameters.
struct EmbeddingParams {
    double omega1 = 0.0;
    double omega2 = 0.0;
    double g_tilde = 0.0;
    double gamma1_down = 0.0;
    double gamma1_up = 0.0;
    double gamma2_down = 0.0;
    double gamma2_up = 0.0;
};

/// Qubit coupled to a damped, Fock-truncated oscillator with
/// counter-rotating coupling.
struct PseudomodeParams {
    double omega0 = 0.0;      // qubit splitting
    double omega = 0.0;       // mode frequency
    double omega_rabi = 0.0;  // coupling strength Omega_0
    double gamma_decay = 0.0; // mode decay rate
    int cutoff = 1;           // Fock-space truncation
    double n0 = 0.0;          // effective photon number (reporting only)
};

/// Time grid with observable series and optionally the full vectorized
/// states. All series are aligned with `times`.
struct Trajectory {
    std::vector<double> times;
    std::optional<std::vector<std::vector<Complex>>> states;
    std::map<std::string, std::vector<double>> observables;
};

/// GKSL superoperator acting on row-major vectorized density operators:
/// L vec(rho) = vec(-i[H,rho] + sum_k rate_k (A rho A^H - {A^H A, rho}/2)).
/// The trace functional is a left null vector of the result.
ComplexMatrix build_superoperator(const GkslGenerator& gen);

/// Semigroup propagation exp(L t) vec(rho0) on a sorted time grid; one
/// matrix exponential per distinct time gap, reused across uniform grids.
/// Records states and, for even dimensions, a "sigma_z" series of the
/// first qubit factor.
Trajectory propagate(const GkslGenerator& gen, const ComplexMatrix& rho0,
                     const std::vector<double>& times);

GkslGenerator gad_generator(const MarkovParams& p);
GkslGenerator embedding2_generator(const EmbeddingParams& p);
GkslGenerator pseudomode_generator(const PseudomodeParams& p);

enum class Keep { A, B };

/// Partial trace of a (dA*dB)x(dA*dB) matrix over the discarded factor.
ComplexMatrix partial_trace(const ComplexMatrix& rho, int dim_a, int dim_b, Keep keep);

// Pauli/ladder operators in the (excited, ground) basis.
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();
ComplexMatrix sigma_x();
ComplexMatrix sigma_z();
ComplexMatrix number_op();  // sigma_+ sigma_-

/// Annihilation operator truncated to `cutoff` Fock states.
ComplexMatrix annihilation(int cutoff);

/// Validates Hermiticity, unit trace and positive semidefiniteness.
void validate_density_operator(const ComplexMatrix& rho, double tol = 1e-10);

}  // namespace erdim
