#pragma once

#include <vector>

#include "erdim/lindblad.hpp"
#include "erdim/params.hpp"

namespace erdim {

/// Qubit of splitting Omega coupled with uniform strength g to N bath
/// modes spaced by delta_omega across the band (omega_min, omega_max].
struct ExactModel {
    double omega = 0.0;
    double omega_min = 0.0;
    double omega_max = 0.0;
    double delta_omega = 0.0;
    double g = 0.0;

    int mode_count() const;
    void validate() const;
};

/// Single-excitation amplitudes: excited-state amplitude and one photon
/// amplitude per mode.
struct AmplitudeState {
    Complex alpha;
    std::vector<Complex> betas;

    double norm_squared() const;
};

/// Reduced parameter set of the model: T = 1/(omega_max - omega_min),
/// tau = 1/omega_max, n = 2, gamma = g (omega_max - omega_min)/delta_omega.
PhysicalParams derived_params(const ExactModel& m, double epsilon);

/// Propagates the (N+1)-dimensional single-excitation system through a
/// Hermitian eigendecomposition of the arrowhead Hamiltonian, removing all
/// time-step error. Emits tr[sigma_z rho] = 2|alpha|^2 - 1 and |alpha|^2.
Trajectory solve_finite(const ExactModel& m, const std::vector<double>& times);

/// Final amplitudes of solve_finite at a single time.
AmplitudeState solve_finite_amplitudes(const ExactModel& m, double t);

/// Flat-band memory kernel (exp(-i omega_min s) - exp(-i omega_max s))/(i s)
/// with the removable singularity patched at s = 0.
Complex memory_kernel(const ExactModel& m, double s);

/// Continuum-limit Volterra integrodifferential solver for alpha(t),
/// trapezoidal predictor-corrector, second order in the step h.
Trajectory solve_continuum(const ExactModel& m, const std::vector<double>& times, double step);

}  // namespace erdim
