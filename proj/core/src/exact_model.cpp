#include "erdim/exact_model.hpp"

#include <algorithm>
#include <cmath>

namespace erdim {

namespace {
constexpr int kMaxModes = 4096;
}

int ExactModel::mode_count() const {
    return static_cast<int>(std::llround((omega_max - omega_min) / delta_omega));
}

void ExactModel::validate() const {
    if (!(omega_min > 0.0 && omega_max > omega_min))
        throw ValidationError("exact model: need 0 < omega_min < omega_max");
    if (delta_omega <= 0.0) throw ValidationError("exact model: delta_omega must be positive");
    if (g < 0.0) throw ValidationError("exact model: negative coupling");
    const double n_real = (omega_max - omega_min) / delta_omega;
    const double n_round = std::llround(n_real);
    if (n_round < 1.0 || std::abs(n_real - n_round) > 1e-9 * std::max(1.0, n_real))
        throw ValidationError("exact model: (omega_max-omega_min)/delta_omega must be a positive integer");
}

double AmplitudeState::norm_squared() const {
    double s = std::norm(alpha);
    for (const auto& b : betas) s += std::norm(b);
    return s;
}

PhysicalParams derived_params(const ExactModel& m, double epsilon) {
    m.validate();
    const double width = m.omega_max - m.omega_min;
    PhysicalParams p;
    p.n = 2;
    p.gamma = m.g * width / m.delta_omega;
    p.big_t = 1.0 / width;
    p.tau = 1.0 / m.omega_max;
    p.epsilon = epsilon;
    p.validate();
    return p;
}

namespace {

struct ArrowheadEig {
    std::vector<double> values;
    ComplexMatrix vectors;
    std::vector<Complex> coeffs;  // overlap of eigenvectors with the initial state
};

ArrowheadEig diagonalize(const ExactModel& m) {
    const int n = m.mode_count();
    if (n > kMaxModes) throw SizeError("solve_finite: mode count exceeds the cap");
    ComplexMatrix h(n + 1, n + 1);
    h(0, 0) = m.omega;
    for (int k = 1; k <= n; ++k) {
        h(k, k) = m.omega_min + k * m.delta_omega;
        h(0, k) = m.g;
        h(k, 0) = m.g;
    }
    ArrowheadEig out;
    EigResult eig = hermitian_eig(h);
    out.values = std::move(eig.values);
    out.vectors = std::move(eig.vectors);
    out.coeffs.resize(n + 1);
    for (int k = 0; k <= n; ++k) out.coeffs[k] = std::conj(out.vectors(0, k));
    return out;
}

AmplitudeState amplitudes_at(const ArrowheadEig& eig, double t) {
    const int dim = static_cast<int>(eig.values.size());
    AmplitudeState st;
    st.betas.assign(dim - 1, Complex(0.0, 0.0));
    st.alpha = 0.0;
    std::vector<Complex> phase(dim);
    for (int k = 0; k < dim; ++k)
        phase[k] = std::exp(Complex(0.0, -eig.values[k] * t)) * eig.coeffs[k];
    for (int row = 0; row < dim; ++row) {
        Complex acc = 0.0;
        for (int k = 0; k < dim; ++k) acc += eig.vectors(row, k) * phase[k];
        if (row == 0)
            st.alpha = acc;
        else
            st.betas[row - 1] = acc;
    }
    return st;
}

void check_times(const std::vector<double>& times) {
    if (times.empty()) throw ValidationError("time grid is empty");
    if (times.front() < 0.0) throw ValidationError("time grid must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (times[k] <= times[k - 1]) throw ValidationError("time grid must be increasing");
}

}  // namespace

AmplitudeState solve_finite_amplitudes(const ExactModel& m, double t) {
    m.validate();
    return amplitudes_at(diagonalize(m), t);
}

Trajectory solve_finite(const ExactModel& m, const std::vector<double>& times) {
    m.validate();
    check_times(times);
    const ArrowheadEig eig = diagonalize(m);
    Trajectory traj;
    traj.times = times;
    auto& sz = traj.observables["sigma_z"];
    auto& pop = traj.observables["excited_population"];
    sz.reserve(times.size());
    pop.reserve(times.size());
    for (double t : times) {
        const AmplitudeState st = amplitudes_at(eig, t);
        const double p = std::norm(st.alpha);
        pop.push_back(p);
        sz.push_back(2.0 * p - 1.0);
    }
    return traj;
}

Complex memory_kernel(const ExactModel& m, double s) {
    if (s == 0.0) return Complex(m.omega_max - m.omega_min, 0.0);
    const Complex i1(0.0, 1.0);
    return (std::exp(-i1 * m.omega_min * s) - std::exp(-i1 * m.omega_max * s)) / (i1 * s);
}

Trajectory solve_continuum(const ExactModel& m, const std::vector<double>& times, double step) {
    m.validate();
    check_times(times);
    const double tau = 1.0 / m.omega_max;
    if (step > tau / 20.0 + 1e-15)
        throw StepError("solve_continuum: step must not exceed tau/20");
    const double t_end = times.back();
    const int nsteps = std::max(1, static_cast<int>(std::ceil(t_end / step - 1e-12)));
    const double h = (t_end > 0.0) ? t_end / nsteps : step;

    std::vector<Complex> kern(nsteps + 1);
    for (int k = 0; k <= nsteps; ++k) kern[k] = memory_kernel(m, k * h);

    const double c2 = m.g * m.g / m.delta_omega;
    const Complex iomega(0.0, m.omega);
    std::vector<Complex> al(nsteps + 1, Complex(0.0, 0.0));
    al[0] = 1.0;

    // Trapezoidal quadrature of the memory integral up to node k, with the
    // value at node k supplied by the caller (predictor or corrector).
    auto rhs = [&](int k, Complex ak) {
        Complex integral = 0.0;
        if (k > 0) {
            integral = 0.5 * (kern[k] * al[0] + kern[0] * ak);
            for (int j = 1; j < k; ++j) integral += kern[k - j] * al[j];
            integral *= h;
        }
        return -iomega * ak - c2 * integral;
    };

    for (int k = 0; k < nsteps; ++k) {
        const Complex fk = rhs(k, al[k]);
        Complex next = al[k] + h * fk;  // predictor
        // Corrector to fixed point: the converged step is the implicit
        // trapezoid rule, which keeps |alpha| = 1 exactly when g = 0.
        for (int it = 0; it < 32; ++it) {
            const Complex updated = al[k] + 0.5 * h * (fk + rhs(k + 1, next));
            const double delta = std::abs(updated - next);
            next = updated;
            if (delta < 1e-16) break;
        }
        al[k + 1] = next;
    }

    Trajectory traj;
    traj.times = times;
    auto& sz = traj.observables["sigma_z"];
    auto& pop = traj.observables["excited_population"];
    for (double t : times) {
        const double pos = (t_end > 0.0) ? t / h : 0.0;
        const int k0 = std::clamp(static_cast<int>(std::floor(pos)), 0, nsteps);
        const int k1 = std::min(k0 + 1, nsteps);
        const double w = std::clamp(pos - k0, 0.0, 1.0);
        const Complex a = (1.0 - w) * al[k0] + w * al[k1];
        const double p = std::norm(a);
        pop.push_back(p);
        sz.push_back(2.0 * p - 1.0);
    }
    return traj;
}

}  // namespace erdim
