#include "erdim/lindblad.hpp"

#include <algorithm>
#include <cmath>

namespace erdim {

ComplexMatrix sigma_plus() {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    return m;
}

ComplexMatrix sigma_minus() {
    ComplexMatrix m(2, 2);
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix sigma_x() {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix sigma_z() {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

ComplexMatrix number_op() {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    return m;
}

ComplexMatrix annihilation(int cutoff) {
    if (cutoff < 1) throw ValidationError("annihilation: cutoff must be >= 1");
    ComplexMatrix a(cutoff, cutoff);
    for (int k = 1; k < cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

void GkslGenerator::validate() const {
    if (dim < 1) throw ValidationError("generator: dimension must be >= 1");
    if (hamiltonian.rows() != dim || hamiltonian.cols() != dim)
        throw ValidationError("generator: Hamiltonian dimension mismatch");
    if (!hamiltonian.is_hermitian(1e-12))
        throw ValidationError("generator: Hamiltonian is not Hermitian");
    for (const auto& [op, rate] : jumps) {
        if (op.rows() != dim || op.cols() != dim)
            throw ValidationError("generator: jump operator dimension mismatch");
        if (rate < 0.0) throw ValidationError("generator: negative jump rate");
    }
}

void validate_density_operator(const ComplexMatrix& rho, double tol) {
    if (rho.rows() != rho.cols()) throw ValidationError("density operator must be square");
    if (!rho.is_hermitian(tol)) throw ValidationError("density operator is not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol)
        throw ValidationError("density operator trace differs from 1");
    const auto evals = hermitian_eigenvalues(rho);
    if (!evals.empty() && evals.front() < -tol)
        throw ValidationError("density operator has a negative eigenvalue");
}

ComplexMatrix build_superoperator(const GkslGenerator& gen) {
    gen.validate();
    const int d = gen.dim;
    const ComplexMatrix id = ComplexMatrix::identity(d);
    const Complex i1(0.0, 1.0);

    ComplexMatrix l = kron(gen.hamiltonian, id);
    l *= -i1;
    ComplexMatrix r = kron(id, gen.hamiltonian.transpose());
    r *= i1;
    l += r;

    for (const auto& [op, rate] : gen.jumps) {
        if (rate == 0.0) continue;
        const ComplexMatrix opd = op.adjoint();
        const ComplexMatrix opdop = opd * op;
        ComplexMatrix sandwich = kron(op, op.conjugate());
        sandwich *= Complex(rate, 0.0);
        ComplexMatrix left = kron(opdop, id);
        left *= Complex(0.5 * rate, 0.0);
        ComplexMatrix right = kron(id, opdop.transpose());
        right *= Complex(0.5 * rate, 0.0);
        l += sandwich;
        l -= left;
        l -= right;
    }
    return l;
}

namespace {

std::vector<double> qubit_sigma_z_series(const std::vector<std::vector<Complex>>& states,
                                         int dim) {
    // tr[(sigma_z x 1) rho] for the leading qubit factor.
    std::vector<double> out;
    out.reserve(states.size());
    const int half = dim / 2;
    for (const auto& v : states) {
        double val = 0.0;
        for (int i = 0; i < dim; ++i) {
            const double sign = (i < half) ? 1.0 : -1.0;
            val += sign * v[static_cast<std::size_t>(i) * dim + i].real();
        }
        out.push_back(val);
    }
    return out;
}

}  // namespace

Trajectory propagate(const GkslGenerator& gen, const ComplexMatrix& rho0,
                     const std::vector<double>& times) {
    gen.validate();
    if (rho0.rows() != gen.dim || rho0.cols() != gen.dim)
        throw ValidationError("propagate: initial state dimension mismatch");
    validate_density_operator(rho0, 1e-10);
    if (times.empty()) throw ValidationError("propagate: empty time grid");
    for (std::size_t k = 1; k < times.size(); ++k)
        if (times[k] <= times[k - 1]) throw ValidationError("propagate: times must be increasing");

    const ComplexMatrix l = build_superoperator(gen);
    std::vector<std::vector<Complex>> states;
    states.reserve(times.size());

    std::vector<Complex> v;
    // Exponentials are cached per distinct gap so a uniform grid costs one.
    std::vector<std::pair<double, ComplexMatrix>> cache;
    auto step_matrix = [&](double dt) -> const ComplexMatrix& {
        for (const auto& entry : cache)
            if (std::abs(entry.first - dt) <= 1e-15 * std::max(1.0, std::abs(dt)))
                return entry.second;
        ComplexMatrix ldt = l;
        ldt *= Complex(dt, 0.0);
        cache.emplace_back(dt, matexp(ldt));
        return cache.back().second;
    };

    if (times.front() == 0.0) {
        v = vectorize(rho0);
    } else {
        v = matvec(step_matrix(times.front()), vectorize(rho0));
    }
    states.push_back(v);
    for (std::size_t k = 1; k < times.size(); ++k) {
        v = matvec(step_matrix(times[k] - times[k - 1]), v);
        states.push_back(v);
    }

    Trajectory traj;
    traj.times = times;
    if (gen.dim % 2 == 0) traj.observables["sigma_z"] = qubit_sigma_z_series(states, gen.dim);
    traj.states = std::move(states);
    return traj;
}

GkslGenerator gad_generator(const MarkovParams& p) {
    if (p.gamma_down < 0.0 || p.gamma_up < 0.0)
        throw ValidationError("gad_generator: negative rate");
    GkslGenerator gen;
    gen.dim = 2;
    gen.hamiltonian = number_op();
    gen.hamiltonian *= Complex(p.omega, 0.0);
    gen.jumps.emplace_back(sigma_minus(), p.gamma_down);
    gen.jumps.emplace_back(sigma_plus(), p.gamma_up);
    return gen;
}

GkslGenerator embedding2_generator(const EmbeddingParams& p) {
    if (p.gamma1_down < 0.0 || p.gamma1_up < 0.0 || p.gamma2_down < 0.0 || p.gamma2_up < 0.0)
        throw ValidationError("embedding2_generator: negative rate");
    const ComplexMatrix id = ComplexMatrix::identity(2);
    ComplexMatrix h = kron(number_op(), id);
    h *= Complex(p.omega1, 0.0);
    ComplexMatrix h2 = kron(id, number_op());
    h2 *= Complex(p.omega2, 0.0);
    ComplexMatrix hop = kron(sigma_plus(), sigma_minus()) + kron(sigma_minus(), sigma_plus());
    hop *= Complex(p.g_tilde, 0.0);
    h += h2;
    h += hop;

    GkslGenerator gen;
    gen.dim = 4;
    gen.hamiltonian = std::move(h);
    gen.jumps.emplace_back(kron(sigma_minus(), id), p.gamma1_down);
    gen.jumps.emplace_back(kron(sigma_plus(), id), p.gamma1_up);
    gen.jumps.emplace_back(kron(id, sigma_minus()), p.gamma2_down);
    gen.jumps.emplace_back(kron(id, sigma_plus()), p.gamma2_up);
    return gen;
}

GkslGenerator pseudomode_generator(const PseudomodeParams& p) {
    if (p.cutoff < 1) throw ValidationError("pseudomode_generator: cutoff must be >= 1");
    if (p.gamma_decay < 0.0) throw ValidationError("pseudomode_generator: negative decay rate");
    const int c = p.cutoff;
    const ComplexMatrix idq = ComplexMatrix::identity(2);
    const ComplexMatrix idm = ComplexMatrix::identity(c);
    const ComplexMatrix a = annihilation(c);
    const ComplexMatrix ad = a.adjoint();

    ComplexMatrix h = kron(number_op(), idm);
    h *= Complex(p.omega0, 0.0);
    ComplexMatrix hmode = kron(idq, ad * a);
    hmode *= Complex(p.omega, 0.0);
    ComplexMatrix hint = kron(sigma_x(), ad + a);
    hint *= Complex(p.omega_rabi, 0.0);
    h += hmode;
    h += hint;

    GkslGenerator gen;
    gen.dim = 2 * c;
    gen.hamiltonian = std::move(h);
    gen.jumps.emplace_back(kron(idq, a), p.gamma_decay);
    return gen;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int dim_a, int dim_b, Keep keep) {
    if (dim_a < 1 || dim_b < 1) throw ShapeError("partial_trace: invalid factor dimensions");
    if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b)
        throw ShapeError("partial_trace: matrix size does not match dim_a*dim_b");
    if (keep == Keep::A) {
        ComplexMatrix out(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i)
            for (int j = 0; j < dim_a; ++j) {
                Complex s = 0.0;
                for (int k = 0; k < dim_b; ++k) s += rho(i * dim_b + k, j * dim_b + k);
                out(i, j) = s;
            }
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (int i = 0; i < dim_b; ++i)
        for (int j = 0; j < dim_b; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < dim_a; ++k) s += rho(k * dim_b + i, k * dim_b + j);
            out(i, j) = s;
        }
    return out;
}

}  // namespace erdim
