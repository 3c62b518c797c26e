#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "erdim/complexity.hpp"
#include "erdim/trotter.hpp"

using namespace erdim;

namespace {

ComplexMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (auto& z : m.data()) z = Complex(g(rng), g(rng));
    return m;
}

// Random Hermitian scaled to unit spectral norm.
ComplexMatrix random_unit_hermitian(int n, std::mt19937_64& rng) {
    ComplexMatrix a = random_matrix(n, n, rng);
    ComplexMatrix h = a + a.adjoint();
    h *= Complex(0.5, 0.0);
    const auto evals = hermitian_eigenvalues(h);
    const double top = std::max(std::abs(evals.front()), std::abs(evals.back()));
    h *= Complex(1.0 / top, 0.0);
    return h;
}

ComplexMatrix random_density(int n, std::mt19937_64& rng) {
    const ComplexMatrix a = random_matrix(n, n, rng);
    ComplexMatrix m = a * a.adjoint();
    m *= Complex(1.0 / m.trace().real(), 0.0);
    return m;
}

CoupledModel random_model(int ds, int dr, int n, double gamma, std::mt19937_64& rng,
                          int init_terms = 2) {
    CoupledModel m;
    m.hs = random_unit_hermitian(ds, rng);
    m.hr = random_unit_hermitian(dr, rng);
    for (int i = 0; i < n; ++i)
        m.couplings.emplace_back(random_unit_hermitian(ds, rng), random_unit_hermitian(dr, rng));
    m.gamma = gamma;
    std::uniform_real_distribution<double> u(0.2, 0.8);
    if (init_terms == 1) {
        m.initial = {{random_density(ds, rng), random_density(dr, rng)}};
    } else {
        const double w = u(rng);
        ComplexMatrix s1 = random_density(ds, rng);
        s1 *= Complex(w, 0.0);
        ComplexMatrix s2 = random_density(ds, rng);
        s2 *= Complex(1.0 - w, 0.0);
        m.initial = {{s1, random_density(dr, rng)}, {s2, random_density(dr, rng)}};
    }
    return m;
}

std::vector<Complex> joint_initial_vec(const CoupledModel& m) {
    ComplexMatrix rho(m.sys_dim() * m.res_dim(), m.sys_dim() * m.res_dim());
    for (const auto& [ss, sr] : m.initial) rho += kron(ss, sr);
    return vectorize(rho);
}

// Full joint Hamiltonian H0 + gamma sum A_i x B_i.
ComplexMatrix total_hamiltonian(const CoupledModel& m) {
    ComplexMatrix h = kron(m.hs, ComplexMatrix::identity(m.res_dim()));
    h += kron(ComplexMatrix::identity(m.sys_dim()), m.hr);
    for (const auto& [a, b] : m.couplings) {
        ComplexMatrix term = kron(a, b);
        term *= Complex(m.gamma, 0.0);
        h += term;
    }
    return h;
}

// Exact vectorized superpropagator exp(-itH) x exp(itH^T).
ComplexMatrix exact_superpropagator(const ComplexMatrix& h, double t) {
    ComplexMatrix hm = h, hp = h.transpose();
    hm *= Complex(0.0, -t);
    hp *= Complex(0.0, t);
    return kron(matexp(hm), matexp(hp));
}

// Dense amplitudes psi[l][digit string] contracted from the chain.
std::vector<std::vector<Complex>> explicit_psi(const TimelineMps& trn) {
    const int n = trn.steps();
    const int p = trn.sites.front().phys;
    const int lc = trn.left_boundary.rows();
    std::size_t total = 1;
    for (int k = 0; k < n; ++k) total *= p;
    std::vector<std::vector<Complex>> psi(lc, std::vector<Complex>(total));
    for (int l = 0; l < lc; ++l) {
        for (std::size_t code = 0; code < total; ++code) {
            std::vector<Complex> v(trn.left_boundary.cols());
            for (int b = 0; b < trn.left_boundary.cols(); ++b) v[b] = trn.left_boundary(l, b);
            std::size_t rest = code;
            for (int k = 0; k < n; ++k) {
                const int i = static_cast<int>(rest % p);
                rest /= p;
                const SiteTensor& st = trn.sites[k];
                std::vector<Complex> w(st.right, Complex(0.0, 0.0));
                for (int bp = 0; bp < st.right; ++bp) {
                    Complex acc = 0.0;
                    for (int b = 0; b < st.left; ++b) acc += v[b] * st.at(b, i, bp);
                    w[bp] = acc;
                }
                v.swap(w);
            }
            Complex acc = 0.0;
            for (std::size_t b = 0; b < trn.right_boundary.size(); ++b)
                acc += v[b] * trn.right_boundary[b];
            psi[l][code] = acc;
        }
    }
    return psi;
}

double psi_norm(const std::vector<std::vector<Complex>>& psi) {
    double s = 0.0;
    for (const auto& row : psi)
        for (const auto& z : row) s += std::norm(z);
    return std::sqrt(s);
}

// Reduced matrix across the cut after site m, indices (l, i_1..i_m).
ComplexMatrix explicit_reduced_matrix(const std::vector<std::vector<Complex>>& psi, int p, int n,
                                      int m) {
    std::size_t left_sz = 1, right_sz = 1;
    for (int k = 0; k < m; ++k) left_sz *= p;
    for (int k = m; k < n; ++k) right_sz *= p;
    const int lc = static_cast<int>(psi.size());
    const int rows = static_cast<int>(left_sz) * lc;
    ComplexMatrix red(rows, rows);
    double norm2 = 0.0;
    for (const auto& row : psi)
        for (const auto& z : row) norm2 += std::norm(z);
    for (int l = 0; l < lc; ++l)
        for (int lp = 0; lp < lc; ++lp)
            for (std::size_t a = 0; a < left_sz; ++a)
                for (std::size_t ap = 0; ap < left_sz; ++ap) {
                    Complex acc = 0.0;
                    for (std::size_t y = 0; y < right_sz; ++y)
                        acc += psi[l][a + left_sz * y] * std::conj(psi[lp][ap + left_sz * y]);
                    red(static_cast<int>(a) * lc + l, static_cast<int>(ap) * lc + lp) =
                        acc / norm2;
                }
    return red;
}

// Entropy of an eigenvalue list with rounding noise clipped away; trace-1
// spectra carry eigensolver noise at the 1e-15 scale, and raising it to a
// small alpha would otherwise dominate the sum.
double renyi_from_values(const std::vector<double>& lams, double alpha) {
    double acc = 0.0;
    for (double lam : lams)
        if (lam > 1e-12) acc += std::pow(lam, alpha);
    return std::log(acc) / (1.0 - alpha);
}

}  // namespace

TEST_CASE("layer structure: counts, identity term, step-size guard") {
    std::mt19937_64 rng(3);
    const CoupledModel m = random_model(2, 2, 1, 0.4, rng);
    const TrotterLayers layers = build_trotter_layers(m, 0.1);
    CHECK(layers.a_ops.size() == 3);
    CHECK(layers.b_ops.size() == 3);

    ComplexMatrix ia = layers.a_ops[0];
    ia -= ComplexMatrix::identity(4);
    CHECK(ia.max_abs() == 0.0);
    ComplexMatrix ib = layers.b_ops[0];
    ib -= ComplexMatrix::identity(4);
    CHECK(ib.max_abs() == 0.0);

    CHECK_THROWS_AS(build_trotter_layers(m, 0.5), StepError);
}

TEST_CASE("interaction layer equals its first-order expansion") {
    std::mt19937_64 rng(7);
    const CoupledModel m = random_model(2, 3, 2, 0.3, rng);
    const double tau = 0.05;
    const TrotterLayers layers = build_trotter_layers(m, tau);
    const int ds = m.sys_dim(), dr = m.res_dim();

    ComplexMatrix phi_int(ds * ds * dr * dr, ds * ds * dr * dr);
    for (std::size_t i = 0; i < layers.a_ops.size(); ++i)
        phi_int += kron(layers.a_ops[i], layers.b_ops[i]);
    const ComplexMatrix phi_std = to_standard_ordering(phi_int, ds, dr);

    ComplexMatrix hint(ds * dr, ds * dr);
    for (const auto& [a, b] : m.couplings) hint += kron(a, b);
    const ComplexMatrix id = ComplexMatrix::identity(ds * dr);
    ComplexMatrix expected = kron(hint, id);
    expected -= kron(id, hint.transpose());
    expected *= Complex(0.0, -m.gamma * tau);
    expected += ComplexMatrix::identity(ds * ds * dr * dr);

    ComplexMatrix diff = phi_std;
    diff -= expected;
    CHECK(diff.max_abs() < 1e-12);
}

TEST_CASE("trotter_propagate: zero steps and the decoupled limit") {
    std::mt19937_64 rng(11);
    const CoupledModel m = random_model(2, 2, 1, 0.0, rng);
    const TrotterLayers layers = build_trotter_layers(m, 0.07);
    const auto v0 = joint_initial_vec(m);

    const auto same = trotter_propagate(layers, v0, 0);
    for (std::size_t i = 0; i < v0.size(); ++i) CHECK(std::abs(same[i] - v0[i]) == 0.0);

    const int steps = 9;
    const auto out = trotter_propagate(layers, v0, steps);
    ComplexMatrix h0 = kron(m.hs, ComplexMatrix::identity(2));
    h0 += kron(ComplexMatrix::identity(2), m.hr);
    const auto expected = matvec(exact_superpropagator(h0, 0.07 * steps), v0);
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(std::abs(out[i] - expected[i]) < 1e-11);
}

TEST_CASE("trotter error shrinks linearly in tau on a qubit+qubit model") {
    std::mt19937_64 rng(13);
    const CoupledModel m = random_model(2, 2, 1, 0.5, rng, 1);
    const ComplexMatrix h = total_hamiltonian(m);
    const double t_total = 0.8;
    const auto v0 = joint_initial_vec(m);
    const auto exact = matvec(exact_superpropagator(h, t_total), v0);

    std::vector<double> log_tau, log_err;
    for (int k = 0; k < 4; ++k) {
        const int steps = 8 << k;
        const double tau = t_total / steps;
        const TrotterLayers layers = build_trotter_layers(m, tau);
        const auto approx = trotter_propagate(layers, v0, steps);
        std::vector<Complex> dv(v0.size());
        for (std::size_t i = 0; i < v0.size(); ++i) dv[i] = approx[i] - exact[i];
        // Trace distance of the joint states.
        const SvdResult f = svd(devectorize(dv));
        double tdist = 0.0;
        for (double s : f.s) tdist += s;
        tdist *= 0.5;
        log_tau.push_back(std::log(tau));
        log_err.push_back(std::log(tdist));
    }
    // least-squares slope
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < 4; ++i) {
        mx += log_tau[i] / 4.0;
        my += log_err[i] / 4.0;
    }
    double num = 0.0, den = 0.0;
    for (int i = 0; i < 4; ++i) {
        num += (log_tau[i] - mx) * (log_err[i] - my);
        den += (log_tau[i] - mx) * (log_tau[i] - mx);
    }
    const double slope = num / den;
    CHECK(slope > 0.85);
    CHECK(slope < 1.15);
}

TEST_CASE("chain structure and contraction equality with direct propagation") {
    std::mt19937_64 rng(17);
    const CoupledModel m = random_model(2, 3, 1, 0.4, rng);
    const double tau = 0.08;
    const int steps = 7;
    const TimelineMps trn = build_trn(m, tau, steps);
    CHECK(trn.steps() == steps);
    CHECK(trn.left_boundary.cols() == 9);
    for (const auto& s : trn.sites) {
        CHECK(s.left == 9);
        CHECK(s.right == 9);
        CHECK(s.phys == 3);
    }

    const TrotterLayers layers = build_trotter_layers(m, tau);
    std::vector<ComplexMatrix> sys_terms;
    for (const auto& [ss, sr] : m.initial) sys_terms.push_back(ss);
    const Trajectory traj = contract_with_system(trn, layers, sys_terms);
    const auto& states = *traj.states;
    CHECK(states.size() == static_cast<std::size_t>(steps + 1));

    auto v = joint_initial_vec(m);
    for (int k = 0; k <= steps; ++k) {
        const ComplexMatrix joint = devectorize(trotter_propagate(layers, v, k));
        const ComplexMatrix rho_s = partial_trace(joint, 2, 3, Keep::A);
        const ComplexMatrix got = devectorize(states[k]);
        ComplexMatrix diff = got;
        diff -= rho_s;
        CHECK(diff.max_abs() < 1e-10);
    }

    // 0 steps reduces to sum_l sigma_S tr(sigma_R).
    ComplexMatrix expected0(2, 2);
    for (const auto& [ss, sr] : m.initial) {
        ComplexMatrix term = ss;
        term *= sr.trace();
        expected0 += term;
    }
    ComplexMatrix d0 = devectorize(states[0]);
    d0 -= expected0;
    CHECK(d0.max_abs() < 1e-12);

    CHECK_THROWS_AS(build_trn(m, tau, 100), SizeError);
}

TEST_CASE("decoupled chain is a product state with unitary system evolution") {
    std::mt19937_64 rng(19);
    const CoupledModel m = random_model(2, 2, 1, 0.0, rng);
    const double tau = 0.09;
    const TimelineMps trn = build_trn(m, tau, 6);
    const SchmidtSpectrum spec = schmidt_cut(trn, 3);
    CHECK(spec.values.front() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t k = 1; k < spec.values.size(); ++k) CHECK(spec.values[k] < 1e-12);
    CHECK(renyi_entropy(spec, 0.5) == doctest::Approx(0.0).epsilon(1e-10));

    const TrotterLayers layers = build_trotter_layers(m, tau);
    std::vector<ComplexMatrix> sys_terms;
    for (const auto& [ss, sr] : m.initial) sys_terms.push_back(ss);
    const Trajectory traj = contract_with_system(trn, layers, sys_terms);
    // gamma = 0: system evolves unitarily under hs alone.
    ComplexMatrix rho_s0 = devectorize(traj.states->front());
    for (int k = 1; k <= 6; ++k) {
        ComplexMatrix hm = m.hs, hp = m.hs.transpose();
        hm *= Complex(0.0, -tau * k);
        hp *= Complex(0.0, tau * k);
        const auto expected = matvec(kron(matexp(hm), matexp(hp)), vectorize(rho_s0));
        const auto& got = (*traj.states)[k];
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - expected[i]) < 1e-11);
    }
}

TEST_CASE("schmidt spectrum matches the explicit reduced matrix") {
    std::mt19937_64 rng(23);
    const CoupledModel m = random_model(2, 2, 1, 0.08, rng);
    const double tau = 0.1;
    const int steps = 4;
    const TimelineMps trn = build_trn(m, tau, steps);

    const auto psi = explicit_psi(trn);
    CHECK(psi_norm(psi) == doctest::Approx(trn.normalization).epsilon(1e-10));

    for (int cut = 1; cut < steps; ++cut) {
        const SchmidtSpectrum spec = schmidt_cut(trn, cut);
        double sum = 0.0;
        for (double v : spec.values) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
        for (std::size_t k = 1; k < spec.values.size(); ++k)
            CHECK(spec.values[k] <= spec.values[k - 1] + 1e-14);

        const ComplexMatrix red = explicit_reduced_matrix(psi, 3, steps, cut);
        auto evals = hermitian_eigenvalues(red);
        std::sort(evals.rbegin(), evals.rend());
        for (double alpha : {0.3, 0.5, 0.7}) {
            const double s_chain = renyi_entropy(spec, alpha);
            std::vector<double> clipped;
            for (double v : evals) clipped.push_back(std::max(v, 0.0));
            const double s_explicit = renyi_from_values(clipped, alpha);
            CHECK(s_chain == doctest::Approx(s_explicit).epsilon(1e-9));
        }
    }

    CHECK_THROWS_AS(schmidt_cut(trn, 0), RangeError);
    CHECK_THROWS_AS(schmidt_cut(trn, steps), RangeError);

    const auto all = schmidt_all_cuts(trn);
    REQUIRE(all.size() == static_cast<std::size_t>(steps - 1));
    for (int cut = 1; cut < steps; ++cut) {
        const SchmidtSpectrum one = schmidt_cut(trn, cut);
        REQUIRE(all[cut - 1].values.size() == one.values.size());
        for (std::size_t k = 0; k < one.values.size(); ++k)
            CHECK(all[cut - 1].values[k] == doctest::Approx(one.values[k]).epsilon(1e-12));
    }
}

TEST_CASE("renyi entropy basics and the von Neumann limit") {
    SchmidtSpectrum pure;
    pure.values = {1.0};
    CHECK(renyi_entropy(pure, 0.3) == doctest::Approx(0.0));

    SchmidtSpectrum flat;
    flat.values.assign(7, 1.0 / 7.0);
    for (double alpha : {0.1, 0.5, 0.9})
        CHECK(renyi_entropy(flat, alpha) == doctest::Approx(std::log(7.0)).epsilon(1e-12));

    SchmidtSpectrum mixed;
    mixed.values = {0.5, 0.3, 0.15, 0.05};
    double von_neumann = 0.0;
    for (double lam : mixed.values) von_neumann -= lam * std::log(lam);
    CHECK(std::abs(renyi_entropy(mixed, 0.999) - von_neumann) < 1e-3 * von_neumann + 1e-4);

    CHECK_THROWS_AS(renyi_entropy(mixed, 1.0), DomainError);
    CHECK_THROWS_AS(renyi_entropy(mixed, -0.1), DomainError);
}

TEST_CASE("truncation: exact rank keeps the chain, single-cut error is the tail") {
    std::mt19937_64 rng(29);
    const CoupledModel m = random_model(2, 2, 1, 0.09, rng);
    const TimelineMps trn = build_trn(m, 0.1, 6);

    const TruncationResult full = truncate(trn, trn.max_bond());
    CHECK(full.eps_achieved == 0.0);
    CHECK(full.mps.normalization == doctest::Approx(trn.normalization).epsilon(1e-10));

    // Two-site chain with a product initial state: only the internal cut can
    // discard weight, so the error is exactly the Schmidt tail there.
    std::mt19937_64 rng_one(30);
    const CoupledModel m_one = random_model(2, 2, 1, 0.09, rng_one, 1);
    const TimelineMps two = build_trn(m_one, 0.1, 2);
    const SchmidtSpectrum spec = schmidt_cut(two, 1);
    for (int r = 1; r <= 3; ++r) {
        const TruncationResult tr = truncate(two, r);
        double tail = 0.0;
        for (std::size_t k = r; k < spec.values.size(); ++k) tail += spec.values[k];
        CHECK(std::abs(tr.eps_achieved * tr.eps_achieved - tail) < 1e-10);
    }

    CHECK_THROWS_AS(truncate(trn, 0), ValidationError);
}

TEST_CASE("truncation error bound holds across ranks and alphas") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int checks = 0;
    for (int inst = 0; inst < 12; ++inst) {
        const int dr = 2 + static_cast<int>(rng() % 3);
        const int steps = 4 + static_cast<int>(rng() % 5);
        const double gt = std::pow(10.0, -3.0 + u01(rng));
        const double tau = 0.1;
        const CoupledModel m = random_model(2, dr, 1, gt / tau, rng);
        const TimelineMps trn = build_trn(m, tau, steps);

        std::vector<SchmidtSpectrum> spectra;
        for (int cut = 1; cut < steps; ++cut) spectra.push_back(schmidt_cut(trn, cut));

        for (int r = 1; r <= dr * dr; ++r) {
            const double eps = truncate(trn, r).eps_achieved;
            if (eps <= 0.0) continue;
            for (int ai = 1; ai <= 9; ++ai) {
                const double alpha = 0.1 * ai;
                double s_max = -1e300;
                for (const auto& spec : spectra)
                    s_max = std::max(s_max, renyi_entropy(spec, alpha));
                const double rhs =
                    (1.0 - alpha) / alpha * (s_max - std::log(r / (1.0 - alpha)));
                CHECK(std::log(eps) <= rhs);
                ++checks;
            }
        }
    }
    CHECK(checks > 100);
}

TEST_CASE("sufficient rank covers the bond dimension a target accuracy needs") {
    // In the weak-coupling regime the closed-form sufficient rank (with T
    // set to the full evolution time) must dominate the rank at which the
    // actual truncation error first drops below epsilon.
    std::mt19937_64 rng(47);
    for (int inst = 0; inst < 3; ++inst) {
        const double tau = 0.1;
        const double gt = 0.008;
        const int steps = 10;
        const CoupledModel m = random_model(2, 3, 1, gt / tau, rng);
        const TimelineMps trn = build_trn(m, tau, steps);
        const double eps_target = 0.05;

        int needed = trn.max_bond();
        for (int r = 1; r <= trn.max_bond(); ++r) {
            if (truncate(trn, r).eps_achieved <= eps_target) {
                needed = r;
                break;
            }
        }
        PhysicalParams p;
        p.n = 1;
        p.gamma = gt / tau;
        p.tau = tau;
        p.big_t = steps * tau;
        p.epsilon = eps_target;
        CHECK(static_cast<double>(needed) <= sufficient_rank(p));
    }
}

TEST_CASE("computed entropy stays below the rigorous decomposition bound") {
    std::mt19937_64 rng(37);
    const CoupledModel m = random_model(2, 2, 1, 0.09, rng);
    const int steps = 5;
    const TimelineMps trn = build_trn(m, 0.1, steps);
    const auto psi = explicit_psi(trn);
    const double nrm = psi_norm(psi);
    const int p = 3;
    const int cut = steps / 2;
    std::size_t left_sz = 1, right_sz = 1;
    for (int k = 0; k < cut; ++k) left_sz *= p;
    for (int k = cut; k < steps; ++k) right_sz *= p;

    const SchmidtSpectrum spec = schmidt_cut(trn, cut);
    for (double alpha : {0.2, 0.5, 0.8}) {
        // sum over right strings of (sum over l and left strings |psi|^2)^alpha
        double acc = 0.0;
        for (std::size_t y = 0; y < right_sz; ++y) {
            double w = 0.0;
            for (std::size_t l = 0; l < psi.size(); ++l)
                for (std::size_t a = 0; a < left_sz; ++a)
                    w += std::norm(psi[l][a + left_sz * y] / nrm);
            acc += std::pow(w, alpha);
        }
        const double rigorous = std::log(acc) / (1.0 - alpha);
        CHECK(renyi_entropy(spec, alpha) <= rigorous + 1e-12);
    }
}

TEST_CASE("closed-form bound with T = N tau dominates the computed entropy") {
    std::mt19937_64 rng(41);
    for (int inst = 0; inst < 4; ++inst) {
        const double tau = 0.1;
        const double gt = 0.01;
        const int steps = 8;
        const CoupledModel m = random_model(2, 2, 1, gt / tau, rng);
        const TimelineMps trn = build_trn(m, tau, steps);
        PhysicalParams p;
        p.n = 1;
        p.gamma = gt / tau;
        p.tau = tau;
        p.big_t = steps * tau;
        p.epsilon = 0.05;
        const SchmidtSpectrum spec = schmidt_cut(trn, steps / 2);
        for (double alpha : {0.3, 0.5, 0.7}) {
            const double bound = renyi_bound(p, alpha, BoundMode::Exact);
            CHECK(renyi_entropy(spec, alpha) <= 1.2 * bound);
        }
    }
}

TEST_CASE("schur-concavity bound on random vector decompositions") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> dim_pick(2, 6), count_pick(1, 10);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = dim_pick(rng);
        const int q = count_pick(rng);
        std::vector<std::vector<Complex>> vecs(q, std::vector<Complex>(d));
        std::normal_distribution<double> g(0.0, 1.0);
        ComplexMatrix mmat(d, d);
        for (auto& v : vecs)
            for (auto& z : v) z = Complex(g(rng), g(rng));
        double tr = 0.0;
        for (const auto& v : vecs)
            for (const auto& z : v) tr += std::norm(z);
        for (auto& v : vecs)
            for (auto& z : v) z /= std::sqrt(tr);
        for (const auto& v : vecs)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) mmat(i, j) += v[i] * std::conj(v[j]);

        auto evals = hermitian_eigenvalues(mmat);
        std::vector<double> lam;
        for (double e : evals) lam.push_back(std::max(e, 0.0));
        for (int ai = 1; ai <= 9; ++ai) {
            const double alpha = 0.1 * ai;
            const double lhs = renyi_from_values(lam, alpha);
            double rhs_acc = 0.0;
            for (const auto& v : vecs) {
                double nn = 0.0;
                for (const auto& z : v) nn += std::norm(z);
                rhs_acc += std::pow(nn, alpha);
            }
            const double rhs = std::log(rhs_acc) / (1.0 - alpha);
            CHECK(lhs <= rhs + 1e-10);
        }
    }
}
