#include "erdim/trotter.hpp"

#include <algorithm>
#include <cmath>

namespace erdim {

namespace {

int isqrt_exact(int n, const char* what) {
    const int r = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
    if (r * r != n) throw ShapeError(std::string(what) + ": dimension is not a perfect square");
    return r;
}

}  // namespace

int TrotterLayers::sys_dim() const { return isqrt_exact(phi0_sys.rows(), "layers"); }
int TrotterLayers::res_dim() const { return isqrt_exact(phi0_res.rows(), "layers"); }

int TimelineMps::max_bond() const {
    int b = left_boundary.cols();
    for (const auto& s : sites) b = std::max(b, s.right);
    return b;
}

void CoupledModel::validate() const {
    if (hs.rows() != hs.cols() || hs.rows() < 1)
        throw ValidationError("coupled model: invalid system Hamiltonian");
    if (hr.rows() != hr.cols() || hr.rows() < 1)
        throw ValidationError("coupled model: invalid reservoir Hamiltonian");
    if (hr.rows() > 8) throw ValidationError("coupled model: stand-in reservoir limited to d_R <= 8");
    if (!hs.is_hermitian(1e-12) || !hr.is_hermitian(1e-12))
        throw ValidationError("coupled model: Hamiltonians must be Hermitian");
    if (couplings.empty()) throw ValidationError("coupled model: needs at least one coupling term");
    if (gamma < 0.0) throw ValidationError("coupled model: negative coupling strength");
    for (const auto& [a, b] : couplings) {
        if (a.rows() != sys_dim() || a.cols() != sys_dim() || b.rows() != res_dim() ||
            b.cols() != res_dim())
            throw ValidationError("coupled model: coupling operator dimension mismatch");
    }
    if (initial.empty()) throw ValidationError("coupled model: empty initial decomposition");
    ComplexMatrix rho0(sys_dim() * res_dim(), sys_dim() * res_dim());
    for (const auto& [ss, sr] : initial) {
        if (ss.rows() != sys_dim() || ss.cols() != sys_dim() || sr.rows() != res_dim() ||
            sr.cols() != res_dim())
            throw ValidationError("coupled model: initial term dimension mismatch");
        rho0 += kron(ss, sr);
    }
    validate_density_operator(rho0, 1e-10);
}

TrotterLayers build_trotter_layers(const CoupledModel& m, double tau) {
    m.validate();
    if (tau <= 0.0) throw ValidationError("build_trotter_layers: tau must be positive");
    if (m.gamma * tau > 0.1)
        throw StepError("build_trotter_layers: gamma*tau exceeds 0.1");

    const int ds = m.sys_dim(), dr = m.res_dim();
    const Complex itau(0.0, tau);

    TrotterLayers layers;
    layers.tau = tau;
    ComplexMatrix hs_m = m.hs, hs_p = m.hs.transpose();
    hs_m *= -itau;
    hs_p *= itau;
    layers.phi0_sys = kron(matexp(hs_m), matexp(hs_p));
    ComplexMatrix hr_m = m.hr, hr_p = m.hr.transpose();
    hr_m *= -itau;
    hr_p *= itau;
    layers.phi0_res = kron(matexp(hr_m), matexp(hr_p));

    const double c = std::sqrt(m.gamma * tau);
    const ComplexMatrix ids = ComplexMatrix::identity(ds);
    const ComplexMatrix idr = ComplexMatrix::identity(dr);
    layers.a_ops.push_back(ComplexMatrix::identity(ds * ds));
    layers.b_ops.push_back(ComplexMatrix::identity(dr * dr));
    for (const auto& [a, b] : m.couplings) {
        ComplexMatrix ak = kron(a, ids);
        ak *= Complex(c, 0.0);
        layers.a_ops.push_back(std::move(ak));
        ComplexMatrix bk = kron(b, idr);
        bk *= Complex(0.0, -c);
        layers.b_ops.push_back(std::move(bk));
    }
    for (const auto& [a, b] : m.couplings) {
        ComplexMatrix ak = kron(ids, a.transpose());
        ak *= Complex(c, 0.0);
        layers.a_ops.push_back(std::move(ak));
        ComplexMatrix bk = kron(idr, b.transpose());
        bk *= Complex(0.0, c);
        layers.b_ops.push_back(std::move(bk));
    }
    return layers;
}

std::vector<Complex> group_system_reservoir(const std::vector<Complex>& v, int ds, int dr) {
    const std::size_t dim = static_cast<std::size_t>(ds) * ds * dr * dr;
    if (v.size() != dim) throw ShapeError("group_system_reservoir: length mismatch");
    std::vector<Complex> out(dim);
    for (int s = 0; s < ds; ++s)
        for (int sp = 0; sp < ds; ++sp)
            for (int r = 0; r < dr; ++r)
                for (int rp = 0; rp < dr; ++rp)
                    out[(static_cast<std::size_t>(s) * ds + sp) * dr * dr + r * dr + rp] =
                        v[(static_cast<std::size_t>(s) * dr + r) * ds * dr + sp * dr + rp];
    return out;
}

std::vector<Complex> ungroup_system_reservoir(const std::vector<Complex>& v, int ds, int dr) {
    const std::size_t dim = static_cast<std::size_t>(ds) * ds * dr * dr;
    if (v.size() != dim) throw ShapeError("ungroup_system_reservoir: length mismatch");
    std::vector<Complex> out(dim);
    for (int s = 0; s < ds; ++s)
        for (int sp = 0; sp < ds; ++sp)
            for (int r = 0; r < dr; ++r)
                for (int rp = 0; rp < dr; ++rp)
                    out[(static_cast<std::size_t>(s) * dr + r) * ds * dr + sp * dr + rp] =
                        v[(static_cast<std::size_t>(s) * ds + sp) * dr * dr + r * dr + rp];
    return out;
}

ComplexMatrix to_standard_ordering(const ComplexMatrix& grouped, int ds, int dr) {
    const int dim = ds * ds * dr * dr;
    if (grouped.rows() != dim || grouped.cols() != dim)
        throw ShapeError("to_standard_ordering: dimension mismatch");
    std::vector<int> perm(dim);  // standard index -> grouped index
    for (int s = 0; s < ds; ++s)
        for (int r = 0; r < dr; ++r)
            for (int sp = 0; sp < ds; ++sp)
                for (int rp = 0; rp < dr; ++rp)
                    perm[((s * dr + r) * ds + sp) * dr + rp] =
                        (s * ds + sp) * dr * dr + r * dr + rp;
    ComplexMatrix out(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) out(i, j) = grouped(perm[i], perm[j]);
    return out;
}

namespace {

// One Trotter step acting on the state reshaped as a (ds^2 x dr^2) matrix:
// interaction layer sum_i A_i X B_i^T first, then the free layer.
ComplexMatrix apply_step(const TrotterLayers& layers, const ComplexMatrix& x,
                         const std::vector<ComplexMatrix>& b_t,
                         const ComplexMatrix& phi0_res_t) {
    ComplexMatrix after_int(x.rows(), x.cols());
    for (std::size_t i = 0; i < layers.a_ops.size(); ++i)
        after_int += layers.a_ops[i] * x * b_t[i];
    return layers.phi0_sys * after_int * phi0_res_t;
}

}  // namespace

std::vector<Complex> trotter_propagate(const TrotterLayers& layers,
                                       const std::vector<Complex>& rho0_vec, int steps) {
    if (steps < 0) throw ValidationError("trotter_propagate: negative step count");
    const int ds = layers.sys_dim(), dr = layers.res_dim();
    std::vector<Complex> grouped = group_system_reservoir(rho0_vec, ds, dr);
    ComplexMatrix x(ds * ds, dr * dr, std::move(grouped));

    std::vector<ComplexMatrix> b_t;
    b_t.reserve(layers.b_ops.size());
    for (const auto& b : layers.b_ops) b_t.push_back(b.transpose());
    const ComplexMatrix phi0_res_t = layers.phi0_res.transpose();

    for (int k = 0; k < steps; ++k) x = apply_step(layers, x, b_t, phi0_res_t);
    return ungroup_system_reservoir(x.data(), ds, dr);
}

namespace {

// Working chain: core 0 holds the left boundary (physical index l), cores
// 1..N the site tensors with the right boundary absorbed into core N.
std::vector<SiteTensor> working_chain(const TimelineMps& trn) {
    const int n = trn.steps();
    if (n < 1) throw ShapeError("timeline chain has no sites");
    std::vector<SiteTensor> cores;
    cores.reserve(n + 1);
    SiteTensor c0(1, trn.left_boundary.rows(), trn.left_boundary.cols());
    for (int l = 0; l < trn.left_boundary.rows(); ++l)
        for (int b = 0; b < trn.left_boundary.cols(); ++b)
            c0.at(0, l, b) = trn.left_boundary(l, b);
    cores.push_back(std::move(c0));
    for (int k = 0; k < n; ++k) cores.push_back(trn.sites[k]);
    SiteTensor& last = cores.back();
    if (static_cast<int>(trn.right_boundary.size()) != last.right)
        throw ShapeError("right boundary does not match the last bond");
    SiteTensor absorbed(last.left, last.phys, 1);
    for (int l = 0; l < last.left; ++l)
        for (int i = 0; i < last.phys; ++i) {
            Complex acc = 0.0;
            for (int r = 0; r < last.right; ++r) acc += last.at(l, i, r) * trn.right_boundary[r];
            absorbed.at(l, i, 0) = acc;
        }
    cores.back() = std::move(absorbed);
    return cores;
}

ComplexMatrix unfold_lp_r(const SiteTensor& t) {
    return ComplexMatrix(t.left * t.phys, t.right, t.a);
}

ComplexMatrix unfold_l_pr(const SiteTensor& t) {
    return ComplexMatrix(t.left, t.phys * t.right, t.a);
}

SiteTensor fold(const ComplexMatrix& m, int left, int phys, int right) {
    SiteTensor t(left, phys, right);
    t.a = m.data();
    return t;
}

ComplexMatrix slice(const SiteTensor& t, int i) {
    ComplexMatrix m(t.left, t.right);
    for (int l = 0; l < t.left; ++l)
        for (int r = 0; r < t.right; ++r) m(l, r) = t.at(l, i, r);
    return m;
}

// <a|b> through the chain; both chains must end with bond dimension 1.
Complex chain_overlap(const std::vector<SiteTensor>& a, const std::vector<SiteTensor>& b) {
    ComplexMatrix f = ComplexMatrix::identity(1);
    for (std::size_t k = 0; k < a.size(); ++k) {
        ComplexMatrix next(a[k].right, b[k].right);
        for (int i = 0; i < a[k].phys; ++i) {
            const ComplexMatrix sa = slice(a[k], i);
            const ComplexMatrix sb = slice(b[k], i);
            next += sa.adjoint() * f * sb;
        }
        f = std::move(next);
    }
    return f(0, 0);
}

double chain_norm(const std::vector<SiteTensor>& a) {
    const double n2 = chain_overlap(a, a).real();
    return std::sqrt(std::max(n2, 0.0));
}

// Left-to-right canonicalization; afterwards every core except the last is
// a left isometry and the last core carries the full norm.
void left_canonicalize(std::vector<SiteTensor>& cores) {
    for (std::size_t k = 0; k + 1 < cores.size(); ++k) {
        const SvdResult f = svd(unfold_lp_r(cores[k]));
        const int keep = static_cast<int>(f.s.size());
        cores[k] = fold(f.u, cores[k].left, cores[k].phys, keep);
        SiteTensor& nxt = cores[k + 1];
        ComplexMatrix carry(keep, nxt.left);
        for (int i = 0; i < keep; ++i)
            for (int j = 0; j < nxt.left; ++j) carry(i, j) = f.s[i] * f.vh(i, j);
        cores[k + 1] = fold(carry * unfold_l_pr(nxt), keep, nxt.phys, nxt.right);
    }
}

// Right-to-left sweep down to (and excluding) core `stop`, truncating each
// bond to at most `rmax` (no truncation if rmax <= 0). Accumulates the
// discarded Schmidt weight and records the kept singular values per bond;
// bond_s[j] belongs to the bond left of core (stop+1+j).
struct RightSweepResult {
    double discarded = 0.0;
    std::vector<double> last_bond_s;
    std::vector<std::vector<double>> bond_s;
};

RightSweepResult right_sweep(std::vector<SiteTensor>& cores, int stop, int rmax) {
    RightSweepResult out;
    out.bond_s.resize(cores.size() - 1 - stop);
    for (int k = static_cast<int>(cores.size()) - 1; k > stop; --k) {
        const SvdResult f = svd(unfold_l_pr(cores[k]));
        int keep = static_cast<int>(f.s.size());
        if (rmax > 0) keep = std::min(keep, rmax);
        for (std::size_t j = keep; j < f.s.size(); ++j) out.discarded += f.s[j] * f.s[j];
        ComplexMatrix vh_keep(keep, cores[k].phys * cores[k].right);
        for (int i = 0; i < keep; ++i)
            for (int j = 0; j < vh_keep.cols(); ++j) vh_keep(i, j) = f.vh(i, j);
        out.last_bond_s.assign(f.s.begin(), f.s.begin() + keep);
        out.bond_s[k - 1 - stop] = out.last_bond_s;
        SiteTensor& prv = cores[k - 1];
        ComplexMatrix carry(cores[k].left, keep);
        for (int i = 0; i < cores[k].left; ++i)
            for (int j = 0; j < keep; ++j) carry(i, j) = f.u(i, j) * f.s[j];
        cores[k] = fold(vh_keep, keep, cores[k].phys, cores[k].right);
        cores[k - 1] = fold(unfold_lp_r(prv) * carry, prv.left, prv.phys, keep);
    }
    return out;
}

void scale_chain(std::vector<SiteTensor>& cores, double factor) {
    for (auto& z : cores.front().a) z *= factor;
}

TimelineMps chain_to_mps(const std::vector<SiteTensor>& cores, double normalization) {
    TimelineMps out;
    const SiteTensor& c0 = cores.front();
    out.left_boundary = ComplexMatrix(c0.phys, c0.right);
    for (int l = 0; l < c0.phys; ++l)
        for (int b = 0; b < c0.right; ++b) out.left_boundary(l, b) = c0.at(0, l, b);
    out.sites.assign(cores.begin() + 1, cores.end());
    out.right_boundary.assign(1, Complex(1.0, 0.0));
    out.normalization = normalization;
    return out;
}

}  // namespace

TimelineMps build_trn(const CoupledModel& m, double tau, int steps) {
    if (steps < 1) throw ValidationError("build_trn: needs at least one step");
    if (m.res_dim() > 8 || steps > 64)
        throw SizeError("build_trn: d_R <= 8 and steps <= 64");
    const TrotterLayers layers = build_trotter_layers(m, tau);
    const int dr = m.res_dim();
    const int bond = dr * dr;
    const int phys = static_cast<int>(layers.b_ops.size());

    TimelineMps trn;
    trn.left_boundary = ComplexMatrix(static_cast<int>(m.initial.size()), bond);
    for (std::size_t l = 0; l < m.initial.size(); ++l) {
        const auto v = vectorize(m.initial[l].second);
        for (int b = 0; b < bond; ++b) trn.left_boundary(static_cast<int>(l), b) = v[b];
    }

    SiteTensor site(bond, phys, bond);
    for (int i = 0; i < phys; ++i) {
        const ComplexMatrix t = layers.phi0_res * layers.b_ops[i];
        for (int b = 0; b < bond; ++b)
            for (int bp = 0; bp < bond; ++bp) site.at(b, i, bp) = t(bp, b);
    }
    trn.sites.assign(steps, site);
    trn.right_boundary = vectorize(ComplexMatrix::identity(dr));

    trn.normalization = chain_norm(working_chain(trn));
    return trn;
}

namespace {

// Squared values below numerical zero are rounding artifacts; keeping them
// would pollute small-alpha Renyi sums.
SchmidtSpectrum spectrum_from_singular_values(const std::vector<double>& s) {
    SchmidtSpectrum spec;
    spec.values.reserve(s.size());
    const double floor2 = (s.empty() ? 0.0 : s.front() * s.front()) * 1e-24;
    for (double v : s)
        if (v * v > floor2) spec.values.push_back(v * v);
    if (spec.values.empty()) spec.values.push_back(0.0);
    return spec;
}

}  // namespace

SchmidtSpectrum schmidt_cut(const TimelineMps& trn, int m) {
    const int n = trn.steps();
    if (m <= 0 || m >= n) throw RangeError("schmidt_cut: cut must satisfy 0 < m < N");
    std::vector<SiteTensor> cores = working_chain(trn);
    left_canonicalize(cores);
    const double norm = unfold_lp_r(cores.back()).frobenius_norm();
    if (norm <= 0.0) throw NumericalError("schmidt_cut: zero-norm chain");
    for (auto& z : cores.back().a) z /= norm;
    right_sweep(cores, m, 0);
    const SvdResult f = svd(unfold_lp_r(cores[m]));
    return spectrum_from_singular_values(f.s);
}

std::vector<SchmidtSpectrum> schmidt_all_cuts(const TimelineMps& trn) {
    const int n = trn.steps();
    if (n < 2) return {};
    std::vector<SiteTensor> cores = working_chain(trn);
    left_canonicalize(cores);
    const double norm = unfold_lp_r(cores.back()).frobenius_norm();
    if (norm <= 0.0) throw NumericalError("schmidt_all_cuts: zero-norm chain");
    for (auto& z : cores.back().a) z /= norm;
    const RightSweepResult sweep = right_sweep(cores, 0, 0);
    std::vector<SchmidtSpectrum> out;
    out.reserve(n - 1);
    // bond_s[m] sits left of core m+1, i.e. the cut between sites m and m+1.
    for (int m = 1; m < n; ++m) out.push_back(spectrum_from_singular_values(sweep.bond_s[m]));
    return out;
}

double renyi_entropy(const SchmidtSpectrum& spec, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("renyi_entropy: alpha must lie strictly inside (0,1)");
    double acc = 0.0;
    for (double lam : spec.values)
        if (lam > 0.0) acc += std::pow(lam, alpha);
    if (acc <= 0.0) throw DomainError("renyi_entropy: empty spectrum");
    return std::log(acc) / (1.0 - alpha);
}

TruncationResult truncate(const TimelineMps& trn, int r) {
    if (r < 1) throw ValidationError("truncate: rank must be >= 1");
    std::vector<SiteTensor> original = working_chain(trn);
    std::vector<SiteTensor> cores = original;
    left_canonicalize(cores);
    const double norm = unfold_lp_r(cores.back()).frobenius_norm();
    if (norm <= 0.0) throw NumericalError("truncate: zero-norm chain");
    for (auto& z : cores.back().a) z /= norm;

    const RightSweepResult sweep = right_sweep(cores, 0, r);

    TruncationResult result;
    if (sweep.discarded <= 0.0) {
        result.eps_achieved = 0.0;
    } else if (sweep.discarded < 1e-12) {
        // The exact-overlap distance cancels three O(1) terms and cannot
        // resolve anything below ~1e-7; in that regime the sweep's own
        // discarded weight is the accurate value (cross terms between
        // bonds enter only at second order in the discards).
        result.eps_achieved = std::sqrt(sweep.discarded);
    } else {
        const double phi2 = chain_overlap(cores, cores).real();
        const Complex ov = chain_overlap(original, cores);
        const double dist2 = 1.0 + phi2 - 2.0 * (ov.real() / norm);
        result.eps_achieved = std::sqrt(std::max(dist2, 0.0));
    }

    scale_chain(cores, norm);
    result.mps = chain_to_mps(cores, chain_norm(cores));
    return result;
}

Trajectory contract_with_system(const TimelineMps& trn, const TrotterLayers& layers,
                                const std::vector<ComplexMatrix>& sys_initial) {
    const int ds = layers.sys_dim();
    const int dr = layers.res_dim();
    if (static_cast<int>(sys_initial.size()) != trn.left_boundary.rows())
        throw ShapeError("contract_with_system: initial terms do not match boundary rows");
    if (static_cast<int>(trn.right_boundary.size()) != dr * dr ||
        trn.left_boundary.cols() != dr * dr)
        throw ShapeError("contract_with_system: per-step extraction needs the untruncated chain");
    for (const auto& s : sys_initial)
        if (s.rows() != ds || s.cols() != ds)
            throw ShapeError("contract_with_system: system term dimension mismatch");
    if (layers.a_ops.empty() || static_cast<int>(layers.a_ops.size()) != trn.sites.front().phys)
        throw ShapeError("contract_with_system: physical dimension mismatch");

    ComplexMatrix sys_block(ds * ds, trn.left_boundary.rows());
    for (int l = 0; l < trn.left_boundary.rows(); ++l) {
        const auto v = vectorize(sys_initial[l]);
        for (int s = 0; s < ds * ds; ++s) sys_block(s, l) = v[s];
    }
    ComplexMatrix cur = sys_block * trn.left_boundary;

    std::vector<ComplexMatrix> sa;
    sa.reserve(layers.a_ops.size());
    for (const auto& a : layers.a_ops) sa.push_back(layers.phi0_sys * a);

    Trajectory traj;
    std::vector<std::vector<Complex>> states;
    auto extract = [&](const ComplexMatrix& x) {
        std::vector<Complex> rho(ds * ds, Complex(0.0, 0.0));
        for (int s = 0; s < ds * ds; ++s) {
            Complex acc = 0.0;
            for (int b = 0; b < x.cols(); ++b) acc += x(s, b) * trn.right_boundary[b];
            rho[s] = acc;
        }
        return rho;
    };

    traj.times.push_back(0.0);
    states.push_back(extract(cur));
    for (int k = 0; k < trn.steps(); ++k) {
        const SiteTensor& st = trn.sites[k];
        ComplexMatrix next(ds * ds, st.right);
        for (int i = 0; i < st.phys; ++i) next += (sa[i] * cur) * slice(st, i);
        cur = std::move(next);
        traj.times.push_back((k + 1) * layers.tau);
        states.push_back(extract(cur));
    }
    if (ds % 2 == 0) {
        auto& sz = traj.observables["sigma_z"];
        for (const auto& rho : states) {
            double val = 0.0;
            for (int i = 0; i < ds; ++i)
                val += ((i < ds / 2) ? 1.0 : -1.0) * rho[static_cast<std::size_t>(i) * ds + i].real();
            sz.push_back(val);
        }
    }
    traj.states = std::move(states);
    return traj;
}

}  // namespace erdim
