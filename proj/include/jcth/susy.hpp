// susy.hpp — Supercharges, the coupled operator S(theta) and its alternative
// square roots, N-extended charges, and the superalgebra residual suite.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "jcth/linalg.hpp"
#include "jcth/quanta.hpp"

namespace jcth::susy {

enum class ChargeProvenance { jc_oscillator, many_particle, custom };

struct Supercharge {
    Matrix q;
    Matrix q_dag;
    ChargeProvenance provenance = ChargeProvenance::custom;
};

inline Supercharge make_supercharge(Matrix q,
                                    ChargeProvenance prov = ChargeProvenance::custom,
                                    double nilpotency_tol = 1e-13) {
    check_square_finite(q, "make_supercharge");
    Supercharge s;
    s.q = std::move(q);
    s.q_dag = s.q.adjoint();
    s.provenance = prov;
    const double scale = std::max(1.0, frob(s.q) * frob(s.q));
    if (mul_adaptive(s.q, s.q).norm() > nilpotency_tol * scale)
        throw PreconditionError("make_supercharge: Q is not nilpotent within tolerance");
    return s;
}

// Q = sigma_+ a on spin (x) boson, spin as the slower index.
inline Supercharge jc_supercharge(const quanta::BosonOps& b) {
    const quanta::PauliSet p = quanta::pauli();
    return make_supercharge(kron(p.plus, b.lower), ChargeProvenance::jc_oscillator);
}

// Q = sum_i a_i† psi_i for N superoscillator modes, spin (x) boson ordering
// with modes ordered as the boson Kronecker factors.
inline Supercharge many_particle_supercharge(const quanta::FermionRep& rep,
                                             int cutoff_per_mode,
                                             Eigen::Index max_dim = kDefaultDimLimit) {
    const int n = rep.count;
    const quanta::BosonOps b = quanta::boson_ops(cutoff_per_mode);
    const Matrix bid = Matrix::Identity(cutoff_per_mode, cutoff_per_mode);
    Eigen::Index boson_dim = 1;
    for (int i = 0; i < n; ++i) boson_dim *= cutoff_per_mode;
    const Eigen::Index total = rep.psi.front().rows() * boson_dim;
    if (total > max_dim)
        throw DimensionLimitError("many_particle_supercharge: dimension " +
                                  std::to_string(total) + " exceeds limit");
    Matrix q = Matrix::Zero(total, total);
    for (int i = 0; i < n; ++i) {
        std::vector<Matrix> boson_factors;
        for (int j = 0; j < n; ++j) boson_factors.push_back(j == i ? b.raise : bid);
        q += kron(rep.psi[static_cast<std::size_t>(i)], kron_chain(boson_factors, max_dim),
                  max_dim);
    }
    return make_supercharge(std::move(q), ChargeProvenance::many_particle);
}

// ------------------------------- couplings -----------------------------------

enum class Regime { real_spectrum, conjugate_pairs, critical };

struct CouplingParams {
    double c1 = 1.0;
    double c2 = 1.0;
    double theta = 0.0;  // radians

    double beta() const { return c1 * c2; }
    Regime regime() const {
        const double b = beta();
        if (b > 0) return Regime::real_spectrum;
        if (b < 0) return Regime::conjugate_pairs;
        return Regime::critical;
    }
    cplx phase_fwd() const { return std::polar(1.0, theta); }
    cplx phase_bwd() const { return std::polar(1.0, -theta); }
};

// ------------------------------- operations ----------------------------------

// H = {Q, Q†}; Hermitian and positive semi-definite, commutes with Q.
inline Matrix susy_hamiltonian(const Supercharge& s) {
    return mul_adaptive(s.q, s.q_dag) + mul_adaptive(s.q_dag, s.q);
}

// S = c1 e^{i theta} Q + c2 e^{-i theta} Q†;  S^2 = beta H.
inline Matrix s_operator(const Supercharge& s, const CouplingParams& p) {
    return p.c1 * p.phase_fwd() * s.q + p.c2 * p.phase_bwd() * s.q_dag;
}

enum class RootKind { s1, s2, s3 };

// Alternative square roots of beta H:
//   S1 = i gamma5 S
//   S2 = c1 e^{i theta} (H + eps^2) Q + c2 e^{-i theta} (H + eps^2)^{-1} Q†
//   S3 = i gamma5 S2
// gamma5 must square to identity and anticommute with Q, Q†.
inline Matrix alt_root(const Supercharge& s, const CouplingParams& p, RootKind kind,
                       const Matrix& gamma5, double epsilon = 1.0) {
    const Eigen::Index n = s.q.rows();
    if (gamma5.rows() != n)
        throw ShapeError("alt_root: gamma5 dimension mismatch");
    const Matrix id = Matrix::Identity(n, n);
    const double g5_scale = std::max(1.0, frob(gamma5));
    if ((gamma5 * gamma5 - id).norm() > 1e-13 * g5_scale * g5_scale ||
        anticommutator(gamma5, s.q).norm() > 1e-13 * g5_scale * std::max(1.0, frob(s.q)) ||
        anticommutator(gamma5, s.q_dag).norm() > 1e-13 * g5_scale * std::max(1.0, frob(s.q)))
        throw PreconditionError("alt_root: gamma5 algebra violated");

    if (kind == RootKind::s1) return cplx(0, 1) * gamma5 * s_operator(s, p);

    if (epsilon == 0.0) throw ParameterError("alt_root: epsilon must satisfy eps != 0");
    const Matrix h = susy_hamiltonian(s);
    const double e2 = epsilon * epsilon;
    // (H + eps^2)^{+-1} via Hermitian spectral calculus so the factors commute
    // with Q at machine precision.
    const Matrix shifted = herm_apply(h, [e2](double x) { return x + e2; });
    const Matrix shifted_inv = herm_apply(h, [e2](double x) { return 1.0 / (x + e2); });
    Matrix s2 = p.c1 * p.phase_fwd() * shifted * s.q + p.c2 * p.phase_bwd() * shifted_inv * s.q_dag;
    if (kind == RootKind::s2) return s2;
    return cplx(0, 1) * gamma5 * s2;
}

// ---------------------------- N-extended charges -----------------------------

struct ExtendedCharges {
    std::vector<Supercharge> charges;
    std::vector<CouplingParams> params;  // one (c1, c2, theta) triple per charge

    double beta_n() const {
        double b = 0.0;
        for (const auto& p : params) b += p.beta();
        return b;
    }
};

// S_N = sum_a (c1^a e^{i theta_a} Q_a + c2^a e^{-i theta_a} Q_a†);
// requires all charges to share a common H = {Q_a, Q_a†}.
inline Matrix s_extended(const ExtendedCharges& x, double common_h_tol = 1e-12) {
    if (x.charges.empty() || x.charges.size() != x.params.size())
        throw PreconditionError("s_extended: charge/parameter count mismatch");
    const Matrix h0 = susy_hamiltonian(x.charges.front());
    const double scale = std::max(1.0, frob(h0));
    for (std::size_t a = 1; a < x.charges.size(); ++a) {
        if ((susy_hamiltonian(x.charges[a]) - h0).norm() > common_h_tol * scale)
            throw AlgebraMismatchError("s_extended: charges do not share a common H");
    }
    Matrix s = Matrix::Zero(h0.rows(), h0.cols());
    for (std::size_t a = 0; a < x.charges.size(); ++a)
        s += s_operator(x.charges[a], x.params[a]);
    return s;
}

// Cross anticommutators {Q_a, Q_b} and {Q_a, Q_b†} - delta_ab H.
inline ResidualReport extended_algebra_residuals(const ExtendedCharges& x) {
    ResidualReport r;
    const Matrix h = susy_hamiltonian(x.charges.front());
    double cross = 0.0, mixed = 0.0;
    for (std::size_t a = 0; a < x.charges.size(); ++a) {
        for (std::size_t b = 0; b < x.charges.size(); ++b) {
            cross = std::max(cross,
                             anticommutator(x.charges[a].q, x.charges[b].q).norm());
            Matrix m = anticommutator(x.charges[a].q, x.charges[b].q_dag);
            if (a == b) m -= h;
            mixed = std::max(mixed, m.norm());
        }
    }
    r["qa_qb"] = cross;
    r["qa_qbdag_delta_h"] = mixed;
    return r;
}

// --------------------------- verification suite ------------------------------

inline ResidualReport verify_superalgebra(const Supercharge& s) {
    ResidualReport r;
    const Matrix h = susy_hamiltonian(s);
    r["q_squared"] = (s.q * s.q).norm();
    r["qdag_squared"] = (s.q_dag * s.q_dag).norm();
    r["h_q_commutator"] = commutator(h, s.q).norm();
    r["h_qdag_commutator"] = commutator(h, s.q_dag).norm();
    r["h_anticommutator_defect"] = (h - anticommutator(s.q, s.q_dag)).norm();
    return r;
}

}  // namespace jcth::susy
