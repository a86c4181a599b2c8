// quanta.hpp — Concrete operator ingredients: truncated boson ladders, Pauli
// matrices, fermionic (Grassmann) representations, SU(2) generators.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "jcth/linalg.hpp"

namespace jcth::quanta {

// ----------------------------- Pauli matrices --------------------------------

struct PauliSet {
    Matrix s1, s2, s3, plus, minus, id;
};

inline PauliSet pauli() {
    PauliSet p;
    p.s1 = Matrix::Zero(2, 2);
    p.s1 << 0, 1, 1, 0;
    p.s2 = Matrix::Zero(2, 2);
    p.s2 << 0, cplx(0, -1), cplx(0, 1), 0;
    p.s3 = Matrix::Zero(2, 2);
    p.s3 << 1, 0, 0, -1;
    p.plus = 0.5 * (p.s1 + cplx(0, 1) * p.s2);   // |up><down|
    p.minus = 0.5 * (p.s1 - cplx(0, 1) * p.s2);  // |down><up|
    p.id = Matrix::Identity(2, 2);
    return p;
}

// ----------------------------- boson ladders ---------------------------------

// Truncated Fock space |0>..|M-1>; raise|M-1> = 0 (truncation clip).
struct BosonOps {
    int cutoff = 0;
    Matrix lower;   // a
    Matrix raise;   // a†
    Matrix number;  // a†a
};

inline BosonOps boson_ops(int cutoff) {
    if (cutoff < 2) throw ParameterError("boson_ops: cutoff must be >= 2");
    BosonOps b;
    b.cutoff = cutoff;
    b.lower = Matrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) b.lower(n - 1, n) = std::sqrt(double(n));
    b.raise = b.lower.adjoint();
    b.number = b.raise * b.lower;
    return b;
}

// ------------------------ fermionic representations --------------------------

struct FermionRep {
    int count = 0;            // N
    std::vector<Matrix> psi;  // dimension 2^N each
    Matrix gamma5;
};

namespace detail {

// gamma5 = (-1)^N prod_i (2 psi_i† psi_i - 1); diagonal +-1 in the
// occupation basis.
inline Matrix grading_operator(const std::vector<Matrix>& psi) {
    const Eigen::Index dim = psi.front().rows();
    Matrix g = Matrix::Identity(dim, dim);
    for (const Matrix& p : psi) g = g * (2.0 * p.adjoint() * p - Matrix::Identity(dim, dim));
    if (psi.size() % 2 == 1) g = -g;
    return g;
}

}  // namespace detail

// The exact psi_i matrices written out in the source construction for
// N = 1, 2, 3.
inline FermionRep fermion_rep_explicit(int n) {
    if (n < 1 || n > 3)
        throw ParameterError(
            "fermion_rep_explicit: only N in {1,2,3} has an explicit tabulated form; "
            "use fermion_rep_general for larger N");
    const PauliSet p = pauli();
    FermionRep rep;
    rep.count = n;
    if (n == 1) {
        rep.psi = {p.minus};
    } else if (n == 2) {
        rep.psi = {kron(p.s3, p.minus), kron(p.minus, p.id)};
    } else {
        rep.psi = {kron_chain({p.s3, p.minus, p.id}), kron_chain({p.id, p.s3, p.minus}),
                   kron_chain({p.minus, p.id, p.s3})};
    }
    rep.gamma5 = detail::grading_operator(rep.psi);
    return rep;
}

// Jordan-Wigner style string construction, valid for any N:
// psi_i = s3 x ... x s3 x s- x I x ... x I  (i-1 leading s3 factors).
inline FermionRep fermion_rep_general(int n, Eigen::Index max_dim = kDefaultDimLimit) {
    if (n < 1) throw ParameterError("fermion_rep_general: N must be >= 1");
    if ((Eigen::Index(1) << n) > max_dim)
        throw DimensionLimitError("fermion_rep_general: 2^N exceeds dimension limit");
    const PauliSet p = pauli();
    FermionRep rep;
    rep.count = n;
    for (int i = 0; i < n; ++i) {
        std::vector<Matrix> factors;
        for (int j = 0; j < i; ++j) factors.push_back(p.s3);
        factors.push_back(p.minus);
        for (int j = i + 1; j < n; ++j) factors.push_back(p.id);
        rep.psi.push_back(kron_chain(factors, max_dim));
    }
    rep.gamma5 = detail::grading_operator(rep.psi);
    return rep;
}

// ----------------------------- SU(2) generators ------------------------------

enum class Su2Kind { pauli_sum, fermionic };

struct Su2Rep {
    Eigen::Index dim = 0;
    Matrix r_plus, r_minus, r3;
    Su2Kind kind = Su2Kind::pauli_sum;
};

// Collective spin of n independent two-level systems. The 3-component embeds
// s3/2 so that [R+, R-] = 2 R3 holds exactly.
inline Su2Rep su2_pauli_sum(int n_molecules, Eigen::Index max_dim = kDefaultDimLimit) {
    if (n_molecules < 1) throw ParameterError("su2_pauli_sum: need at least one molecule");
    if ((Eigen::Index(1) << n_molecules) > max_dim)
        throw DimensionLimitError("su2_pauli_sum: 2^N exceeds dimension limit");
    const PauliSet p = pauli();
    const Eigen::Index dim = Eigen::Index(1) << n_molecules;
    Su2Rep rep;
    rep.kind = Su2Kind::pauli_sum;
    rep.dim = dim;
    rep.r_plus = Matrix::Zero(dim, dim);
    rep.r_minus = Matrix::Zero(dim, dim);
    rep.r3 = Matrix::Zero(dim, dim);
    for (int i = 0; i < n_molecules; ++i) {
        auto embed = [&](const Matrix& op) {
            std::vector<Matrix> factors;
            for (int j = 0; j < n_molecules; ++j)
                factors.push_back(j == i ? op : p.id);
            return kron_chain(factors, max_dim);
        };
        rep.r_plus += embed(p.plus);
        rep.r_minus += embed(p.minus);
        rep.r3 += embed(0.5 * p.s3);
    }
    return rep;
}

// Reducible SU(2) representation built from a fermionic representation:
// R- = sum psi_i / sqrt(N), R3 = sum [psi_i†, psi_j] / 2N.
inline Su2Rep su2_fermionic(const FermionRep& rep) {
    const Eigen::Index dim = rep.psi.front().rows();
    const double root_n = std::sqrt(double(rep.count));
    Su2Rep out;
    out.kind = Su2Kind::fermionic;
    out.dim = dim;
    out.r_minus = Matrix::Zero(dim, dim);
    for (const Matrix& p : rep.psi) out.r_minus += p;
    out.r_minus /= root_n;
    out.r_plus = out.r_minus.adjoint();
    out.r3 = Matrix::Zero(dim, dim);
    for (const Matrix& pi : rep.psi)
        for (const Matrix& pj : rep.psi)
            out.r3 += pi.adjoint() * pj - pj * pi.adjoint();
    out.r3 /= 2.0 * rep.count;
    return out;
}

// --------------------------- algebra residual suites -------------------------
// Reusable checkers; every constructor above is expected to pass its suite
// below 1e-13 in Frobenius norm.

inline ResidualReport boson_residuals(const BosonOps& b) {
    ResidualReport r;
    r["raise_is_adjoint"] = (b.raise - b.lower.adjoint()).norm();
    r["number_def"] = (b.number - b.raise * b.lower).norm();
    // [a, a†] = 1 on the subspace below the clip.
    Matrix comm = commutator(b.lower, b.raise) - Matrix::Identity(b.cutoff, b.cutoff);
    r["projected_commutator"] = comm.topLeftCorner(b.cutoff - 1, b.cutoff - 1).norm();
    return r;
}

inline ResidualReport grassmann_residuals(const FermionRep& rep) {
    ResidualReport r;
    const Eigen::Index dim = rep.psi.front().rows();
    const Matrix id = Matrix::Identity(dim, dim);
    double acc = 0.0, acc_dag = 0.0, mixed = 0.0;
    for (std::size_t i = 0; i < rep.psi.size(); ++i) {
        for (std::size_t j = 0; j < rep.psi.size(); ++j) {
            acc = std::max(acc, anticommutator(rep.psi[i], rep.psi[j]).norm());
            acc_dag = std::max(
                acc_dag, anticommutator(rep.psi[i].adjoint(), rep.psi[j].adjoint()).norm());
            Matrix m = anticommutator(rep.psi[i], rep.psi[j].adjoint());
            if (i == j) m -= id;
            mixed = std::max(mixed, m.norm());
        }
    }
    r["psi_psi"] = acc;
    r["psidag_psidag"] = acc_dag;
    r["psi_psidag_delta"] = mixed;
    r["gamma5_squared"] = (rep.gamma5 * rep.gamma5 - id).norm();
    double g5 = 0.0;
    for (const Matrix& p : rep.psi) {
        g5 = std::max(g5, anticommutator(rep.gamma5, p).norm());
        g5 = std::max(g5, anticommutator(rep.gamma5, p.adjoint()).norm());
    }
    r["gamma5_anticommute"] = g5;
    return r;
}

inline ResidualReport su2_residuals(const Su2Rep& rep) {
    ResidualReport r;
    const Matrix id = Matrix::Identity(rep.dim, rep.dim);
    r["r3_rplus"] = (commutator(rep.r3, rep.r_plus) - rep.r_plus).norm();
    r["r3_rminus"] = (commutator(rep.r3, rep.r_minus) + rep.r_minus).norm();
    r["rplus_rminus"] = (commutator(rep.r_plus, rep.r_minus) - 2.0 * rep.r3).norm();
    if (rep.kind == Su2Kind::fermionic) {
        r["rplus_sq"] = (rep.r_plus * rep.r_plus).norm();
        r["rminus_sq"] = (rep.r_minus * rep.r_minus).norm();
        r["anticomm_identity"] = (anticommutator(rep.r_minus, rep.r_plus) - id).norm();
        r["projector_plus"] = (rep.r_plus * rep.r_minus - rep.r3 - 0.5 * id).norm();
        r["projector_minus"] = (rep.r_minus * rep.r_plus + rep.r3 - 0.5 * id).norm();
    }
    return r;
}

inline double max_residual(const ResidualReport& r) {
    double m = 0.0;
    for (const auto& [k, v] : r) m = std::max(m, v);
    return m;
}

}  // namespace jcth::quanta
