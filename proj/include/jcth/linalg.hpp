// linalg.hpp — Dense complex kernel: Kronecker products, general eigensystems
// with left/right vectors, Hermitian matrix functions, residual norms.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "jcth/errors.hpp"

namespace jcth {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Eigen::Index kDefaultDimLimit = 8192;

inline void check_square_finite(const Matrix& a, const char* what) {
    if (a.rows() != a.cols())
        throw ShapeError(std::string(what) + ": matrix must be square");
    if (!a.allFinite())
        throw PreconditionError(std::string(what) + ": matrix has NaN/Inf entries");
}

inline double frob(const Matrix& a) { return a.norm(); }

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

// Product that routes through a sparse kernel when both factors are sparse
// enough for that to win; ladder/raising operators and their Kronecker
// products have O(n) nonzeros, so large products of them are near-linear
// instead of cubic.
inline Matrix mul_adaptive(const Matrix& a, const Matrix& b) {
    const double n2 = double(a.rows()) * double(a.cols());
    if (a.rows() < 512 || a.rows() != b.rows() || a.cols() != b.cols()) return a * b;
    auto density = [n2](const Matrix& m) {
        Eigen::Index nnz = 0;
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                if (m(i, j) != cplx(0.0, 0.0)) ++nnz;
        return double(nnz) / n2;
    };
    if (density(a) > 0.05 || density(b) > 0.05) return a * b;
    const Eigen::SparseMatrix<cplx> as = a.sparseView(1.0, 0.0);
    const Eigen::SparseMatrix<cplx> bs = b.sparseView(1.0, 0.0);
    return Matrix(Eigen::SparseMatrix<cplx>(as * bs));
}

inline double hermiticity_defect(const Matrix& a) {
    return (a - a.adjoint()).norm();
}

// ------------------------------ Kronecker -----------------------------------

inline Matrix kron(const Matrix& a, const Matrix& b,
                   Eigen::Index max_dim = kDefaultDimLimit) {
    check_square_finite(a, "kron");
    check_square_finite(b, "kron");
    const Eigen::Index n = a.rows(), m = b.rows();
    if (n * m > max_dim)
        throw DimensionLimitError("kron: requested dimension " + std::to_string(n * m) +
                                  " exceeds limit " + std::to_string(max_dim));
    Matrix out(n * m, n * m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out.block(i * m, j * m, m, m) = a(i, j) * b;
    return out;
}

inline Matrix kron_chain(const std::vector<Matrix>& factors,
                         Eigen::Index max_dim = kDefaultDimLimit) {
    if (factors.empty()) throw PreconditionError("kron_chain: no factors");
    Matrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i], max_dim);
    return out;
}

// ------------------------- general eigendecomposition ------------------------

// Right eigenvectors of A and left eigenvectors (eigenvectors of A† with
// conjugated eigenvalues), columnwise. Eigenvalues sorted by (Re, Im).
struct Eigensystem {
    Vector values;
    Matrix right;
    Matrix left;
};

namespace detail {

inline std::vector<Eigen::Index> sort_order(const Vector& vals,
                                            bool conjugate_key) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(vals.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index i, Eigen::Index j) {
        const double ii = conjugate_key ? -vals(i).imag() : vals(i).imag();
        const double ij = conjugate_key ? -vals(j).imag() : vals(j).imag();
        if (vals(i).real() != vals(j).real()) return vals(i).real() < vals(j).real();
        return ii < ij;
    });
    return idx;
}

}  // namespace detail

inline Eigensystem eig_general(const Matrix& a) {
    check_square_finite(a, "eig_general");
    Eigen::ComplexEigenSolver<Matrix> right_solver(a, true);
    if (right_solver.info() != Eigen::Success)
        throw PreconditionError("eig_general: QR iteration did not converge");
    Eigen::ComplexEigenSolver<Matrix> left_solver(a.adjoint(), true);
    if (left_solver.info() != Eigen::Success)
        throw PreconditionError("eig_general: QR iteration on adjoint did not converge");

    const Eigen::Index n = a.rows();
    Eigensystem es;
    es.values.resize(n);
    es.right.resize(n, n);
    es.left.resize(n, n);

    const auto ro = detail::sort_order(right_solver.eigenvalues(), false);
    // A† eigenvalues are conj(lambda); sorting by (Re, -Im) aligns them with
    // the right-eigenvalue order.
    const auto lo = detail::sort_order(left_solver.eigenvalues(), true);
    for (Eigen::Index k = 0; k < n; ++k) {
        es.values(k) = right_solver.eigenvalues()(ro[static_cast<std::size_t>(k)]);
        es.right.col(k) = right_solver.eigenvectors().col(ro[static_cast<std::size_t>(k)]);
        es.left.col(k) = left_solver.eigenvectors().col(lo[static_cast<std::size_t>(k)]);
    }
    return es;
}

inline Vector sorted_eigenvalues(const Matrix& a) {
    Eigen::ComplexEigenSolver<Matrix> solver(a, false);
    if (solver.info() != Eigen::Success)
        throw PreconditionError("sorted_eigenvalues: QR iteration did not converge");
    const auto order = detail::sort_order(solver.eigenvalues(), false);
    Vector out(a.rows());
    for (Eigen::Index k = 0; k < a.rows(); ++k)
        out(k) = solver.eigenvalues()(order[static_cast<std::size_t>(k)]);
    return out;
}

// --------------------------- Hermitian functions -----------------------------

namespace detail {

inline bool numerically_diagonal(const Matrix& a, double tol) {
    Matrix off = a;
    off.diagonal().setZero();
    return off.norm() <= tol * std::max(1.0, a.norm());
}

}  // namespace detail

// f applied to the spectrum of a Hermitian matrix. Diagonal inputs take a
// fast path that skips the tridiagonalization.
inline Matrix herm_apply(const Matrix& a, const std::function<double(double)>& f,
                         double herm_tol = 1e-12) {
    check_square_finite(a, "herm_apply");
    if (hermiticity_defect(a) > herm_tol * std::max(1.0, frob(a)))
        throw PreconditionError("herm_apply: input is not Hermitian within tolerance");
    if (detail::numerically_diagonal(a, 1e-15)) {
        Matrix out = Matrix::Zero(a.rows(), a.cols());
        for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, i) = f(a(i, i).real());
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success)
        throw PreconditionError("herm_apply: eigensolver did not converge");
    Eigen::VectorXd fvals = es.eigenvalues();
    for (Eigen::Index i = 0; i < fvals.size(); ++i) fvals(i) = f(fvals(i));
    return es.eigenvectors() * fvals.asDiagonal() * es.eigenvectors().adjoint();
}

inline Matrix herm_sqrt(const Matrix& a) {
    check_square_finite(a, "herm_sqrt");
    const double scale = std::max(1.0, frob(a));
    if (hermiticity_defect(a) > 1e-12 * scale)
        throw PreconditionError("herm_sqrt: input is not Hermitian within 1e-12");
    double min_eig = 0.0;
    if (detail::numerically_diagonal(a, 1e-15)) {
        min_eig = a.diagonal().real().minCoeff();
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
        min_eig = es.eigenvalues().minCoeff();
    }
    if (min_eig <= 1e-12 * frob(a))
        throw PositivityError("herm_sqrt: input not positive definite, smallest eigenvalue " +
                                  std::to_string(min_eig),
                              min_eig);
    return herm_apply(a, [](double x) { return std::sqrt(x); });
}

// --------------------------- residual norms ----------------------------------

// ||h'eta - eta h||_F / max(1, ||eta||_F ||h||_F); zero iff h is
// eta-pseudo-Hermitian.
inline double residual_pseudoherm(const Matrix& h, const Matrix& eta) {
    check_square_finite(h, "residual_pseudoherm");
    check_square_finite(eta, "residual_pseudoherm");
    if (h.rows() != eta.rows())
        throw ShapeError("residual_pseudoherm: dimension mismatch");
    const double scale = std::max(1.0, frob(eta) * frob(h));
    if (detail::numerically_diagonal(eta, 1e-15)) {
        // h† (col-scaled) minus h (row-scaled): O(n^2) instead of two matmuls.
        const Vector d = eta.diagonal();
        Matrix lhs = h.adjoint();
        for (Eigen::Index j = 0; j < h.cols(); ++j) lhs.col(j) *= d(j);
        Matrix rhs = h;
        for (Eigen::Index i = 0; i < h.rows(); ++i) rhs.row(i) *= d(i);
        return (lhs - rhs).norm() / scale;
    }
    return (h.adjoint() * eta - eta * h).norm() / scale;
}

inline double relative_frob_delta(const Matrix& a, const Matrix& b) {
    return (a - b).norm() / std::max(1.0, std::max(frob(a), frob(b)));
}

using ResidualReport = std::map<std::string, double>;

}  // namespace jcth
