// pseudometric.hpp — Metric operators eta, eta_+, eta_N, the SU(2)
// projector-valued metric, and the quasi-Hermitian similarity map.

#pragma once

#include <cmath>
#include <string>

#include "jcth/linalg.hpp"
#include "jcth/models.hpp"
#include "jcth/quanta.hpp"
#include "jcth/susy.hpp"

namespace jcth::pseudometric {

using susy::CouplingParams;

struct MetricSpec {
    Matrix matrix;    // eta
    double delta1 = 1.0;
    double delta2 = 1.0;
    double gamma = 1.0;  // sqrt(c1/c2), defined only when beta > 0
    bool positive_definite = false;
    Matrix rho;       // sqrt(eta), present iff positive_definite
};

namespace detail {

inline void check_couplings(const CouplingParams& p, bool positive) {
    if (p.c1 == 0.0 || p.c2 == 0.0)
        throw ParameterError("metric: zero coupling makes eta singular");
    if (positive && p.beta() <= 0.0)
        throw RegimeError("metric: positive-definite metric exists for a positive definite beta");
}

// delta1/delta2 = c2/c1; the positive gauge fixes delta1 delta2 = 1.
inline std::pair<double, double> deltas(const CouplingParams& p, bool positive) {
    if (positive) {
        const double g = std::sqrt(p.c1 / p.c2);
        return {1.0 / g, g};
    }
    // non-positive gauge: same ratio, normalized so max(|delta|) = |c1|
    return {p.c2, p.c1};
}

}  // namespace detail

// Spin-factor eta = diag(delta1, delta2), extended by the boson identity.
// boson_dim = 0 returns the bare 2x2 spin factor.
inline MetricSpec eta_2x2(const CouplingParams& p, bool positive, int boson_dim) {
    detail::check_couplings(p, positive);
    auto [d1, d2] = detail::deltas(p, positive);
    MetricSpec m;
    m.delta1 = d1;
    m.delta2 = d2;
    Matrix spin = Matrix::Zero(2, 2);
    spin(0, 0) = d1;
    spin(1, 1) = d2;
    m.matrix = boson_dim > 0 ? kron(spin, Matrix::Identity(boson_dim, boson_dim)) : spin;
    m.positive_definite = positive;
    if (positive) {
        m.gamma = d2;
        m.rho = herm_sqrt(m.matrix);
    }
    return m;
}

// eta_N = eta (x) ... (x) eta on the 2^n spin space, times the boson identity.
inline MetricSpec eta_tensor(const CouplingParams& p, int n, bool positive, int boson_dim,
                             Eigen::Index max_dim = kDefaultDimLimit) {
    if (n < 1) throw ParameterError("eta_tensor: n must be >= 1");
    detail::check_couplings(p, positive);
    MetricSpec slot = eta_2x2(p, positive, 0);
    Matrix spin = slot.matrix;
    for (int i = 1; i < n; ++i) spin = kron(spin, slot.matrix, max_dim);
    MetricSpec m = std::move(slot);
    m.matrix = boson_dim > 0 ? kron(spin, Matrix::Identity(boson_dim, boson_dim), max_dim) : spin;
    if (positive) m.rho = herm_sqrt(m.matrix);
    return m;
}

// eta = delta2 R+R- + delta1 R-R+ in the fermionic representation, where
// R+R- and R-R+ are complementary projectors.
inline MetricSpec eta_su2(const CouplingParams& p, const quanta::Su2Rep& rep, bool positive,
                          int boson_dim) {
    if (rep.kind != quanta::Su2Kind::fermionic)
        throw PreconditionError(
            "eta_su2: projector identity {R-, R+} = 1 requires the fermionic representation");
    detail::check_couplings(p, positive);
    auto [d1, d2] = detail::deltas(p, positive);
    MetricSpec m;
    m.delta1 = d1;
    m.delta2 = d2;
    Matrix spin = d2 * rep.r_plus * rep.r_minus + d1 * rep.r_minus * rep.r_plus;
    m.matrix = boson_dim > 0 ? kron(spin, Matrix::Identity(boson_dim, boson_dim)) : spin;
    m.positive_definite = positive;
    if (positive) {
        m.gamma = d2;
        m.rho = herm_sqrt(m.matrix);
    }
    return m;
}

inline Matrix eta_inverse(const MetricSpec& m) {
    return herm_apply(m.matrix, [](double x) { return 1.0 / x; });
}

// h = rho H rho^{-1}; Hermitian whenever H is pseudo-Hermitian under the
// positive metric.
inline Matrix quasi_map(const Matrix& h, const MetricSpec& m) {
    if (!m.positive_definite)
        throw RegimeError("quasi_map: requires a positive-definite metric");
    if (h.rows() != m.rho.rows()) throw ShapeError("quasi_map: dimension mismatch");
    const Matrix rho_inv = herm_apply(m.rho, [](double x) { return 1.0 / x; });
    return m.rho * h * rho_inv;
}

// The spin metric matched to the appendix many-particle supercharge
// Q = sum a_i† psi_i: the sigma_- orientation flips the slot factors relative
// to the sigma_+ coupled models, i.e. per-slot diag(delta2, delta1).
inline MetricSpec eta_many_particle(const CouplingParams& p, int n, bool positive,
                                    int boson_dim, Eigen::Index max_dim = kDefaultDimLimit) {
    detail::check_couplings(p, positive);
    auto [d1, d2] = detail::deltas(p, positive);
    Matrix slot = Matrix::Zero(2, 2);
    slot(0, 0) = d2;
    slot(1, 1) = d1;
    Matrix spin = slot;
    for (int i = 1; i < n; ++i) spin = kron(spin, slot, max_dim);
    MetricSpec m;
    m.delta1 = d1;
    m.delta2 = d2;
    m.matrix = boson_dim > 0 ? kron(spin, Matrix::Identity(boson_dim, boson_dim), max_dim) : spin;
    m.positive_definite = positive;
    if (positive) {
        m.gamma = d2;
        m.rho = herm_sqrt(m.matrix);
    }
    return m;
}

// Catalog metric for a model spec (the pairing used by the verification
// suites): 2x2 kinds -> eta of the block structure, tcm_pauli -> eta_N,
// tcm_fermionic -> projector metric.
inline MetricSpec catalog_metric(const models::ModelSpec& spec, bool positive) {
    switch (spec.kind) {
        case models::ModelKind::jc_resonant:
        case models::ModelKind::jc_nonresonant:
        case models::ModelKind::generalized:
        case models::ModelKind::dressed:
            return eta_2x2(spec.coupling, positive, spec.cutoff);
        case models::ModelKind::tcm_pauli:
            return eta_tensor(spec.coupling, spec.n_molecules, positive, spec.cutoff);
        case models::ModelKind::tcm_fermionic: {
            const quanta::Su2Rep rep =
                quanta::su2_fermionic(quanta::fermion_rep_general(spec.n_molecules));
            return eta_su2(spec.coupling, rep, positive, spec.cutoff);
        }
    }
    throw CatalogError("catalog_metric: unknown model kind");
}

}  // namespace jcth::pseudometric
