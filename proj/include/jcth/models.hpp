// models.hpp — Hamiltonian catalog: non-Hermitian JC model (resonant and
// detuned), generalized 2x2 block models, dressed JC, Tavis-Cummings in both
// SU(2) representations, plus the closed-form spectra and eigenvectors.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jcth/linalg.hpp"
#include "jcth/quanta.hpp"
#include "jcth/susy.hpp"

namespace jcth::models {

using susy::CouplingParams;

enum class ModelKind {
    jc_resonant,
    jc_nonresonant,
    generalized,
    dressed,
    tcm_pauli,
    tcm_fermionic,
};

inline const char* kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::jc_resonant: return "jc_resonant";
        case ModelKind::jc_nonresonant: return "jc_nonresonant";
        case ModelKind::generalized: return "generalized";
        case ModelKind::dressed: return "dressed";
        case ModelKind::tcm_pauli: return "tcm_pauli";
        case ModelKind::tcm_fermionic: return "tcm_fermionic";
    }
    return "?";
}

inline std::optional<ModelKind> kind_from_name(const std::string& s) {
    for (ModelKind k : {ModelKind::jc_resonant, ModelKind::jc_nonresonant,
                        ModelKind::generalized, ModelKind::dressed, ModelKind::tcm_pauli,
                        ModelKind::tcm_fermionic})
        if (s == kind_name(k)) return k;
    return std::nullopt;
}

// Catalog of coupling forms for the generalized 2x2 block model. Conventions:
// intensity-dependent g = a sqrt(a†a), Kerr adds chi_i (a†a)^2 to the
// diagonals, multiphoton g = a^k, q-oscillator uses the symmetric q-number
// [n]_q = (q^n - q^-n)/(q - q^-1).
enum class CouplingKind { identity_jc, intensity_dependent, kerr, multiphoton, q_oscillator };

struct CouplingForm {
    CouplingKind kind = CouplingKind::identity_jc;
    int k = 1;            // multiphoton order
    double q = 2.0;       // q-oscillator deformation
    double chi1 = 0.0;    // Kerr strengths
    double chi2 = 0.0;
};

struct ModelSpec {
    ModelKind kind = ModelKind::jc_resonant;
    CouplingParams coupling;
    double delta = 0.0;           // detuning, jc_nonresonant only
    int cutoff = 8;               // boson Fock cutoff
    int n_molecules = 1;          // tcm kinds
    CouplingForm form;            // generalized only
    // dressed JC parameters (b1,b2,b3,d1,d2,d3,e1,e2)
    double b1 = 1, b2 = 0, b3 = 1, d1 = 1, d2 = 0, d3 = 0, e1 = 1, e2 = 0;
};

// ------------------------------ coupling matrices ----------------------------

struct CouplingMatrices {
    Matrix f1, f2, g;
};

inline CouplingMatrices coupling_matrix(const CouplingForm& form, const quanta::BosonOps& b) {
    const int m = b.cutoff;
    const Matrix id = Matrix::Identity(m, m);
    CouplingMatrices out;
    out.f1 = b.number + id;
    out.f2 = b.number;
    switch (form.kind) {
        case CouplingKind::identity_jc:
            out.g = b.lower;
            break;
        case CouplingKind::intensity_dependent: {
            // g|n> = n|n-1>
            Matrix root_n = Matrix::Zero(m, m);
            for (int n = 0; n < m; ++n) root_n(n, n) = std::sqrt(double(n));
            out.g = b.lower * root_n;
            break;
        }
        case CouplingKind::kerr: {
            out.g = b.lower;
            Matrix n2 = b.number * b.number;
            out.f1 += form.chi1 * n2;
            out.f2 += form.chi2 * n2;
            break;
        }
        case CouplingKind::multiphoton: {
            if (form.k < 1 || form.k >= m)
                throw ParameterError("coupling_matrix: multiphoton order must satisfy 1 <= k < cutoff");
            out.g = Matrix::Identity(m, m);
            for (int i = 0; i < form.k; ++i) out.g = b.lower * out.g;
            break;
        }
        case CouplingKind::q_oscillator: {
            if (form.q <= 0.0 || form.q == 1.0)
                throw ParameterError("coupling_matrix: q must be positive and != 1");
            out.g = Matrix::Zero(m, m);
            for (int n = 1; n < m; ++n) {
                const double qn = (std::pow(form.q, n) - std::pow(form.q, -n)) /
                                  (form.q - 1.0 / form.q);
                out.g(n - 1, n) = std::sqrt(qn);
            }
            break;
        }
    }
    return out;
}

// ------------------------------ model builders -------------------------------

namespace detail {

inline Matrix two_by_two_blocks(const Matrix& f1, const Matrix& f2, const Matrix& g,
                                const CouplingParams& p) {
    const Eigen::Index m = f1.rows();
    Matrix h = Matrix::Zero(2 * m, 2 * m);
    h.topLeftCorner(m, m) = f1;
    h.bottomRightCorner(m, m) = f2;
    h.topRightCorner(m, m) = p.c1 * p.phase_fwd() * g;
    h.bottomLeftCorner(m, m) = p.c2 * p.phase_bwd() * g.adjoint();
    return h;
}

inline CouplingMatrices dressed_matrices(const ModelSpec& spec, const quanta::BosonOps& b) {
    const Matrix id = Matrix::Identity(b.cutoff, b.cutoff);
    const Matrix squeeze = b.lower * b.lower + b.raise * b.raise;
    CouplingMatrices out;
    out.f1 = spec.b1 * b.number + spec.b2 * squeeze + spec.b3 * id;
    out.f2 = spec.d1 * b.number + spec.d2 * squeeze + spec.d3 * id;
    out.g = spec.e1 * b.lower + spec.e2 * b.raise;
    return out;
}

}  // namespace detail

inline void validate(const ModelSpec& spec) {
    if (spec.cutoff < 2) throw ParameterError("ModelSpec: cutoff must be >= 2");
    if (spec.n_molecules < 1) throw ParameterError("ModelSpec: n_molecules must be >= 1");
}

inline Eigen::Index dimension(const ModelSpec& spec) {
    switch (spec.kind) {
        case ModelKind::tcm_pauli:
        case ModelKind::tcm_fermionic:
            return (Eigen::Index(1) << spec.n_molecules) * spec.cutoff;
        default:
            return 2 * Eigen::Index(spec.cutoff);
    }
}

// Supercharge of the jc kinds (sigma_+ g with g from the coupling form).
inline susy::Supercharge jc_charge(const ModelSpec& spec) {
    const quanta::BosonOps b = quanta::boson_ops(spec.cutoff);
    const quanta::PauliSet p = quanta::pauli();
    Matrix g;
    switch (spec.kind) {
        case ModelKind::jc_resonant:
        case ModelKind::jc_nonresonant:
            g = b.lower;
            break;
        case ModelKind::generalized:
            g = coupling_matrix(spec.form, b).g;
            break;
        case ModelKind::dressed:
            g = detail::dressed_matrices(spec, b).g;
            break;
        default:
            throw CatalogError("jc_charge: not a 2x2 block model kind");
    }
    // A generic g need not be nilpotent as sigma_+ g always is; the charge is
    // built on the doubled space.
    return susy::make_supercharge(kron(p.plus, g), susy::ChargeProvenance::jc_oscillator);
}

inline Matrix build(const ModelSpec& spec, Eigen::Index max_dim = kDefaultDimLimit) {
    validate(spec);
    if (dimension(spec) > max_dim)
        throw DimensionLimitError("build: model dimension " + std::to_string(dimension(spec)) +
                                  " exceeds limit " + std::to_string(max_dim));
    const quanta::BosonOps b = quanta::boson_ops(spec.cutoff);
    const quanta::PauliSet pl = quanta::pauli();
    const CouplingParams& p = spec.coupling;

    switch (spec.kind) {
        case ModelKind::jc_resonant:
        case ModelKind::jc_nonresonant: {
            const susy::Supercharge q = jc_charge(spec);
            Matrix h = susy::susy_hamiltonian(q) + susy::s_operator(q, p);
            if (spec.kind == ModelKind::jc_nonresonant)
                h += spec.delta * kron(pl.s3, Matrix::Identity(spec.cutoff, spec.cutoff));
            return h;
        }
        case ModelKind::generalized: {
            const CouplingMatrices c = coupling_matrix(spec.form, b);
            return detail::two_by_two_blocks(c.f1, c.f2, c.g, p);
        }
        case ModelKind::dressed: {
            const CouplingMatrices c = detail::dressed_matrices(spec, b);
            return detail::two_by_two_blocks(c.f1, c.f2, c.g, p);
        }
        case ModelKind::tcm_pauli: {
            // H = a†a + R3 + 1/2 + c1 e^{i theta} a R+ + c2 e^{-i theta} a† R-
            const quanta::Su2Rep r = quanta::su2_pauli_sum(spec.n_molecules);
            const Matrix sid = Matrix::Identity(r.dim, r.dim);
            const Matrix bid = Matrix::Identity(spec.cutoff, spec.cutoff);
            Matrix h = kron(sid, b.number, max_dim) + kron(r.r3, bid, max_dim) +
                       0.5 * Matrix::Identity(dimension(spec), dimension(spec));
            h += p.c1 * p.phase_fwd() * kron(r.r_plus, b.lower, max_dim);
            h += p.c2 * p.phase_bwd() * kron(r.r_minus, b.raise, max_dim);
            return h;
        }
        case ModelKind::tcm_fermionic: {
            // Supercharge form: Q = a† R-, with c1 on Q. The two TCM forms in
            // the catalog differ by the c1 <-> c2 relabeling that relates the
            // representations.
            const quanta::Su2Rep r =
                quanta::su2_fermionic(quanta::fermion_rep_general(spec.n_molecules));
            const Matrix q = kron(r.r_minus, b.raise, max_dim);
            const susy::Supercharge sc = susy::make_supercharge(q, susy::ChargeProvenance::custom);
            return susy::susy_hamiltonian(sc) + susy::s_operator(sc, p);
        }
    }
    throw CatalogError("build: unknown model kind");
}

// Conserved excitation number for the block decomposition; diagonal in the
// computational basis. Dressed models have none.
inline Matrix excitation_number(const ModelSpec& spec) {
    const quanta::BosonOps b = quanta::boson_ops(spec.cutoff);
    const Matrix bid = Matrix::Identity(spec.cutoff, spec.cutoff);
    const quanta::PauliSet pl = quanta::pauli();
    switch (spec.kind) {
        case ModelKind::jc_resonant:
        case ModelKind::jc_nonresonant:
            return kron(pl.id, b.number) + kron(pl.plus * pl.minus, bid);
        case ModelKind::generalized: {
            const int k = spec.form.kind == CouplingKind::multiphoton ? spec.form.k : 1;
            return kron(pl.id, b.number) + double(k) * kron(pl.plus * pl.minus, bid);
        }
        case ModelKind::tcm_pauli: {
            const quanta::Su2Rep r = quanta::su2_pauli_sum(spec.n_molecules);
            const Matrix sid = Matrix::Identity(r.dim, r.dim);
            return kron(sid, b.number) + kron(r.r3, bid) +
                   0.5 * spec.n_molecules * Matrix::Identity(dimension(spec), dimension(spec));
        }
        case ModelKind::tcm_fermionic: {
            const quanta::Su2Rep r =
                quanta::su2_fermionic(quanta::fermion_rep_general(spec.n_molecules));
            const Matrix sid = Matrix::Identity(r.dim, r.dim);
            // Q = a† R- raises the boson number and lowers R3; a†a + R3 is
            // conserved. Not diagonal in this representation.
            return kron(sid, b.number) + kron(r.r3, bid) +
                   0.5 * spec.n_molecules *
                       Matrix::Identity(dimension(spec), dimension(spec));
        }
        case ModelKind::dressed:
            throw CatalogError("excitation_number: dressed model conserves no excitation number");
    }
    throw CatalogError("excitation_number: unknown model kind");
}

// Indices whose boson component sits on the top Fock level (truncation edge).
inline std::vector<Eigen::Index> boundary_indices(const ModelSpec& spec) {
    const Eigen::Index spin_dim = dimension(spec) / spec.cutoff;
    std::vector<Eigen::Index> out;
    for (Eigen::Index s = 0; s < spin_dim; ++s)
        out.push_back(s * spec.cutoff + (spec.cutoff - 1));
    return out;
}

// --------------------------- closed-form spectra -----------------------------

enum class Branch { ground, plus, minus };

struct SpectrumEntry {
    std::string label;
    cplx value;
    Branch branch = Branch::ground;
    int n = 0;  // excitation index (n+1 labels the doublet)
};

struct ClosedFormSpectrum {
    std::vector<SpectrumEntry> entries;
};

inline ClosedFormSpectrum closed_form_spectrum(const ModelSpec& spec, int n_levels) {
    if (spec.kind != ModelKind::jc_resonant && spec.kind != ModelKind::jc_nonresonant)
        throw CatalogError("closed_form_spectrum: no closed form for this model kind");
    const double beta = spec.coupling.beta();
    const double delta = spec.kind == ModelKind::jc_nonresonant ? spec.delta : 0.0;
    ClosedFormSpectrum cf;
    cf.entries.push_back({"E0", cplx(-delta, 0.0), Branch::ground, -1});
    for (int n = 0; n < n_levels; ++n) {
        const cplx root = std::sqrt(cplx(delta * delta + beta * (n + 1), 0.0));
        const cplx base(n + 1.0, 0.0);
        cf.entries.push_back(
            {"E" + std::to_string(n + 1) + "-", base - root, Branch::minus, n});
        cf.entries.push_back(
            {"E" + std::to_string(n + 1) + "+", base + root, Branch::plus, n});
    }
    return cf;
}

// Right eigenvector |psi_{n+1}^{+-}> and the adjoint-side |phi_{n+1}^{+-}>,
// in the source normalization (gamma = sqrt(c1/c2)).
struct EigvecPair {
    Vector psi_plus, psi_minus;
    Vector phi_plus, phi_minus;
};

inline double gamma_of(const CouplingParams& p) {
    if (p.c2 == 0.0)
        throw ParameterError("gamma: c2 = 0 is singular (beta > 0 regime excludes it)");
    return std::sqrt(p.c1 / p.c2);
}

inline Vector ground_state_psi(const ModelSpec& spec) {
    const double g = gamma_of(spec.coupling);
    Vector v = Vector::Zero(2 * spec.cutoff);
    v(spec.cutoff) = 1.0 / std::sqrt(g);  // lower component |0>
    return v;
}

inline Vector ground_state_phi(const ModelSpec& spec) {
    const double g = gamma_of(spec.coupling);
    Vector v = Vector::Zero(2 * spec.cutoff);
    v(spec.cutoff) = std::sqrt(g);
    return v;
}

inline EigvecPair closed_form_eigenvectors(const ModelSpec& spec, int n) {
    if (spec.kind != ModelKind::jc_resonant && spec.kind != ModelKind::jc_nonresonant)
        throw CatalogError("closed_form_eigenvectors: no closed form for this model kind");
    if (n + 1 >= spec.cutoff)
        throw RangeError("closed_form_eigenvectors: n+1 must stay below the cutoff");
    const CouplingParams& p = spec.coupling;
    const double g = gamma_of(p);
    const int m = spec.cutoff;
    EigvecPair out;

    auto upper = [&](Vector& v, int idx, cplx amp) { v(idx) = amp; };
    auto two_block = [&](cplx up_amp, cplx low_amp) {
        Vector v = Vector::Zero(2 * m);
        upper(v, n, up_amp);        // upper component proportional to |n>
        upper(v, m + n + 1, low_amp);  // lower component proportional to |n+1>
        return v;
    };

    if (spec.kind == ModelKind::jc_resonant) {
        const cplx e_itheta = p.phase_fwd();
        const double norm = 1.0 / std::sqrt(2.0 * g);
        out.psi_plus = two_block(e_itheta * g * norm, norm);
        out.psi_minus = two_block(-e_itheta * g * norm, norm);
        out.phi_plus = two_block(e_itheta * norm, g * norm);
        out.phi_minus = two_block(-e_itheta * norm, g * norm);
        return out;
    }

    // Non-resonant: Gamma_{+-}^n = e^{i theta}/(c2 sqrt(n+1)) [Delta +- sqrt(Delta^2+beta(n+1))]
    const double root = std::sqrt(spec.delta * spec.delta + p.beta() * (n + 1));
    const cplx pref = p.phase_fwd() / (p.c2 * std::sqrt(n + 1.0));
    const cplx gamma_plus = pref * (spec.delta + root);
    const cplx gamma_minus = pref * (spec.delta - root);
    auto nr_vec = [&](cplx big_gamma) {
        const double norm = std::sqrt(g / (g * g + std::norm(big_gamma)));
        return two_block(big_gamma * norm, norm);
    };
    out.psi_plus = nr_vec(gamma_plus);
    out.psi_minus = nr_vec(gamma_minus);
    // phi = eta_+ psi up to normalization; rescaled so <psi|phi> = 1.
    auto phi_of = [&](const Vector& psi) {
        Vector v = psi;
        v.head(m) /= g;
        v.tail(m) *= g;
        const cplx ip = psi.dot(v);
        return Vector(v / std::conj(ip));
    };
    out.phi_plus = phi_of(out.psi_plus);
    out.phi_minus = phi_of(out.psi_minus);
    return out;
}

// Residual between the tcm_fermionic build and the supercharge form with the
// diagonal part assembled independently as a†a + R3 + 1/2. Compared on the
// interior (boson index < cutoff-1): the truncation clip of [a, a†] makes the
// identity fail on the top Fock level by construction.
inline double tcm_susy_form_check(const ModelSpec& spec) {
    if (spec.kind != ModelKind::tcm_fermionic)
        throw CatalogError("tcm_susy_form_check: requires kind tcm_fermionic");
    const Matrix h = build(spec);
    const quanta::BosonOps b = quanta::boson_ops(spec.cutoff);
    const quanta::Su2Rep r =
        quanta::su2_fermionic(quanta::fermion_rep_general(spec.n_molecules));
    const Matrix sid = Matrix::Identity(r.dim, r.dim);
    const Matrix bid = Matrix::Identity(spec.cutoff, spec.cutoff);
    const CouplingParams& p = spec.coupling;
    Matrix direct = kron(sid, b.number) + kron(r.r3, bid) +
                    0.5 * Matrix::Identity(h.rows(), h.cols());
    direct += p.c1 * p.phase_fwd() * kron(r.r_minus, b.raise);
    direct += p.c2 * p.phase_bwd() * kron(r.r_plus, b.lower);

    Matrix diff = h - direct;
    // project out the top Fock level
    for (Eigen::Index idx : boundary_indices(spec)) {
        diff.row(idx).setZero();
        diff.col(idx).setZero();
    }
    return diff.norm();
}

}  // namespace jcth::models
