// spectra.hpp — Spectral analysis: excitation-block decomposition, eigenvalue
// classification (real vs conjugate-paired), bi-orthonormal bases, eta_+
// Gram checks, and closed-form comparison.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "jcth/linalg.hpp"
#include "jcth/models.hpp"
#include "jcth/pseudometric.hpp"

namespace jcth::spectra {

using susy::CouplingParams;

struct Tolerances {
    double tol_real = 1e-9;        // |Im| <= tol_real * (1 + |lambda|)
    double tol_pair = 1e-8;        // conjugate pairing defect, times scale
    double boundary_weight = 1e-8; // eigenvector weight on the top Fock level
};

enum class Classification { all_real, conjugate_paired, mixed, critical_no_claim };

inline const char* classification_name(Classification c) {
    switch (c) {
        case Classification::all_real: return "all_real";
        case Classification::conjugate_paired: return "conjugate_paired";
        case Classification::mixed: return "mixed";
        case Classification::critical_no_claim: return "critical_no_claim";
    }
    return "?";
}

struct EigRecord {
    cplx value;
    int block = -1;  // excitation block label, -1 if unknown
    models::Branch branch = models::Branch::ground;
    bool has_branch = false;
    bool boundary = false;
    std::optional<double> closed_form_re;
    std::optional<double> closed_form_delta;
};

struct SpectrumReport {
    std::vector<EigRecord> eigenvalues;
    Classification classification = Classification::critical_no_claim;
    double max_imag_interior = 0.0;
    double pairing_defect = 0.0;
    std::optional<double> closed_form_max_delta;
    Tolerances tolerances;
};

// ------------------------------ boundary masks -------------------------------

// Flags eigenvectors with more than `weight` relative mass on the truncation
// edge; those carry cutoff artifacts, not physics.
inline std::vector<bool> boundary_mask(const Eigensystem& es,
                                       const std::vector<Eigen::Index>& boundary_idx,
                                       double weight = 1e-8) {
    std::vector<bool> mask(static_cast<std::size_t>(es.values.size()), false);
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
        double w = 0.0;
        for (Eigen::Index idx : boundary_idx) w += std::norm(es.right(idx, k));
        const double total = es.right.col(k).squaredNorm();
        mask[static_cast<std::size_t>(k)] = w > weight * total;
    }
    return mask;
}

// --------------------------- block decomposition -----------------------------

struct Block {
    long label = 0;                     // excitation number
    Matrix sub;                         // restriction of h to the block
    std::vector<Eigen::Index> indices;  // computational-basis indices
    bool boundary = false;
};

inline std::vector<Block> block_decompose(const Matrix& h, const Matrix& n_ex,
                                          const std::vector<Eigen::Index>& boundary_idx = {},
                                          double comm_tol = 1e-12) {
    check_square_finite(h, "block_decompose");
    if (n_ex.rows() != h.rows()) throw ShapeError("block_decompose: dimension mismatch");
    Matrix off = n_ex;
    off.diagonal().setZero();
    if (off.norm() > 1e-12 * std::max(1.0, frob(n_ex)))
        throw PreconditionError("block_decompose: n_ex must be diagonal in the computational basis");
    const double scale = std::max(1.0, frob(h) * frob(n_ex));
    if (commutator(h, n_ex).norm() > comm_tol * scale)
        throw NotBlockDiagonalError("block_decompose: h does not commute with n_ex");

    std::map<long, std::vector<Eigen::Index>> groups;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        groups[std::lround(n_ex(i, i).real())].push_back(i);

    std::vector<Block> blocks;
    for (auto& [label, idx] : groups) {
        Block blk;
        blk.label = label;
        blk.indices = idx;
        blk.sub.resize(Eigen::Index(idx.size()), Eigen::Index(idx.size()));
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b)
                blk.sub(Eigen::Index(a), Eigen::Index(b)) = h(idx[a], idx[b]);
        blk.boundary = std::any_of(idx.begin(), idx.end(), [&](Eigen::Index i) {
            return std::find(boundary_idx.begin(), boundary_idx.end(), i) != boundary_idx.end();
        });
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

// ------------------------------ classification -------------------------------

inline SpectrumReport classify_values(const std::vector<cplx>& values,
                                      const std::vector<bool>& boundary,
                                      const CouplingParams& p, const Tolerances& tols = {}) {
    if (boundary.size() != values.size())
        throw ShapeError("classify: boundary mask does not match eigenvalue count");
    SpectrumReport report;
    report.tolerances = tols;
    double scale = 1.0;
    for (cplx v : values) scale = std::max(scale, std::abs(v));

    std::vector<cplx> interior_complex;
    for (std::size_t k = 0; k < values.size(); ++k) {
        EigRecord rec;
        rec.value = values[k];
        rec.boundary = boundary[k];
        report.eigenvalues.push_back(rec);
        if (rec.boundary) continue;
        const double im = std::abs(rec.value.imag());
        report.max_imag_interior = std::max(report.max_imag_interior, im);
        if (im > tols.tol_real * (1.0 + std::abs(rec.value))) interior_complex.push_back(rec.value);
    }

    if (p.regime() == susy::Regime::critical) {
        report.classification = Classification::critical_no_claim;
        return report;
    }

    if (interior_complex.empty()) {
        report.classification = Classification::all_real;
        return report;
    }

    // Conjugate matching: each upper half-plane value is greedily matched to the
    // nearest unclaimed conjugate of a lower half-plane value.  Sorting-based
    // pairing is fragile here: clusters of equal real parts are perturbed at the
    // last-ulp level, so a lexicographic (Re, Im) key can interleave the two
    // half-planes differently.  Nearest-neighbour matching is immune to that and
    // stable under exact degeneracies (repeated identical pairs).
    std::vector<cplx> upper, lower;
    for (cplx v : interior_complex) (v.imag() > 0 ? upper : lower).push_back(v);
    double defect = 0.0;
    const bool matched_all = upper.size() == lower.size();
    std::vector<bool> claimed(lower.size(), false);
    for (const cplx u : upper) {
        std::size_t best = lower.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < lower.size(); ++j) {
            if (claimed[j]) continue;
            const double d = std::abs(u - std::conj(lower[j]));
            if (d < best_d) { best_d = d; best = j; }
        }
        if (best == lower.size()) break;
        claimed[best] = true;
        defect = std::max(defect, best_d);
    }
    report.pairing_defect = defect;
    report.classification = (matched_all && defect <= tols.tol_pair * scale)
                                ? Classification::conjugate_paired
                                : Classification::mixed;
    return report;
}

inline SpectrumReport classify(const Eigensystem& es, const std::vector<bool>& boundary,
                               const CouplingParams& p, const Tolerances& tols = {}) {
    std::vector<cplx> values(es.values.data(), es.values.data() + es.values.size());
    return classify_values(values, boundary, p, tols);
}

// ----------------------------- block spectrum --------------------------------

// Eigenvalues computed block by block in the conserved-excitation basis, with
// the block label attached and truncated blocks (those touching the top Fock
// level) flagged wholesale.  Exact under degeneracies: a boundary artifact
// accidentally degenerate with interior levels cannot contaminate their flags,
// because the flag is a property of the invariant block, not of whichever
// eigenvector basis the dense solver happens to return.
struct BlockSpectrum {
    std::vector<cplx> values;
    std::vector<int> labels;
    std::vector<bool> boundary;
};

inline BlockSpectrum block_spectrum(const Matrix& h, const Matrix& n_ex,
                                    const std::vector<Eigen::Index>& boundary_idx) {
    BlockSpectrum out;
    for (const Block& blk : block_decompose(h, n_ex, boundary_idx)) {
        const Vector vals = sorted_eigenvalues(blk.sub);
        for (Eigen::Index k = 0; k < vals.size(); ++k) {
            out.values.push_back(vals(k));
            out.labels.push_back(static_cast<int>(blk.label));
            out.boundary.push_back(blk.boundary);
        }
    }
    std::vector<std::size_t> order(out.values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const cplx va = out.values[a], vb = out.values[b];
        if (va.real() != vb.real()) return va.real() < vb.real();
        return va.imag() < vb.imag();
    });
    BlockSpectrum sorted;
    for (std::size_t i : order) {
        sorted.values.push_back(out.values[i]);
        sorted.labels.push_back(out.labels[i]);
        sorted.boundary.push_back(out.boundary[i]);
    }
    return sorted;
}

// --------------------------- bi-orthonormal basis ----------------------------

struct BiorthoBasis {
    Matrix right;
    Matrix left;
    double gram_defect = 0.0;
    double completeness_defect = 0.0;
};

// Rescales left/right eigenvector pairs so <phi_m|psi_n> = delta_mn.
// Eigenvalue clusters closer than cluster_tol*scale are bi-orthonormalized as
// subspaces (small Gram inversion) rather than vector by vector.
inline BiorthoBasis biortho(const Eigensystem& es, double cluster_tol = 1e-8) {
    const Eigen::Index n = es.values.size();
    BiorthoBasis basis;
    basis.right = es.right;
    basis.left = es.left;
    double scale = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) scale = std::max(scale, std::abs(es.values(k)));

    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index stop = start + 1;
        while (stop < n && std::abs(es.values(stop) - es.values(stop - 1)) <= cluster_tol * scale)
            ++stop;
        const Eigen::Index k = stop - start;
        Matrix gram = basis.left.middleCols(start, k).adjoint() * basis.right.middleCols(start, k);
        // Unit-norm eigenvector columns of a diagonalizable cluster give a
        // Gram with singular values of order one; a tiny singular value means
        // left and right subspaces are (numerically) orthogonal, i.e. a
        // defective or near-defective matrix.
        Eigen::JacobiSVD<Matrix> svd(gram);
        if (svd.singularValues()(k - 1) < 1e-10)
            throw DefectiveMatrixError(
                "biortho: singular left/right Gram block; matrix appears defective");
        Eigen::FullPivLU<Matrix> lu(gram);
        // L_new = L G^{-dagger} so that L_new† R = I on the cluster.
        basis.left.middleCols(start, k) =
            basis.left.middleCols(start, k) * lu.inverse().adjoint();
        start = stop;
    }
    basis.gram_defect =
        (basis.left.adjoint() * basis.right - Matrix::Identity(n, n)).norm();
    basis.completeness_defect =
        (basis.right * basis.left.adjoint() - Matrix::Identity(n, n)).norm();
    return basis;
}

// ------------------------------- eta Gram ------------------------------------

struct GramResult {
    Matrix gram;
    double defect = 0.0;  // deviation from identity
};

// B† eta_+ B for a basis of column vectors under the positive metric.
inline GramResult eta_gram(const Matrix& basis, const pseudometric::MetricSpec& m) {
    if (!m.positive_definite) throw RegimeError("eta_gram: requires the positive metric");
    if (basis.rows() != m.matrix.rows()) throw ShapeError("eta_gram: dimension mismatch");
    GramResult res;
    res.gram = basis.adjoint() * m.matrix * basis;
    res.defect = (res.gram - Matrix::Identity(basis.cols(), basis.cols())).norm();
    return res;
}

// -------------------------- closed-form comparison ---------------------------

// Matches interior eigenvalues against closed-form values by sorted real
// part (multiplicity aware) and returns the maximum |delta|; annotates the
// report records in place.
inline double compare_closed_form(SpectrumReport& report,
                                  const models::ClosedFormSpectrum& cf) {
    std::vector<std::size_t> interior;
    for (std::size_t i = 0; i < report.eigenvalues.size(); ++i)
        if (!report.eigenvalues[i].boundary) interior.push_back(i);
    if (interior.size() < cf.entries.size())
        throw CatalogError("compare_closed_form: " + std::to_string(cf.entries.size()) +
                           " closed-form levels but only " + std::to_string(interior.size()) +
                           " interior eigenvalues");

    auto key = [](cplx v) { return std::pair<double, double>(v.real(), v.imag()); };
    std::sort(interior.begin(), interior.end(), [&](std::size_t a, std::size_t b) {
        return key(report.eigenvalues[a].value) < key(report.eigenvalues[b].value);
    });
    std::vector<std::size_t> cf_order(cf.entries.size());
    std::iota(cf_order.begin(), cf_order.end(), 0);
    std::sort(cf_order.begin(), cf_order.end(), [&](std::size_t a, std::size_t b) {
        return key(cf.entries[a].value) < key(cf.entries[b].value);
    });

    double max_delta = 0.0;
    if (interior.size() == cf.entries.size()) {
        // equal counts: sorted pairing is the optimal matching
        for (std::size_t i = 0; i < cf_order.size(); ++i) {
            EigRecord& rec = report.eigenvalues[interior[i]];
            const models::SpectrumEntry& entry = cf.entries[cf_order[i]];
            const double delta = std::abs(rec.value - entry.value);
            rec.closed_form_re = entry.value.real();
            rec.closed_form_delta = delta;
            rec.branch = entry.branch;
            rec.has_branch = true;
            max_delta = std::max(max_delta, delta);
        }
    } else {
        // fewer closed-form levels than interior eigenvalues: greedy nearest
        // neighbour, each interior value used at most once
        std::vector<bool> used(interior.size(), false);
        for (std::size_t ci : cf_order) {
            const models::SpectrumEntry& entry = cf.entries[ci];
            std::size_t best = interior.size();
            double best_d = 0.0;
            for (std::size_t i = 0; i < interior.size(); ++i) {
                if (used[i]) continue;
                const double d = std::abs(report.eigenvalues[interior[i]].value - entry.value);
                if (best == interior.size() || d < best_d) {
                    best = i;
                    best_d = d;
                }
            }
            used[best] = true;
            EigRecord& rec = report.eigenvalues[interior[best]];
            rec.closed_form_re = entry.value.real();
            rec.closed_form_delta = best_d;
            rec.branch = entry.branch;
            rec.has_branch = true;
            max_delta = std::max(max_delta, best_d);
        }
    }
    report.closed_form_max_delta = max_delta;
    return max_delta;
}

}  // namespace jcth::spectra
