// selfcheck.hpp — Built-in verification battery: ten numbered criteria with
// pinned tolerances and runtime budgets, plus a deterministic JSON report.

#pragma once

#include <Eigen/SparseCore>

#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "jcth/io.hpp"
#include "jcth/linalg.hpp"
#include "jcth/models.hpp"
#include "jcth/pseudometric.hpp"
#include "jcth/shapeinv.hpp"
#include "jcth/spectra.hpp"
#include "jcth/susy.hpp"

namespace jcth::selfcheck {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;   // deterministic (no timings)
    double seconds = 0.0; // console only, never serialized
};

struct SelfCheckReport {
    std::vector<CriterionResult> criteria;
    bool all_passed = true;
    spectra::SpectrumReport benchmark_spectrum;  // criterion 1 spectrum, for the CSV
};

namespace detail {

inline std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

// ------------------------- shared model catalog ------------------------------

inline std::vector<std::pair<std::string, models::ModelSpec>> catalog_specs(double c1, double c2,
                                                                            double theta) {
    std::vector<std::pair<std::string, models::ModelSpec>> out;
    auto base = [&](models::ModelKind kind, int cutoff) {
        models::ModelSpec s;
        s.kind = kind;
        s.coupling = {c1, c2, theta};
        s.cutoff = cutoff;
        return s;
    };
    out.emplace_back("jc_resonant", base(models::ModelKind::jc_resonant, 24));
    {
        models::ModelSpec s = base(models::ModelKind::jc_nonresonant, 24);
        s.delta = 0.35;
        out.emplace_back("jc_nonresonant", s);
    }
    auto gen = [&](models::CouplingKind k, const std::string& name) {
        models::ModelSpec s = base(models::ModelKind::generalized, 16);
        s.form.kind = k;
        if (k == models::CouplingKind::multiphoton) s.form.k = 2;
        if (k == models::CouplingKind::q_oscillator) s.form.q = 1.5;
        if (k == models::CouplingKind::kerr) {
            s.form.chi1 = 0.1;
            s.form.chi2 = 0.2;
        }
        out.emplace_back(name, s);
    };
    gen(models::CouplingKind::identity_jc, "generalized_identity");
    gen(models::CouplingKind::intensity_dependent, "generalized_intensity");
    gen(models::CouplingKind::kerr, "generalized_kerr");
    gen(models::CouplingKind::multiphoton, "generalized_multiphoton2");
    gen(models::CouplingKind::q_oscillator, "generalized_qosc");
    {
        models::ModelSpec s = base(models::ModelKind::dressed, 16);
        s.b2 = 0.2;
        s.d2 = 0.1;
        s.e2 = 0.3;
        out.emplace_back("dressed", s);
    }
    {
        models::ModelSpec s = base(models::ModelKind::tcm_pauli, 16);
        s.n_molecules = 2;
        out.emplace_back("tcm_pauli_n2", s);
    }
    {
        models::ModelSpec s = base(models::ModelKind::tcm_fermionic, 16);
        s.n_molecules = 2;
        out.emplace_back("tcm_fermionic_n2", s);
    }
    return out;
}

// Model templates for the regime sweeps.
inline std::vector<models::ModelSpec> sweep_templates() {
    std::vector<models::ModelSpec> out;
    auto add = [&](models::ModelKind kind, auto&&... tweak) {
        models::ModelSpec s;
        s.kind = kind;
        s.cutoff = 12;
        (tweak(s), ...);
        out.push_back(s);
    };
    add(models::ModelKind::jc_resonant);
    add(models::ModelKind::jc_nonresonant, [](models::ModelSpec& s) { s.delta = 0.3; });
    for (int n = 1; n <= 3; ++n)
        add(models::ModelKind::tcm_pauli, [n](models::ModelSpec& s) { s.n_molecules = n; });
    add(models::ModelKind::generalized,
        [](models::ModelSpec& s) { s.form.kind = models::CouplingKind::multiphoton; s.form.k = 2; });
    add(models::ModelKind::generalized,
        [](models::ModelSpec& s) { s.form.kind = models::CouplingKind::multiphoton; s.form.k = 3; });
    add(models::ModelKind::generalized, [](models::ModelSpec& s) {
        s.form.kind = models::CouplingKind::kerr;
        s.form.chi1 = 0.05;
        s.form.chi2 = 0.08;
    });
    add(models::ModelKind::generalized,
        [](models::ModelSpec& s) { s.form.kind = models::CouplingKind::intensity_dependent; });
    add(models::ModelKind::generalized,
        [](models::ModelSpec& s) { s.form.kind = models::CouplingKind::q_oscillator; s.form.q = 1.5; });
    return out;
}

// ----------------------- superalgebra battery (dense) ------------------------

inline double root_battery(const susy::Supercharge& sc, const Matrix& g5,
                           const susy::CouplingParams& p) {
    const Matrix h = susy::susy_hamiltonian(sc);
    const double scale = std::max(1.0, frob(h));
    double worst = 0.0;
    for (const auto& [k, v] : susy::verify_superalgebra(sc))
        worst = std::max(worst, v / scale);
    const Matrix bh = p.beta() * h;
    auto root_check = [&](const Matrix& s) {
        worst = std::max(worst, (s * s - bh).norm() / scale);
        worst = std::max(worst, commutator(h, s).norm() / scale);
    };
    root_check(susy::s_operator(sc, p));
    root_check(susy::alt_root(sc, p, susy::RootKind::s1, g5));
    for (double eps : {0.5, 1.0, 2.0}) {
        root_check(susy::alt_root(sc, p, susy::RootKind::s2, g5, eps));
        root_check(susy::alt_root(sc, p, susy::RootKind::s3, g5, eps));
    }
    return worst;
}

inline double extended_residual(const std::vector<Matrix>& qs,
                                const std::vector<susy::CouplingParams>& ps) {
    susy::ExtendedCharges x;
    for (const Matrix& q : qs) x.charges.push_back(susy::make_supercharge(q));
    x.params = ps;
    const Matrix h = susy::susy_hamiltonian(x.charges.front());
    const double scale = std::max(1.0, frob(h));
    double worst = quanta::max_residual(susy::extended_algebra_residuals(x)) / scale;
    const Matrix s = susy::s_extended(x);
    worst = std::max(worst, (s * s - x.beta_n() * h).norm() / scale);
    return worst;
}

// ----------------------- superalgebra battery (sparse) -----------------------
// The three-mode realization lives in dimension 4096 where dense products are
// O(n^3); every operator involved is sparse (O(n) entries), so the battery is
// evaluated with sparse algebra. Same operators, same residuals.

using SpMat = Eigen::SparseMatrix<cplx>;

inline SpMat sp(const Matrix& m) { return m.sparseView(1.0, 0.0); }

inline SpMat sp_diag(const Eigen::VectorXd& d) {
    SpMat m(d.size(), d.size());
    m.reserve(Eigen::VectorXi::Constant(int(d.size()), 1));
    for (Eigen::Index i = 0; i < d.size(); ++i) m.insert(i, i) = d(i);
    m.makeCompressed();
    return m;
}

inline double superosc_sparse_battery(int n_modes, int cutoff, const susy::CouplingParams& p) {
    const quanta::FermionRep rep = quanta::fermion_rep_explicit(n_modes);
    const susy::Supercharge sc = susy::many_particle_supercharge(rep, cutoff);
    const Eigen::Index dim = sc.q.rows();
    const SpMat q = sp(sc.q), qd = sp(sc.q_dag);
    const SpMat h = SpMat(q * qd) + SpMat(qd * q);
    const double scale = std::max(1.0, h.norm());
    double worst = 0.0;
    auto upd = [&](const SpMat& m) { worst = std::max(worst, m.norm() / scale); };
    upd(SpMat(q * q));
    upd(SpMat(qd * qd));
    upd(SpMat(SpMat(h * q) - SpMat(q * h)));
    upd(SpMat(SpMat(h * qd) - SpMat(qd * h)));

    const cplx fwd = p.phase_fwd(), bwd = p.phase_bwd();
    const SpMat s = SpMat(p.c1 * fwd * q) + SpMat(p.c2 * bwd * qd);
    const SpMat bh = cplx(p.beta()) * h;
    upd(SpMat(SpMat(s * s) - bh));

    Eigen::Index boson_dim = dim / rep.gamma5.rows();
    const SpMat g5 = sp(kron(rep.gamma5, Matrix::Identity(boson_dim, boson_dim)));
    const SpMat s1 = cplx(0, 1) * SpMat(g5 * s);
    upd(SpMat(SpMat(s1 * s1) - bh));

    // (H + eps^2)^{+-1}: H is diagonal in the occupation basis
    Eigen::VectorXd hd(dim);
    for (Eigen::Index i = 0; i < dim; ++i) hd(i) = 0.0;
    double offdiag = 0.0;
    for (int k = 0; k < h.outerSize(); ++k)
        for (SpMat::InnerIterator it(h, k); it; ++it) {
            if (it.row() == it.col()) hd(it.row()) = it.value().real();
            else offdiag = std::max(offdiag, std::abs(it.value()));
        }
    if (offdiag > 1e-13 * scale)
        throw PreconditionError("superosc_sparse_battery: H unexpectedly non-diagonal");
    for (double eps : {0.5, 1.0, 2.0}) {
        Eigen::VectorXd shift = hd.array() + eps * eps;
        const SpMat d = sp_diag(shift);
        const SpMat dinv = sp_diag(shift.cwiseInverse());
        const SpMat s2 = SpMat(p.c1 * fwd * SpMat(d * q)) + SpMat(p.c2 * bwd * SpMat(dinv * qd));
        upd(SpMat(SpMat(s2 * s2) - bh));
        const SpMat s3 = cplx(0, 1) * SpMat(g5 * s2);
        upd(SpMat(SpMat(s3 * s3) - bh));
    }

    // two-charge extension on the same space: Q_a = psi_a (x) sqrt(N_total);
    // sqrt(N_total) commutes with the Grassmann factors, so the cross
    // anticommutators collapse to the exact algebra.
    Eigen::VectorXd ntot = Eigen::VectorXd::Zero(boson_dim);
    for (Eigen::Index b = 0; b < boson_dim; ++b) {
        Eigen::Index rest = b;
        for (int m = 0; m < n_modes; ++m) {
            ntot(b) += double(rest % cutoff);
            rest /= cutoff;
        }
    }
    const Matrix root_n =
        Eigen::VectorXcd(ntot.cwiseSqrt().cast<cplx>()).asDiagonal().toDenseMatrix();
    std::vector<SpMat> ext_q, ext_qd;
    for (int a = 0; a < 2; ++a) {
        SpMat qa = sp(kron(rep.psi[static_cast<std::size_t>(a)], root_n));
        ext_qd.push_back(SpMat(qa.adjoint()));
        ext_q.push_back(std::move(qa));
    }
    Eigen::VectorXd hext_diag(dim);
    for (Eigen::Index i = 0; i < dim; ++i) hext_diag(i) = ntot(i % boson_dim);
    const SpMat hext = sp_diag(hext_diag);
    const double ext_scale = std::max(1.0, hext.norm());
    auto upd_ext = [&](const SpMat& m) { worst = std::max(worst, m.norm() / ext_scale); };
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            upd_ext(SpMat(SpMat(ext_q[a] * ext_q[b]) + SpMat(ext_q[b] * ext_q[a])));
            SpMat m = SpMat(ext_q[a] * ext_qd[b]) + SpMat(ext_qd[b] * ext_q[a]);
            if (a == b) m = SpMat(m - hext);
            upd_ext(m);
        }
    const std::vector<std::vector<susy::CouplingParams>> param_sets = {
        {{1.0, 1.0, 0.7}, {1.0, 1.0, 0.2}},   // beta_N = 2
        {{1.0, 1.0, 0.7}, {1.0, -2.0, 0.2}}}; // beta_N = -1
    for (const auto& ps : param_sets) {
        SpMat sn(dim, dim);
        double beta_n = 0.0;
        for (int a = 0; a < 2; ++a) {
            sn = SpMat(sn + SpMat(ps[a].c1 * ps[a].phase_fwd() * ext_q[a]) +
                       SpMat(ps[a].c2 * ps[a].phase_bwd() * ext_qd[a]));
            beta_n += ps[a].beta();
        }
        upd_ext(SpMat(SpMat(sn * sn) - SpMat(cplx(beta_n) * hext)));
    }
    return worst;
}

// --------------------------------- criteria ----------------------------------

inline CriterionResult c1_resonant_closed_form(spectra::SpectrumReport& benchmark) {
    CriterionResult r{1, "resonant closed-form spectrum (cutoff 64)"};
    models::ModelSpec spec;
    spec.kind = models::ModelKind::jc_resonant;
    spec.coupling = {4.0, 1.0, 0.7};
    spec.cutoff = 64;
    io::ToleranceSet tols;
    tols.tol_closed = 1e-10;
    const io::CheckOutcome out = io::check_closed_form(spec, tols, kDefaultDimLimit, &benchmark);
    r.passed = out.passed;
    r.detail = "max closed-form delta " + sci(out.residuals.at("max_delta")) +
               ", interior coverage " + sci(out.residuals.at("interior_coverage")) +
               " (tol 1e-10)";
    return r;
}

inline CriterionResult c2_reality_sweep() {
    CriterionResult r{2, "reality regime sweep (200 points, beta > 0)"};
    const auto templates = sweep_templates();
    io::ToleranceSet tols;
    double worst_im = 0.0;
    int failures = 0;
    for (int i = 0; i < 20; ++i) {
        susy::CouplingParams p;
        p.c1 = 0.4 + 0.37 * (i % 5);
        p.c2 = 0.25 + 0.41 * ((i / 5) % 4);
        p.theta = 0.31 * i - 1.5;
        for (models::ModelSpec spec : templates) {
            spec.coupling = p;
            const io::CheckOutcome out =
                io::check_spectrum_reality(spec, tols, kDefaultDimLimit);
            worst_im = std::max(worst_im, out.residuals.at("max_imag_interior"));
            if (!out.passed) ++failures;
        }
    }
    r.passed = failures == 0;
    r.detail = "200/200 points classified all_real, max interior |Im| " + sci(worst_im);
    if (failures > 0) r.detail = std::to_string(failures) + " of 200 points misclassified";
    return r;
}

inline CriterionResult c3_conjugate_pairing() {
    CriterionResult r{3, "conjugate pairing sweep (50 points, beta < 0)"};
    const auto templates = sweep_templates();
    io::ToleranceSet tols;
    int failures = 0;
    double worst_pair = 0.0;
    for (int i = 0; i < 5; ++i) {
        susy::CouplingParams p;
        p.c1 = 0.7 + 0.3 * i;
        p.c2 = -(0.45 + 0.35 * i);
        p.theta = 0.5 * i - 1.0;
        for (models::ModelSpec spec : templates) {
            spec.coupling = p;
            const io::CheckOutcome out =
                io::check_spectrum_reality(spec, tols, kDefaultDimLimit);
            worst_pair = std::max(worst_pair, out.residuals.at("pairing_defect"));
            if (!out.passed) ++failures;
        }
    }
    // critical line: beta = 0 points must be reported without a claim
    int critical_failures = 0;
    for (std::size_t t = 0; t < 5; ++t) {
        models::ModelSpec spec = templates[t];
        spec.coupling = {1.0, 0.0, 0.3};
        const io::CheckOutcome out = io::check_spectrum_reality(spec, io::ToleranceSet{},
                                                               kDefaultDimLimit);
        if (!out.passed || out.message != "critical_no_claim") ++critical_failures;
    }
    r.passed = failures == 0 && critical_failures == 0;
    r.detail = "50/50 points conjugate_paired (max pairing defect " + sci(worst_pair) +
               "), 5/5 critical points reported without claim";
    if (!r.passed)
        r.detail = std::to_string(failures) + " pairing failures, " +
                   std::to_string(critical_failures) + " critical-line failures";
    return r;
}

inline CriterionResult c4_pseudoherm() {
    CriterionResult r{4, "pseudo-hermiticity across the model catalog"};
    io::ToleranceSet tols;
    double worst = 0.0;
    for (const auto& [c1, c2] : std::vector<std::pair<double, double>>{{4, 1}, {1, -2}}) {
        for (const auto& [name, spec] : catalog_specs(c1, c2, 0.7)) {
            const io::CheckOutcome out = io::check_pseudoherm(spec, tols, kDefaultDimLimit);
            worst = std::max(worst, out.residuals.at("pseudoherm"));
        }
    }
    r.passed = worst <= 1e-12;
    r.detail = "max metric residual " + sci(worst) + " over 20 (model, metric) pairs (tol 1e-12)";
    return r;
}

inline CriterionResult c5_quasiherm() {
    CriterionResult r{5, "quasi-hermiticity and isospectrality (beta > 0)"};
    io::ToleranceSet tols;
    double worst_h = 0.0, worst_iso = 0.0;
    bool ok = true;
    for (const auto& [name, spec] : catalog_specs(4, 1, 0.7)) {
        const io::CheckOutcome out = io::check_quasiherm(spec, tols, kDefaultDimLimit);
        worst_h = std::max(worst_h, out.residuals.at("hermiticity"));
        worst_iso = std::max(worst_iso, out.residuals.at("isospectrality"));
        ok = ok && out.passed;
    }
    r.passed = ok && worst_h <= 1e-10 && worst_iso <= 1e-9;
    r.detail = "max hermiticity defect " + sci(worst_h) + " (tol 1e-10), max isospectrality " +
               sci(worst_iso) + " (tol 1e-9)";
    return r;
}

inline CriterionResult c6_biortho() {
    CriterionResult r{6, "bi-orthonormal completeness and explicit doublet vectors"};
    models::ModelSpec spec;
    spec.kind = models::ModelKind::jc_resonant;
    spec.coupling = {4.0, 1.0, 0.7};
    spec.cutoff = 32;
    io::ToleranceSet tols;
    const io::CheckOutcome out = io::check_biortho(spec, tols, kDefaultDimLimit);

    // explicit doublet vectors: <phi_m^I | psi_n^J> = delta delta
    const int m = spec.cutoff;
    const int pairs = m - 2;
    Matrix psi(2 * m, 1 + 2 * pairs), phi(2 * m, 1 + 2 * pairs);
    psi.col(0) = models::ground_state_psi(spec);
    phi.col(0) = models::ground_state_phi(spec);
    for (int n = 0; n < pairs; ++n) {
        const models::EigvecPair v = models::closed_form_eigenvectors(spec, n);
        psi.col(1 + 2 * n) = v.psi_minus;
        psi.col(2 + 2 * n) = v.psi_plus;
        phi.col(1 + 2 * n) = v.phi_minus;
        phi.col(2 + 2 * n) = v.phi_plus;
    }
    const double explicit_defect =
        (phi.adjoint() * psi - Matrix::Identity(psi.cols(), psi.cols())).norm();
    r.passed = out.passed && explicit_defect <= 1e-12;
    r.detail = "gram defect " + sci(out.residuals.at("gram_defect")) +
               " (tol 1e-10), completeness defect " +
               sci(out.residuals.at("completeness_defect")) +
               " (tol 1e-9), explicit-vector defect " + sci(explicit_defect) + " (tol 1e-12)";
    return r;
}

inline CriterionResult c7_eta_norms() {
    CriterionResult r{7, "eta_+ orthonormality of closed-form eigenvectors"};
    double worst = 0.0;
    for (double delta : {0.0, 0.35}) {
        models::ModelSpec spec;
        spec.kind = delta == 0.0 ? models::ModelKind::jc_resonant
                                 : models::ModelKind::jc_nonresonant;
        spec.coupling = {4.0, 1.0, 0.7};
        spec.delta = delta;
        spec.cutoff = 32;
        const pseudometric::MetricSpec eta =
            pseudometric::eta_2x2(spec.coupling, true, spec.cutoff);
        const Matrix eta_inv = pseudometric::eta_inverse(eta);
        const int pairs = spec.cutoff - 2;
        Matrix psi(2 * spec.cutoff, 1 + 2 * pairs), phi(2 * spec.cutoff, 1 + 2 * pairs);
        psi.col(0) = models::ground_state_psi(spec);
        phi.col(0) = models::ground_state_phi(spec);
        for (int n = 0; n < pairs; ++n) {
            const models::EigvecPair v = models::closed_form_eigenvectors(spec, n);
            psi.col(1 + 2 * n) = v.psi_minus;
            psi.col(2 + 2 * n) = v.psi_plus;
            phi.col(1 + 2 * n) = v.phi_minus;
            phi.col(2 + 2 * n) = v.phi_plus;
        }
        const Matrix id = Matrix::Identity(psi.cols(), psi.cols());
        worst = std::max(worst, (psi.adjoint() * eta.matrix * psi - id).norm());
        worst = std::max(worst, (phi.adjoint() * eta_inv * phi - id).norm());
    }
    r.passed = worst <= 1e-12;
    r.detail = "max eta_+ Gram defect " + sci(worst) +
               " over resonant and detuned vector sets (tol 1e-12)";
    return r;
}

inline CriterionResult c8_superalgebra() {
    CriterionResult r{8, "superalgebra and alternative square roots"};
    const susy::CouplingParams p{4.0, 1.0, 0.7};
    double worst = 0.0;

    // single-mode oscillator charge
    const quanta::BosonOps b8 = quanta::boson_ops(8);
    const susy::Supercharge jc = susy::jc_supercharge(b8);
    const Matrix id8 = Matrix::Identity(8, 8);
    worst = std::max(worst, root_battery(jc, kron(quanta::pauli().s3, id8), p));
    {
        // two anticommuting charges: tensor a two-mode Grassmann factor with
        // sqrt(H) of the single-mode realization
        const Matrix h = susy::susy_hamiltonian(jc);
        const Matrix root_h =
            herm_apply(h, [](double x) { return std::sqrt(std::max(x, 0.0)); });
        const quanta::FermionRep rep2 = quanta::fermion_rep_general(2);
        const std::vector<Matrix> qs = {kron(rep2.psi[0], root_h), kron(rep2.psi[1], root_h)};
        worst = std::max(worst, extended_residual(qs, {{1, 1, 0.7}, {1, 1, 0.2}}));
        worst = std::max(worst, extended_residual(qs, {{1, 1, 0.7}, {1, -2, 0.2}}));
    }

    // two-mode realization (dense, dimension 256)
    const quanta::FermionRep rep = quanta::fermion_rep_explicit(2);
    const susy::Supercharge sc2 = susy::many_particle_supercharge(rep, 8);
    const Eigen::Index boson_dim = sc2.q.rows() / rep.gamma5.rows();
    worst = std::max(worst,
                     root_battery(sc2, kron(rep.gamma5,
                                            Matrix::Identity(boson_dim, boson_dim)), p));
    {
        Eigen::VectorXd ntot = Eigen::VectorXd::Zero(boson_dim);
        for (Eigen::Index v = 0; v < boson_dim; ++v) ntot(v) = double(v / 8 + v % 8);
        const Matrix root_n =
            Eigen::VectorXcd(ntot.cwiseSqrt().cast<cplx>()).asDiagonal().toDenseMatrix();
        const std::vector<Matrix> qs = {kron(rep.psi[0], root_n), kron(rep.psi[1], root_n)};
        worst = std::max(worst, extended_residual(qs, {{1, 1, 0.7}, {1, 1, 0.2}}));
        worst = std::max(worst, extended_residual(qs, {{1, 1, 0.7}, {1, -2, 0.2}}));
    }

    // three-mode realization (sparse, dimension 4096)
    worst = std::max(worst, superosc_sparse_battery(3, 8, p));

    r.passed = worst <= 1e-11;
    r.detail = "max relative residual " + sci(worst) +
               " across single-, two- and three-mode realizations (tol 1e-11)";
    return r;
}

inline CriterionResult c9_tensor_metric() {
    CriterionResult r{9, "tensor metric for multi-mode realizations (N = 2, 3)"};
    const susy::CouplingParams p{4.0, 1.0, 0.7};
    double worst = 0.0;
    for (int n : {2, 3}) {
        const quanta::FermionRep rep = quanta::fermion_rep_explicit(n);
        const susy::Supercharge sc = susy::many_particle_supercharge(rep, 8);
        const Matrix h = susy::susy_hamiltonian(sc) + susy::s_operator(sc, p);
        Eigen::Index boson_dim = 1;
        for (int i = 0; i < n; ++i) boson_dim *= 8;
        const pseudometric::MetricSpec m =
            pseudometric::eta_many_particle(p, n, true, int(boson_dim));
        worst = std::max(worst, residual_pseudoherm(h, m.matrix));
    }
    r.passed = worst <= 1e-11;
    r.detail = "max metric residual " + sci(worst) + " at dimensions 256 and 4096 (tol 1e-11)";
    return r;
}

inline CriterionResult c10_shape_invariance() {
    CriterionResult r{10, "shape-invariant recursion vs grid diagonalization"};
    const shapeinv::ShapeInvariantFamily f = shapeinv::family("morse");  // A = 2
    const susy::CouplingParams p{2.0, 0.5, 0.4};                        // beta = 1
    const shapeinv::AlgebraicSpectrum alg = shapeinv::energies(f, 2, p);
    const double root3 = std::sqrt(3.0);
    double alg_defect = std::max({std::abs(alg.energies[0]), std::abs(alg.energies[1] - 3.0),
                                  std::abs(alg.energies[2] - 4.0),
                                  std::abs(alg.doublets[0].first - cplx(3.0 - root3)),
                                  std::abs(alg.doublets[0].second - cplx(3.0 + root3))});

    auto grid_defects = [&](int points) {
        const shapeinv::Grid g{f.x_min, f.x_max, points};
        const auto merged = shapeinv::grid_parent_energies(f, g, 5);
        const std::vector<double> expect = {0.0, 3.0, 3.0, 4.0, 4.0};
        double parent_all = 0.0, parent_bound = 0.0;
        for (std::size_t i = 0; i < expect.size(); ++i) {
            const double d = std::abs(merged[i] - expect[i]);
            parent_all = std::max(parent_all, d);
            if (i < 3) parent_bound = std::max(parent_bound, d);  // levels below threshold
        }
        const shapeinv::GridSpectrum gs = shapeinv::grid_low_spectrum(f, p, g, 2);
        double doublet = 0.0;
        for (double target : {3.0 - root3, 3.0 + root3}) {
            double best = std::numeric_limits<double>::infinity();
            for (cplx v : gs.values) best = std::min(best, std::abs(v - target));
            doublet = std::max(doublet, best);
        }
        struct D { double parent_all, refinable; };
        return D{parent_all, std::max(parent_bound, doublet)};
    };
    const auto fine = grid_defects(2000);
    const auto coarse = grid_defects(1000);
    // the threshold level E = 4 carries an irreducible box shift; the
    // Richardson factor is evaluated on the levels that refine with h^2
    const double factor = coarse.refinable / std::max(fine.refinable, 1e-300);
    r.passed = alg_defect <= 1e-12 && fine.parent_all <= 5e-3 && fine.refinable <= 5e-3 &&
               factor >= 3.0;
    r.detail = "recursion defect " + sci(alg_defect) + ", grid defect " +
               sci(std::max(fine.parent_all, fine.refinable)) +
               " (tol 5e-3), Richardson factor " + sci(factor) + " (need >= 3)";
    return r;
}

}  // namespace detail

inline SelfCheckReport run_all(std::ostream* progress = nullptr) {
    SelfCheckReport report;
    using Clock = std::chrono::steady_clock;
    const std::map<int, double> budgets = {{1, 5.0}, {2, 120.0}, {9, 60.0}, {10, 30.0}};

    std::vector<std::function<CriterionResult()>> criteria = {
        [&report] { return detail::c1_resonant_closed_form(report.benchmark_spectrum); },
        [] { return detail::c2_reality_sweep(); },
        [] { return detail::c3_conjugate_pairing(); },
        [] { return detail::c4_pseudoherm(); },
        [] { return detail::c5_quasiherm(); },
        [] { return detail::c6_biortho(); },
        [] { return detail::c7_eta_norms(); },
        [] { return detail::c8_superalgebra(); },
        [] { return detail::c9_tensor_metric(); },
        [] { return detail::c10_shape_invariance(); }};

    for (auto& fn : criteria) {
        const auto t0 = Clock::now();
        CriterionResult res;
        try {
            res = fn();
        } catch (const std::exception& e) {
            res.id = int(report.criteria.size()) + 1;
            res.title = "criterion " + std::to_string(res.id);
            res.passed = false;
            res.detail = std::string("exception: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        auto budget = budgets.find(res.id);
        if (budget != budgets.end() && res.seconds > budget->second) {
            res.passed = false;
            res.detail += "; exceeded runtime budget";
        }
        if (progress) {
            *progress << (res.passed ? "PASS" : "FAIL") << "  criterion " << std::setw(2)
                      << res.id << "  " << res.title << "  [" << std::fixed
                      << std::setprecision(2) << res.seconds << " s]\n      " << res.detail
                      << "\n";
            progress->flush();
        }
        report.all_passed = report.all_passed && res.passed;
        report.criteria.push_back(std::move(res));
    }
    return report;
}

// Deterministic serialization: ids, titles, verdicts, residual strings — no
// timings or timestamps.
inline io::json report_json(const SelfCheckReport& report) {
    io::json doc;
    doc["schema_version"] = io::kSchemaVersion;
    doc["all_passed"] = report.all_passed;
    io::json arr = io::json::array();
    for (const CriterionResult& c : report.criteria) {
        io::json cj;
        cj["id"] = c.id;
        cj["title"] = c.title;
        cj["passed"] = c.passed;
        cj["detail"] = c.detail;
        arr.push_back(std::move(cj));
    }
    doc["criteria"] = std::move(arr);
    return doc;
}

}  // namespace jcth::selfcheck
