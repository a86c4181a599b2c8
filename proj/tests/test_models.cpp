// Model catalog tests: hand-computed matrix entries, conserved quantities,
// closed-form spectra verified against small-instance diagonalization, and
// the closed-form eigenvectors as actual eigenvectors.

#include <catch2/catch_amalgamated.hpp>

using Catch::Approx;

#include <algorithm>

#include "jcth/models.hpp"
#include "jcth/spectra.hpp"

using namespace jcth;

namespace {

models::ModelSpec resonant(double c1, double c2, double theta, int cutoff) {
    models::ModelSpec s;
    s.kind = models::ModelKind::jc_resonant;
    s.coupling = {c1, c2, theta};
    s.cutoff = cutoff;
    return s;
}

}  // namespace

TEST_CASE("resonant model entries at cutoff 2") {
    // basis |up,0>, |up,1>, |down,0>, |down,1>
    const models::ModelSpec s = resonant(2.0, 0.5, 0.0, 2);
    const Matrix h = models::build(s);
    // H = diag(aa†, a†a) + c1 sigma+ a + c2 sigma- a†
    REQUIRE(std::abs(h(0, 0) - 1.0) < 1e-14);   // aa†|0> = 1
    REQUIRE(std::abs(h(1, 1) - 0.0) < 1e-14);   // clip: aa†|1> = 0 at the edge
    REQUIRE(std::abs(h(2, 2) - 0.0) < 1e-14);   // a†a|0> = 0
    REQUIRE(std::abs(h(3, 3) - 1.0) < 1e-14);
    REQUIRE(std::abs(h(0, 3) - 2.0) < 1e-14);   // c1 <up,0|sigma+ a|down,1>
    REQUIRE(std::abs(h(3, 0) - 0.5) < 1e-14);   // c2 <down,1|sigma- a†|up,0>
}

TEST_CASE("detuning enters through the spin projection") {
    models::ModelSpec s = resonant(1.0, 1.0, 0.0, 4);
    s.kind = models::ModelKind::jc_nonresonant;
    s.delta = 0.25;
    const Matrix h = models::build(s);
    const Matrix h0 = models::build(resonant(1.0, 1.0, 0.0, 4));
    Matrix diff = h - h0;
    for (int i = 0; i < 4; ++i) {
        REQUIRE(std::abs(diff(i, i) - 0.25) < 1e-14);
        REQUIRE(std::abs(diff(4 + i, 4 + i) + 0.25) < 1e-14);
    }
    diff.diagonal().setZero();
    REQUIRE(diff.norm() < 1e-14);
}

TEST_CASE("excitation number commutes with every model that declares one") {
    for (models::ModelKind k :
         {models::ModelKind::jc_resonant, models::ModelKind::generalized,
          models::ModelKind::tcm_pauli, models::ModelKind::tcm_fermionic}) {
        models::ModelSpec s;
        s.kind = k;
        s.coupling = {1.2, 0.7, 0.35};
        s.cutoff = 6;
        s.n_molecules = 2;
        if (k == models::ModelKind::generalized) {
            s.form.kind = models::CouplingKind::multiphoton;
            s.form.k = 2;
        }
        const Matrix h = models::build(s);
        const Matrix n_ex = models::excitation_number(s);
        REQUIRE(commutator(h, n_ex).norm() < 1e-12 * std::max(1.0, h.norm()));
    }
    models::ModelSpec d;
    d.kind = models::ModelKind::dressed;
    REQUIRE_THROWS_AS(models::excitation_number(d), CatalogError);
}

TEST_CASE("closed-form spectrum against direct diagonalization, beta > 0") {
    const models::ModelSpec s = resonant(4.0, 1.0, 0.7, 12);
    const Matrix h = models::build(s);
    const Vector ev = sorted_eigenvalues(h);
    // resonant beta = 4: ground 0 and doublets n+1 -+ 2 sqrt(n+1)
    const models::ClosedFormSpectrum cf = models::closed_form_spectrum(s, s.cutoff - 2);
    std::vector<double> expect;
    for (const auto& e : cf.entries) expect.push_back(e.value.real());
    std::sort(expect.begin(), expect.end());
    // every closed-form level appears in the computed spectrum
    for (double x : expect) {
        double best = 1e9;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            best = std::min(best, std::abs(ev(i) - x));
        REQUIRE(best < 1e-10);
    }
}

TEST_CASE("closed-form spectrum with detuning") {
    models::ModelSpec s = resonant(2.0, 1.5, -0.4, 10);
    s.kind = models::ModelKind::jc_nonresonant;
    s.delta = 0.6;
    const models::ClosedFormSpectrum cf = models::closed_form_spectrum(s, 3);
    REQUIRE(cf.entries[0].value.real() == Approx(-0.6));
    const double beta = 3.0;
    for (int n = 0; n < 3; ++n) {
        const double root = std::sqrt(0.36 + beta * (n + 1));
        REQUIRE(cf.entries[static_cast<std::size_t>(1 + 2 * n)].value.real() ==
                Approx(n + 1 - root));
        REQUIRE(cf.entries[static_cast<std::size_t>(2 + 2 * n)].value.real() ==
                Approx(n + 1 + root));
    }
    const Matrix h = models::build(s);
    const Vector ev = sorted_eigenvalues(h);
    for (const auto& e : cf.entries) {
        double best = 1e9;
        for (Eigen::Index i = 0; i < ev.size(); ++i)
            best = std::min(best, std::abs(ev(i) - e.value));
        REQUIRE(best < 1e-10);
    }
}

TEST_CASE("closed-form eigenvectors are genuine eigenvectors") {
    for (double delta : {0.0, 0.45}) {
        models::ModelSpec s = resonant(3.0, 1.2, 0.9, 10);
        if (delta != 0.0) {
            s.kind = models::ModelKind::jc_nonresonant;
            s.delta = delta;
        }
        const Matrix h = models::build(s);
        const double beta = s.coupling.beta();
        for (int n = 0; n < 4; ++n) {
            const models::EigvecPair v = models::closed_form_eigenvectors(s, n);
            const double root = std::sqrt(delta * delta + beta * (n + 1));
            const double ep = n + 1 + root, em = n + 1 - root;
            REQUIRE((h * v.psi_plus - ep * v.psi_plus).norm() < 1e-12);
            REQUIRE((h * v.psi_minus - em * v.psi_minus).norm() < 1e-12);
            // adjoint-side vectors with conjugated eigenvalues
            REQUIRE((h.adjoint() * v.phi_plus - ep * v.phi_plus).norm() < 1e-12);
            REQUIRE((h.adjoint() * v.phi_minus - em * v.phi_minus).norm() < 1e-12);
            // mutual normalization <phi|psi> = 1, cross terms vanish
            REQUIRE(std::abs(v.phi_plus.dot(v.psi_plus) - 1.0) < 1e-12);
            REQUIRE(std::abs(v.phi_minus.dot(v.psi_minus) - 1.0) < 1e-12);
            REQUIRE(std::abs(v.phi_plus.dot(v.psi_minus)) < 1e-12);
        }
        const Vector g_psi = models::ground_state_psi(s);
        REQUIRE((h * g_psi - cplx(-delta, 0.0) * g_psi).norm() < 1e-12);
        REQUIRE(std::abs(models::ground_state_phi(s).dot(g_psi) - 1.0) < 1e-12);
    }
}

TEST_CASE("generalized model couplings act as specified") {
    const quanta::BosonOps b = quanta::boson_ops(6);
    models::CouplingForm f;
    f.kind = models::CouplingKind::intensity_dependent;
    // g|n> = n|n-1>
    const Matrix g = models::coupling_matrix(f, b).g;
    for (int n = 1; n < 6; ++n) REQUIRE(std::abs(g(n - 1, n) - double(n)) < 1e-13);

    f.kind = models::CouplingKind::multiphoton;
    f.k = 2;
    const Matrix g2 = models::coupling_matrix(f, b).g;
    REQUIRE((g2 - Matrix(b.lower * b.lower)).norm() < 1e-13);

    f.kind = models::CouplingKind::q_oscillator;
    f.q = 1.5;
    const Matrix gq = models::coupling_matrix(f, b).g;
    const double q1 = 1.0;  // [1]_q = 1 for the symmetric q-number
    REQUIRE(std::abs(gq(0, 1) - std::sqrt(q1)) < 1e-13);
    const double q2 = (1.5 * 1.5 - std::pow(1.5, -2.0)) / (1.5 - 1.0 / 1.5);
    REQUIRE(std::abs(gq(1, 2) - std::sqrt(q2)) < 1e-13);

    f.kind = models::CouplingKind::kerr;
    f.chi1 = 0.2;
    f.chi2 = 0.3;
    const models::CouplingMatrices km = models::coupling_matrix(f, b);
    REQUIRE(std::abs(km.f1(2, 2) - (2.0 + 1.0 + 0.2 * 4.0)) < 1e-13);
    REQUIRE(std::abs(km.f2(3, 3) - (3.0 + 0.3 * 9.0)) < 1e-13);

    f.kind = models::CouplingKind::multiphoton;
    f.k = 6;
    REQUIRE_THROWS_AS(models::coupling_matrix(f, b), ParameterError);
    f.kind = models::CouplingKind::q_oscillator;
    f.q = 1.0;
    REQUIRE_THROWS_AS(models::coupling_matrix(f, b), ParameterError);
}

TEST_CASE("collective-spin model reduces to the two-level model at one molecule") {
    models::ModelSpec t;
    t.kind = models::ModelKind::tcm_pauli;
    t.n_molecules = 1;
    t.coupling = {1.3, 0.6, 0.2};
    t.cutoff = 8;
    const models::ModelSpec j = resonant(1.3, 0.6, 0.2, 8);
    // the diagonal parts differ only where the truncation clip acts, so the
    // interior blocks must agree; compare interior eigenvalues only
    const auto bt = spectra::block_spectrum(models::build(t), models::excitation_number(t),
                                            models::boundary_indices(t));
    const auto bj = spectra::block_spectrum(models::build(j), models::excitation_number(j),
                                            models::boundary_indices(j));
    auto interior = [](const spectra::BlockSpectrum& b) {
        std::vector<double> v;
        for (std::size_t i = 0; i < b.values.size(); ++i)
            if (!b.boundary[i]) v.push_back(b.values[i].real());
        return v;
    };
    const auto ti = interior(bt), ji = interior(bj);
    REQUIRE(ti.size() == ji.size());
    for (std::size_t i = 0; i < ti.size(); ++i) REQUIRE(std::abs(ti[i] - ji[i]) < 1e-10);
}

TEST_CASE("supercharge-form identity for the fermionic collective model") {
    models::ModelSpec t;
    t.kind = models::ModelKind::tcm_fermionic;
    t.n_molecules = 2;
    t.coupling = {0.9, 0.4, -0.3};
    t.cutoff = 7;
    REQUIRE(models::tcm_susy_form_check(t) < 1e-12);
}

TEST_CASE("spec validation and dimension caps") {
    models::ModelSpec s = resonant(1, 1, 0, 1);
    REQUIRE_THROWS_AS(models::build(s), ParameterError);
    s = resonant(1, 1, 0, 4096);
    REQUIRE_THROWS_AS(models::build(s, 4096), DimensionLimitError);
    REQUIRE(models::boundary_indices(resonant(1, 1, 0, 4)) ==
            std::vector<Eigen::Index>{3, 7});
}
