// Spectral analysis tests: block decomposition, classification including
// degenerate conjugate pairs and boundary-degenerate interior levels,
// bi-orthonormal bases, and closed-form comparison.

#include <catch2/catch_amalgamated.hpp>

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

TEST_CASE("block decomposition splits into 1- and 2-dimensional sectors") {
    const models::ModelSpec s = resonant(2.0, 0.8, 0.1, 6);
    const Matrix h = models::build(s);
    const Matrix n_ex = models::excitation_number(s);
    const auto blocks = spectra::block_decompose(h, n_ex, models::boundary_indices(s));
    // labels 0..cutoff: one ground singlet, cutoff-1 doublets, one top singlet
    REQUIRE(blocks.size() == static_cast<std::size_t>(s.cutoff + 1));
    REQUIRE(blocks.front().sub.rows() == 1);
    REQUIRE(blocks.back().sub.rows() == 1);
    for (std::size_t i = 1; i + 1 < blocks.size(); ++i)
        REQUIRE(blocks[i].sub.rows() == 2);
    // the two top blocks touch the truncation edge
    REQUIRE(blocks[static_cast<std::size_t>(s.cutoff)].boundary);
    REQUIRE(blocks[static_cast<std::size_t>(s.cutoff - 1)].boundary);
    REQUIRE_FALSE(blocks[1].boundary);
}

TEST_CASE("block decomposition rejects non-commuting pairs") {
    const models::ModelSpec s = resonant(1.0, 1.0, 0.0, 4);
    const Matrix h = models::build(s);
    Matrix bad = Matrix::Identity(8, 8);
    bad(0, 0) = 5.0;
    bad(3, 3) = 1.0;
    bad(0, 3) = 0.5;  // not diagonal
    REQUIRE_THROWS_AS(spectra::block_decompose(h, bad), PreconditionError);
}

TEST_CASE("classification: real, paired, mixed, critical") {
    const spectra::Tolerances tols;
    const susy::CouplingParams pos{2.0, 1.0, 0.0};
    const susy::CouplingParams neg{2.0, -1.0, 0.0};
    const susy::CouplingParams crit{2.0, 0.0, 0.0};

    std::vector<cplx> real_vals{0.0, 1.0, 2.5};
    std::vector<bool> interior(3, false);
    REQUIRE(spectra::classify_values(real_vals, interior, pos, tols).classification ==
            spectra::Classification::all_real);

    std::vector<cplx> paired{{1.0, 0.5}, {1.0, -0.5}, 3.0};
    REQUIRE(spectra::classify_values(paired, interior, neg, tols).classification ==
            spectra::Classification::conjugate_paired);

    std::vector<cplx> unpaired{{1.0, 0.5}, {1.2, -0.5}, 3.0};
    REQUIRE(spectra::classify_values(unpaired, interior, neg, tols).classification ==
            spectra::Classification::mixed);

    REQUIRE(spectra::classify_values(real_vals, interior, crit, tols).classification ==
            spectra::Classification::critical_no_claim);
}

TEST_CASE("classification is stable under repeated identical conjugate pairs") {
    const susy::CouplingParams neg{1.0, -1.0, 0.0};
    std::vector<cplx> vals{{2.0, 0.3}, {2.0, -0.3}, {2.0, 0.3}, {2.0, -0.3}};
    std::vector<bool> interior(4, false);
    const auto rep = spectra::classify_values(vals, interior, neg, {});
    REQUIRE(rep.classification == spectra::Classification::conjugate_paired);
    REQUIRE(rep.pairing_defect < 1e-15);
}

TEST_CASE("boundary-flagged values are excluded from classification") {
    const susy::CouplingParams pos{1.0, 1.0, 0.0};
    std::vector<cplx> vals{0.0, {5.0, 2.0}};
    std::vector<bool> flags{false, true};
    REQUIRE(spectra::classify_values(vals, flags, pos, {}).classification ==
            spectra::Classification::all_real);
}

TEST_CASE("block spectrum keeps boundary artifacts out of interior zero modes") {
    // beta = 4: the truncation artifact sits at exactly 0, degenerate with the
    // interior ground state and the fourth lower doublet level.  The block
    // route must still count 2*cutoff - 3 interior values.
    const models::ModelSpec s = resonant(4.0, 1.0, 0.7, 16);
    const Matrix h = models::build(s);
    const auto bs = spectra::block_spectrum(h, models::excitation_number(s),
                                            models::boundary_indices(s));
    std::size_t interior = 0, zero_interior = 0;
    for (std::size_t i = 0; i < bs.values.size(); ++i) {
        if (bs.boundary[i]) continue;
        ++interior;
        if (std::abs(bs.values[i]) < 1e-9) ++zero_interior;
    }
    REQUIRE(interior == static_cast<std::size_t>(2 * 16 - 3));
    REQUIRE(zero_interior == 2);  // ground state and E_4^- at beta = 4
}

TEST_CASE("bi-orthonormal basis under exact degeneracy") {
    const models::ModelSpec s = resonant(4.0, 1.0, 0.7, 10);
    const Matrix h = models::build(s);
    const spectra::BiorthoBasis basis = spectra::biortho(eig_general(h));
    REQUIRE(basis.gram_defect < 1e-10);
    REQUIRE(basis.completeness_defect < 1e-9);
}

TEST_CASE("bi-orthonormalization reports defective input") {
    Matrix jordan = Matrix::Zero(2, 2);
    jordan(0, 1) = 1.0;  // nilpotent Jordan block, defective
    REQUIRE_THROWS_AS(spectra::biortho(eig_general(jordan)), DefectiveMatrixError);
}

TEST_CASE("eta Gram certifies an orthonormal family and flags a skewed one") {
    const models::ModelSpec s = resonant(4.0, 1.0, 0.0, 4);
    const pseudometric::MetricSpec m = pseudometric::catalog_metric(s, true);
    // columns of rho^{-1} are eta-orthonormal by construction
    const Matrix rho_inv = herm_apply(m.rho, [](double x) { return 1.0 / x; });
    REQUIRE(spectra::eta_gram(rho_inv, m).defect < 1e-12);
    REQUIRE(spectra::eta_gram(Matrix::Identity(8, 8), m).defect > 0.1);
    const pseudometric::MetricSpec ind = pseudometric::catalog_metric(s, false);
    REQUIRE_THROWS_AS(spectra::eta_gram(rho_inv, ind), RegimeError);
}

TEST_CASE("closed-form comparison annotates branches and deltas") {
    const models::ModelSpec s = resonant(4.0, 1.0, 0.7, 12);
    const Matrix h = models::build(s);
    const auto bs = spectra::block_spectrum(h, models::excitation_number(s),
                                            models::boundary_indices(s));
    auto report = spectra::classify_values(bs.values, bs.boundary, s.coupling, {});
    const auto cf = models::closed_form_spectrum(s, s.cutoff - 2);
    const double max_delta = spectra::compare_closed_form(report, cf);
    REQUIRE(max_delta < 1e-10);
    std::size_t annotated = 0;
    for (const auto& rec : report.eigenvalues)
        if (rec.closed_form_delta) ++annotated;
    REQUIRE(annotated == cf.entries.size());
}

TEST_CASE("closed-form comparison requires enough interior values") {
    spectra::SpectrumReport report;
    spectra::EigRecord rec;
    rec.value = 0.0;
    report.eigenvalues = {rec};
    models::ClosedFormSpectrum cf;
    cf.entries = {{"a", 0.0, models::Branch::ground, -1},
                  {"b", 1.0, models::Branch::plus, 0}};
    REQUIRE_THROWS_AS(spectra::compare_closed_form(report, cf), CatalogError);
}
