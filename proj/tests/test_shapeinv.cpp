// Shape-invariant family tests: the remainder recursion against independent
// closed forms, the structural operator identity, and grid eigenvalues
// converging to the algebraic spectrum.

#include <catch2/catch_amalgamated.hpp>

using Catch::Approx;

#include "jcth/shapeinv.hpp"

using namespace jcth;

TEST_CASE("catalog families satisfy the defining recursion") {
    for (const auto& f : shapeinv::catalog()) {
        INFO(f.name);
        REQUIRE(shapeinv::shape_invariance_residual(f) < 1e-12);
    }
    REQUIRE_THROWS_AS(shapeinv::family("nosuch"), CatalogError);
}

TEST_CASE("algebraic energies: independent closed forms") {
    // exponential-well family at A = 2: E_n = A^2 - (A - n)^2 -> 0, 3, 4
    const auto morse = shapeinv::energies(shapeinv::family("morse"), 2);
    REQUIRE(morse.energies.size() == 3);
    REQUIRE(morse.energies[0] == Approx(0.0));
    REQUIRE(morse.energies[1] == Approx(3.0));
    REQUIRE(morse.energies[2] == Approx(4.0));

    // tanh-well family at A = 3: same closed form -> 0, 5, 8, 9
    const auto tanh = shapeinv::energies(shapeinv::family("tanh"), 3);
    REQUIRE(tanh.energies == std::vector<double>{0.0, 5.0, 8.0, 9.0});

    // oscillator: evenly spaced, E_n = 2n
    const auto osc = shapeinv::energies(shapeinv::family("oscillator"), 5);
    for (int n = 0; n <= 5; ++n)
        REQUIRE(osc.energies[static_cast<std::size_t>(n)] == Approx(2.0 * n));
}

TEST_CASE("doublets carry E +- sqrt(beta E)") {
    const susy::CouplingParams p{2.0, 0.5, 0.3};  // beta = 1
    const auto alg = shapeinv::energies(shapeinv::family("morse"), 2, p);
    REQUIRE(alg.doublets[0].first.real() == Approx(3.0 - std::sqrt(3.0)));
    REQUIRE(alg.doublets[0].second.real() == Approx(3.0 + std::sqrt(3.0)));
    REQUIRE(alg.doublets[1].first.real() == Approx(2.0));
    REQUIRE(alg.doublets[1].second.real() == Approx(6.0));
}

TEST_CASE("level count past the bound range is rejected") {
    REQUIRE_THROWS_AS(shapeinv::energies(shapeinv::family("morse"), 3), RangeError);
    REQUIRE_THROWS_AS(shapeinv::energies(shapeinv::family("morse"), -1), ParameterError);
}

TEST_CASE("oscillator grid spectrum matches the algebraic ladder") {
    const auto f = shapeinv::family("oscillator");
    const shapeinv::Grid g{f.x_min, f.x_max, 2000};
    // parent merged spectrum: 0, 2, 2, 4, 4
    const auto vals = shapeinv::grid_parent_energies(f, g, 5);
    const std::vector<double> expect{0.0, 2.0, 2.0, 4.0, 4.0};
    for (std::size_t i = 0; i < expect.size(); ++i)
        REQUIRE(std::abs(vals[i] - expect[i]) < 1e-3);
}

TEST_CASE("structural identity holds to machine precision on a small grid") {
    const shapeinv::Grid g{-6.0, 6.0, 220};
    for (const char* name : {"oscillator", "tanh"}) {
        const auto f = shapeinv::family(name);
        shapeinv::Grid gg = g;
        gg.x_min = f.x_min;
        gg.x_max = f.x_max;
        for (susy::CouplingParams p :
             {susy::CouplingParams{1.5, 0.4, 0.7}, susy::CouplingParams{1.0, -2.0, -0.3}}) {
            INFO(name << " beta=" << p.beta());
            REQUIRE(shapeinv::grid_structure_residual(f, p, gg) < 1e-12);
        }
    }
}

TEST_CASE("grid operator reduces to a Hermitian matrix at equal couplings") {
    const auto f = shapeinv::family("tanh");
    const shapeinv::Grid g{f.x_min, f.x_max, 240};
    const Matrix h = shapeinv::grid_hamiltonian(f, {0.8, 0.8, 0.0}, g);
    REQUIRE(hermiticity_defect(h) < 1e-12 * h.norm());
    REQUIRE_THROWS_AS(shapeinv::grid_hamiltonian(f, {1, 1, 0}, shapeinv::Grid{-1, 1, 50}),
                      ParameterError);
}

TEST_CASE("coupled grid operator splits levels into the algebraic doublets") {
    const auto f = shapeinv::family("tanh");
    const susy::CouplingParams p{2.0, 0.5, 0.4};  // beta = 1
    const shapeinv::Grid g{f.x_min, f.x_max, 1200};
    const auto alg = shapeinv::energies(f, 2, p);
    const auto grid = shapeinv::grid_low_spectrum(f, p, g, 2);
    // every algebraic doublet member appears among the Ritz values
    for (const auto& [minus, plus] : alg.doublets) {
        for (cplx target : {minus, plus}) {
            double best = 1e9;
            for (cplx v : grid.values) best = std::min(best, std::abs(v - target));
            REQUIRE(best < 5e-3);
        }
    }
    REQUIRE(grid.subspace_residual < 0.2);
}

TEST_CASE("partial tridiagonal solver agrees with the dense route") {
    const auto f = shapeinv::family("tanh");
    const shapeinv::Grid g{f.x_min, f.x_max, 300};
    auto [up, lo] = shapeinv::grid_partner_eigenpairs(f, g, 3);
    // dense check of the lower partner block
    Matrix dense = shapeinv::grid_kinetic(g);
    const Matrix w = shapeinv::grid_superpotential(f, g);
    dense.diagonal() += w.diagonal().cwiseAbs2();
    dense -= shapeinv::detail::grid_commutator_ipw(f, g);
    Eigen::SelfAdjointEigenSolver<Matrix> es(dense);
    for (int i = 0; i < 3; ++i)
        REQUIRE(std::abs(lo.values(i) - es.eigenvalues()(i)) < 1e-10);
}
