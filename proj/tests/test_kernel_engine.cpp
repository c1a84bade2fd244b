#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "pseudopath/kernel_engine.hpp"

using namespace pseudopath;

namespace {
const EvolutionSpec heat(2, cd(-0.5, 0.0));
const EvolutionSpec quartic(4, cd(-1.0, 0.0));
const EvolutionSpec airy(3, cd(0.0, 1.0 / 3.0));
}

TEST_CASE("spec admissibility") {
    CHECK_THROWS_AS(EvolutionSpec(1, cd(-1, 0)), InadmissibleSpec);
    CHECK_THROWS_AS(EvolutionSpec(2, cd(0.1, 0)), InadmissibleSpec);
    CHECK_THROWS_AS(EvolutionSpec(3, cd(-0.1, 0.2)), InadmissibleSpec);
    CHECK_THROWS_AS(EvolutionSpec(2, cd(0, 0)), InadmissibleSpec);
    CHECK_NOTHROW(EvolutionSpec(2, cd(0.0, -1.0))); // Schroedinger, admissible
    CHECK_NOTHROW(EvolutionSpec(5, cd(0.0, 0.7)));
}

TEST_CASE("heat kernel matches the Gaussian closed form") {
    Grid1D grid(-10.0, 10.0, 4096);
    auto k = compute_kernel(heat, 1.0, grid);
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        sup = std::max(sup, std::abs(k.values[i] - oracle::gauss_kernel(heat.alpha, 1.0, grid.point(i))));
    }
    CHECK(sup <= 1e-8);
    CHECK(k.tail_mass_bound < 1e-6);
    CHECK(std::abs(kernel_mass(k) - 1.0) <= 1e-8 + k.tail_mass_bound);
    CHECK(total_variation(k) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("t below t_eps is rejected") {
    Grid1D grid(-10.0, 10.0, 1024);
    CHECK_THROWS_AS(compute_kernel(heat, 0.0, grid), TimeTooSmall);
    CHECK_THROWS_AS(compute_kernel(heat, 1e-9, grid), TimeTooSmall);
}

TEST_CASE("constant-modulus Fresnel kernel is rejected by the tail gate") {
    EvolutionSpec schroedinger(2, cd(0.0, -1.0));
    CHECK_THROWS_AS(compute_kernel(schroedinger, 1.0, Grid1D(-20.0, 20.0, 4096)), GridTooNarrow);
}

TEST_CASE("airy kernel matches the series oracle") {
    auto grid = recommended_grid(airy, 1.0);
    auto k = compute_kernel(airy, 1.0, grid);
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double x = grid.point(i);
        if (x < -8.0 || x > 4.0) continue;
        sup = std::max(sup, std::abs(k.values[i] - oracle::airy_series(x)));
    }
    CHECK(sup <= 1e-5);
    CHECK(std::abs(kernel_mass(k) - 1.0) <= 1e-6 + k.tail_mass_bound);

    // cross-check the series oracle itself against a direct mollified quadrature
    CHECK(std::abs(oracle::mollified_fourier_quadrature(3, airy.alpha, 1.0, 0.0) -
                   oracle::airy_series(0.0)) < 1e-6);
    CHECK(oracle::airy_series(0.0) == doctest::Approx(0.3550280539).epsilon(1e-9));
}

TEST_CASE("quartic kernel mass and total variation") {
    Grid1D grid(-32.0, 32.0, 8192);
    auto k = compute_kernel(quartic, 1.0, grid);
    CHECK(std::abs(kernel_mass(k) - 1.0) <= 1e-8 + k.tail_mass_bound);
    CHECK(total_variation(k) == doctest::Approx(oracle::kTvQuartic).epsilon(1e-6));
    CHECK(total_variation(k) > 1.0 + 1e-3);
    CHECK(total_variation(k) >= std::abs(kernel_mass(k)) - 1e-9);
}

TEST_CASE("total variation rejects the non-integrable case") {
    SampledKernel fake;
    fake.spec = EvolutionSpec(2, cd(0.0, -1.0));
    fake.t = 1.0;
    fake.grid = Grid1D(-1.0, 1.0, 16);
    fake.values.assign(16, cd(1.0, 0.0));
    CHECK_THROWS_AS(total_variation(fake), NotIntegrable);
}

TEST_CASE("scaling identity") {
    CHECK(scaling_check(heat, 4.0, Grid1D(-12.0, 12.0, 2048)) <= 1e-8);
    CHECK(scaling_check(quartic, 2.0, Grid1D(-32.0, 32.0, 4096)) <= 1e-6);
    CHECK(scaling_check(airy, 1.0, recommended_grid(airy, 1.0)) <= 1e-12);
}

TEST_CASE("symmetry and realness") {
    SUBCASE("even p: even symbol gives an even kernel, g(-x) = g(x)") {
        Grid1D grid(-32.0, 32.0, 4096);
        auto k = compute_kernel(EvolutionSpec(4, cd(-1.0, -0.3)), 1.0, grid);
        double worst = 0.0;
        for (std::size_t i = 1; i < grid.n_points; ++i) {
            worst = std::max(worst, std::abs(k.values[i] - k.values[grid.n_points - i]));
        }
        CHECK(worst <= 1e-8);
    }
    SUBCASE("even p with real alpha: kernel is real") {
        Grid1D grid(-32.0, 32.0, 4096);
        auto k = compute_kernel(quartic, 1.0, grid);
        double worst = 0.0;
        for (const auto& v : k.values) worst = std::max(worst, std::abs(v.imag()));
        CHECK(worst <= 1e-8);
    }
    SUBCASE("odd p with imaginary alpha: kernel is real") {
        auto grid = recommended_grid(airy, 1.0);
        auto k = compute_kernel(airy, 1.0, grid);
        double worst = 0.0;
        for (const auto& v : k.values) worst = std::max(worst, std::abs(v.imag()));
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("grid refinement convergence") {
    Grid1D coarse(-12.0, 12.0, 1024);
    Grid1D fine(-12.0, 12.0, 2048);
    auto kc = compute_kernel(heat, 1.0, coarse);
    auto kf = compute_kernel(heat, 1.0, fine);
    double worst = 0.0;
    for (std::size_t i = 0; i < coarse.n_points; ++i)
        worst = std::max(worst, std::abs(kc.values[i] - kf.values[2 * i]));
    CHECK(worst <= 1e-7);
}

TEST_CASE("mass stays normalized across times and orders") {
    for (double t : {0.25, 1.0, 4.0}) {
        for (const auto& spec : {heat, quartic, airy}) {
            auto grid = recommended_grid(spec, t);
            auto k = compute_kernel(spec, t, grid);
            CHECK(std::abs(kernel_mass(k) - 1.0) <= 1e-6 + k.tail_mass_bound);
        }
    }
}
