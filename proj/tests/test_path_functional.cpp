#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pseudopath/path_functional.hpp"

using namespace pseudopath;

namespace {
const EvolutionSpec heat(2, cd(-0.5, 0.0));
const EvolutionSpec quartic(4, cd(-1.0, 0.0));
const EvolutionSpec airy(3, cd(0.0, 1.0 / 3.0));
const EvolutionSpec schroedinger(2, cd(0.0, -1.0));

// one spatial period; every frequency used below is a multiple of 1/8, so the
// periodic extension is exact and solver errors are purely temporal
const Grid1D box(-8.0 * M_PI, 8.0 * M_PI, 512);

PotentialSpec cosine(double amp = 1.0) {
    return PotentialSpec(AtomicComplexMeasure(
        1, {{{1.0}, cd(0.5 * amp, 0.0)}, {{-1.0}, cd(0.5 * amp, 0.0)}}));
}

InitialDatum bump() {
    // 1 + cos(x/2) >= 0, smooth and strictly periodic on the box
    return InitialDatum(AtomicComplexMeasure(
        1, {{{0.0}, cd(1.0, 0.0)}, {{0.5}, cd(0.5, 0.0)}, {{-0.5}, cd(0.5, 0.0)}}));
}

double l2(const std::vector<cd>& a, const std::vector<cd>& b, double dx) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s * dx);
}

double l2n(const std::vector<cd>& a, double dx) {
    double s = 0.0;
    for (const auto& v : a) s += std::norm(v);
    return std::sqrt(s * dx);
}
}

TEST_CASE("path functional through the cylinder reduction") {
    PathFunctionalSpec pf(quartic, 1.0);
    TimeGrid J(1.0, {0.4});
    CylinderFunction one(J, AtomicComplexMeasure(1, {{{0.0}, cd(1.0, 0.0)}}));
    CHECK(std::abs(eval_path_functional(pf, one) - cd(1.0, 0.0)) <= 1e-14);

    CylinderFunction f(J, AtomicComplexMeasure(1, {{{1.3}, cd(0.7, -0.2)}}));
    const cd expect = cd(0.7, -0.2) * marginal_fourier(CylinderMarginal(quartic, J), {1.3});
    CHECK(std::abs(eval_path_functional(pf, f) - expect) <= 1e-14);

    PathFunctionalSpec other(quartic, 2.0);
    CHECK_THROWS_AS(eval_path_functional(other, f), GridMismatch);
}

TEST_CASE("continuity bound holds on randomized functions") {
    std::mt19937 rng(20240819);
    std::uniform_real_distribution<double> uy(-3.0, 3.0);
    std::uniform_int_distribution<int> na(0, 10);
    PathFunctionalSpec pf(quartic, 1.0);
    TimeGrid J(1.0, {0.2, 0.5, 0.8});
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<Atom> atoms(static_cast<std::size_t>(na(rng)));
        for (auto& a : atoms) {
            a.y = {uy(rng), uy(rng), uy(rng)};
            a.w = cd(uy(rng), uy(rng));
        }
        CylinderFunction f(J, AtomicComplexMeasure(3, std::move(atoms)));
        CHECK(continuity_bound_check(pf, f));
    }
}

TEST_CASE("free evolution is exact for lattice atoms") {
    PathFunctionalSpec pf(heat, 1.0);
    InitialDatum u0(AtomicComplexMeasure(1, {{{1.0}, cd(1.0, 0.0)}}));
    PotentialSpec zero;
    for (std::size_t n : {1u, 7u, 32u}) {
        auto u = fk_time_sliced(pf, u0, zero, n, box);
        double sup = 0.0;
        for (std::size_t i = 0; i < box.n_points; ++i) {
            const cd expect = std::exp(heat.alpha * 1.0) * std::exp(cd(0.0, box.point(i)));
            sup = std::max(sup, std::abs(u[i] - expect));
        }
        CHECK(sup <= 1e-12);
    }
}

TEST_CASE("constant potential factors out exactly") {
    PathFunctionalSpec pf(quartic, 0.5);
    InitialDatum u0(AtomicComplexMeasure(1, {{{0.5}, cd(1.0, 0.0)}, {{-1.0}, cd(0.0, 0.3)}}));
    const cd c(0.2, -0.7);
    PotentialSpec constV(AtomicComplexMeasure(1, {{{0.0}, c}}));
    PotentialSpec zero;
    for (std::size_t n : {1u, 5u, 16u}) {
        auto with = fk_time_sliced(pf, u0, constV, n, box);
        auto free = fk_time_sliced(pf, u0, zero, n, box);
        const cd factor = std::exp(c * 0.5);
        double sup = 0.0;
        for (std::size_t i = 0; i < box.n_points; ++i)
            sup = std::max(sup, std::abs(with[i] - factor * free[i]));
        CHECK(sup <= 1e-11);
    }
}

TEST_CASE("cylinder consistency: free single-atom datum matches the marginal") {
    const double t = 0.8, t1 = 0.05, y = 1.5;
    PathFunctionalSpec pf(heat, t);
    InitialDatum u0(AtomicComplexMeasure(1, {{{y}, cd(1.0, 0.0)}}));
    auto u = fk_time_sliced(pf, u0, PotentialSpec{}, 3, box);
    // marginal over {t1} with horizon t + t1 has increment exactly t
    CylinderMarginal m(heat, TimeGrid(t + t1, {t1}));
    const cd phase = marginal_fourier(m, {y});
    double sup = 0.0;
    for (std::size_t i = 0; i < box.n_points; ++i)
        sup = std::max(sup, std::abs(u[i] - phase * std::exp(cd(0.0, y * box.point(i)))));
    CHECK(sup <= 1e-12);
}

TEST_CASE("lie splitting is first order against the strang reference") {
    PathFunctionalSpec pf(heat, 1.0);
    auto u0 = bump();
    auto V = cosine();
    auto ref = spectral_reference(pf, u0, V, box);
    const double dx = box.spacing();
    double prev = 0.0;
    std::vector<double> errs;
    for (std::size_t n : {8u, 16u, 32u, 64u}) {
        errs.push_back(l2(fk_time_sliced(pf, u0, V, n, box), ref, dx));
    }
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
        const double ratio = errs[i] / errs[i + 1];
        CHECK(ratio > 1.7);
        CHECK(ratio < 2.3);
    }
    (void)prev;
}

TEST_CASE("convergence report") {
    SUBCASE("heat with cosine potential") {
        PathFunctionalSpec pf(heat, 0.5);
        auto rep = fk_convergence_report(pf, bump(), cosine(), box, {4, 8, 16, 32, 64});
        for (std::size_t i = 0; i + 1 < rep.size(); ++i)
            CHECK(rep[i + 1].l2_error < rep[i].l2_error * 1.05);
        CHECK(rep.back().l2_error <= 1e-3);
    }
    SUBCASE("free case is flat at transform accuracy") {
        PathFunctionalSpec pf(heat, 1.0);
        auto rep = fk_convergence_report(pf, bump(), PotentialSpec{}, box, {4, 8, 16});
        for (const auto& pt : rep) CHECK(pt.l2_error <= 1e-10);
    }
    SUBCASE("airy with cosine potential") {
        PathFunctionalSpec pf(airy, 1.0);
        auto rep = fk_convergence_report(pf, bump(), cosine(), box, {8, 16, 32, 64});
        for (std::size_t i = 0; i + 1 < rep.size(); ++i)
            CHECK(rep[i + 1].l2_error < rep[i].l2_error * 1.05);
    }
    SUBCASE("quartic with cosine potential") {
        PathFunctionalSpec pf(quartic, 1.0);
        auto rep = fk_convergence_report(pf, bump(), cosine(), box, {8, 16, 32});
        for (std::size_t i = 0; i + 1 < rep.size(); ++i)
            CHECK(rep[i + 1].l2_error < rep[i].l2_error * 1.05);
    }
}

TEST_CASE("heat solution stays real and positive for positive data") {
    PathFunctionalSpec pf(heat, 1.0);
    auto u = fk_time_sliced(pf, bump(), cosine(), 64, box);
    double min_re = 1e300, max_im = 0.0;
    for (const auto& v : u) {
        min_re = std::min(min_re, v.real());
        max_im = std::max(max_im, std::abs(v.imag()));
    }
    CHECK(min_re > 0.0);
    CHECK(max_im <= 1e-10);
}

TEST_CASE("unimodular propagation conserves the discrete L2 norm") {
    PathFunctionalSpec pf(schroedinger, 1.0);
    // V = -i cos x keeps e^{dt V} unimodular
    PotentialSpec V(AtomicComplexMeasure(1, {{{1.0}, cd(0.0, -0.5)}, {{-1.0}, cd(0.0, -0.5)}}));
    auto u0 = bump();
    const double dx = box.spacing();
    std::vector<cd> init(box.n_points);
    for (std::size_t i = 0; i < box.n_points; ++i) init[i] = u0.eval(box.point(i));
    auto u = fk_time_sliced(pf, u0, V, 32, box);
    CHECK(std::abs(l2n(u, dx) - l2n(init, dx)) <= 1e-6);
}

TEST_CASE("solver input validation") {
    PathFunctionalSpec pf(heat, 1.0);
    CHECK_THROWS_AS(fk_time_sliced(pf, bump(), PotentialSpec{}, 0, box), SliceTooSmall);
    CHECK_THROWS_AS(fk_time_sliced(pf, bump(), PotentialSpec{}, 2000, box), SliceTooSmall);
    CHECK_THROWS_AS(spectral_reference(pf, bump(), cosine(), box, 1e-16, 1), NoConvergence);

    InitialDatum bad(AtomicComplexMeasure(1, {{{1.0}, cd(1.0, 0.0)}}),
                     std::vector<cd>(box.n_points, cd(0.0, 0.0)));
    CHECK_THROWS_AS(fk_time_sliced(pf, bad, PotentialSpec{}, 4, box),
                    InconsistentRepresentations);

    InitialDatum good(AtomicComplexMeasure(1, {{{1.0}, cd(1.0, 0.0)}}));
    std::vector<cd> samples(box.n_points);
    for (std::size_t i = 0; i < box.n_points; ++i) samples[i] = good.eval(box.point(i));
    InitialDatum sampled(good.fourier, samples);
    auto a = fk_time_sliced(pf, good, PotentialSpec{}, 4, box);
    auto b = fk_time_sliced(pf, sampled, PotentialSpec{}, 4, box);
    CHECK(l2(a, b, box.spacing()) == 0.0);
}
