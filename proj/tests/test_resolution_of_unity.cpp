#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "polysu11/errors.hpp"
#include "polysu11/resolution_of_unity.hpp"

#include <cmath>

using namespace polysu11;

TEST_CASE("weight spec construction guards its domain") {
    // complex deformation roots: no real Gamma-product kernel
    const StructureSequence quad(AlgebraSpec{2, {1.0, 0.5}, 0.875});
    CHECK_THROWS_AS(make_weight_spec(quad, StateFamily::lowering_eigenstate),
                    std::domain_error);
    // displacement disk case needs 2k > 1
    const StructureSequence low_k(AlgebraSpec{1, {1.0}, 0.5});
    CHECK_THROWS_AS(make_weight_spec(low_k, StateFamily::displacement), std::domain_error);
    CHECK_NOTHROW(make_weight_spec(low_k, StateFamily::lowering_eigenstate));
    CHECK_NOTHROW(make_weight_spec(StructureSequence(cubic_deformation(0.25)),
                                   StateFamily::displacement));
}

TEST_CASE("displacement density on the unit disk at k = 1 is flat") {
    const StructureSequence seq(AlgebraSpec{1, {1.0}, 1.0});
    const WeightFunctionSpec ws = make_weight_spec(seq, StateFamily::displacement);
    for (double t : {0.1, 0.4, 0.9})
        CHECK(weight_density(ws, t) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(weight_density(ws, 1.2) == 0.0);
    CHECK_THROWS_AS(weight_density(ws, 0.0), std::domain_error);
}

TEST_CASE("lowering density closed form agrees with its contour kernel") {
    const double k = 0.75, alpha1 = 1.0;
    const StructureSequence seq(AlgebraSpec{1, {alpha1}, k});
    const WeightFunctionSpec ws = make_weight_spec(seq, StateFamily::lowering_eigenstate);
    const MeijerEvaluator contour({{}, {0.0, 2.0 * k - 1.0}});
    const double pref = 1.0 / (alpha1 * std::tgamma(2.0 * k));
    for (double t : {0.1, 0.5, 1.0, 3.0, 10.0})
        CHECK(weight_density(ws, t) == doctest::Approx(pref * contour(t / alpha1)).epsilon(1e-8));
}

TEST_CASE("cubic worked-case densities match reference values") {
    const StructureSequence seq(cubic_deformation(0.25));
    const WeightFunctionSpec bg = make_weight_spec(seq, StateFamily::lowering_eigenstate);
    CHECK(weight_density(bg, 0.001) == doctest::Approx(3.043346754360433079327).epsilon(1e-8));
    CHECK(weight_density(bg, 0.5) == doctest::Approx(0.2624129618498495679562).epsilon(1e-8));
    CHECK(weight_density(bg, 2.0) == doctest::Approx(0.0905513965914339031127).epsilon(1e-8));
    CHECK(weight_density(bg, 10.0) == doctest::Approx(0.015946878380788057146).epsilon(1e-8));

    const WeightFunctionSpec pd = make_weight_spec(seq, StateFamily::displacement);
    CHECK(weight_density(pd, 0.001) == doctest::Approx(2.598063149202570809476).epsilon(1e-8));
    CHECK(weight_density(pd, 0.5) == doctest::Approx(0.3336721139406571761612).epsilon(1e-8));
    CHECK(weight_density(pd, 2.0) == doctest::Approx(0.1161613526301809016519).epsilon(1e-8));
    CHECK(weight_density(pd, 10.0) == doctest::Approx(0.01342699025273280519323).epsilon(1e-8));
}

TEST_CASE("moment targets reproduce the factorial laws") {
    // undeformed lowering at k = 1: moments n! (n+1)!
    const StructureSequence lin(AlgebraSpec{1, {1.0}, 1.0});
    double fact = 1.0, fact1 = 1.0;
    for (int n = 0; n <= 4; ++n) {
        if (n > 0) {
            fact *= n;
            fact1 *= n + 1;
        }
        CHECK(std::exp(moment_target_log(lin, StateFamily::lowering_eigenstate, n)) ==
              doctest::Approx(fact * fact1).epsilon(1e-12));
    }

    // undeformed displacement at k = 5/4: moments n! / (5/2)_n
    const StructureSequence lin54(AlgebraSpec{1, {1.0}, 1.25});
    double nf = 1.0, poch = 1.0;
    for (int n = 0; n <= 4; ++n) {
        if (n > 0) {
            nf *= n;
            poch *= 2.5 + n - 1.0;
        }
        CHECK(std::exp(moment_target_log(lin54, StateFamily::displacement, n)) ==
              doctest::Approx(nf / poch).epsilon(1e-12));
    }

    // cubic case gamma = 1/4: factorials split over the roots {-7/8, 1/8}
    const StructureSequence cub(cubic_deformation(0.25));
    double f = 1.0, p175 = 1.0, p0875 = 1.0, p1875 = 1.0, four_n = 1.0;
    for (int n = 0; n <= 4; ++n) {
        if (n > 0) {
            f *= n;
            p175 *= 1.75 + n - 1.0;
            p0875 *= 0.875 + n - 1.0;
            p1875 *= 1.875 + n - 1.0;
            four_n *= 4.0;
        }
        CHECK(std::exp(moment_target_log(cub, StateFamily::lowering_eigenstate, n)) ==
              doctest::Approx(f * p175 * four_n * p0875 * p1875).epsilon(1e-12));
        CHECK(std::exp(moment_target_log(cub, StateFamily::displacement, n)) ==
              doctest::Approx(f * four_n * p0875 * p1875 / p175).epsilon(1e-12));
    }
}

TEST_CASE("quadrature reproduces the moments: closed-form kernels") {
    const StructureSequence lin54(AlgebraSpec{1, {1.0}, 1.25});
    const WeightFunctionSpec pd = make_weight_spec(lin54, StateFamily::displacement);
    for (int n = 0; n <= 3; ++n) {
        const double target = std::exp(moment_target_log(lin54, StateFamily::displacement, n));
        CHECK(moment_quadrature(pd, n) == doctest::Approx(target).epsilon(1e-6));
    }

    const StructureSequence lin(AlgebraSpec{1, {1.0}, 1.0});
    const WeightFunctionSpec bg = make_weight_spec(lin, StateFamily::lowering_eigenstate);
    for (int n = 0; n <= 2; ++n) {
        const double target =
            std::exp(moment_target_log(lin, StateFamily::lowering_eigenstate, n));
        CHECK(moment_quadrature(bg, n) == doctest::Approx(target).epsilon(1e-6));
    }
}

TEST_CASE("quadrature reproduces the moments: cubic contour kernels") {
    const StructureSequence cub(cubic_deformation(0.25));
    CHECK(unity_defect(cub, StateFamily::lowering_eigenstate, 2) <= 1e-5);
    CHECK(unity_defect(cub, StateFamily::displacement, 2) <= 1e-5);
}

TEST_CASE("weight tables are positive, decaying, and deterministic") {
    const std::vector<double> gammas{0.1, 0.25, 0.4};
    for (StateFamily fam : {StateFamily::lowering_eigenstate, StateFamily::displacement}) {
        const auto rows = weight_table(fam, gammas, 40.0, 512);
        REQUIRE(rows.size() == 3 * 512);
        for (const WeightTableRow& r : rows)
            CHECK(r.rho >= 0.0);
        // tail decays within each gamma block
        for (std::size_t b = 0; b < 3; ++b) {
            const double mid = rows[b * 512 + 256].rho;
            const double last = rows[b * 512 + 511].rho;
            CHECK(last < mid);
        }
        const auto again = weight_table(fam, gammas, 40.0, 512);
        bool identical = true;
        for (std::size_t i = 0; i < rows.size(); ++i)
            identical = identical && rows[i].rho == again[i].rho && rows[i].t == again[i].t;
        CHECK(identical);
    }
    CHECK_THROWS_AS(weight_table(StateFamily::displacement, {0.6}, 10.0, 16),
                    std::domain_error);
    CHECK_THROWS_AS(weight_table(StateFamily::displacement, {0.25}, 10.0, 1),
                    std::invalid_argument);
}
