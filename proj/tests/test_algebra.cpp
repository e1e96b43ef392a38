#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "polysu11/algebra.hpp"
#include "polysu11/errors.hpp"

#include <cmath>
#include <complex>

using namespace polysu11;

namespace {

AlgebraSpec linear_spec(double alpha1, double k) { return {1, {alpha1}, k}; }

// cubic family used throughout: alpha1 = 3/4 - gamma(gamma+1), alpha2 = 4,
// k = (2 gamma + 3)/4
AlgebraSpec cubic_spec(double gamma) {
    return {2, {0.75 - gamma * (gamma + 1.0), 4.0}, (2.0 * gamma + 3.0) / 4.0};
}

} // namespace

TEST_CASE("structure function evaluation and domain") {
    // gamma = 1/4: alpha = {7/16, 4}, k = 7/8; Phi(1) = 7/16 + 4 = 4.4375
    const AlgebraSpec cubic = cubic_spec(0.25);
    CHECK(eval_structure_function(cubic, 1.0) == doctest::Approx(4.4375).epsilon(1e-15));
    // Phi(k(k-1)) = 0 identically for this family: k(k-1) = -7/64
    CHECK(eval_structure_function(cubic, cubic.k * (cubic.k - 1.0)) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(eval_structure_function(cubic, -0.3), std::domain_error);

    const AlgebraSpec lin = linear_spec(1.0, 1.0);
    CHECK(eval_structure_function(lin, 6.0) == doctest::Approx(6.0));
    CHECK(eval_structure_function_derivative(cubic, 0.0) == doctest::Approx(0.4375));
}

TEST_CASE("spec validation accepts the lattice-monotone cubic and rejects bad input") {
    CHECK_NOTHROW(validate(cubic_spec(0.25)));
    CHECK_NOTHROW(validate(cubic_spec(0.1)));
    CHECK_NOTHROW(validate(cubic_spec(0.4)));
    CHECK_NOTHROW(validate(AlgebraSpec{3, {1.0, 0.4, 0.2}, 1.5}));
    CHECK_NOTHROW(validate(AlgebraSpec{2, {1.0, 0.5}, 0.875}));

    CHECK_THROWS_AS(validate(AlgebraSpec{1, {-1.0}, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(AlgebraSpec{1, {0.0}, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(AlgebraSpec{1, {1.0}, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(AlgebraSpec{2, {1.0, 0.0}, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(AlgebraSpec{2, {1.0}, 1.0}), std::invalid_argument);
    // Phi' = 1 - 2x goes negative on the lattice
    CHECK_THROWS_AS(validate(AlgebraSpec{2, {1.0, -1.0}, 1.0}), std::invalid_argument);
}

TEST_CASE("structure factor frozen values") {
    // p=1, alpha1=1, k=1: phi_n = n(n+1)
    const AlgebraSpec lin = linear_spec(1.0, 1.0);
    CHECK(structure_factor(lin, 2) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(structure_factor(lin, 0) == 0.0);

    // cubic gamma=1/4: phi_1 = 735/64 (exact rational arithmetic)
    const AlgebraSpec cubic = cubic_spec(0.25);
    CHECK(structure_factor(cubic, 1) == doctest::Approx(735.0 / 64.0).epsilon(1e-14));
}

TEST_CASE("deformation factor frozen values") {
    const AlgebraSpec cubic = cubic_spec(0.25);
    // chi_1 = E_0 E_1 = (7/4)(15/4) = 105/16
    CHECK(deformation_factor(cubic, 1) == doctest::Approx(105.0 / 16.0).epsilon(1e-14));
    // chi_0 = Phi'(k(k-1)) = 7/16 + 8 k(k-1) = -0.4375 (negative is fine at n=0)
    CHECK(deformation_factor(cubic, 0) == doctest::Approx(-0.4375).epsilon(1e-14));
    // p=1: chi_n = alpha_1 for every n
    const AlgebraSpec lin = linear_spec(0.7, 1.25);
    for (int n = 0; n <= 5; ++n) CHECK(deformation_factor(lin, n) == doctest::Approx(0.7));
}

TEST_CASE("phi factorization identity phi_n = n(2k+n-1) chi_n") {
    for (const AlgebraSpec& spec :
         {cubic_spec(0.25), cubic_spec(0.1), AlgebraSpec{3, {1.0, 0.4, 0.2}, 1.5},
          AlgebraSpec{2, {1.0, 0.5}, 0.6}, linear_spec(2.0, 0.875)}) {
        for (int n = 1; n <= 200; ++n) {
            const double lhs = structure_factor(spec, n);
            const double rhs = n * (2.0 * spec.k + n - 1.0) * deformation_factor(spec, n);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), 1.0));
        }
    }
}

TEST_CASE("asymptotic growth: log-log slopes approach 2p and 2p-2") {
    for (const AlgebraSpec& spec : {linear_spec(1.0, 1.0), cubic_spec(0.25),
                                    AlgebraSpec{3, {1.0, 0.4, 0.2}, 1.5}}) {
        const double slope_phi = (std::log(structure_factor(spec, 200)) -
                                  std::log(structure_factor(spec, 100))) /
                                 (std::log(200.0) - std::log(100.0));
        CHECK(std::abs(slope_phi - 2.0 * spec.p) < 0.1);
        if (spec.p > 1) {
            const double slope_chi = (std::log(deformation_factor(spec, 200)) -
                                      std::log(deformation_factor(spec, 100))) /
                                     (std::log(200.0) - std::log(100.0));
            CHECK(std::abs(slope_chi - (2.0 * spec.p - 2.0)) < 0.1);
        }
    }
}

TEST_CASE("deformation roots: cubic closed form") {
    // gamma = 1/4: a_pm = -(gamma+1/2)/2 +- 1/2 = {-7/8, 1/8}
    const auto roots = deformation_roots(cubic_spec(0.25));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].real() == doctest::Approx(-0.875).epsilon(1e-12));
    CHECK(roots[0].imag() == doctest::Approx(0.0));
    CHECK(roots[1].real() == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(roots[1].imag() == doctest::Approx(0.0));
    CHECK(deformation_roots(linear_spec(1.0, 1.0)).empty());
}

TEST_CASE("deformation roots: complex pair matches quadratic formula") {
    // p=2, alpha={1, 0.5}, k=7/8: roots -0.375 +- 1.280868845744949797903 i (mpmath)
    const auto roots = deformation_roots(AlgebraSpec{2, {1.0, 0.5}, 0.875});
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].real() == doctest::Approx(-0.375).epsilon(1e-12));
    CHECK(roots[0].imag() == doctest::Approx(-1.280868845744949797903).epsilon(1e-12));
    CHECK(roots[1] == std::conj(roots[0]));
}

TEST_CASE("root product path equals double-sum path for chi") {
    for (const AlgebraSpec& spec :
         {cubic_spec(0.25), AlgebraSpec{2, {1.0, 0.5}, 0.875},
          AlgebraSpec{3, {1.0, 0.4, 0.2}, 1.5}, AlgebraSpec{4, {1.0, 0.3, 0.05, 0.01}, 0.6}}) {
        const StructureSequence seq(spec);
        for (int n = 1; n <= 200; n += 7) {
            const double direct = seq.chi(n);
            const double via_roots = seq.chi_from_roots(n);
            CHECK(std::abs(direct - via_roots) <= 1e-12 * std::max(std::abs(direct), 1.0));
        }
    }
}

TEST_CASE("generalized factorial frozen values") {
    // p=1, alpha1=1, k=1: [phi_3]! = 3! (2)_3 = 144
    const StructureSequence lin(linear_spec(1.0, 1.0));
    CHECK(lin.log_factorial(FactorialKind::phi, 3) ==
          doctest::Approx(std::log(144.0)).epsilon(1e-14));
    CHECK(lin.log_factorial(FactorialKind::phi, 0) == 0.0);

    // cubic gamma=1/4: [chi_2]! = chi_1 chi_2 = (105/16)(345/16) = 141.50390625
    const StructureSequence cubic(cubic_spec(0.25));
    CHECK(cubic.log_factorial(FactorialKind::chi, 2) ==
          doctest::Approx(std::log(141.50390625)).epsilon(1e-14));
    // and via the root path: 4^2 (7/8)_2 (15/8)_2
    CHECK(cubic.log_chi_factorial_from_roots(2) ==
          doctest::Approx(std::log(141.50390625)).epsilon(1e-13));
}

TEST_CASE("factorial splitting [phi_n]! = n! (2k)_n [chi_n]!") {
    for (const AlgebraSpec& spec : {cubic_spec(0.25), AlgebraSpec{2, {1.0, 0.5}, 0.875},
                                    AlgebraSpec{3, {1.0, 0.4, 0.2}, 1.5}}) {
        const StructureSequence seq(spec);
        for (int n = 0; n <= 100; n += 9) {
            const double lhs = seq.log_factorial(FactorialKind::phi, n);
            const double rhs = std::lgamma(n + 1.0) + pochhammer_log_pos(2.0 * spec.k, n) +
                               seq.log_factorial(FactorialKind::chi, n);
            // exp comparison at 1e-10 relative
            CHECK(std::abs(std::expm1(lhs - rhs)) < 1e-10);
        }
    }
}

TEST_CASE("chi factorial via roots agrees with direct product for all specs") {
    for (const AlgebraSpec& spec : {cubic_spec(0.4), AlgebraSpec{2, {1.0, 0.5}, 0.6},
                                    AlgebraSpec{3, {1.0, 0.4, 0.2}, 0.875}}) {
        const StructureSequence seq(spec);
        for (int n = 1; n <= 200; n += 11) {
            const double direct = seq.log_factorial(FactorialKind::chi, n);
            const double roots = seq.log_chi_factorial_from_roots(n);
            CHECK(std::abs(direct - roots) <= 1e-12 * std::max(std::abs(direct), 1.0));
        }
    }
}

TEST_CASE("pochhammer log") {
    // (7/4)_2 = (7/4)(11/4) = 77/16
    CHECK(pochhammer_log_pos(1.75, 2) == doctest::Approx(std::log(77.0 / 16.0)).epsilon(1e-14));
    CHECK(pochhammer_log_pos(2.0, 0) == 0.0);

    // zero flag when a factor hits 0 exactly
    CHECK_FALSE(pochhammer_log(std::complex<double>(-3.0, 0.0), 5).has_value());
    CHECK(pochhammer_log(std::complex<double>(-3.0, 0.0), 3).has_value());

    // complex value frozen from mpmath: (1 - r)_5 with r = -0.375 + 1.2808688457449498 i
    const std::complex<double> r(-0.375, 1.280868845744949797903);
    const auto lg = pochhammer_log(std::complex<double>(1.0, 0.0) - r, 5);
    REQUIRE(lg.has_value());
    const std::complex<double> val = std::exp(*lg);
    CHECK(val.real() == doctest::Approx(-243.0560302734375).epsilon(1e-12));
    CHECK(val.imag() == doctest::Approx(-391.8045209194691114715).epsilon(1e-12));

    // exp(sum of logs) matches the direct product for moderate n
    std::complex<double> direct = 1.0;
    const std::complex<double> z(0.3, -1.2);
    for (int j = 0; j < 20; ++j) direct *= (z + double(j));
    const auto lg20 = pochhammer_log(z, 20);
    REQUIRE(lg20.has_value());
    CHECK(std::abs(std::exp(*lg20) - direct) <= 1e-12 * std::abs(direct));
}

TEST_CASE("pochhammer fast path rejects bad arguments") {
    CHECK_THROWS_AS(pochhammer_log_pos(-1.0, 3), std::domain_error);
    CHECK_THROWS_AS(pochhammer_log_pos(2.0, -1), std::domain_error);
}

TEST_CASE("cubic deformation builder matches the explicit construction") {
    const AlgebraSpec built = cubic_deformation(0.25);
    const AlgebraSpec local = cubic_spec(0.25);
    CHECK(built.p == local.p);
    CHECK(built.k == local.k);
    REQUIRE(built.alpha.size() == local.alpha.size());
    CHECK(built.alpha[0] == local.alpha[0]);
    CHECK(built.alpha[1] == local.alpha[1]);
    CHECK_NOTHROW(validate(cubic_deformation(0.49)));
    CHECK_THROWS_AS(cubic_deformation(0.0), std::domain_error);
    CHECK_THROWS_AS(cubic_deformation(0.5), std::domain_error);
    CHECK_THROWS_AS(cubic_deformation(-0.1), std::domain_error);
}
