#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "lehmer/asymptotics.hpp"
#include "lehmer/errors.hpp"

using namespace lehmer;

namespace {

double as_double(const Real& r) { return static_cast<double>(r); }

}  // namespace

TEST_CASE("theorem main term examples") {
    CHECK(main_term_theorem_exact(Modulus(5), Proportion::whole(), 1) == Rational(100, 12));
    CHECK(main_term_theorem_exact(Modulus(3), Proportion::whole(), 1) == Rational(3, 2));
    CHECK(main_term_theorem_exact(Modulus(5), Proportion(1, 2), 1) == Rational(50, 12));
    CHECK(as_double(main_term_theorem(Modulus(5), Proportion::whole(), 1)) == doctest::Approx(8.333333333333334));
}

TEST_CASE("main term carries at least 50 significant digits") {
    const Real value = main_term_theorem(Modulus(3), Proportion(1, 3), 1);  // 1/2 exactly
    CHECK(boost::multiprecision::abs(value - Real(1) / 2) < Real("1e-60"));
    const Real third = main_term_mixed(Modulus(7), Proportion(1, 3), 0, 0);  // 6/3 * 1
    CHECK(boost::multiprecision::abs(third - 2) < Real("1e-60"));
    const Real ninth = to_real(Rational(1, 9));
    CHECK(boost::multiprecision::abs(ninth * 9 - 1) < Real("1e-60"));
}

TEST_CASE("mixed main term examples") {
    CHECK(main_term_mixed_exact(Modulus(5), Proportion::whole(), 1, 1) == 25);
    CHECK(main_term_mixed_exact(Modulus(5), Proportion::whole(), 0, 0) == 4);
    CHECK(main_term_mixed_exact(Modulus(9), Proportion::whole(), 1, 1) == Rational(243, 2));
}

TEST_CASE("residual report examples") {
    const Modulus q5(5);
    const auto report = residual_report(ExactSum{2, 2}, main_term_theorem(q5, Proportion::whole(), 1), q5,
                                        Proportion::whole(), 2);
    CHECK(as_double(report.residual) == doctest::Approx(-19.0 / 3.0));
    const double expected = (-19.0 / 3.0) / (std::pow(5.0, 2.5) * std::pow(std::log(5.0), 2));
    CHECK(report.normalized_residual == doctest::Approx(expected).epsilon(1e-12));
    CHECK(report.normalized_residual == doctest::Approx(-0.0437).epsilon(0.01));
    // 5 is prime, d(5) = 2.
    CHECK(report.normalized_residual_d2 == doctest::Approx(expected / 4).epsilon(1e-12));

    const Modulus q3(3);
    const auto r3 = residual_report(ExactSum{0, 0}, main_term_theorem(q3, Proportion::whole(), 1), q3,
                                    Proportion::whole(), 2);
    CHECK(as_double(r3.residual) == -1.5);

    const auto zero = residual_report(ExactSum{25, 4}, Real(25), q5, Proportion::whole(), 2);
    CHECK(zero.residual == 0);
    CHECK(zero.normalized_residual == 0.0);

    CHECK_THROWS_AS(residual_report(ExactSum{0, 0}, Real(0), Modulus(2), Proportion::whole(), 2), DomainError);
}

TEST_CASE("exact = main + residual identically over real sums") {
    for (std::uint64_t q = 3; q <= 301; q += 14) {
        const Modulus m(q);
        for (auto x : {Proportion(3, 4), Proportion(2, 7), Proportion::whole()}) {
            for (unsigned k = 1; k <= 3; ++k) {
                const auto exact = power_mean_short(m, x, k);
                const auto report = residual_report(exact, main_term_theorem(m, x, k), m, x, 2 * k);
                REQUIRE(Real(report.exact_value) - report.main_term - report.residual == 0);
            }
        }
    }
}

TEST_CASE("exponent fit recovers planted power laws") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> slope_dist(-2.0, 1.0);
    std::uniform_real_distribution<double> scale_dist(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double slope = slope_dist(rng);
        const double c = std::exp(scale_dist(rng));
        std::vector<FitSample> samples;
        for (double q = 101; q < 20000; q *= 1.7) samples.push_back({q, c * std::pow(q, slope)});
        const auto fit = fit_error_exponent(samples);
        REQUIRE(std::abs(fit.slope - slope) < 1e-9);
        REQUIRE(std::abs(fit.intercept - std::log(c)) < 1e-7);
        REQUIRE(fit.r_squared > 1 - 1e-12);
    }
    std::vector<FitSample> half;
    for (double q : {101.0, 301.0, 1001.0, 5001.0}) half.push_back({q, 1 / std::sqrt(q)});
    CHECK(std::abs(fit_error_exponent(half).slope + 0.5) < 1e-9);
}

TEST_CASE("exponent fit edge cases") {
    const std::vector<FitSample> flat{{5, 0.3}, {7, 0.3}, {9, 0.3}};
    const auto fit = fit_error_exponent(flat);
    CHECK(fit.slope == 0.0);
    CHECK(fit.r_squared == 1.0);

    const std::vector<FitSample> with_zeros{{5, 0}, {7, 1}, {9, 2}, {11, 3}, {13, 0}};
    const auto dropped = fit_error_exponent(with_zeros);
    CHECK(dropped.dropped_zero == 2);
    CHECK(dropped.samples.size() == 3);

    const std::vector<FitSample> too_few{{5, 0}, {7, 1}, {9, 2}};
    CHECK_THROWS_AS(fit_error_exponent(too_few), InsufficientData);
    const std::vector<FitSample> one_q{{7, 1}, {7, 2}, {7, 3}};
    CHECK_THROWS_AS(fit_error_exponent(one_q), InsufficientData);
    const std::vector<FitSample> negative{{5, -1}, {7, 1}, {9, 2}};
    CHECK_THROWS_AS(fit_error_exponent(negative), DomainError);
    const std::vector<FitSample> small_q{{2, 1}, {7, 1}, {9, 2}};
    CHECK_THROWS_AS(fit_error_exponent(small_q), DomainError);
}

TEST_CASE("binomial reduction collapses to 2/((2k+1)(2k+2))") {
    CHECK(binomial_reduction(0) == 1);
    CHECK(binomial_reduction(1) == Rational(1, 6));
    CHECK(binomial_reduction(2) == Rational(1, 15));
    for (unsigned k = 0; k <= kMaxBinomialK; ++k) {
        CHECK(binomial_reduction(k) == Rational(2, static_cast<long long>((2 * k + 1) * (2 * k + 2))));
    }
    CHECK_THROWS_AS(binomial_reduction(13), DomainError);
}
