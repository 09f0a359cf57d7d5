#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lehmer/arith.hpp"
#include "lehmer/power_sums.hpp"
#include "lehmer/proportion.hpp"

namespace lehmer {

using Rational = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_dec_float_100;

inline constexpr unsigned kMaxBinomialK = 12;

/// x phi(q) q^{2k} / ((2k+1)(2k+2)), exact.
Rational main_term_theorem_exact(const Modulus& q, Proportion x, unsigned k);
Real main_term_theorem(const Modulus& q, Proportion x, unsigned k);

/// x phi(q) q^{r+s} / ((r+1)(s+1)), exact.
Rational main_term_mixed_exact(const Modulus& q, Proportion x, unsigned r, unsigned s);
Real main_term_mixed(const Modulus& q, Proportion x, unsigned r, unsigned s);

Real to_real(const Rational& value);

struct AsymptoticReport {
    std::uint64_t q = 0;
    Proportion x = Proportion::whole();
    unsigned total_power = 0;
    BigInt exact_value;
    Real main_term;
    Real residual;                  // exact_value - main_term
    double normalized_residual = 0;  // residual / (q^{p+1/2} ln^2 q)
    double normalized_residual_d2 = 0;  // residual / (d(q)^2 q^{p+1/2} ln^2 q)
    double relative_residual = 0;    // |residual| / (phi(q) q^p)
};

/// Throws DomainError for q < 3.
AsymptoticReport residual_report(const ExactSum& exact, const Real& main, const Modulus& q, Proportion x,
                                 unsigned total_power);

struct FitSample {
    double q;
    double value;  // nonnegative; zeros are dropped before fitting
};

struct ExponentFit {
    std::vector<FitSample> samples;  // the samples actually fitted
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    std::size_t dropped_zero = 0;
};

/// Least-squares line through (log q, log value). Throws InsufficientData with
/// fewer than three nonzero samples.
ExponentFit fit_error_exponent(std::span<const FitSample> samples);

/// sum_{i=0}^{2k} (-1)^i C(2k, i) / ((i+1)(2k-i+1)), exact. k <= 12.
Rational binomial_reduction(unsigned k);

}  // namespace lehmer
