#include "lehmer/asymptotics.hpp"

#include <cmath>
#include <string>

#include "lehmer/errors.hpp"

namespace lehmer {

namespace {

namespace mp = boost::multiprecision;

Rational proportion_rational(Proportion x) { return Rational(BigInt(x.num()), BigInt(x.den())); }

BigInt binomial(unsigned n, unsigned k) {
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

Real to_real(const Rational& value) {
    return Real(mp::numerator(value)) / Real(mp::denominator(value));
}

Rational main_term_theorem_exact(const Modulus& q, Proportion x, unsigned k) {
    const BigInt scale = BigInt(q.phi()) * mp::pow(BigInt(q.value()), 2 * k);
    return proportion_rational(x) * Rational(scale, BigInt((2 * k + 1) * (2 * k + 2)));
}

Real main_term_theorem(const Modulus& q, Proportion x, unsigned k) {
    return to_real(main_term_theorem_exact(q, x, k));
}

Rational main_term_mixed_exact(const Modulus& q, Proportion x, unsigned r, unsigned s) {
    const BigInt scale = BigInt(q.phi()) * mp::pow(BigInt(q.value()), r + s);
    return proportion_rational(x) * Rational(scale, BigInt(static_cast<std::uint64_t>(r + 1) * (s + 1)));
}

Real main_term_mixed(const Modulus& q, Proportion x, unsigned r, unsigned s) {
    return to_real(main_term_mixed_exact(q, x, r, s));
}

AsymptoticReport residual_report(const ExactSum& exact, const Real& main, const Modulus& q, Proportion x,
                                 unsigned total_power) {
    if (q.value() < 3) throw DomainError("residual normalization needs ln q > 0 (q >= 3)");
    AsymptoticReport report;
    report.q = q.value();
    report.x = x;
    report.total_power = total_power;
    report.exact_value = exact.value;
    report.main_term = main;
    report.residual = Real(exact.value) - main;

    const Real qr(q.value());
    const Real scale = mp::pow(qr, total_power);
    const Real log_q = mp::log(qr);
    const Real norm = scale * mp::sqrt(qr) * log_q * log_q;
    const Real tau(q.tau());
    report.normalized_residual = static_cast<double>(report.residual / norm);
    report.normalized_residual_d2 = static_cast<double>(report.residual / (norm * tau * tau));
    report.relative_residual = static_cast<double>(mp::abs(report.residual) / (Real(q.phi()) * scale));
    return report;
}

ExponentFit fit_error_exponent(std::span<const FitSample> samples) {
    ExponentFit fit;
    for (const auto& s : samples) {
        if (!(s.q >= 3.0) || !(s.value >= 0.0) || !std::isfinite(s.value)) {
            throw DomainError("fit samples need q >= 3 and finite nonnegative residuals");
        }
        if (s.value == 0.0) {
            ++fit.dropped_zero;
        } else {
            fit.samples.push_back(s);
        }
    }
    const std::size_t n = fit.samples.size();
    if (n < 3) {
        throw InsufficientData("exponent fit needs at least 3 nonzero samples, got " + std::to_string(n));
    }

    double mean_x = 0, mean_y = 0;
    for (const auto& s : fit.samples) {
        mean_x += std::log(s.q);
        mean_y += std::log(s.value);
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& s : fit.samples) {
        const double dx = std::log(s.q) - mean_x;
        const double dy = std::log(s.value) - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw InsufficientData("exponent fit needs at least two distinct moduli");
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    const double ss_res = std::max(0.0, syy - fit.slope * sxy);
    // A perfect fit (including constant data) counts as r^2 = 1.
    fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

Rational binomial_reduction(unsigned k) {
    if (k > kMaxBinomialK) throw DomainError("binomial_reduction: k must be <= 12, got " + std::to_string(k));
    Rational total = 0;
    const unsigned n = 2 * k;
    for (unsigned i = 0; i <= n; ++i) {
        Rational term(binomial(n, i), BigInt(static_cast<std::uint64_t>(i + 1) * (n - i + 1)));
        if (i % 2 == 1) {
            total -= term;
        } else {
            total += term;
        }
    }
    return total;
}

}  // namespace lehmer
