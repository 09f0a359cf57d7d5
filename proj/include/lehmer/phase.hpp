#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace lehmer {

/// e(y) = exp(2 pi i y). The integer part of y is discarded before the trig call.
inline std::complex<double> e_unit(double y) {
    const double frac = y - std::floor(y);
    const double angle = 2.0 * std::numbers::pi * frac;
    return {std::cos(angle), std::sin(angle)};
}

/// e(num / den) with the numerator reduced exactly modulo den first.
inline std::complex<double> e_ratio(std::int64_t num, std::uint64_t den) {
    const auto sden = static_cast<std::int64_t>(den);
    std::int64_t r = num % sden;
    if (r < 0) r += sden;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace lehmer
