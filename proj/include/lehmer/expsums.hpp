#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "lehmer/arith.hpp"
#include "lehmer/characters.hpp"
#include "lehmer/phase.hpp"
#include "lehmer/proportion.hpp"

namespace lehmer {

// Double-precision envelope for the term-by-term sums below.
inline constexpr unsigned kMaxSumPower = 8;
inline constexpr std::uint64_t kMaxSumModulus = 100'000;

struct SumValue {
    std::complex<double> value;
    std::uint64_t terms = 0;

    double magnitude() const { return std::abs(value); }
};

// Neumaier-compensated accumulation, applied to each component.
class CompensatedSum {
public:
    void add(std::complex<double> z) {
        add_part(re_, re_carry_, z.real());
        add_part(im_, im_carry_, z.imag());
    }
    std::complex<double> value() const { return {re_ + re_carry_, im_ + im_carry_}; }

private:
    static void add_part(double& sum, double& carry, double x) {
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double re_ = 0.0, im_ = 0.0, re_carry_ = 0.0, im_carry_ = 0.0;
};

/// Distance from alpha to the nearest integer, in [0, 1/2].
double nearest_int_distance(double alpha);

// Tables shared by every sum at one modulus: e(j/q) for j in [0, q) and the unit inverses.
class SumContext {
public:
    /// Throws PrecisionEnvelopeError above 10^5.
    explicit SumContext(const Modulus& q);

    const Modulus& modulus() const noexcept { return q_; }
    std::uint64_t q() const noexcept { return q_.value(); }
    std::complex<double> root(std::int64_t j) const { return roots_[reduce(j, q_.value())]; }
    std::span<const std::uint32_t> inverses() const noexcept { return inverse_; }

private:
    Modulus q_;
    std::vector<std::complex<double>> roots_;
    std::vector<std::uint32_t> inverse_;
};

/// K(n, r) = sum_{a=1}^{q} a^r e(an/q).
SumValue k_sum(const SumContext& ctx, std::int64_t n, unsigned r);
SumValue k_sum(const Modulus& q, std::int64_t n, unsigned r);

/// H(n, r) = sum_{a=1}^{q} (-1)^a a^r e(an/q). Requires odd q.
SumValue h_sum(const SumContext& ctx, std::int64_t n, unsigned r);
SumValue h_sum(const Modulus& q, std::int64_t n, unsigned r);

/// G(n, chi) = sum_{a=1}^{q} chi(a) e(na/q).
SumValue gauss_sum(const CharacterGroup& group, const DirichletCharacter& chi, std::int64_t n);

/// Complete Kloosterman sum over units t: e((m t^{-1} + n t)/q).
SumValue kloosterman(const SumContext& ctx, std::int64_t m, std::int64_t n);
SumValue kloosterman(const Modulus& q, std::int64_t m, std::int64_t n);

/// Sum over units b <= floor(xq) of e(bt/q).
SumValue incomplete_unit_sum(const SumContext& ctx, Proportion x, std::int64_t t);
SumValue incomplete_unit_sum(const Modulus& q, Proportion x, std::int64_t t);

/// S(x, m, n; q): sum over units b <= floor(xq), a = b^{-1}, of e((am + bn)/q).
SumValue hybrid_incomplete_sum(const SumContext& ctx, Proportion x, std::int64_t m, std::int64_t n);
SumValue hybrid_incomplete_sum(const Modulus& q, Proportion x, std::int64_t m, std::int64_t n);

/// sum_{j=1}^{count} e(alpha j).
SumValue geometric_phase_sum(double alpha, std::uint64_t count);

/// The Fourier expansion of the mixed power sum:
/// q^{-2} sum_{m,n=1}^{q} S(x,m,n;q) K(-m,r) K(-n,s), or with H in place of K when
/// alternating. O(q^3); meant for small q cross-checks.
std::complex<double> fourier_mixed_sum(const SumContext& ctx, Proportion x, unsigned r, unsigned s,
                                       bool alternating = false);

// Reference values and bounds.

/// mu(q/(n,q)) phi(q) / phi(q/(n,q)), the closed form of G(n, chi_0).
std::int64_t principal_gauss_value(const Modulus& q, std::int64_t n);

/// q|n: q^{r+1}/(r+1) + 2q^r.  Otherwise 2q^r / |sin(pi n/q)|.
double k_sum_bound(const Modulus& q, std::int64_t n, unsigned r);

/// 2q^r / |cos(pi n/q)|, finite because q is odd.
double h_sum_bound(const Modulus& q, std::int64_t n, unsigned r);

/// d(q) sqrt((m, n, q)) sqrt(q).
double kloosterman_bound(const Modulus& q, std::int64_t m, std::int64_t n);

/// min(count, 1 / (2 <alpha>)).
double geometric_sum_bound(double alpha, std::uint64_t count);

/// sum_{l=1}^{q-1} |incomplete_unit_sum(q, x, n - l)|.
double unit_sum_aggregate(const SumContext& ctx, Proportion x, std::int64_t n);

}  // namespace lehmer
