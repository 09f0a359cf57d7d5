#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lehmer {

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

inline constexpr std::uint64_t kFactorizationCap = 1'000'000'000'000ULL;

/// Canonical factorization, primes strictly increasing. Valid for 1 <= n <= 10^12.
Factorization factorize(std::uint64_t n);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);
int moebius(std::uint64_t n);
std::uint64_t divisor_count(std::uint64_t n);

/// Positive divisors in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// gcd(gcd(|m|, |l|), q) with gcd(0, n) = n. Requires q >= 1.
std::uint64_t gcd3(std::int64_t m, std::int64_t l, std::uint64_t q);

/// The unique inverse in (0, q). Throws NotInvertible carrying gcd(a, q).
std::uint64_t mod_inverse(std::int64_t a, std::uint64_t q);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Least nonnegative residue of a modulo q.
inline std::uint64_t reduce(std::int64_t a, std::uint64_t q) {
    const auto sq = static_cast<std::int64_t>(q);
    std::int64_t r = a % sq;
    return static_cast<std::uint64_t>(r < 0 ? r + sq : r);
}

// A modulus with its factorization and multiplicative-function values
// cached at construction. Immutable afterwards.
class Modulus {
public:
    explicit Modulus(std::uint64_t q);

    std::uint64_t value() const noexcept { return q_; }
    std::span<const PrimePower> factors() const noexcept { return factors_; }
    std::uint64_t phi() const noexcept { return phi_; }
    int mu() const noexcept { return mu_; }
    std::uint64_t tau() const noexcept { return tau_; }
    bool is_odd() const noexcept { return q_ % 2 == 1; }

    /// Throws UnsupportedModulus unless q is odd and q > 2.
    void require_odd_above_two() const;

    friend bool operator==(const Modulus& a, const Modulus& b) noexcept { return a.q_ == b.q_; }

private:
    std::uint64_t q_;
    Factorization factors_;
    std::uint64_t phi_;
    int mu_;
    std::uint64_t tau_;
};

std::uint64_t euler_phi(const Modulus& q);

/// inverse[b] = b^{-1} mod q for units b in [1, q), 0 for non-units.
/// One modular inversion plus O(q) multiplications (prefix-product batch inversion).
std::vector<std::uint32_t> inverse_table(const Modulus& q);

}  // namespace lehmer
