#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <vector>

#include "lehmer/arith.hpp"
#include "lehmer/proportion.hpp"

namespace lehmer {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr unsigned kMaxMeanPower = 8;    // k in M(x, q, k)
inline constexpr unsigned kMaxMixedDegree = 16;  // r + s

// (a, b) with ab = 1 (mod q), both in [1, q - 1].
struct LehmerPair {
    std::uint64_t a;
    std::uint64_t b;

    friend bool operator==(const LehmerPair&, const LehmerPair&) = default;
};

enum class ParityFilter {
    all,
    opposite_parity,  // a + b odd
};

class PairQuery {
public:
    /// Throws UnsupportedModulus unless q is odd and > 2.
    PairQuery(Modulus q, Proportion x, ParityFilter filter = ParityFilter::all);

    const Modulus& modulus() const noexcept { return q_; }
    Proportion x() const noexcept { return x_; }
    ParityFilter filter() const noexcept { return filter_; }

    /// floor(xq), the inclusive upper limit for b.
    std::uint64_t b_limit() const { return x_.floor_times(q_.value()); }

private:
    Modulus q_;
    Proportion x_;
    ParityFilter filter_;
};

struct ExactSum {
    BigInt value;
    std::uint64_t pair_count = 0;
};

/// Calls visit(LehmerPair) for each pair matching the query, in increasing b.
/// `inverses` must be inverse_table(query.modulus()).
template <class Visitor>
void for_each_pair(const PairQuery& query, std::span<const std::uint32_t> inverses, Visitor&& visit) {
    const std::uint64_t q = query.modulus().value();
    const std::uint64_t limit = std::min(query.b_limit(), q - 1);
    const bool opposite = query.filter() == ParityFilter::opposite_parity;
    for (std::uint64_t b = 1; b <= limit; ++b) {
        const std::uint64_t a = inverses[b];
        if (a == 0) continue;
        if (opposite && (a + b) % 2 == 0) continue;
        visit(LehmerPair{a, b});
    }
}

std::vector<LehmerPair> enumerate_pairs(const PairQuery& query);

/// r(q): units a in [1, q) whose inverse has the opposite parity.
std::uint64_t lehmer_count(const Modulus& q);

/// M(x, q, k): sum of (a - b)^{2k} over opposite-parity pairs with b <= floor(xq).
ExactSum power_mean_short(const Modulus& q, Proportion x, unsigned k);

/// M(q, k), iterating a over all units (independent of the short-interval path).
ExactSum power_mean_full(const Modulus& q, unsigned k);

/// sum over all units a of (a - a^{-1})^{2k}, no parity filter.
ExactSum unrestricted_power_sum(const Modulus& q, unsigned k);

/// sum of a^r b^s over all pairs with b <= floor(xq).
ExactSum mixed_power_sum(const Modulus& q, Proportion x, unsigned r, unsigned s);

/// sum of (-1)^{a+b} a^r b^s over all pairs with b <= floor(xq).
ExactSum alternating_mixed_power_sum(const Modulus& q, Proportion x, unsigned r, unsigned s);

}  // namespace lehmer
