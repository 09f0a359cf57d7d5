#include "lehmer/power_sums.hpp"

#include <numeric>
#include <string>

#include "lehmer/errors.hpp"

namespace lehmer {

namespace {

void check_mean_power(unsigned k) {
    if (k < 1 || k > kMaxMeanPower) {
        throw DomainError("power-mean exponent k must lie in [1, 8], got " + std::to_string(k));
    }
}

void check_mixed_degree(unsigned r, unsigned s) {
    if (r + s > kMaxMixedDegree) {
        throw DomainError("mixed degree r + s must be <= 16, got " + std::to_string(r + s));
    }
}

BigInt pow_big(std::uint64_t base, unsigned exp) { return boost::multiprecision::pow(BigInt(base), exp); }

std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

ExactSum mixed_sum_impl(const Modulus& q, Proportion x, unsigned r, unsigned s, bool alternating) {
    check_mixed_degree(r, s);
    const PairQuery query(q, x);
    const auto inverses = inverse_table(q);
    ExactSum out;
    for_each_pair(query, inverses, [&](LehmerPair p) {
        BigInt term = pow_big(p.a, r) * pow_big(p.b, s);
        if (alternating && (p.a + p.b) % 2 == 1) {
            out.value -= term;
        } else {
            out.value += term;
        }
        ++out.pair_count;
    });
    return out;
}

}  // namespace

PairQuery::PairQuery(Modulus q, Proportion x, ParityFilter filter) : q_(std::move(q)), x_(x), filter_(filter) {
    q_.require_odd_above_two();
}

std::vector<LehmerPair> enumerate_pairs(const PairQuery& query) {
    const auto inverses = inverse_table(query.modulus());
    std::vector<LehmerPair> out;
    for_each_pair(query, inverses, [&](LehmerPair p) { out.push_back(p); });
    return out;
}

std::uint64_t lehmer_count(const Modulus& q) {
    q.require_odd_above_two();
    const auto inverses = inverse_table(q);
    std::uint64_t count = 0;
    for (std::uint64_t a = 1; a < q.value(); ++a) {
        if (inverses[a] != 0 && (a + inverses[a]) % 2 == 1) ++count;
    }
    return count;
}

ExactSum power_mean_short(const Modulus& q, Proportion x, unsigned k) {
    check_mean_power(k);
    const PairQuery query(q, x, ParityFilter::opposite_parity);
    const auto inverses = inverse_table(q);
    ExactSum out;
    for_each_pair(query, inverses, [&](LehmerPair p) {
        out.value += pow_big(abs_diff(p.a, p.b), 2 * k);
        ++out.pair_count;
    });
    return out;
}

ExactSum power_mean_full(const Modulus& q, unsigned k) {
    check_mean_power(k);
    q.require_odd_above_two();
    ExactSum out;
    for (std::uint64_t a = 1; a < q.value(); ++a) {
        if (std::gcd(a, q.value()) != 1) continue;
        const std::uint64_t inv = mod_inverse(static_cast<std::int64_t>(a), q.value());
        if ((a + inv) % 2 == 0) continue;
        out.value += pow_big(abs_diff(a, inv), 2 * k);
        ++out.pair_count;
    }
    return out;
}

ExactSum unrestricted_power_sum(const Modulus& q, unsigned k) {
    check_mean_power(k);
    const PairQuery query(q, Proportion::whole());
    const auto inverses = inverse_table(q);
    ExactSum out;
    for_each_pair(query, inverses, [&](LehmerPair p) {
        out.value += pow_big(abs_diff(p.a, p.b), 2 * k);
        ++out.pair_count;
    });
    return out;
}

ExactSum mixed_power_sum(const Modulus& q, Proportion x, unsigned r, unsigned s) {
    return mixed_sum_impl(q, x, r, s, false);
}

ExactSum alternating_mixed_power_sum(const Modulus& q, Proportion x, unsigned r, unsigned s) {
    return mixed_sum_impl(q, x, r, s, true);
}

}  // namespace lehmer
