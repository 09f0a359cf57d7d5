#include "lehmer/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "lehmer/errors.hpp"

namespace lehmer {

namespace {

void check_power(unsigned r) {
    if (r > kMaxSumPower) {
        throw PrecisionEnvelopeError("power " + std::to_string(r) + " exceeds the double-precision envelope (r <= 8)");
    }
}

void check_modulus(std::uint64_t q) {
    if (q > kMaxSumModulus) {
        throw PrecisionEnvelopeError("modulus " + std::to_string(q) +
                                     " exceeds the double-precision envelope (q <= 10^5)");
    }
}

double power(double base, unsigned exp) {
    double r = 1.0;
    while (exp-- > 0) r *= base;
    return r;
}

// Units b in [1, floor(xq)].
std::vector<std::uint64_t> short_units(const SumContext& ctx, Proportion x) {
    const std::uint64_t limit = std::min(x.floor_times(ctx.q()), ctx.q());
    std::vector<std::uint64_t> out;
    for (std::uint64_t b = 1; b <= limit; ++b) {
        if (ctx.inverses()[b % ctx.q()] != 0) out.push_back(b);
    }
    return out;
}

}  // namespace

double nearest_int_distance(double alpha) {
    const double frac = alpha - std::floor(alpha);
    return std::min(frac, 1.0 - frac);
}

SumContext::SumContext(const Modulus& q) : q_(q) {
    check_modulus(q.value());
    roots_.resize(q.value());
    for (std::uint64_t j = 0; j < q.value(); ++j) roots_[j] = e_ratio(static_cast<std::int64_t>(j), q.value());
    inverse_ = inverse_table(q);
}

SumValue k_sum(const SumContext& ctx, std::int64_t n, unsigned r) {
    check_power(r);
    const std::uint64_t q = ctx.q();
    const std::uint64_t step = reduce(n, q);
    CompensatedSum acc;
    std::uint64_t phase = 0;
    for (std::uint64_t a = 1; a <= q; ++a) {
        phase = (phase + step) % q;
        acc.add(power(static_cast<double>(a), r) * ctx.root(static_cast<std::int64_t>(phase)));
    }
    return {acc.value(), q};
}

SumValue k_sum(const Modulus& q, std::int64_t n, unsigned r) {
    check_power(r);
    return k_sum(SumContext(q), n, r);
}

SumValue h_sum(const SumContext& ctx, std::int64_t n, unsigned r) {
    check_power(r);
    if (!ctx.modulus().is_odd()) throw UnsupportedModulus("H(n, r) requires an odd modulus");
    const std::uint64_t q = ctx.q();
    const std::uint64_t step = reduce(n, q);
    CompensatedSum acc;
    std::uint64_t phase = 0;
    for (std::uint64_t a = 1; a <= q; ++a) {
        phase = (phase + step) % q;
        const double sign = (a % 2 == 0) ? 1.0 : -1.0;
        acc.add(sign * power(static_cast<double>(a), r) * ctx.root(static_cast<std::int64_t>(phase)));
    }
    return {acc.value(), q};
}

SumValue h_sum(const Modulus& q, std::int64_t n, unsigned r) {
    check_power(r);
    if (!q.is_odd()) throw UnsupportedModulus("H(n, r) requires an odd modulus");
    return h_sum(SumContext(q), n, r);
}

SumValue gauss_sum(const CharacterGroup& group, const DirichletCharacter& chi, std::int64_t n) {
    const std::uint64_t q = group.modulus().value();
    check_modulus(q);
    if (chi.modulus() != q) throw DomainError("character does not belong to this group");
    const auto values = chi.values();
    const std::uint64_t step = reduce(n, q);
    CompensatedSum acc;
    for (std::uint64_t a = 1; a <= q; ++a) {
        const auto& v = values[a % q];
        if (v == std::complex<double>{}) continue;
        acc.add(v * e_ratio(static_cast<std::int64_t>(step * a % q), q));
    }
    return {acc.value(), q};
}

SumValue kloosterman(const SumContext& ctx, std::int64_t m, std::int64_t n) {
    const std::uint64_t q = ctx.q();
    const std::uint64_t mr = reduce(m, q), nr = reduce(n, q);
    CompensatedSum acc;
    std::uint64_t terms = 0;
    for (std::uint64_t t = 1; t < q; ++t) {
        const std::uint64_t inv = ctx.inverses()[t];
        if (inv == 0) continue;
        acc.add(ctx.root(static_cast<std::int64_t>((mr * inv + nr * t) % q)));
        ++terms;
    }
    return {acc.value(), terms};
}

SumValue kloosterman(const Modulus& q, std::int64_t m, std::int64_t n) { return kloosterman(SumContext(q), m, n); }

SumValue incomplete_unit_sum(const SumContext& ctx, Proportion x, std::int64_t t) {
    const std::uint64_t q = ctx.q();
    const std::uint64_t tr = reduce(t, q);
    CompensatedSum acc;
    std::uint64_t terms = 0;
    for (std::uint64_t b : short_units(ctx, x)) {
        acc.add(ctx.root(static_cast<std::int64_t>(b * tr % q)));
        ++terms;
    }
    return {acc.value(), terms};
}

SumValue incomplete_unit_sum(const Modulus& q, Proportion x, std::int64_t t) {
    return incomplete_unit_sum(SumContext(q), x, t);
}

SumValue hybrid_incomplete_sum(const SumContext& ctx, Proportion x, std::int64_t m, std::int64_t n) {
    const std::uint64_t q = ctx.q();
    const std::uint64_t mr = reduce(m, q), nr = reduce(n, q);
    CompensatedSum acc;
    std::uint64_t terms = 0;
    for (std::uint64_t b : short_units(ctx, x)) {
        const std::uint64_t a = ctx.inverses()[b % q];
        acc.add(ctx.root(static_cast<std::int64_t>((a * mr + b * nr) % q)));
        ++terms;
    }
    return {acc.value(), terms};
}

SumValue hybrid_incomplete_sum(const Modulus& q, Proportion x, std::int64_t m, std::int64_t n) {
    return hybrid_incomplete_sum(SumContext(q), x, m, n);
}

SumValue geometric_phase_sum(double alpha, std::uint64_t count) {
    CompensatedSum acc;
    for (std::uint64_t j = 1; j <= count; ++j) acc.add(e_unit(alpha * static_cast<double>(j)));
    return {acc.value(), count};
}

std::complex<double> fourier_mixed_sum(const SumContext& ctx, Proportion x, unsigned r, unsigned s,
                                       bool alternating) {
    const std::uint64_t q = ctx.q();
    auto weight = [&](std::int64_t freq, unsigned p) {
        return alternating ? h_sum(ctx, freq, p).value : k_sum(ctx, freq, p).value;
    };
    std::vector<std::complex<double>> wr(q + 1), ws(q + 1);
    for (std::uint64_t m = 1; m <= q; ++m) {
        wr[m] = weight(-static_cast<std::int64_t>(m), r);
        ws[m] = weight(-static_cast<std::int64_t>(m), s);
    }
    CompensatedSum acc;
    for (std::uint64_t m = 1; m <= q; ++m) {
        for (std::uint64_t n = 1; n <= q; ++n) {
            const auto hybrid = hybrid_incomplete_sum(ctx, x, static_cast<std::int64_t>(m), static_cast<std::int64_t>(n));
            acc.add(hybrid.value * wr[m] * ws[n]);
        }
    }
    const double qq = static_cast<double>(q);
    return acc.value() / (qq * qq);
}

std::int64_t principal_gauss_value(const Modulus& q, std::int64_t n) {
    const std::uint64_t g = std::gcd(reduce(n, q.value()), q.value());
    const std::uint64_t cofactor = q.value() / g;
    return static_cast<std::int64_t>(moebius(cofactor)) * static_cast<std::int64_t>(q.phi() / euler_phi(cofactor));
}

double k_sum_bound(const Modulus& q, std::int64_t n, unsigned r) {
    const double qd = static_cast<double>(q.value());
    const std::uint64_t nr = reduce(n, q.value());
    if (nr == 0) return power(qd, r + 1) / (r + 1) + 2.0 * power(qd, r);
    return 2.0 * power(qd, r) / std::abs(std::sin(std::numbers::pi * static_cast<double>(nr) / qd));
}

double h_sum_bound(const Modulus& q, std::int64_t n, unsigned r) {
    if (!q.is_odd()) throw UnsupportedModulus("H(n, r) bound requires an odd modulus");
    const double qd = static_cast<double>(q.value());
    const auto nr = static_cast<double>(reduce(n, q.value()));
    // |cos(pi m/q)| = |sin(pi (q - 2m) / (2q))|, nonzero since q - 2m is odd.
    return 2.0 * power(qd, r) / std::abs(std::sin(std::numbers::pi * (qd - 2.0 * nr) / (2.0 * qd)));
}

double kloosterman_bound(const Modulus& q, std::int64_t m, std::int64_t n) {
    const double g = static_cast<double>(gcd3(m, n, q.value()));
    return static_cast<double>(q.tau()) * std::sqrt(g) * std::sqrt(static_cast<double>(q.value()));
}

double geometric_sum_bound(double alpha, std::uint64_t count) {
    const double dist = nearest_int_distance(alpha);
    const auto k = static_cast<double>(count);
    if (dist == 0.0) return k;
    return std::min(k, 1.0 / (2.0 * dist));
}

double unit_sum_aggregate(const SumContext& ctx, Proportion x, std::int64_t n) {
    const std::uint64_t q = ctx.q();
    const auto units = short_units(ctx, x);
    double total = 0.0;
    for (std::uint64_t l = 1; l < q; ++l) {
        const std::uint64_t t = reduce(n - static_cast<std::int64_t>(l), q);
        CompensatedSum acc;
        for (std::uint64_t b : units) acc.add(ctx.root(static_cast<std::int64_t>(b * t % q)));
        total += std::abs(acc.value());
    }
    return total;
}

}  // namespace lehmer
