#include "lehmer/arith.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <string>

#include "lehmer/errors.hpp"

namespace lehmer {

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;
constexpr std::uint64_t kInverseTableCap = 10'000'000;

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

void require_positive(std::uint64_t n, const char* what) {
    if (n == 0) throw DomainError(std::string(what) + ": argument must be >= 1");
}

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
    std::uint64_t x = mod_pow(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    // These witnesses are deterministic below 3.3e24, which covers uint64.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw DomainError("factorize: argument must be >= 1");
    if (n > kFactorizationCap) {
        throw DomainError("factorize: " + std::to_string(n) + " exceeds the 10^12 cap");
    }
    Factorization out;
    auto strip = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.push_back({p, e});
    };
    strip(2);
    for (std::uint64_t p = 3; p <= kTrialLimit && p * p <= n; p += 2) strip(p);
    if (n > 1) {
        // Below the cap the cofactor left after trial division to 10^6 is prime.
        if (!is_prime(n)) throw DomainError("factorize: unexpected composite cofactor");
        out.push_back({n, 1});
    }
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    require_positive(n, "euler_phi");
    std::uint64_t phi = n;
    for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

int moebius(std::uint64_t n) {
    require_positive(n, "moebius");
    int mu = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

std::uint64_t divisor_count(std::uint64_t n) {
    require_positive(n, "divisor_count");
    std::uint64_t tau = 1;
    for (auto [p, e] : factorize(n)) tau *= e + 1;
    return tau;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    require_positive(n, "divisors");
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        const std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t gcd3(std::int64_t m, std::int64_t l, std::uint64_t q) {
    const std::uint64_t am = m < 0 ? 0 - static_cast<std::uint64_t>(m) : static_cast<std::uint64_t>(m);
    const std::uint64_t al = l < 0 ? 0 - static_cast<std::uint64_t>(l) : static_cast<std::uint64_t>(l);
    return std::gcd(std::gcd(am, al), q);
}

std::uint64_t mod_inverse(std::int64_t a, std::uint64_t q) {
    if (q < 2) throw DomainError("mod_inverse: modulus must be >= 2");
    if (q > static_cast<std::uint64_t>(INT64_MAX)) throw DomainError("mod_inverse: modulus too large");
    const std::uint64_t r = reduce(a, q);
    // Extended Euclid on (r, q); coefficients stay below q in magnitude.
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_r = static_cast<std::int64_t>(r), cur = static_cast<std::int64_t>(q);
    while (cur != 0) {
        const std::int64_t quot = old_r / cur;
        std::int64_t tmp = old_r - quot * cur;
        old_r = cur;
        cur = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw NotInvertible(a, q, static_cast<std::uint64_t>(old_r));
    return reduce(old_s, q);
}

Modulus::Modulus(std::uint64_t q) : q_(q), factors_(factorize(q)), phi_(q), mu_(1), tau_(1) {
    for (auto [p, e] : factors_) {
        phi_ = phi_ / p * (p - 1);
        tau_ *= e + 1;
        mu_ = (e > 1 || mu_ == 0) ? 0 : -mu_;
    }
}

void Modulus::require_odd_above_two() const {
    if (q_ <= 2 || q_ % 2 == 0) {
        throw UnsupportedModulus("modulus must be odd and greater than 2, got " + std::to_string(q_));
    }
}

std::uint64_t euler_phi(const Modulus& q) { return q.phi(); }

std::vector<std::uint32_t> inverse_table(const Modulus& modulus) {
    const std::uint64_t q = modulus.value();
    if (q > kInverseTableCap) throw ResourceError("inverse_table: modulus exceeds 10^7");
    std::vector<std::uint32_t> inverse(q, 0);
    if (q == 1) return inverse;

    std::vector<std::uint32_t> units;
    units.reserve(modulus.phi());
    for (std::uint64_t b = 1; b < q; ++b) {
        if (std::gcd(b, q) == 1) units.push_back(static_cast<std::uint32_t>(b));
    }
    std::vector<std::uint64_t> prefix(units.size());
    std::uint64_t acc = 1;
    for (std::size_t i = 0; i < units.size(); ++i) {
        acc = acc * units[i] % q;
        prefix[i] = acc;
    }
    std::uint64_t inv = mod_inverse(static_cast<std::int64_t>(acc), q);
    for (std::size_t i = units.size(); i-- > 0;) {
        const std::uint64_t before = i == 0 ? 1 : prefix[i - 1];
        inverse[units[i]] = static_cast<std::uint32_t>(inv * before % q);
        inv = inv * units[i] % q;
    }
    return inverse;
}

}  // namespace lehmer
