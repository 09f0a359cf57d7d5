#include "lehmer/characters.hpp"

#include <numeric>
#include <string>

#include "lehmer/errors.hpp"
#include "lehmer/phase.hpp"

namespace lehmer {

namespace detail {

struct GroupData {
    Modulus modulus;
    std::vector<CyclicComponent> components;
    // Character phases are exact fractions over the lcm of the component orders.
    std::uint64_t phase_denominator = 1;
    std::vector<std::uint64_t> phase_scale;
};

}  // namespace detail

namespace {

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

CyclicComponent build_component(std::uint64_t p, unsigned e) {
    CyclicComponent c{p, e, ipow(p, e), 0, 0, {}};
    c.order = c.modulus / p * (p - 1);
    c.generator = least_primitive_root(p, e);
    c.dlog.assign(c.modulus, CyclicComponent::kNoLog);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < c.order; ++i) {
        c.dlog[x] = static_cast<std::uint32_t>(i);
        x = x * c.generator % c.modulus;
    }
    return c;
}

}  // namespace

std::uint64_t least_primitive_root(std::uint64_t prime, unsigned exponent) {
    if (prime == 2 || exponent == 0) throw UnsupportedModulus("primitive roots are only built for odd prime powers");
    const std::uint64_t pe = ipow(prime, exponent);
    const std::uint64_t order = pe / prime * (prime - 1);
    const Factorization order_factors = factorize(order);
    for (std::uint64_t g = 2; g < pe; ++g) {
        if (g % prime == 0) continue;
        bool generates = true;
        for (auto [r, _] : order_factors) {
            if (mod_pow(g, order / r, pe) == 1) {
                generates = false;
                break;
            }
        }
        if (generates) return g;
    }
    // Unreachable: (Z/p^e)^* is cyclic for odd p.
    throw DomainError("no primitive root found modulo " + std::to_string(pe));
}

CharacterGroup::CharacterGroup(const Modulus& q) {
    const std::uint64_t n = q.value();
    if (n < 3 || n % 2 == 0) {
        throw UnsupportedModulus("character groups require odd q >= 3, got " + std::to_string(n));
    }
    if (n > kCharacterGroupCap) throw ResourceError("character group modulus exceeds 10^6");

    auto data = std::make_shared<detail::GroupData>(detail::GroupData{q, {}, 1, {}});
    for (auto [p, e] : q.factors()) {
        data->components.push_back(build_component(p, e));
        data->phase_denominator = std::lcm(data->phase_denominator, data->components.back().order);
    }
    for (const auto& c : data->components) data->phase_scale.push_back(data->phase_denominator / c.order);
    data_ = std::move(data);
}

const Modulus& CharacterGroup::modulus() const noexcept { return data_->modulus; }

std::span<const CyclicComponent> CharacterGroup::components() const noexcept { return data_->components; }

std::uint64_t CharacterGroup::size() const noexcept { return data_->modulus.phi(); }

DirichletCharacter CharacterGroup::principal() const {
    return DirichletCharacter(data_, std::vector<std::uint64_t>(data_->components.size(), 0));
}

DirichletCharacter CharacterGroup::character(std::uint64_t index) const {
    if (index >= size()) {
        throw DomainError("character index " + std::to_string(index) + " out of range [0, " +
                          std::to_string(size()) + ")");
    }
    std::vector<std::uint64_t> exps;
    exps.reserve(data_->components.size());
    for (const auto& c : data_->components) {
        exps.push_back(index % c.order);
        index /= c.order;
    }
    return DirichletCharacter(data_, std::move(exps));
}

DirichletCharacter CharacterGroup::from_exponents(std::vector<std::uint64_t> exponents) const {
    if (exponents.size() != data_->components.size()) {
        throw DomainError("exponent vector length does not match the number of components");
    }
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] >= data_->components[i].order) throw DomainError("character exponent out of range");
    }
    return DirichletCharacter(data_, std::move(exponents));
}

std::vector<DirichletCharacter> CharacterGroup::characters() const {
    std::vector<DirichletCharacter> out;
    out.reserve(size());
    for (std::uint64_t i = 0; i < size(); ++i) out.push_back(character(i));
    return out;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const detail::GroupData> data,
                                       std::vector<std::uint64_t> exponents)
    : data_(std::move(data)), exponents_(std::move(exponents)) {}

std::uint64_t DirichletCharacter::index() const noexcept {
    std::uint64_t idx = 0;
    for (std::size_t i = exponents_.size(); i-- > 0;) idx = idx * data_->components[i].order + exponents_[i];
    return idx;
}

std::uint64_t DirichletCharacter::modulus() const noexcept { return data_->modulus.value(); }

bool DirichletCharacter::phase(std::uint64_t residue, std::uint64_t& numerator) const {
    numerator = 0;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        const auto& c = data_->components[i];
        const std::uint32_t log = c.dlog[residue % c.modulus];
        if (log == CyclicComponent::kNoLog) return false;
        numerator = (numerator + exponents_[i] * log % c.order * data_->phase_scale[i]) % data_->phase_denominator;
    }
    return true;
}

std::complex<double> DirichletCharacter::operator()(std::int64_t a) const {
    std::uint64_t num = 0;
    if (!phase(reduce(a, data_->modulus.value()), num)) return {0.0, 0.0};
    return e_ratio(static_cast<std::int64_t>(num), data_->phase_denominator);
}

std::vector<std::complex<double>> DirichletCharacter::values() const {
    const std::uint64_t q = data_->modulus.value();
    std::vector<std::complex<double>> out(q);
    for (std::uint64_t a = 0; a < q; ++a) {
        std::uint64_t num = 0;
        out[a] = phase(a, num) ? e_ratio(static_cast<std::int64_t>(num), data_->phase_denominator)
                               : std::complex<double>{};
    }
    return out;
}

CharacterGroup character_group(const Modulus& q) { return CharacterGroup(q); }

std::complex<double> char_eval(const DirichletCharacter& chi, std::int64_t a) { return chi(a); }

bool is_principal(const DirichletCharacter& chi) {
    for (auto e : chi.exponents()) {
        if (e != 0) return false;
    }
    return true;
}

}  // namespace lehmer
