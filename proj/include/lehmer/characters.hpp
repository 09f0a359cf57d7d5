#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lehmer/arith.hpp"

namespace lehmer {

inline constexpr std::uint64_t kCharacterGroupCap = 1'000'000;

// One cyclic factor (Z/p^e)^* of the unit group, with its least primitive
// root and a full discrete-log table.
struct CyclicComponent {
    static constexpr std::uint32_t kNoLog = UINT32_MAX;

    std::uint64_t prime;
    unsigned exponent;
    std::uint64_t modulus;    // p^e
    std::uint64_t order;      // phi(p^e)
    std::uint64_t generator;  // least primitive root mod p^e
    std::vector<std::uint32_t> dlog;  // indexed by residue mod p^e; kNoLog for non-units
};

namespace detail {
struct GroupData;
}

class DirichletCharacter;

// Full group of Dirichlet characters modulo an odd q, built through the CRT
// decomposition into cyclic prime-power components.
class CharacterGroup {
public:
    /// Throws UnsupportedModulus for even q or q < 3, ResourceError above 10^6.
    explicit CharacterGroup(const Modulus& q);

    const Modulus& modulus() const noexcept;
    std::span<const CyclicComponent> components() const noexcept;

    /// Number of characters, equal to phi(q).
    std::uint64_t size() const noexcept;

    DirichletCharacter principal() const;

    /// Character with mixed-radix index in [0, phi(q)); the first component is least significant.
    DirichletCharacter character(std::uint64_t index) const;
    DirichletCharacter from_exponents(std::vector<std::uint64_t> exponents) const;
    std::vector<DirichletCharacter> characters() const;

private:
    friend class DirichletCharacter;
    std::shared_ptr<const detail::GroupData> data_;
};

class DirichletCharacter {
public:
    std::span<const std::uint64_t> exponents() const noexcept { return exponents_; }
    std::uint64_t index() const noexcept;
    std::uint64_t modulus() const noexcept;

    /// chi(a); a is reduced mod q. Zero on non-units.
    std::complex<double> operator()(std::int64_t a) const;

    /// Values chi(0), ..., chi(q - 1).
    std::vector<std::complex<double>> values() const;

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.data_ == b.data_ && a.exponents_ == b.exponents_;
    }

private:
    friend class CharacterGroup;
    DirichletCharacter(std::shared_ptr<const detail::GroupData> data, std::vector<std::uint64_t> exponents);

    // Phase numerator of chi(residue) over the group phase denominator; false on non-units.
    bool phase(std::uint64_t residue, std::uint64_t& numerator) const;

    std::shared_ptr<const detail::GroupData> data_;
    std::vector<std::uint64_t> exponents_;
};

std::uint64_t least_primitive_root(std::uint64_t prime, unsigned exponent);

CharacterGroup character_group(const Modulus& q);
std::complex<double> char_eval(const DirichletCharacter& chi, std::int64_t a);
bool is_principal(const DirichletCharacter& chi);

}  // namespace lehmer
