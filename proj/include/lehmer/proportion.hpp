#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace lehmer {

// The short-interval length x, held exactly as a reduced fraction in (0, 1].
// Interval membership b <= xq always means b <= floor(num * q / den).
class Proportion {
public:
    /// Throws DomainError unless 0 < num/den <= 1.
    Proportion(std::uint64_t num, std::uint64_t den);

    static Proportion whole() { return Proportion(1, 1); }

    /// Accepts only "num/den" with decimal digits on both sides.
    /// Throws ParseError on malformed text, DomainError when out of (0, 1].
    static Proportion parse(std::string_view text);

    std::uint64_t num() const noexcept { return num_; }
    std::uint64_t den() const noexcept { return den_; }

    std::uint64_t floor_times(std::uint64_t q) const;
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend bool operator==(const Proportion&, const Proportion&) = default;
    friend std::strong_ordering operator<=>(const Proportion& a, const Proportion& b) {
        const auto lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
        const auto rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }

private:
    std::uint64_t num_;
    std::uint64_t den_;
};

}  // namespace lehmer
