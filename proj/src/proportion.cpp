#include "lehmer/proportion.hpp"

#include <charconv>
#include <numeric>

#include "lehmer/errors.hpp"

namespace lehmer {

Proportion::Proportion(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
    if (den == 0 || num == 0 || num > den) {
        throw DomainError("interval fraction must satisfy 0 < x <= 1, got " + std::to_string(num) + "/" +
                          std::to_string(den));
    }
    const std::uint64_t g = std::gcd(num, den);
    num_ /= g;
    den_ /= g;
}

Proportion Proportion::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        throw ParseError("expected a rational literal num/den, got '" + std::string(text) + "'");
    }
    auto parse_part = [&](std::string_view part) {
        std::uint64_t v = 0;
        if (part.empty() || part.find_first_not_of("0123456789") != std::string_view::npos) {
            throw ParseError("expected a rational literal num/den, got '" + std::string(text) + "'");
        }
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size()) {
            throw ParseError("rational literal out of range: '" + std::string(text) + "'");
        }
        return v;
    };
    return Proportion(parse_part(text.substr(0, slash)), parse_part(text.substr(slash + 1)));
}

std::uint64_t Proportion::floor_times(std::uint64_t q) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(num_) * q / den_);
}

}  // namespace lehmer
