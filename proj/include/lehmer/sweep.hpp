#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lehmer/asymptotics.hpp"
#include "lehmer/proportion.hpp"

namespace lehmer {

enum class SweepMode { theorem, lemma7, lemma8, bounds };
enum class Spacing { linear, log };

struct QRange {
    std::uint64_t start = 3;
    std::uint64_t stop = 3;
    Spacing spacing = Spacing::linear;
    std::uint64_t step = 2;     // linear spacing
    std::uint64_t points = 15;  // log spacing

    friend bool operator==(const QRange&, const QRange&) = default;
};

// Sweep description. The text form is one `key = value` per line, '#' comments:
//
//   mode = theorem            # theorem | lemma7 | lemma8 | bounds
//   q = 101, 211              # explicit list, or
//   q_range = 101 20001       # with q_spacing, q_step, q_points
//   q_spacing = log
//   q_points = 15
//   odd_only = true           # bump even grid points to the next odd number
//   x = 3/4, 1/1
//   k = 1, 2                  # lemma7/lemma8 use r = s = k
//   workers = 8
//   csv = out.csv
//   json = summary.json
struct SweepConfig {
    SweepMode mode = SweepMode::theorem;
    std::vector<std::uint64_t> q_list;
    std::optional<QRange> q_range;
    bool odd_only = true;
    std::vector<Proportion> x_values{Proportion::whole()};
    std::vector<unsigned> k_values{1};
    unsigned workers = 1;
    std::string csv_path;
    std::string json_path;

    /// Sorted, de-duplicated moduli after applying the odd-only adjustment.
    /// Throws UnsupportedModulus if an even q or q <= 2 survives.
    std::vector<std::uint64_t> moduli() const;

    /// Throws DomainError on an unusable configuration.
    void validate() const;

    std::string to_text() const;
    /// Throws ParseError on malformed lines or unknown keys.
    static SweepConfig parse(std::string_view text);

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

std::string_view mode_name(SweepMode mode);

std::vector<std::uint64_t> log_spaced_odd(std::uint64_t start, std::uint64_t stop, std::uint64_t points);

/// Deterministic pseudorandom frequency pairs (m, n), each in [low, q - 1].
std::vector<std::pair<std::int64_t, std::int64_t>> sample_frequency_pairs(std::uint64_t q, std::size_t count,
                                                                          std::uint64_t low,
                                                                          std::uint64_t seed);

inline constexpr std::uint64_t kSweepSeed = 0x5eed'1e4e'7a11ULL;
inline constexpr std::size_t kBoundSamplesPerModulus = 100;

struct SweepRow {
    unsigned k = 0;
    AsymptoticReport report;
};

struct BoundsRow {
    std::uint64_t q = 0;
    Proportion x = Proportion::whole();
    double kloosterman_max_ratio = 0;  // |Kl| / (d(q) sqrt((m,n,q)) sqrt(q))
    double kloosterman_max_imag = 0;   // |Im Kl| / phi(q)
    double unit_sum_constant = 0;      // aggregate / (q ln q d(q)), max over n in {1, q}
    double hybrid_max_ratio = 0;       // |S(x,m,n;q)| / (d(q)^2 sqrt(q))
};

struct GroupFit {
    Proportion x = Proportion::whole();
    unsigned k = 0;
    std::optional<ExponentFit> fit;
    double max_normalized_residual = 0;
    double max_normalized_residual_d2 = 0;
    std::size_t points = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;          // theorem, lemma7, lemma8
    std::vector<BoundsRow> bounds_rows;  // bounds
    std::vector<GroupFit> fits;
    std::string csv;
    nlohmann::ordered_json summary;
};

inline constexpr std::string_view kSweepCsvHeader =
    "q,x_num,x_den,k,exact,main_term,residual,normalized_residual";
inline constexpr std::string_view kBoundsCsvHeader =
    "q,x_num,x_den,kloosterman_max_ratio,kloosterman_max_imag,unit_sum_constant,hybrid_max_ratio";

/// 17 significant digits, scientific notation.
std::string format_real(double value);

SweepRow evaluate_point(SweepMode mode, const Modulus& q, Proportion x, unsigned k);
BoundsRow evaluate_bounds(const Modulus& q, Proportion x);

/// Runs every (q, x, k) point on `config.workers` threads; output order is
/// sorted by (q, x, k) and independent of the worker count.
SweepResult run_sweep(const SweepConfig& config);

}  // namespace lehmer
