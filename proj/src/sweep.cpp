#include "lehmer/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "lehmer/errors.hpp"
#include "lehmer/expsums.hpp"
#include "lehmer/power_sums.hpp"

namespace lehmer {

namespace {

constexpr unsigned kMaxWorkers = 256;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const auto pos = s.find(sep);
        out.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return out;
}

std::uint64_t parse_uint(std::string_view text, std::string_view key) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("config key '" + std::string(key) + "': expected an unsigned integer, got '" +
                         std::string(text) + "'");
    }
    return v;
}

template <class T>
std::string join(const std::vector<T>& items, auto&& to_string) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(items[i]);
    }
    return out;
}

SweepMode parse_mode(std::string_view text) {
    if (text == "theorem") return SweepMode::theorem;
    if (text == "lemma7") return SweepMode::lemma7;
    if (text == "lemma8") return SweepMode::lemma8;
    if (text == "bounds") return SweepMode::bounds;
    throw ParseError("unknown sweep mode '" + std::string(text) + "'");
}

// Runs fn(i) for i in [0, count) on a bounded pool; results land at their index.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, unsigned workers, Fn&& fn) {
    std::vector<Result> results(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
    work();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
    return results;
}

double max_abs(double current, double v) { return std::max(current, std::abs(v)); }

// round(start * (stop/start)^(i/(points-1))) for i in [0, points).
std::vector<std::uint64_t> log_grid(std::uint64_t start, std::uint64_t stop, std::uint64_t points) {
    if (start == 0) throw DomainError("log spacing needs start >= 1");
    std::vector<std::uint64_t> out;
    const double ratio = static_cast<double>(stop) / static_cast<double>(start);
    for (std::uint64_t i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        out.push_back(static_cast<std::uint64_t>(std::llround(static_cast<double>(start) * std::pow(ratio, t))));
    }
    return out;
}

}  // namespace

std::string_view mode_name(SweepMode mode) {
    switch (mode) {
        case SweepMode::theorem: return "theorem";
        case SweepMode::lemma7: return "lemma7";
        case SweepMode::lemma8: return "lemma8";
        case SweepMode::bounds: return "bounds";
    }
    return "theorem";
}

std::vector<std::uint64_t> log_spaced_odd(std::uint64_t start, std::uint64_t stop, std::uint64_t points) {
    std::vector<std::uint64_t> out;
    for (auto v : log_grid(start, stop, points)) out.push_back(v % 2 == 0 ? v + 1 : v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint64_t> SweepConfig::moduli() const {
    std::vector<std::uint64_t> out;
    auto add = [&](std::uint64_t v) { out.push_back(odd_only && v % 2 == 0 ? v + 1 : v); };
    for (auto q : q_list) add(q);
    if (q_range) {
        const auto& r = *q_range;
        if (r.spacing == Spacing::log) {
            for (auto v : log_grid(r.start, r.stop, r.points)) add(v);
        } else {
            if (r.step == 0) throw DomainError("linear q_range needs q_step >= 1");
            for (std::uint64_t v = r.start; v <= r.stop; v += r.step) add(v);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (auto q : out) {
        if (q <= 2 || q % 2 == 0) throw UnsupportedModulus("sweep moduli must be odd and > 2, got " + std::to_string(q));
    }
    return out;
}

void SweepConfig::validate() const {
    if (workers < 1 || workers > kMaxWorkers) throw DomainError("workers must lie in [1, 256]");
    if (x_values.empty()) throw DomainError("sweep needs at least one x value");
    if (mode != SweepMode::bounds) {
        if (k_values.empty()) throw DomainError("sweep needs at least one k value");
        for (auto k : k_values) {
            if (k < 1 || k > kMaxMeanPower) throw DomainError("sweep k values must lie in [1, 8]");
        }
    }
    const auto qs = moduli();
    if (qs.empty()) throw DomainError("sweep has no moduli");
    if (mode == SweepMode::bounds && qs.back() > kMaxSumModulus) {
        throw DomainError("bounds sweeps are limited to q <= 10^5");
    }
}

std::string SweepConfig::to_text() const {
    std::ostringstream out;
    out << "mode = " << mode_name(mode) << "\n";
    if (!q_list.empty()) out << "q = " << join(q_list, [](auto v) { return std::to_string(v); }) << "\n";
    if (q_range) {
        out << "q_range = " << q_range->start << " " << q_range->stop << "\n";
        out << "q_spacing = " << (q_range->spacing == Spacing::log ? "log" : "linear") << "\n";
        out << "q_step = " << q_range->step << "\n";
        out << "q_points = " << q_range->points << "\n";
    }
    out << "odd_only = " << (odd_only ? "true" : "false") << "\n";
    out << "x = " << join(x_values, [](const Proportion& p) { return p.str(); }) << "\n";
    out << "k = " << join(k_values, [](auto v) { return std::to_string(v); }) << "\n";
    out << "workers = " << workers << "\n";
    if (!csv_path.empty()) out << "csv = " << csv_path << "\n";
    if (!json_path.empty()) out << "json = " << json_path << "\n";
    return out.str();
}

SweepConfig SweepConfig::parse(std::string_view text) {
    SweepConfig config;
    QRange range;
    bool has_range = false, has_range_detail = false;
    std::size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        ++line_no;
        auto line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key == "mode") {
            config.mode = parse_mode(value);
        } else if (key == "q") {
            config.q_list.clear();
            for (auto item : split(value, ',')) config.q_list.push_back(parse_uint(item, key));
        } else if (key == "q_range") {
            std::vector<std::string_view> parts;
            for (auto p : split(value, ' ')) {
                if (!p.empty()) parts.push_back(p);
            }
            if (parts.size() != 2) throw ParseError("q_range expects two integers: start stop");
            range.start = parse_uint(parts[0], key);
            range.stop = parse_uint(parts[1], key);
            has_range = true;
        } else if (key == "q_spacing") {
            if (value == "log") {
                range.spacing = Spacing::log;
            } else if (value == "linear") {
                range.spacing = Spacing::linear;
            } else {
                throw ParseError("q_spacing must be linear or log");
            }
            has_range_detail = true;
        } else if (key == "q_step") {
            range.step = parse_uint(value, key);
            has_range_detail = true;
        } else if (key == "q_points") {
            range.points = parse_uint(value, key);
            has_range_detail = true;
        } else if (key == "odd_only") {
            if (value != "true" && value != "false") throw ParseError("odd_only must be true or false");
            config.odd_only = value == "true";
        } else if (key == "x") {
            config.x_values.clear();
            for (auto item : split(value, ',')) config.x_values.push_back(Proportion::parse(item));
        } else if (key == "k") {
            config.k_values.clear();
            for (auto item : split(value, ',')) config.k_values.push_back(static_cast<unsigned>(parse_uint(item, key)));
        } else if (key == "workers") {
            config.workers = static_cast<unsigned>(parse_uint(value, key));
        } else if (key == "csv") {
            config.csv_path = std::string(value);
        } else if (key == "json") {
            config.json_path = std::string(value);
        } else {
            throw ParseError("unknown config key '" + std::string(key) + "'");
        }
    }
    if (has_range_detail && !has_range) throw ParseError("q_spacing/q_step/q_points given without q_range");
    if (has_range) config.q_range = range;
    return config;
}

std::vector<std::pair<std::int64_t, std::int64_t>> sample_frequency_pairs(std::uint64_t q, std::size_t count,
                                                                          std::uint64_t low, std::uint64_t seed) {
    if (low >= q) throw DomainError("frequency sampling range is empty");
    std::mt19937_64 gen(seed ^ (q * 0x9E3779B97F4A7C15ULL));
    const std::uint64_t span = q - low;
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto m = static_cast<std::int64_t>(low + gen() % span);
        const auto n = static_cast<std::int64_t>(low + gen() % span);
        out.emplace_back(m, n);
    }
    return out;
}

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

SweepRow evaluate_point(SweepMode mode, const Modulus& q, Proportion x, unsigned k) {
    switch (mode) {
        case SweepMode::theorem:
            return {k, residual_report(power_mean_short(q, x, k), main_term_theorem(q, x, k), q, x, 2 * k)};
        case SweepMode::lemma7:
            return {k, residual_report(mixed_power_sum(q, x, k, k), main_term_mixed(q, x, k, k), q, x, 2 * k)};
        case SweepMode::lemma8:
            return {k, residual_report(alternating_mixed_power_sum(q, x, k, k), Real(0), q, x, 2 * k)};
        case SweepMode::bounds:
            break;
    }
    throw DomainError("evaluate_point: bounds mode has no asymptotic report");
}

BoundsRow evaluate_bounds(const Modulus& q, Proportion x) {
    q.require_odd_above_two();
    const SumContext ctx(q);
    BoundsRow row;
    row.q = q.value();
    row.x = x;
    for (auto [m, n] : sample_frequency_pairs(q.value(), kBoundSamplesPerModulus, 0, kSweepSeed)) {
        const auto kl = kloosterman(ctx, m, n);
        row.kloosterman_max_ratio = std::max(row.kloosterman_max_ratio, kl.magnitude() / kloosterman_bound(q, m, n));
        row.kloosterman_max_imag =
            std::max(row.kloosterman_max_imag, std::abs(kl.value.imag()) / static_cast<double>(q.phi()));
    }
    const double qd = static_cast<double>(q.value());
    const double unit_scale = qd * std::log(qd) * static_cast<double>(q.tau());
    for (std::int64_t n : {std::int64_t{1}, static_cast<std::int64_t>(q.value())}) {
        row.unit_sum_constant = std::max(row.unit_sum_constant, unit_sum_aggregate(ctx, x, n) / unit_scale);
    }
    const double tau = static_cast<double>(q.tau());
    const double hybrid_scale = tau * tau * std::sqrt(qd);
    for (auto [m, n] : sample_frequency_pairs(q.value(), kBoundSamplesPerModulus, 1, kSweepSeed + 1)) {
        row.hybrid_max_ratio = std::max(row.hybrid_max_ratio, hybrid_incomplete_sum(ctx, x, m, n).magnitude() / hybrid_scale);
    }
    return row;
}

namespace {

struct Point {
    std::uint64_t q;
    Proportion x;
    unsigned k;
};

std::vector<Point> sweep_points(const SweepConfig& config) {
    auto xs = config.x_values;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    auto ks = config.mode == SweepMode::bounds ? std::vector<unsigned>{0} : config.k_values;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::vector<Point> points;
    for (auto q : config.moduli()) {
        for (auto x : xs) {
            for (auto k : ks) points.push_back({q, x, k});
        }
    }
    return points;
}

nlohmann::ordered_json fit_json(const std::optional<ExponentFit>& fit) {
    nlohmann::ordered_json j;
    if (fit) {
        j["slope"] = fit->slope;
        j["intercept"] = fit->intercept;
        j["r_squared"] = fit->r_squared;
        j["zero_residuals_dropped"] = fit->dropped_zero;
    } else {
        j["slope"] = nullptr;
        j["intercept"] = nullptr;
        j["r_squared"] = nullptr;
        j["zero_residuals_dropped"] = nullptr;
    }
    return j;
}

void finish_asymptotic(const SweepConfig& config, SweepResult& result) {
    std::ostringstream csv;
    csv << kSweepCsvHeader << "\n";
    for (const auto& row : result.rows) {
        const auto& r = row.report;
        csv << r.q << "," << r.x.num() << "," << r.x.den() << "," << row.k << "," << r.exact_value.str() << ","
            << format_real(static_cast<double>(r.main_term)) << "," << format_real(static_cast<double>(r.residual))
            << "," << format_real(r.normalized_residual) << "\n";
    }
    result.csv = csv.str();

    std::map<std::pair<Proportion, unsigned>, GroupFit> groups;
    std::map<std::pair<Proportion, unsigned>, std::vector<FitSample>> samples;
    for (const auto& row : result.rows) {
        const auto key = std::make_pair(row.report.x, row.k);
        auto& g = groups[key];
        g.x = row.report.x;
        g.k = row.k;
        g.max_normalized_residual = max_abs(g.max_normalized_residual, row.report.normalized_residual);
        g.max_normalized_residual_d2 = max_abs(g.max_normalized_residual_d2, row.report.normalized_residual_d2);
        ++g.points;
        samples[key].push_back({static_cast<double>(row.report.q), row.report.relative_residual});
    }

    auto& summary = result.summary;
    summary["mode"] = std::string(mode_name(config.mode));
    summary["points"] = result.rows.size();
    double overall = 0, overall_d2 = 0;
    nlohmann::ordered_json group_list = nlohmann::ordered_json::array();
    for (auto& [key, g] : groups) {
        try {
            g.fit = fit_error_exponent(samples[key]);
        } catch (const InsufficientData&) {
            g.fit.reset();
        }
        overall = std::max(overall, g.max_normalized_residual);
        overall_d2 = std::max(overall_d2, g.max_normalized_residual_d2);
        nlohmann::ordered_json j;
        j["x_num"] = g.x.num();
        j["x_den"] = g.x.den();
        j["k"] = g.k;
        j["points"] = g.points;
        const auto fit = fit_json(g.fit);
        for (const auto& [name, value] : fit.items()) j[name] = value;
        j["max_normalized_residual"] = g.max_normalized_residual;
        j["max_normalized_residual_d2"] = g.max_normalized_residual_d2;
        group_list.push_back(j);
        result.fits.push_back(g);
    }
    const auto top = result.fits.size() == 1 ? fit_json(result.fits.front().fit) : fit_json(std::nullopt);
    summary["slope"] = top["slope"];
    summary["intercept"] = top["intercept"];
    summary["r_squared"] = top["r_squared"];
    summary["max_normalized_residual"] = overall;
    summary["max_normalized_residual_d2"] = overall_d2;
    summary["groups"] = group_list;
}

void finish_bounds(SweepResult& result) {
    std::ostringstream csv;
    csv << kBoundsCsvHeader << "\n";
    for (const auto& r : result.bounds_rows) {
        csv << r.q << "," << r.x.num() << "," << r.x.den() << "," << format_real(r.kloosterman_max_ratio) << ","
            << format_real(r.kloosterman_max_imag) << "," << format_real(r.unit_sum_constant) << ","
            << format_real(r.hybrid_max_ratio) << "\n";
    }
    result.csv = csv.str();

    auto& summary = result.summary;
    summary["mode"] = "bounds";
    summary["points"] = result.bounds_rows.size();
    double kl = 0, kl_imag = 0, unit = 0, hybrid = 0;
    std::map<Proportion, std::vector<FitSample>> hybrid_samples;
    for (const auto& r : result.bounds_rows) {
        kl = std::max(kl, r.kloosterman_max_ratio);
        kl_imag = std::max(kl_imag, r.kloosterman_max_imag);
        unit = std::max(unit, r.unit_sum_constant);
        hybrid = std::max(hybrid, r.hybrid_max_ratio);
        hybrid_samples[r.x].push_back({static_cast<double>(r.q), r.hybrid_max_ratio});
    }
    summary["max_kloosterman_ratio"] = kl;
    summary["max_kloosterman_imag"] = kl_imag;
    summary["max_unit_sum_constant"] = unit;
    summary["max_hybrid_ratio"] = hybrid;
    nlohmann::ordered_json trends = nlohmann::ordered_json::array();
    for (const auto& [x, s] : hybrid_samples) {
        nlohmann::ordered_json j;
        j["x_num"] = x.num();
        j["x_den"] = x.den();
        try {
            j["hybrid_ratio_slope"] = fit_error_exponent(s).slope;
        } catch (const InsufficientData&) {
            j["hybrid_ratio_slope"] = nullptr;
        }
        trends.push_back(j);
    }
    summary["hybrid_trends"] = trends;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    const auto points = sweep_points(config);
    SweepResult result;
    if (config.mode == SweepMode::bounds) {
        result.bounds_rows = parallel_map<BoundsRow>(points.size(), config.workers, [&](std::size_t i) {
            return evaluate_bounds(Modulus(points[i].q), points[i].x);
        });
        finish_bounds(result);
    } else {
        result.rows = parallel_map<SweepRow>(points.size(), config.workers, [&](std::size_t i) {
            return evaluate_point(config.mode, Modulus(points[i].q), points[i].x, points[i].k);
        });
        finish_asymptotic(config, result);
    }
    return result;
}

}  // namespace lehmer
