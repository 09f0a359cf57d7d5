#include "lehmer/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lehmer/arith.hpp"
#include "lehmer/characters.hpp"
#include "lehmer/errors.hpp"
#include "lehmer/expsums.hpp"
#include "lehmer/power_sums.hpp"
#include "lehmer/sweep.hpp"

namespace lehmer {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kFullCharTableCap = 1000;

void print(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

Json sum_json(Json inputs, const SumValue& v, double bound) {
    Json j;
    j["inputs"] = std::move(inputs);
    j["value_re"] = v.value.real();
    j["value_im"] = v.value.imag();
    j["bound"] = bound;
    if (bound > 0) {
        j["bound_ratio"] = v.magnitude() / bound;
    } else {
        j["bound_ratio"] = nullptr;
    }
    return j;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << body;
    if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream body;
    body << file.rdbuf();
    return body.str();
}

}  // namespace

int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Lehmer power means and the exponential sums behind them", "lehmer"};
    app.require_subcommand(1);

    std::uint64_t q = 0, n_unsigned = 0;
    std::int64_t n = 0, m = 0;
    unsigned r = 0, s = 0, k = 1;
    std::uint64_t index = 0;
    std::string x_text = "1/1", variant = "short", json_path, csv_path, config_path;
    std::vector<std::uint64_t> q_values;
    bool alternating = false;
    unsigned workers = 0;

    auto* factor = app.add_subcommand("factor", "Factor n and report phi, mu, d");
    factor->add_option("--n", n_unsigned, "Integer in [1, 10^12]")->required();

    auto* char_table = app.add_subcommand("char-table", "CSV table of Dirichlet character values mod q");
    char_table->add_option("--q", q, "Odd modulus")->required();
    auto* index_opt = char_table->add_option("--index", index, "Single character by mixed-radix index");

    auto* ksum = app.add_subcommand("ksum", "K(n, r), or H(n, r) with --alternating");
    ksum->add_option("--q", q, "Modulus")->required();
    ksum->add_option("--n", n, "Frequency")->required();
    ksum->add_option("--r", r, "Power, at most 8")->required();
    ksum->add_flag("--alternating", alternating, "Weight terms by (-1)^a");

    auto* gauss = app.add_subcommand("gauss", "Gauss sum G(n, chi)");
    gauss->add_option("--q", q, "Odd modulus")->required();
    gauss->add_option("--index", index, "Character index (0 is principal)")->required();
    gauss->add_option("--n", n, "Frequency")->required();

    auto* kloost = app.add_subcommand("kloosterman", "Complete Kloosterman sum S(m, n; q)");
    kloost->add_option("--q", q, "Modulus")->required();
    kloost->add_option("--m", m, "First frequency")->required();
    kloost->add_option("--n", n, "Second frequency")->required();

    auto* count = app.add_subcommand("lehmer-count", "r(q), the number of D. H. Lehmer numbers mod q");
    count->add_option("--q", q, "Odd modulus > 2")->required();

    auto* power = app.add_subcommand("power-mean", "Exact M(x, q, k)");
    power->add_option("--q", q, "Odd modulus > 2")->required();
    power->add_option("--x", x_text, "Interval fraction num/den in (0, 1]");
    power->add_option("--k", k, "Half power, 1..8")->required();
    power->add_option("--variant", variant, "short | full | unrestricted")
        ->check(CLI::IsMember({"short", "full", "unrestricted"}));

    auto* mixed = app.add_subcommand("mixed-sum", "Exact sum of a^r b^s over inverse pairs");
    mixed->add_option("--q", q, "Odd modulus > 2")->required();
    mixed->add_option("--x", x_text, "Interval fraction num/den in (0, 1]");
    mixed->add_option("--r", r, "Power of a")->required();
    mixed->add_option("--s", s, "Power of b")->required();
    mixed->add_flag("--alternating", alternating, "Weight terms by (-1)^(a+b)");

    auto* verify = app.add_subcommand("verify-theorem", "Compare M(x, q, k) with its main term");
    verify->add_option("--q", q_values, "One or more odd moduli")->required();
    verify->add_option("--x", x_text, "Interval fraction num/den in (0, 1]");
    verify->add_option("--k", k, "Half power, 1..8");
    verify->add_option("--json", json_path, "Write the JSON summary here");

    auto* sweep = app.add_subcommand("sweep", "Run a configured sweep");
    sweep->add_option("--config", config_path, "Key-value config file")->required();
    sweep->add_option("--workers", workers, "Override worker count");
    sweep->add_option("--csv", csv_path, "Override CSV output path");
    sweep->add_option("--json", json_path, "Override JSON summary path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsageError;
    }

    try {
        if (factor->parsed()) {
            const Modulus mod(n_unsigned);
            Json j;
            j["n"] = n_unsigned;
            Json factors = Json::array();
            for (auto [p, e] : mod.factors()) factors.push_back({p, e});
            j["factors"] = factors;
            j["phi"] = mod.phi();
            j["mu"] = mod.mu();
            j["tau"] = mod.tau();
            print(out, j);
        } else if (char_table->parsed()) {
            const CharacterGroup group{Modulus(q)};
            std::vector<DirichletCharacter> chars;
            if (*index_opt) {
                chars.push_back(group.character(index));
            } else {
                if (q > kFullCharTableCap) throw ResourceError("full character table limited to q <= 1000; pass --index");
                chars = group.characters();
            }
            out << "index,exponents,a,re,im\n";
            for (const auto& chi : chars) {
                std::string exps;
                for (auto e : chi.exponents()) exps += (exps.empty() ? "" : " ") + std::to_string(e);
                const auto values = chi.values();
                for (std::uint64_t a = 0; a < q; ++a) {
                    out << chi.index() << "," << exps << "," << a << "," << format_real(values[a].real()) << ","
                        << format_real(values[a].imag()) << "\n";
                }
            }
        } else if (ksum->parsed()) {
            const Modulus mod(q);
            const auto v = alternating ? h_sum(mod, n, r) : k_sum(mod, n, r);
            const double bound = alternating ? h_sum_bound(mod, n, r) : k_sum_bound(mod, n, r);
            print(out, sum_json({{"q", q}, {"n", n}, {"r", r}, {"alternating", alternating}}, v, bound));
        } else if (gauss->parsed()) {
            const Modulus mod(q);
            const CharacterGroup group(mod);
            const auto chi = group.character(index);
            const auto v = gauss_sum(group, chi, n);
            Json inputs{{"q", q}, {"index", index}, {"n", n}};
            inputs["exponents"] = std::vector<std::uint64_t>(chi.exponents().begin(), chi.exponents().end());
            inputs["principal"] = is_principal(chi);
            // Triangle-inequality bound; the principal character also reports its closed form.
            auto j = sum_json(inputs, v, static_cast<double>(mod.phi()));
            if (is_principal(chi)) j["principal_identity"] = principal_gauss_value(mod, n);
            print(out, j);
        } else if (kloost->parsed()) {
            const Modulus mod(q);
            print(out, sum_json({{"q", q}, {"m", m}, {"n", n}}, kloosterman(mod, m, n), kloosterman_bound(mod, m, n)));
        } else if (count->parsed()) {
            const auto value = lehmer_count(Modulus(q));
            Json j;
            j["q"] = q;
            j["value_decimal_string"] = std::to_string(value);
            j["pair_count"] = value;
            print(out, j);
        } else if (power->parsed()) {
            const Modulus mod(q);
            const Proportion x = variant == "short" ? Proportion::parse(x_text) : Proportion::whole();
            const ExactSum sum = variant == "short"  ? power_mean_short(mod, x, k)
                                 : variant == "full" ? power_mean_full(mod, k)
                                                     : unrestricted_power_sum(mod, k);
            Json j;
            j["q"] = q;
            j["x_num"] = x.num();
            j["x_den"] = x.den();
            j["k"] = k;
            j["variant"] = variant;
            j["value_decimal_string"] = sum.value.str();
            j["pair_count"] = sum.pair_count;
            print(out, j);
        } else if (mixed->parsed()) {
            const Modulus mod(q);
            const Proportion x = Proportion::parse(x_text);
            const ExactSum sum =
                alternating ? alternating_mixed_power_sum(mod, x, r, s) : mixed_power_sum(mod, x, r, s);
            Json j;
            j["q"] = q;
            j["x_num"] = x.num();
            j["x_den"] = x.den();
            j["r"] = r;
            j["s"] = s;
            j["alternating"] = alternating;
            j["value_decimal_string"] = sum.value.str();
            j["pair_count"] = sum.pair_count;
            print(out, j);
        } else if (verify->parsed()) {
            SweepConfig config;
            config.mode = SweepMode::theorem;
            config.q_list = q_values;
            config.odd_only = false;
            config.x_values = {Proportion::parse(x_text)};
            config.k_values = {k};
            const auto result = run_sweep(config);
            out << result.csv;
            if (!json_path.empty()) write_file(json_path, result.summary.dump(2) + "\n");
        } else if (sweep->parsed()) {
            SweepConfig config = SweepConfig::parse(read_file(config_path));
            if (workers > 0) config.workers = workers;
            if (!csv_path.empty()) config.csv_path = csv_path;
            if (!json_path.empty()) config.json_path = json_path;
            const auto result = run_sweep(config);
            if (config.csv_path.empty()) {
                out << result.csv;
            } else {
                write_file(config.csv_path, result.csv);
            }
            if (!config.json_path.empty()) {
                write_file(config.json_path, result.summary.dump(2) + "\n");
            } else if (!config.csv_path.empty()) {
                out << result.summary.dump(2) << "\n";
            }
        }
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
    return kExitOk;
}

}  // namespace lehmer
