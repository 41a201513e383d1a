#include "l1reg/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "l1reg/errors.hpp"

namespace l1reg {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto pos = s.find(sep);
        parts.push_back(trim(s.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return parts;
}

double to_real(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || std::isnan(v))
        throw ConfigError("'" + std::string(key) + "' expects a real number, got '" + std::string(text) + "'");
    return v;
}

template <class Int>
Int to_integer(std::string_view key, std::string_view text) {
    Int v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("'" + std::string(key) + "' expects a nonnegative integer, got '" + std::string(text) + "'");
    return v;
}

class KeyValues {
public:
    explicit KeyValues(std::string_view text) {
        std::size_t line_no = 0;
        for (auto line : split(text, '\n')) {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
            const std::string key(trim(line.substr(0, eq)));
            if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
            if (!values_.emplace(key, std::string(trim(line.substr(eq + 1)))).second)
                throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string_view get(const std::string& key) {
        const auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("missing required key '" + key + "'");
        used_.insert(key);
        return it->second;
    }

    double real(const std::string& key) { return to_real(key, get(key)); }
    double real_or(const std::string& key, double fallback) { return has(key) ? real(key) : fallback; }

    template <class Int>
    Int integer(const std::string& key) {
        return to_integer<Int>(key, get(key));
    }
    template <class Int>
    Int integer_or(const std::string& key, Int fallback) {
        return has(key) ? integer<Int>(key) : fallback;
    }

    void reject_unused() const {
        for (const auto& [key, value] : values_)
            if (!used_.count(key)) throw ConfigError("unknown or inapplicable key '" + key + "'");
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

Sparse parse_support(std::string_view text, char pair_sep) {
    Sparse s;
    if (trim(text).empty()) return s;
    for (auto item : split(text, ',')) {
        const auto sep = item.find(pair_sep);
        if (sep == std::string_view::npos)
            throw ConfigError("sparse support entry '" + std::string(item) + "' is not index" + pair_sep + "value");
        const auto k = to_integer<std::size_t>("support index", trim(item.substr(0, sep)));
        if (k < 1) throw ConfigError("sparse support indices are 1-based");
        if (!s.support.emplace(k, to_real("support value", trim(item.substr(sep + 1)))).second)
            throw ConfigError("sparse support index repeated");
    }
    return s;
}

template <class Fn>
auto rethrow_as_config(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

} // namespace

OperatorSpec parse_operator(std::string_view descriptor, std::size_t n) {
    return rethrow_as_config([&] {
        const auto colon = descriptor.find(':');
        const auto family = trim(descriptor.substr(0, colon));
        const auto arg = colon == std::string_view::npos ? std::string_view{} : trim(descriptor.substr(colon + 1));
        if (family == "cesaro") {
            if (!arg.empty()) throw ConfigError("cesaro takes no parameter");
            return OperatorSpec::cesaro(n);
        }
        if (family == "diagonal") return OperatorSpec::diagonal_power(to_real("zeta", arg.empty() ? "1" : arg), n);
        if (family == "embedding") return OperatorSpec::embedding(to_real("q", arg.empty() ? "2" : arg), n);
        throw ConfigError("unknown operator '" + std::string(descriptor) + "' (cesaro, diagonal:<zeta>, embedding:<q>)");
    });
}

SolutionModel parse_solution(std::string_view descriptor) {
    return rethrow_as_config([&]() -> SolutionModel {
        const auto colon = descriptor.find(':');
        const auto family = trim(descriptor.substr(0, colon));
        const auto args = colon == std::string_view::npos ? std::string_view{} : descriptor.substr(colon + 1);
        if (family == "sparse") return parse_support(args, '=');

        std::map<std::string, double> params;
        if (!trim(args).empty()) {
            for (auto item : split(args, ',')) {
                const auto eq = item.find('=');
                if (eq == std::string_view::npos) throw ConfigError("expected name=value in '" + std::string(item) + "'");
                const std::string name(trim(item.substr(0, eq)));
                params[name] = to_real(name, trim(item.substr(eq + 1)));
            }
        }
        auto take = [&](const std::string& name) {
            const auto it = params.find(name);
            if (it == params.end()) throw ConfigError("solution '" + std::string(family) + "' needs " + name);
            const double v = it->second;
            params.erase(it);
            return v;
        };
        SolutionModel model;
        if (family == "holder") {
            model = HolderTail{take("mu"), take("C")};
        } else if (family == "exponential") {
            model = ExponentialTail{take("gamma"), take("C")};
        } else {
            throw ConfigError("unknown solution '" + std::string(descriptor) + "' (holder, exponential, sparse)");
        }
        if (!params.empty()) throw ConfigError("unexpected solution parameter '" + params.begin()->first + "'");
        validate(model);
        return model;
    });
}

Scenario parse_scenario(std::string_view text) {
    KeyValues kv(text);
    const auto version = kv.integer<int>("schema_version");
    if (version != kScenarioSchemaVersion)
        throw ConfigError("unsupported schema_version " + std::to_string(version) + " (expected " +
                          std::to_string(kScenarioSchemaVersion) + ")");

    const std::string name = kv.has("name") ? std::string(kv.get("name")) : std::string();
    const auto n = kv.integer<std::size_t>("N");
    const std::string family(kv.get("operator"));

    double q = 2.0;
    OperatorSpec op = rethrow_as_config([&] {
        if (family == "cesaro") return OperatorSpec::cesaro(n);
        if (family == "diagonal") return OperatorSpec::diagonal_power(kv.real("zeta"), n);
        if (family == "embedding") {
            q = kv.real("q");
            return OperatorSpec::embedding(q, n);
        }
        throw ConfigError("unknown operator '" + family + "'");
    });
    if (family != "embedding" && kv.has("q")) {
        q = kv.real("q");
        if (q != 2.0) throw ConfigError("operator '" + family + "' maps into l^2; q must be 2");
    }
    const double p = kv.real_or("p", family == "embedding" && std::isfinite(q) && q > 1.0 ? q : 2.0);

    const std::string solution(kv.get("solution"));
    SolutionModel model = rethrow_as_config([&]() -> SolutionModel {
        if (solution == "holder") return HolderTail{kv.real("mu"), kv.real("C")};
        if (solution == "exponential") return ExponentialTail{kv.real("gamma"), kv.real("C")};
        if (solution == "sparse") return parse_support(kv.has("support") ? kv.get("support") : "", ':');
        throw ConfigError("unknown solution '" + solution + "'");
    });

    DeltaGrid grid;
    grid.delta0 = kv.real_or("delta0", grid.delta0);
    grid.ratio = kv.real_or("delta_ratio", grid.ratio);
    grid.count = kv.integer_or<std::size_t>("delta_count", grid.count);

    NoiseSpec noise;
    noise.seed = kv.integer_or<std::uint64_t>("noise_seed", 0);
    if (kv.has("noise_mode")) {
        const auto mode = kv.get("noise_mode");
        if (mode == "random_direction")
            noise.mode = NoiseMode::RandomDirection;
        else if (mode == "alternating")
            noise.mode = NoiseMode::Alternating;
        else
            throw ConfigError("noise_mode must be random_direction or alternating");
    }

    ParamRule rule = DiscrepancyRule{};
    const std::string rule_name = kv.has("param_rule") ? std::string(kv.get("param_rule")) : "discrepancy";
    if (rule_name == "discrepancy") {
        DiscrepancyRule d;
        d.tau1 = kv.real_or("tau1", d.tau1);
        d.tau2 = kv.real_or("tau2", d.tau2);
        rule = d;
    } else if (rule_name == "a_priori") {
        rule = APrioriRule{kv.real_or("apriori_c", 1.0)};
    } else {
        throw ConfigError("param_rule must be discrepancy or a_priori");
    }

    Scenario sc{name, std::move(op), std::move(model), p, q, grid, noise, rule, kv.real_or("c_budget", 4.0)};
    kv.reject_unused();
    validate(sc);
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    auto sc = parse_scenario(buffer.str());
    if (sc.name.empty()) sc.name = path.stem().string();
    return sc;
}

std::string format_real(double v) { return fmt::format("{:.17g}", v); }

void write_records_csv(std::ostream& os, const std::vector<RateRunRecord>& records) {
    os << kRecordsCsvHeader << '\n';
    for (const auto& r : records) {
        os << format_real(r.delta) << ',' << format_real(r.alpha) << ',' << format_real(r.error_l1) << ','
           << format_real(r.residual) << ',' << r.iterations << ',' << format_real(r.phi2_at_delta) << ','
           << to_string(r.status) << '\n';
    }
}

} // namespace l1reg
