#include "fiso/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fiso {

namespace {

// value -> (prime, exponent); throws unless value is a prime power
std::pair<std::uint64_t, std::uint32_t> factor_prime_power(std::uint64_t v) {
    if (v < 2) throw InvalidGroup("modulus must be >= 2");
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return {v, 1};
    std::uint32_t m = 0;
    std::uint64_t w = v;
    while (w % p == 0) {
        w /= p;
        ++m;
    }
    if (w != 1) throw InvalidGroup("modulus " + std::to_string(v) + " is not a prime power");
    return {p, m};
}

}  // namespace

GroupSpec group_from_moduli(const std::vector<std::uint64_t>& moduli) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> pm;
    pm.reserve(moduli.size());
    for (std::uint64_t v : moduli) pm.push_back(factor_prime_power(v));
    return GroupSpec::build(pm);
}

GroupSpec group_from_string(const std::string& spec) {
    std::vector<std::uint64_t> moduli;
    std::string token;
    for (char c : spec + "x") {
        if (c == 'x' || c == 'X' || c == ',' || c == '*') {
            if (!token.empty()) {
                std::size_t pos = 0;
                const unsigned long long v = std::stoull(token, &pos);
                if (pos != token.size()) throw InvalidGroup("bad group spec token: " + token);
                moduli.push_back(v);
                token.clear();
            }
        } else if (c == 'Z' || c == 'z' || c == '_' || c == ' ') {
            continue;
        } else {
            token.push_back(c);
        }
    }
    if (moduli.empty()) throw InvalidGroup("empty group spec");
    return group_from_moduli(moduli);
}

nlohmann::json function_to_json(const BooleanFunction& f) {
    nlohmann::json doc;
    doc["format"] = "function";
    doc["enumeration"] = "mixed-radix-msf";
    std::vector<std::uint64_t> moduli;
    for (const auto& m : f.group.moduli()) moduli.push_back(m.value);
    doc["moduli"] = moduli;
    doc["representation"] = "dense";
    doc["boolean"] = true;
    std::vector<int> vals(f.values.begin(), f.values.end());
    doc["values"] = vals;
    return doc;
}

nlohmann::json spectral_to_json(const FourierTable& t, double tol) {
    nlohmann::json doc;
    doc["format"] = "function";
    doc["enumeration"] = "mixed-radix-msf";
    std::vector<std::uint64_t> moduli;
    for (const auto& m : t.group.moduli()) moduli.push_back(m.value);
    doc["moduli"] = moduli;
    doc["representation"] = "sparse";
    doc["boolean"] = true;
    nlohmann::json support = nlohmann::json::array();
    for (std::uint64_t i = 0; i < t.coeffs.size(); ++i) {
        if (std::abs(t.coeffs[i]) <= tol) continue;
        support.push_back({{"index", i}, {"coeff", {t.coeffs[i].real(), t.coeffs[i].imag()}}});
    }
    doc["support"] = std::move(support);
    return doc;
}

BooleanFunction function_from_json(const nlohmann::json& doc, double boolean_tol) {
    if (!doc.is_object() || doc.value("format", "") != "function")
        throw ConfigError("not a function document");
    if (doc.value("enumeration", "") != "mixed-radix-msf")
        throw ConfigError("unsupported enumeration order");
    const GroupSpec g = group_from_moduli(doc.at("moduli").get<std::vector<std::uint64_t>>());
    const std::string rep = doc.at("representation").get<std::string>();
    if (rep == "dense") {
        const auto raw = doc.at("values").get<std::vector<int>>();
        if (raw.size() != g.order()) throw ConfigError("dense value count must equal |G|");
        BooleanFunction f{g, std::vector<std::int8_t>(raw.size())};
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != 1 && raw[i] != -1) throw ConfigError("dense values must be +/-1");
            f.values[i] = static_cast<std::int8_t>(raw[i]);
        }
        return f;
    }
    if (rep == "sparse") {
        FourierTable t{g, std::vector<std::complex<double>>(g.order(), 0.0)};
        std::vector<bool> seen(g.order(), false);
        for (const auto& entry : doc.at("support")) {
            const std::uint64_t idx = entry.at("index").get<std::uint64_t>();
            if (idx >= g.order()) throw ConfigError("support index out of range");
            if (seen[idx]) throw ConfigError("duplicate support index");
            seen[idx] = true;
            const auto c = entry.at("coeff");
            t.coeffs[idx] = {c.at(0).get<double>(), c.at(1).get<double>()};
        }
        const auto vals = idft(t);
        BooleanFunction f{g, std::vector<std::int8_t>(vals.size())};
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const double re = vals[i].real();
            const double target = re >= 0 ? 1.0 : -1.0;
            if (std::abs(re - target) > boolean_tol || std::abs(vals[i].imag()) > boolean_tol)
                throw ConfigError("sparse payload does not invert to a +/-1 function");
            f.values[i] = static_cast<std::int8_t>(target);
        }
        return f;
    }
    throw ConfigError("unknown representation: " + rep);
}

BooleanFunction load_function(const std::string& path) { return function_from_json(load_json(path)); }

void save_json(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << doc.dump(2) << "\n";
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

nlohmann::json ledger_to_json(const QueryLedger& ledger) {
    return {
        {"wt2_samples_per_bucket", ledger.wt2_samples_per_bucket},
        {"wt2_queries", ledger.wt2_queries},
        {"wt4_samples_per_bucket", ledger.wt4_samples_per_bucket},
        {"wt4_queries", ledger.wt4_queries},
        {"proj_samples_per_point", ledger.proj_samples_per_point},
        {"proj_queries", ledger.proj_queries},
        {"coeff_samples_per_bucket", ledger.coeff_samples_per_bucket},
        {"coeff_queries", ledger.coeff_queries},
        {"label_queries", ledger.label_queries},
        {"total", ledger.total()},
    };
}

}  // namespace fiso
