#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "fiso/fourier.hpp"
#include "fiso/sieve.hpp"

namespace fiso {

// "4x2x3" or "4,2,3" -> moduli values; each must be a prime power.
GroupSpec group_from_string(const std::string& spec);
GroupSpec group_from_moduli(const std::vector<std::uint64_t>& moduli);

// Self-describing function document. Dense payloads carry the +/-1 truth
// table in mixed-radix (most significant factor first) enumeration order;
// sparse payloads carry spectral support and are synthesized via the inverse
// transform, then checked for Booleanness.
nlohmann::json function_to_json(const BooleanFunction& f);
nlohmann::json spectral_to_json(const FourierTable& t, double tol = 1e-9);
BooleanFunction function_from_json(const nlohmann::json& doc, double boolean_tol = 1e-6);

BooleanFunction load_function(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& doc);
nlohmann::json load_json(const std::string& path);

nlohmann::json ledger_to_json(const QueryLedger& ledger);

}  // namespace fiso
