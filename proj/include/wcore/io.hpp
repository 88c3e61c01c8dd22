#pragma once

// JSON encodings.
//
//   scalar        Q: "n" or "n/d" (JSON integers accepted on input)
//                 Qi: ["re", "im"] with rational strings
//                 Fp: "k" (integer string; modulus carried by the matrix)
//   matrix        {"backend": "Q"|"Qi"|"Fp", "p": <Fp only>, "dim": n, "entries": [[...], ...]}
//   certificate   {"kind", "value", "witnesses": {name: matrix}, "n": int|null, "verified": bool}
//   decomposition {"flavor": "p|s|q|t", "side": "core|dual", "n", "element", "unit"}

#include <algorithm>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "wcore/characterize.hpp"
#include "wcore/ginverse.hpp"
#include "wcore/oracle.hpp"

namespace wcore::io {

using json = nlohmann::json;

class FormatError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

enum class Backend { Q, Qi, Fp };

struct BackendTag {
  Backend backend;
  int modulus = 0;  // Fp only
};

inline BackendTag backend_of(const json& m) {
  if (!m.is_object() || !m.contains("backend") || !m["backend"].is_string()) {
    throw FormatError("matrix object needs a string \"backend\" field");
  }
  const auto tag = m["backend"].get<std::string>();
  if (tag == "Q") return {Backend::Q};
  if (tag == "Qi") return {Backend::Qi};
  if (tag == "Fp") {
    if (!m.contains("p") || !m["p"].is_number_integer()) throw FormatError("Fp matrix needs an integer \"p\" field");
    const int p = m["p"].get<int>();
    if (!is_supported_prime(p)) throw FormatError("unsupported prime p = " + std::to_string(p));
    return {Backend::Fp, p};
  }
  throw FormatError("unknown backend '" + tag + "'");
}

// --- scalars ---------------------------------------------------------------

inline json to_json(const Rational& x) { return x.str(); }
inline json to_json(const GaussianRational& z) { return json::array({z.re().str(), z.im().str()}); }
inline json to_json(const PrimeField& x) { return x.str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw FormatError("rational entry must be a string \"n/d\" or an integer");
}

inline Rational scalar_from_json(const json& j, const RationalDomain&) { return rational_from_json(j); }

inline GaussianRational scalar_from_json(const json& j, const GaussianDomain&) {
  if (!j.is_array() || j.size() != 2) throw FormatError("Gaussian rational entry must be [re, im]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

inline PrimeField scalar_from_json(const json& j, const PrimeDomain& d) {
  long long v = 0;
  if (j.is_number_integer()) {
    v = j.get<long long>();
  } else if (j.is_string()) {
    const Rational r = Rational::parse(j.get<std::string>());
    if (r.denominator() != 1) throw FormatError("prime-field entry must be an integer");
    v = static_cast<long long>(r.numerator() % d.modulus);
  } else {
    throw FormatError("prime-field entry must be an integer string");
  }
  return d.from_int(v);
}

// --- matrices --------------------------------------------------------------

template <StarScalar S>
json to_json(const Mat<S>& m) {
  json out;
  out["backend"] = std::string(S::domain_type::tag);
  if constexpr (std::is_same_v<S, PrimeField>) out["p"] = m.domain().modulus;
  out["dim"] = m.dim();
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  out["entries"] = std::move(rows);
  return out;
}

template <StarScalar S>
typename S::domain_type domain_from_json(const json& j) {
  const auto tag = backend_of(j);
  if constexpr (std::is_same_v<S, Rational>) {
    if (tag.backend != Backend::Q) throw BackendMismatch("expected backend Q");
    return {};
  } else if constexpr (std::is_same_v<S, GaussianRational>) {
    if (tag.backend != Backend::Qi) throw BackendMismatch("expected backend Qi");
    return {};
  } else {
    if (tag.backend != Backend::Fp) throw BackendMismatch("expected backend Fp");
    return PrimeDomain(tag.modulus);
  }
}

template <StarScalar S>
Mat<S> matrix_from_json(const json& j) {
  const auto domain = domain_from_json<S>(j);
  if (!j.contains("entries") || !j["entries"].is_array()) throw FormatError("matrix needs an \"entries\" array");
  const auto& rows = j["entries"];
  const std::size_t n = rows.size();
  if (n == 0) throw FormatError("matrix must have at least one row");
  if (j.contains("dim") && (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() != n)) {
    throw FormatError("\"dim\" does not match the number of rows");
  }
  Mat<S> m(n, domain);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw FormatError("matrix must be square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = scalar_from_json(rows[i][k], domain);
  }
  return m;
}

// Weights are validated Hermitian and invertible.
template <StarScalar S>
Weight<S> weight_from_json(const json& j) {
  return Weight<S>(matrix_from_json<S>(j));
}

// --- certificates ----------------------------------------------------------

inline json to_json(const NotInvertible& why) {
  return {{"invertible", false}, {"kind", std::string(to_string(why.kind))}, {"reason", why.reason}};
}

template <StarScalar S>
json to_json(const InverseCertificate<S>& c, bool verified = true) {
  json w = json::object();
  for (const auto& [name, m] : c.witnesses) w[name] = to_json(m);
  json out{{"kind", std::string(to_string(c.kind))}, {"value", to_json(c.value)}, {"witnesses", std::move(w)},
           {"verified", verified}};
  out["n"] = c.n ? json(*c.n) : json(nullptr);
  return out;
}

template <StarScalar S>
InverseCertificate<S> certificate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string() || !j.contains("value")) {
    throw FormatError("certificate needs \"kind\" and \"value\"");
  }
  auto kind = parse_kind(j["kind"].get<std::string>());
  if (!kind) throw FormatError("unknown kind '" + j["kind"].get<std::string>() + "'");
  InverseCertificate<S> c{*kind, matrix_from_json<S>(j["value"]), {}, std::nullopt};
  if (j.contains("witnesses")) {
    if (!j["witnesses"].is_object()) throw FormatError("\"witnesses\" must be an object");
    for (const auto& [name, m] : j["witnesses"].items()) c.witnesses.emplace(name, matrix_from_json<S>(m));
  }
  if (j.contains("n") && !j["n"].is_null()) {
    if (!j["n"].is_number_integer()) throw FormatError("\"n\" must be an integer or null");
    c.n = j["n"].get<int>();
  }
  return c;
}

template <StarScalar S>
json to_json(const Decomposition<S>& d) {
  return {{"flavor", std::string(to_string(d.flavor))},
          {"side", std::string(to_string(d.side))},
          {"n", d.n},
          {"element", to_json(d.element)},
          {"unit", to_json(d.unit)}};
}

inline bool is_decomposition(const json& j) { return j.is_object() && j.contains("flavor"); }

template <StarScalar S>
Decomposition<S> decomposition_from_json(const json& j) {
  for (const char* key : {"flavor", "side", "n", "element", "unit"}) {
    if (!j.contains(key)) throw FormatError(std::string("decomposition needs \"") + key + "\"");
  }
  auto flavor = j["flavor"].is_string() ? parse_flavor(j["flavor"].get<std::string>()) : std::nullopt;
  auto side = j["side"].is_string() ? parse_side(j["side"].get<std::string>()) : std::nullopt;
  if (!flavor) throw FormatError("\"flavor\" must be one of p, s, q, t");
  if (!side) throw FormatError("\"side\" must be core or dual");
  if (!j["n"].is_number_integer()) throw FormatError("\"n\" must be an integer");
  return {*flavor, *side, j["n"].get<int>(), matrix_from_json<S>(j["element"]), matrix_from_json<S>(j["unit"])};
}

// --- reports ---------------------------------------------------------------

inline json to_json(const VerifyReport& r) {
  json eqs = json::array();
  for (const auto& e : r.equations) eqs.push_back({{"label", e.label}, {"holds", e.holds}});
  return {{"ok", r.ok()}, {"equations", std::move(eqs)}, {"failed", r.failed()}};
}

template <StarScalar S>
json to_json(const EpVerdict<S>& v) {
  auto opt = [](const std::optional<Mat<S>>& m) { return m ? to_json(*m) : json(nullptr); };
  json out{{"weighted_ep", v.weighted_ep},
           {"e_core", opt(v.e_core)},
           {"f_dual_core", opt(v.f_dual_core)},
           {"p", opt(v.p)}};
  if (!v.weighted_ep) out["reason"] = v.reason;
  return out;
}

// Indented output with arrays of scalars (and of such arrays, i.e. matrix
// rows) kept on one line.
inline void dump_to(std::string& out, const json& j, int indent) {
  auto flat = [](const json& v) {
    if (!v.is_array()) return !v.is_object();
    for (const auto& x : v) {
      if (x.is_object() || (x.is_array() && !std::all_of(x.begin(), x.end(), [](const json& y) { return y.is_primitive(); }))) {
        return false;
      }
    }
    return true;
  };
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const bool small_record = j.is_object() && j.size() <= 3 &&
                            std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
  if (small_record) {
    out += "{";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      out += (first ? "" : ", ") + json(key).dump() + ": " + value.dump();
      first = false;
    }
    out += "}";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + json(key).dump() + ": ";
      dump_to(out, value, indent + 2);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "}";
  } else if (j.is_array() && !flat(j)) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k) out += ",\n";
      out += pad;
      dump_to(out, j[k], indent + 2);
    }
    out += "\n" + std::string(static_cast<std::size_t>(indent), ' ') + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t k = 0; k < j.size(); ++k) out += (k ? ", " : "") + j[k].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

inline std::string dump(const json& j) {
  std::string out;
  dump_to(out, j, 0);
  return out + "\n";
}

inline json to_json(const OracleReport& r) {
  json space{{"p", r.space.modulus},
             {"dim", r.space.dim},
             {"count", r.space.count},
             {"mode", r.sampled ? "sampled" : "exhaustive"},
             {"n", r.n},
             {"weights", r.sampled ? json(nullptr) : json(r.weight_count)},
             {"weight_pairs", r.sampled ? "random" : std::string(to_string(r.pairs))}};
  if (r.sampled) {
    space["sample"] = r.sample;
    space["seed"] = r.seed;
  }
  json mismatches = json::array();
  for (const auto& m : r.result.mismatches) {
    json item{{"check", m.check}, {"detail", m.detail}, {"a", to_json(m.a)}};
    item["e"] = m.e ? to_json(*m.e) : json(nullptr);
    item["f"] = m.f ? to_json(*m.f) : json(nullptr);
    mismatches.push_back(std::move(item));
  }
  return {{"space", std::move(space)},
          {"checked", r.result.instances},
          {"comparisons", r.result.comparisons},
          {"mismatches", std::move(mismatches)}};
}

}  // namespace wcore::io
