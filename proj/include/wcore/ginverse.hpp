#pragma once

// Generalized inverses in M_n(k) with weights:
//
//   group        axa = a, xax = x, ax = xa
//   {1,3e}       axa = a, (eax)* = eax
//   {1,4f}       axa = a, (fxa)* = fxa
//   weighted MP  axa = a, xax = x, (eax)* = eax, (fxa)* = fxa
//   e-core       axa = a, xax = x, (eax)* = eax, xa² = a, ax² = x
//   f-dual core  axa = a, xax = x, (fxa)* = fxa, a²x = a, x²a = x
//
// Each constructor solves the membership equations that characterize
// existence, assembles the inverse from the witnesses, and re-verifies the
// full defining-equation set before returning. A missing inverse is reported
// as a NotInvertible value naming the membership that failed.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "wcore/matrix.hpp"

namespace wcore {

enum class GInverseKind { Group, OneThreeE, OneFourF, WeightedMP, ECore, FDualCore };

inline constexpr GInverseKind kAllKinds[] = {GInverseKind::Group,      GInverseKind::OneThreeE,
                                             GInverseKind::OneFourF,   GInverseKind::WeightedMP,
                                             GInverseKind::ECore,      GInverseKind::FDualCore};

inline std::string_view to_string(GInverseKind k) {
  switch (k) {
    case GInverseKind::Group: return "group";
    case GInverseKind::OneThreeE: return "13e";
    case GInverseKind::OneFourF: return "14f";
    case GInverseKind::WeightedMP: return "wmp";
    case GInverseKind::ECore: return "ecore";
    case GInverseKind::FDualCore: return "fdualcore";
  }
  return "?";
}

inline std::optional<GInverseKind> parse_kind(std::string_view s) {
  for (auto k : kAllKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

inline bool needs_e(GInverseKind k) {
  return k == GInverseKind::OneThreeE || k == GInverseKind::WeightedMP || k == GInverseKind::ECore;
}
inline bool needs_f(GInverseKind k) {
  return k == GInverseKind::OneFourF || k == GInverseKind::WeightedMP || k == GInverseKind::FDualCore;
}

// A negative mathematical answer, not an error.
struct NotInvertible {
  GInverseKind kind;
  std::string reason;
};

template <class T>
class Outcome {
 public:
  Outcome(T value) : v_(std::move(value)) {}           // NOLINT(google-explicit-constructor)
  Outcome(NotInvertible why) : v_(std::move(why)) {}   // NOLINT(google-explicit-constructor)

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const {
    if (!ok()) throw std::logic_error("Outcome::value() on negative result: " + failure().reason);
    return std::get<T>(v_);
  }
  T& value() {
    if (!ok()) throw std::logic_error("Outcome::value() on negative result: " + failure().reason);
    return std::get<T>(v_);
  }
  const NotInvertible& failure() const { return std::get<NotInvertible>(v_); }

 private:
  std::variant<T, NotInvertible> v_;
};

template <StarScalar S>
struct InverseCertificate {
  GInverseKind kind;
  Mat<S> value;
  std::map<std::string, Mat<S>> witnesses;
  std::optional<int> n;  // set when a power representation was used
};

template <StarScalar S>
using InverseOutcome = Outcome<InverseCertificate<S>>;

// Optional weight argument; non-deduced so callers may pass nullptr.
template <StarScalar S>
using WeightPtr = std::type_identity_t<const Weight<S>*>;

// ---------------------------------------------------------------------------
// Defining equations

enum class Equation { E1, E2, E3e, E4f, E5, E6, E7, E8, E9 };

inline std::string_view label(Equation eq) {
  switch (eq) {
    case Equation::E1: return "(1)";
    case Equation::E2: return "(2)";
    case Equation::E3e: return "(3e)";
    case Equation::E4f: return "(4f)";
    case Equation::E5: return "(5)";
    case Equation::E6: return "(6)";
    case Equation::E7: return "(7)";
    case Equation::E8: return "(8)";
    case Equation::E9: return "(9)";
  }
  return "?";
}

inline std::vector<Equation> equations_for(GInverseKind k) {
  using E = Equation;
  switch (k) {
    case GInverseKind::Group: return {E::E1, E::E2, E::E5};
    case GInverseKind::OneThreeE: return {E::E1, E::E3e};
    case GInverseKind::OneFourF: return {E::E1, E::E4f};
    case GInverseKind::WeightedMP: return {E::E1, E::E2, E::E3e, E::E4f};
    case GInverseKind::ECore: return {E::E1, E::E2, E::E3e, E::E6, E::E7};
    case GInverseKind::FDualCore: return {E::E1, E::E2, E::E4f, E::E8, E::E9};
  }
  return {};
}

template <StarScalar S>
bool equation_holds(Equation eq, const Mat<S>& a, const Mat<S>& x, WeightPtr<S> e, WeightPtr<S> f) {
  switch (eq) {
    case Equation::E1: return a * x * a == a;
    case Equation::E2: return x * a * x == x;
    case Equation::E3e: return is_hermitian(e->value() * a * x);
    case Equation::E4f: return is_hermitian(f->value() * x * a);
    case Equation::E5: return a * x == x * a;
    case Equation::E6: return x * a * a == a;
    case Equation::E7: return a * x * x == x;
    case Equation::E8: return a * a * x == a;
    case Equation::E9: return x * x * a == x;
  }
  return false;
}

struct EquationResult {
  std::string label;
  bool holds;
};

struct VerifyReport {
  std::vector<EquationResult> equations;

  bool ok() const {
    for (const auto& r : equations) {
      if (!r.holds) return false;
    }
    return true;
  }
  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& r : equations) {
      if (!r.holds) out.push_back(r.label);
    }
    return out;
  }
};

namespace detail {

template <StarScalar S>
void require_weights(GInverseKind kind, const Mat<S>& a, WeightPtr<S> e, WeightPtr<S> f) {
  if (needs_e(kind)) {
    if (e == nullptr) throw ArgumentError(std::string("kind ") + std::string(to_string(kind)) + " requires weight e");
    a.check_compatible(e->value());
  }
  if (needs_f(kind)) {
    if (f == nullptr) throw ArgumentError(std::string("kind ") + std::string(to_string(kind)) + " requires weight f");
    a.check_compatible(f->value());
  }
}

}  // namespace detail

// Evaluates every defining equation of `kind` for the pair (a, x).
template <StarScalar S>
VerifyReport verify(GInverseKind kind, const Mat<S>& a, const Mat<S>& x, WeightPtr<S> e = nullptr,
                    WeightPtr<S> f = nullptr) {
  detail::require_weights(kind, a, e, f);
  a.check_compatible(x);
  VerifyReport report;
  for (auto eq : equations_for(kind)) {
    report.equations.push_back({std::string(label(eq)), equation_holds(eq, a, x, e, f)});
  }
  return report;
}

// Same equation set as verify(), stopping at the first failure.
template <StarScalar S>
bool satisfies(GInverseKind kind, const Mat<S>& a, const Mat<S>& x, WeightPtr<S> e = nullptr,
               WeightPtr<S> f = nullptr) {
  for (auto eq : equations_for(kind)) {
    if (!equation_holds(eq, a, x, e, f)) return false;
  }
  return true;
}

namespace detail {

template <StarScalar S>
void ensure_verified(GInverseKind kind, const Mat<S>& a, const Mat<S>& x, WeightPtr<S> e, WeightPtr<S> f) {
  auto report = verify(kind, a, x, e, f);
  if (!report.ok()) {
    std::string failed;
    for (const auto& l : report.failed()) failed += l + " ";
    throw VerificationFailure("constructed " + std::string(to_string(kind)) + " inverse fails " + failed);
  }
}

inline void check_power(int n) {
  if (n < 2 || n > 8) throw ArgumentError("power representation requires 2 <= n <= 8, got " + std::to_string(n));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Constructors

// a^# = y·a·x from a = a²x = ya².
template <StarScalar S>
InverseOutcome<S> group_inverse(const Mat<S>& a) {
  const Mat<S> a2 = a * a;
  auto xw = solve_right(a2, a);
  if (!xw.consistent) return NotInvertible{GInverseKind::Group, "a ∉ a²R"};
  auto yw = solve_left(a2, a);
  if (!yw.consistent) return NotInvertible{GInverseKind::Group, "a ∉ Ra²"};
  Mat<S> g = yw.solution * a * xw.solution;
  detail::ensure_verified<S>(GInverseKind::Group, a, g, nullptr,
                          nullptr);
  return InverseCertificate<S>{GInverseKind::Group, std::move(g),
                               {{"x", std::move(xw.solution)}, {"y", std::move(yw.solution)}}, std::nullopt};
}

// a = x·(a*ea) gives a^(1,3e) = x*·e.
template <StarScalar S>
InverseOutcome<S> inv_13e(const Mat<S>& a, const Weight<S>& e) {
  a.check_compatible(e.value());
  auto xw = solve_left(star(a) * e.value() * a, a);
  if (!xw.consistent) return NotInvertible{GInverseKind::OneThreeE, "a ∉ Ra*ea"};
  Mat<S> value = star(xw.solution) * e.value();
  detail::ensure_verified<S>(GInverseKind::OneThreeE, a, value, &e, nullptr);
  return InverseCertificate<S>{GInverseKind::OneThreeE, std::move(value), {{"x", std::move(xw.solution)}},
                               std::nullopt};
}

// a = (a·f⁻¹·a*)·y gives a^(1,4f) = f⁻¹·y*.
template <StarScalar S>
InverseOutcome<S> inv_14f(const Mat<S>& a, const Weight<S>& f) {
  a.check_compatible(f.value());
  auto yw = solve_right(a * f.inverse() * star(a), a);
  if (!yw.consistent) return NotInvertible{GInverseKind::OneFourF, "a ∉ af⁻¹a*R"};
  Mat<S> value = f.inverse() * star(yw.solution);
  detail::ensure_verified<S>(GInverseKind::OneFourF, a, value, nullptr, &f);
  return InverseCertificate<S>{GInverseKind::OneFourF, std::move(value), {{"y", std::move(yw.solution)}},
                               std::nullopt};
}

// a^{e,#} = a^#·a·a^(1,3e); exists iff a is group and {1,3e}-invertible.
template <StarScalar S>
InverseOutcome<S> e_core(const Mat<S>& a, const Weight<S>& e) {
  a.check_compatible(e.value());
  auto g = group_inverse(a);
  if (!g) return NotInvertible{GInverseKind::ECore, "group inverse does not exist (" + g.failure().reason + ")"};
  auto i13 = inv_13e(a, e);
  if (!i13) return NotInvertible{GInverseKind::ECore, "{1,3e}-inverse does not exist (" + i13.failure().reason + ")"};
  Mat<S> value = g.value().value * a * i13.value().value;
  detail::ensure_verified<S>(GInverseKind::ECore, a, value, &e, nullptr);
  return InverseCertificate<S>{GInverseKind::ECore,
                               std::move(value),
                               {{"group", g.value().value}, {"inner_13e", i13.value().value}},
                               std::nullopt};
}

// a_{f,#} = a^(1,4f)·a·a^#; exists iff a is group and {1,4f}-invertible.
template <StarScalar S>
InverseOutcome<S> f_dual_core(const Mat<S>& a, const Weight<S>& f) {
  a.check_compatible(f.value());
  auto g = group_inverse(a);
  if (!g) return NotInvertible{GInverseKind::FDualCore, "group inverse does not exist (" + g.failure().reason + ")"};
  auto i14 = inv_14f(a, f);
  if (!i14) {
    return NotInvertible{GInverseKind::FDualCore, "{1,4f}-inverse does not exist (" + i14.failure().reason + ")"};
  }
  Mat<S> value = i14.value().value * a * g.value().value;
  detail::ensure_verified<S>(GInverseKind::FDualCore, a, value, nullptr, &f);
  return InverseCertificate<S>{GInverseKind::FDualCore,
                               std::move(value),
                               {{"group", g.value().value}, {"inner_14f", i14.value().value}},
                               std::nullopt};
}

// From a = s·(a*)ⁿ·e·a and a ∈ Raⁿ: a^{e,#} = a^{n-1}·s*·e.
template <StarScalar S>
InverseOutcome<S> e_core_via_power(const Mat<S>& a, const Weight<S>& e, int n) {
  detail::check_power(n);
  a.check_compatible(e.value());
  auto sw = solve_left(power(star(a), n) * e.value() * a, a);
  if (!sw.consistent) return NotInvertible{GInverseKind::ECore, "a ∉ R(a*)ⁿea"};
  auto rw = solve_left(power(a, n), a);
  if (!rw.consistent) return NotInvertible{GInverseKind::ECore, "a ∉ Raⁿ"};
  Mat<S> value = power(a, n - 1) * star(sw.solution) * e.value();
  detail::ensure_verified<S>(GInverseKind::ECore, a, value, &e, nullptr);
  return InverseCertificate<S>{GInverseKind::ECore, std::move(value),
                               {{"s", std::move(sw.solution)}, {"r", std::move(rw.solution)}}, n};
}

// From a = a·f⁻¹·(a*)ⁿ·t and a ∈ aⁿR: a_{f,#} = f⁻¹·t*·a^{n-1}.
template <StarScalar S>
InverseOutcome<S> f_dual_core_via_power(const Mat<S>& a, const Weight<S>& f, int n) {
  detail::check_power(n);
  a.check_compatible(f.value());
  auto tw = solve_right(a * f.inverse() * power(star(a), n), a);
  if (!tw.consistent) return NotInvertible{GInverseKind::FDualCore, "a ∉ af⁻¹(a*)ⁿR"};
  auto rw = solve_right(power(a, n), a);
  if (!rw.consistent) return NotInvertible{GInverseKind::FDualCore, "a ∉ aⁿR"};
  Mat<S> value = f.inverse() * star(tw.solution) * power(a, n - 1);
  detail::ensure_verified<S>(GInverseKind::FDualCore, a, value, nullptr, &f);
  return InverseCertificate<S>{GInverseKind::FDualCore, std::move(value),
                               {{"t", std::move(tw.solution)}, {"r", std::move(rw.solution)}}, n};
}

// Candidate a^(1,4f)·a·a^(1,3e), accepted only if all four equations hold.
template <StarScalar S>
InverseOutcome<S> weighted_mp(const Mat<S>& a, const Weight<S>& e, const Weight<S>& f) {
  a.check_compatible(e.value());
  a.check_compatible(f.value());
  auto i13 = inv_13e(a, e);
  if (!i13) return NotInvertible{GInverseKind::WeightedMP, "{1,3e}-inverse does not exist (" + i13.failure().reason + ")"};
  auto i14 = inv_14f(a, f);
  if (!i14) return NotInvertible{GInverseKind::WeightedMP, "{1,4f}-inverse does not exist (" + i14.failure().reason + ")"};
  Mat<S> x = i14.value().value * a * i13.value().value;
  auto report = verify(GInverseKind::WeightedMP, a, x, &e, &f);
  if (!report.ok()) return NotInvertible{GInverseKind::WeightedMP, "candidate a^(1,4f)·a·a^(1,3e) fails verification"};
  return InverseCertificate<S>{GInverseKind::WeightedMP,
                               std::move(x),
                               {{"inner_13e", i13.value().value}, {"inner_14f", i14.value().value}},
                               std::nullopt};
}

// Dispatch by kind. n (2..8) selects the power representation for ECore/FDualCore.
template <StarScalar S>
InverseOutcome<S> compute(GInverseKind kind, const Mat<S>& a, WeightPtr<S> e, WeightPtr<S> f,
                          std::optional<int> n = std::nullopt) {
  detail::require_weights(kind, a, e, f);
  switch (kind) {
    case GInverseKind::Group: return group_inverse(a);
    case GInverseKind::OneThreeE: return inv_13e(a, *e);
    case GInverseKind::OneFourF: return inv_14f(a, *f);
    case GInverseKind::WeightedMP: return weighted_mp(a, *e, *f);
    case GInverseKind::ECore: return n ? e_core_via_power(a, *e, *n) : e_core(a, *e);
    case GInverseKind::FDualCore: return n ? f_dual_core_via_power(a, *f, *n) : f_dual_core(a, *f);
  }
  throw ArgumentError("unknown kind");
}

// Replays a certificate: the defining equations of its kind, then each
// witness's membership equation and the formula tying witnesses to the value.
template <StarScalar S>
VerifyReport verify_certificate(const InverseCertificate<S>& cert, const Mat<S>& a, WeightPtr<S> e = nullptr,
                                WeightPtr<S> f = nullptr) {
  VerifyReport report = verify(cert.kind, a, cert.value, e, f);
  const auto& w = cert.witnesses;
  auto has = [&](const char* name) {
    auto it = w.find(name);
    if (it == w.end()) return false;
    a.check_compatible(it->second);
    return true;
  };
  auto add = [&](std::string text, bool holds) { report.equations.push_back({std::move(text), holds}); };
  const Mat<S>& x = cert.value;

  switch (cert.kind) {
    case GInverseKind::Group:
      if (has("x")) add("witness x: a = a²x", a * a * w.at("x") == a);
      if (has("y")) add("witness y: a = ya²", w.at("y") * a * a == a);
      if (has("x") && has("y")) add("value = yax", w.at("y") * a * w.at("x") == x);
      break;
    case GInverseKind::OneThreeE:
      if (has("x")) {
        add("witness x: a = xa*ea", w.at("x") * star(a) * e->value() * a == a);
        add("value = x*e", star(w.at("x")) * e->value() == x);
      }
      break;
    case GInverseKind::OneFourF:
      if (has("y")) {
        add("witness y: a = af⁻¹a*y", a * f->inverse() * star(a) * w.at("y") == a);
        add("value = f⁻¹y*", f->inverse() * star(w.at("y")) == x);
      }
      break;
    case GInverseKind::WeightedMP:
      if (has("inner_13e")) add("witness inner_13e is a {1,3e}-inverse", satisfies(GInverseKind::OneThreeE, a, w.at("inner_13e"), e, f));
      if (has("inner_14f")) add("witness inner_14f is a {1,4f}-inverse", satisfies(GInverseKind::OneFourF, a, w.at("inner_14f"), e, f));
      if (has("inner_13e") && has("inner_14f")) add("value = a^(1,4f)·a·a^(1,3e)", w.at("inner_14f") * a * w.at("inner_13e") == x);
      break;
    case GInverseKind::ECore:
      if (cert.n) {
        detail::check_power(*cert.n);
        const int n = *cert.n;
        if (has("s")) {
          add("witness s: a = s(a*)ⁿea", w.at("s") * power(star(a), n) * e->value() * a == a);
          add("value = a^{n-1}s*e", power(a, n - 1) * star(w.at("s")) * e->value() == x);
        }
        if (has("r")) add("witness r: a = raⁿ", w.at("r") * power(a, n) == a);
      } else {
        if (has("group")) add("witness group is the group inverse", satisfies(GInverseKind::Group, a, w.at("group"), e, f));
        if (has("inner_13e")) add("witness inner_13e is a {1,3e}-inverse", satisfies(GInverseKind::OneThreeE, a, w.at("inner_13e"), e, f));
        if (has("group") && has("inner_13e")) add("value = a^#·a·a^(1,3e)", w.at("group") * a * w.at("inner_13e") == x);
      }
      break;
    case GInverseKind::FDualCore:
      if (cert.n) {
        detail::check_power(*cert.n);
        const int n = *cert.n;
        if (has("t")) {
          add("witness t: a = af⁻¹(a*)ⁿt", a * f->inverse() * power(star(a), n) * w.at("t") == a);
          add("value = f⁻¹t*a^{n-1}", f->inverse() * star(w.at("t")) * power(a, n - 1) == x);
        }
        if (has("r")) add("witness r: a = aⁿr", power(a, n) * w.at("r") == a);
      } else {
        if (has("group")) add("witness group is the group inverse", satisfies(GInverseKind::Group, a, w.at("group"), e, f));
        if (has("inner_14f")) add("witness inner_14f is a {1,4f}-inverse", satisfies(GInverseKind::OneFourF, a, w.at("inner_14f"), e, f));
        if (has("group") && has("inner_14f")) add("value = a^(1,4f)·a·a^#", w.at("inner_14f") * a * w.at("group") == x);
      }
      break;
  }
  return report;
}

// (a ∈ Ra*ea ∩ aⁿR, a ∈ R(a*)ⁿea); the two answers always agree for n >= 2.
template <StarScalar S>
std::pair<bool, bool> lemma_r_core_check(const Mat<S>& a, const Weight<S>& e, int n) {
  detail::check_power(n);
  a.check_compatible(e.value());
  const bool left = solve_left(star(a) * e.value() * a, a).consistent && solve_right(power(a, n), a).consistent;
  const bool right = solve_left(power(star(a), n) * e.value() * a, a).consistent;
  return {left, right};
}

}  // namespace wcore
