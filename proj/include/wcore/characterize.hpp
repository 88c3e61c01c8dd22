#pragma once

// Idempotent/unit characterizations of the weighted core and dual core
// inverses, the Gram-type formulas valid in matrix rings, and weighted-EP
// detection.
//
// A Decomposition is a pair (element, unit) for one of four flavors:
//
//   flavor  element                         unit (core side)    unit (dual side)
//   IdemP   idempotent p                    aⁿ + p              aⁿ + p
//   ElemS   any s                           aⁿ + s              aⁿ + s
//   IdemQ   idempotent q                    aⁿ(1-q) + q         (1-q)aⁿ + q
//   ElemT   any t                           aⁿ(1-t) + t         (1-t)aⁿ + t
//
// Core side: (e·el)* = e·el and el·a = 0, weight e.
// Dual side: (f·el)* = f·el and a·el = 0, weight f.
// The unit must be invertible. Given such a pair the inverse follows from a
// closed formula (see reconstruct()); conversely decompose_* builds the pair
// from a known inverse.

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "wcore/enumeration.hpp"
#include "wcore/ginverse.hpp"
#include "wcore/random.hpp"

namespace wcore {

enum class Flavor { IdemP, ElemS, IdemQ, ElemT };
enum class Side { Core, Dual };

inline std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::IdemP: return "p";
    case Flavor::ElemS: return "s";
    case Flavor::IdemQ: return "q";
    case Flavor::ElemT: return "t";
  }
  return "?";
}
inline std::string_view to_string(Side s) { return s == Side::Core ? "core" : "dual"; }

inline std::optional<Flavor> parse_flavor(std::string_view s) {
  for (auto f : {Flavor::IdemP, Flavor::ElemS, Flavor::IdemQ, Flavor::ElemT}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}
inline std::optional<Side> parse_side(std::string_view s) {
  if (s == "core") return Side::Core;
  if (s == "dual") return Side::Dual;
  return std::nullopt;
}

inline bool is_idempotent_flavor(Flavor f) { return f == Flavor::IdemP || f == Flavor::IdemQ; }

template <StarScalar S>
struct Decomposition {
  Flavor flavor;
  Side side;
  int n;
  Mat<S> element;
  Mat<S> unit;
};

namespace detail {

inline void check_exponent(int n) {
  if (n < 1 || n > 8) throw ArgumentError("exponent n must satisfy 1 <= n <= 8, got " + std::to_string(n));
}

inline GInverseKind kind_of(Side side) { return side == Side::Core ? GInverseKind::ECore : GInverseKind::FDualCore; }

}  // namespace detail

// The unit associated with `element` by the flavor's formula.
template <StarScalar S>
Mat<S> unit_for(Flavor flavor, Side side, const Mat<S>& a, const Mat<S>& element, int n) {
  detail::check_exponent(n);
  a.check_compatible(element);
  const Mat<S> an = power(a, n);
  if (flavor == Flavor::IdemP || flavor == Flavor::ElemS) return an + element;
  const Mat<S> rest = identity_like(a) - element;
  return side == Side::Core ? an * rest + element : rest * an + element;
}

// Throws InvalidCertificate naming the first violated hypothesis.
template <StarScalar S>
void validate(const Mat<S>& a, const Weight<S>& w, const Decomposition<S>& d) {
  detail::check_exponent(d.n);
  a.check_compatible(w.value());
  a.check_compatible(d.element);
  a.check_compatible(d.unit);
  const char* name = d.flavor == Flavor::IdemP ? "p" : d.flavor == Flavor::ElemS ? "s" : d.flavor == Flavor::IdemQ ? "q" : "t";
  const std::string el(name);
  const std::string wname = d.side == Side::Core ? "e" : "f";
  if (is_idempotent_flavor(d.flavor) && !is_idempotent(d.element)) throw InvalidCertificate(el + " is not idempotent");
  if (!is_hermitian_wrt(w, d.element)) throw InvalidCertificate("(" + wname + el + ")* != " + wname + el);
  if (d.side == Side::Core && !(d.element * a).is_zero()) throw InvalidCertificate(el + "a != 0");
  if (d.side == Side::Dual && !(a * d.element).is_zero()) throw InvalidCertificate("a" + el + " != 0");
  if (!(d.unit == unit_for(d.flavor, d.side, a, d.element, d.n))) {
    throw InvalidCertificate("unit does not match the " + el + "-flavor formula");
  }
  if (!is_invertible(d.unit)) throw InvalidCertificate("unit is not invertible");
}

// Closed-form inverse from a validated decomposition; the result is checked
// against the defining equations of the side's inverse.
template <StarScalar S>
Mat<S> reconstruct(const Mat<S>& a, const Weight<S>& w, const Decomposition<S>& d) {
  validate(a, w, d);
  const Mat<S> one = identity_like(a);
  const Mat<S> ui = *inverse(d.unit);
  const Mat<S> rest = one - d.element;
  const int n = d.n;
  const bool core = d.side == Side::Core;
  Mat<S> x = one;
  if (n == 1) {
    switch (d.flavor) {
      case Flavor::IdemP: x = core ? ui * rest : rest * ui; break;
      case Flavor::ElemS: x = ui * a * ui; break;
      case Flavor::IdemQ: x = core ? rest * ui : ui * rest; break;
      case Flavor::ElemT: x = core ? ui * a * rest * ui : ui * rest * a * ui; break;
    }
  } else {
    const Mat<S> an1 = power(a, n - 1);
    switch (d.flavor) {
      case Flavor::IdemP:
      case Flavor::ElemS: x = core ? an1 * ui : ui * an1; break;
      case Flavor::IdemQ: x = core ? an1 * rest * ui : rest * an1 * ui; break;
      // Dual side uses z⁻¹(1-t)a^{n-1}; the transposed ordering (1-t)a^{n-1}z⁻¹
      // is not an f-dual core inverse in general.
      case Flavor::ElemT: x = core ? an1 * rest * ui : ui * rest * an1; break;
    }
  }
  if (core) {
    detail::ensure_verified<S>(GInverseKind::ECore, a, x, &w, nullptr);
  } else {
    detail::ensure_verified<S>(GInverseKind::FDualCore, a, x, nullptr, &w);
  }
  return x;
}

template <StarScalar S>
Mat<S> core_from_pu(const Mat<S>& a, const Weight<S>& e, const Decomposition<S>& d) {
  if (d.flavor != Flavor::IdemP || d.side != Side::Core) throw InvalidCertificate("expected a core-side p decomposition");
  return reconstruct(a, e, d);
}

template <StarScalar S>
Mat<S> core_from_s(const Mat<S>& a, const Weight<S>& e, const Mat<S>& s, int n) {
  return reconstruct(a, e, Decomposition<S>{Flavor::ElemS, Side::Core, n, s, unit_for(Flavor::ElemS, Side::Core, a, s, n)});
}

template <StarScalar S>
Mat<S> core_from_qw(const Mat<S>& a, const Weight<S>& e, const Decomposition<S>& d) {
  if (d.flavor != Flavor::IdemQ || d.side != Side::Core) throw InvalidCertificate("expected a core-side q decomposition");
  return reconstruct(a, e, d);
}

template <StarScalar S>
Mat<S> core_from_t(const Mat<S>& a, const Weight<S>& e, const Mat<S>& t, int n) {
  return reconstruct(a, e, Decomposition<S>{Flavor::ElemT, Side::Core, n, t, unit_for(Flavor::ElemT, Side::Core, a, t, n)});
}

template <StarScalar S>
Mat<S> dual_from_pu(const Mat<S>& a, const Weight<S>& f, const Decomposition<S>& d) {
  if (d.flavor != Flavor::IdemP || d.side != Side::Dual) throw InvalidCertificate("expected a dual-side p decomposition");
  return reconstruct(a, f, d);
}

template <StarScalar S>
Mat<S> dual_from_s(const Mat<S>& a, const Weight<S>& f, const Mat<S>& s, int n) {
  return reconstruct(a, f, Decomposition<S>{Flavor::ElemS, Side::Dual, n, s, unit_for(Flavor::ElemS, Side::Dual, a, s, n)});
}

template <StarScalar S>
Mat<S> dual_from_qw(const Mat<S>& a, const Weight<S>& f, const Decomposition<S>& d) {
  if (d.flavor != Flavor::IdemQ || d.side != Side::Dual) throw InvalidCertificate("expected a dual-side q decomposition");
  return reconstruct(a, f, d);
}

template <StarScalar S>
Mat<S> dual_from_t(const Mat<S>& a, const Weight<S>& f, const Mat<S>& t, int n) {
  return reconstruct(a, f, Decomposition<S>{Flavor::ElemT, Side::Dual, n, t, unit_for(Flavor::ElemT, Side::Dual, a, t, n)});
}

// ---------------------------------------------------------------------------
// Decomposing a known inverse

// Core side: p = q = 1 - a·a^{e,#}. Dual side: p = q = 1 - a_{f,#}·a.
// For flavor IdemP the unit is aⁿ + p, for IdemQ the side's q-formula.
template <StarScalar S>
Outcome<Decomposition<S>> decompose(const Mat<S>& a, const Weight<S>& w, Side side, Flavor flavor, int n) {
  detail::check_exponent(n);
  if (!is_idempotent_flavor(flavor)) throw ArgumentError("decompose builds idempotent flavors (p or q) only");
  auto inv = side == Side::Core ? e_core(a, w) : f_dual_core(a, w);
  if (!inv) return inv.failure();
  const Mat<S>& x = inv.value().value;
  Mat<S> el = identity_like(a) - (side == Side::Core ? a * x : x * a);
  Mat<S> unit = unit_for(flavor, side, a, el, n);
  Decomposition<S> d{flavor, side, n, std::move(el), std::move(unit)};
  try {
    validate(a, w, d);
  } catch (const InvalidCertificate& err) {
    throw VerificationFailure(std::string("decomposition of a known inverse violates: ") + err.what());
  }
  return d;
}

template <StarScalar S>
Outcome<Decomposition<S>> decompose_idempotent(const Mat<S>& a, const Weight<S>& e, int n) {
  return decompose(a, e, Side::Core, Flavor::IdemP, n);
}
template <StarScalar S>
Outcome<Decomposition<S>> decompose_q(const Mat<S>& a, const Weight<S>& e, int n) {
  return decompose(a, e, Side::Core, Flavor::IdemQ, n);
}
template <StarScalar S>
Outcome<Decomposition<S>> dual_decompose_idempotent(const Mat<S>& a, const Weight<S>& f, int n) {
  return decompose(a, f, Side::Dual, Flavor::IdemP, n);
}
template <StarScalar S>
Outcome<Decomposition<S>> dual_decompose_q(const Mat<S>& a, const Weight<S>& f, int n) {
  return decompose(a, f, Side::Dual, Flavor::IdemQ, n);
}

// A non-canonical element certificate (flavor ElemS or ElemT) for an
// invertible-side a: with p the side's idempotent, the element is
// p·e⁻¹·h·p (core) or p·h·f·p (dual) for a random Hermitian h, which makes
// (w·el)* = w·el and el·a = 0 (resp. a·el = 0) hold by construction. Draws
// are repeated until the unit is invertible; after 32 failures returns nullopt.
template <StarScalar S>
std::optional<Mat<S>> random_element_certificate(const Mat<S>& a, const Weight<S>& w, Side side, Flavor flavor, int n,
                                                 Rng& rng) {
  if (is_idempotent_flavor(flavor)) throw ArgumentError("element certificates are flavors s or t");
  auto base = decompose(a, w, side, Flavor::IdemP, n);
  if (!base) return std::nullopt;
  const Mat<S>& p = base.value().element;
  const auto& dom = a.domain();
  for (int attempt = 0; attempt < 32; ++attempt) {
    Mat<S> m = random_mat<S>(a.dim(), dom, rng);
    Mat<S> h = m + star(m);
    for (std::size_t i = 0; i < a.dim(); ++i) h(i, i) += sample_real_nonzero<S>(dom, rng);
    Mat<S> el = side == Side::Core ? p * w.inverse() * h * p : p * h * w.value() * p;
    if (is_invertible(unit_for(flavor, side, a, el, n))) return el;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Gram-type formulas

// a^{e,#} = (a*ea + ep)⁻¹a*e with p = 1 - a·a^{e,#}.
template <StarScalar S>
Outcome<Mat<S>> gram_formula(const Mat<S>& a, const Weight<S>& e) {
  auto d = decompose_idempotent(a, e, 1);
  if (!d) return d.failure();
  const Mat<S> as = star(a);
  const Mat<S> gram = as * e.value() * a + e.value() * d.value().element;
  auto gi = inverse(gram);
  if (!gi) throw VerificationFailure("a*ea + ep is singular for an e-core invertible a");
  Mat<S> x = *gi * as * e.value();
  if (!(x == e_core(a, e).value().value)) throw VerificationFailure("Gram formula disagrees with the e-core inverse");
  return x;
}

// a_{f,#} = f⁻¹a*(af⁻¹a* + qf⁻¹)⁻¹ with q = 1 - a_{f,#}·a.
template <StarScalar S>
Outcome<Mat<S>> dual_gram_formula(const Mat<S>& a, const Weight<S>& f) {
  auto d = dual_decompose_idempotent(a, f, 1);
  if (!d) return d.failure();
  const Mat<S> as = star(a);
  const Mat<S> gram = a * f.inverse() * as + d.value().element * f.inverse();
  auto gi = inverse(gram);
  if (!gi) throw VerificationFailure("af⁻¹a* + qf⁻¹ is singular for an f-dual core invertible a");
  Mat<S> x = f.inverse() * as * *gi;
  if (!(x == f_dual_core(a, f).value().value)) throw VerificationFailure("dual Gram formula disagrees with the f-dual core inverse");
  return x;
}

template <StarScalar S>
struct GramCheck {
  bool invertible = false;
  std::optional<Mat<S>> inverse;  // the recovered core (or dual core) inverse when invertible
};

// Given an idempotent p with (ep)* = ep and pa = 0, reports whether a*ea + ep
// is invertible. In M_n(k) (Dedekind-finite) a positive answer forces a to be
// e-core invertible with a^{e,#} = (a*ea + ep)⁻¹a*e; that is asserted here.
template <StarScalar S>
GramCheck<S> gram_converse_check(const Mat<S>& a, const Weight<S>& e, const Mat<S>& p) {
  a.check_compatible(e.value());
  a.check_compatible(p);
  if (!is_idempotent(p)) throw InvalidCertificate("p is not idempotent");
  if (!is_hermitian_wrt(e, p)) throw InvalidCertificate("(ep)* != ep");
  if (!(p * a).is_zero()) throw InvalidCertificate("pa != 0");
  const Mat<S> as = star(a);
  auto gi = inverse(as * e.value() * a + e.value() * p);
  if (!gi) return {false, std::nullopt};
  Mat<S> x = *gi * as * e.value();
  auto direct = e_core(a, e);
  if (!direct) throw VerificationFailure("a*ea + ep invertible but a is not e-core invertible: " + direct.failure().reason);
  if (!(direct.value().value == x)) throw VerificationFailure("(a*ea + ep)⁻¹a*e differs from the e-core inverse");
  return {true, std::move(x)};
}

// Dual: q idempotent, (fq)* = fq, aq = 0; tests af⁻¹a* + qf⁻¹.
template <StarScalar S>
GramCheck<S> dual_gram_converse_check(const Mat<S>& a, const Weight<S>& f, const Mat<S>& q) {
  a.check_compatible(f.value());
  a.check_compatible(q);
  if (!is_idempotent(q)) throw InvalidCertificate("q is not idempotent");
  if (!is_hermitian_wrt(f, q)) throw InvalidCertificate("(fq)* != fq");
  if (!(a * q).is_zero()) throw InvalidCertificate("aq != 0");
  const Mat<S> as = star(a);
  auto gi = inverse(a * f.inverse() * as + q * f.inverse());
  if (!gi) return {false, std::nullopt};
  Mat<S> x = f.inverse() * as * *gi;
  auto direct = f_dual_core(a, f);
  if (!direct) throw VerificationFailure("af⁻¹a* + qf⁻¹ invertible but a is not f-dual core invertible");
  if (!(direct.value().value == x)) throw VerificationFailure("f⁻¹a*(af⁻¹a* + qf⁻¹)⁻¹ differs from the f-dual core inverse");
  return {true, std::move(x)};
}

// ---------------------------------------------------------------------------
// Weighted-EP

template <StarScalar S>
struct EpVerdict {
  bool weighted_ep = false;
  std::optional<Mat<S>> e_core;
  std::optional<Mat<S>> f_dual_core;
  std::optional<Mat<S>> p;  // 1 - a^#·a, only when weighted_ep
  std::string reason;       // why not, when !weighted_ep
};

// a is weighted-EP w.r.t. (e, f) iff both a^{e,#} and a_{f,#} exist and agree.
template <StarScalar S>
EpVerdict<S> is_weighted_ep(const Mat<S>& a, const Weight<S>& e, const Weight<S>& f) {
  EpVerdict<S> v;
  auto ec = e_core(a, e);
  auto fd = f_dual_core(a, f);
  if (ec) v.e_core = ec.value().value;
  if (fd) v.f_dual_core = fd.value().value;
  if (!ec) {
    v.reason = "not e-core invertible: " + ec.failure().reason;
  } else if (!fd) {
    v.reason = "not f-dual core invertible: " + fd.failure().reason;
  } else if (!(*v.e_core == *v.f_dual_core)) {
    v.reason = "e-core and f-dual core inverses differ";
  } else {
    v.weighted_ep = true;
    v.p = identity_like(a) - ec.value().witnesses.at("group") * a;
  }
  return v;
}

// For weighted-EP a: p = 1 - a^#a with (ep)* = ep, (fp)* = fp, ap = pa = 0 and
// aⁿ + p invertible. Returned as a core-side IdemP decomposition that is also
// a valid dual-side one.
template <StarScalar S>
Outcome<Decomposition<S>> ep_decompose(const Mat<S>& a, const Weight<S>& e, const Weight<S>& f, int n) {
  detail::check_exponent(n);
  auto verdict = is_weighted_ep(a, e, f);
  if (!verdict.weighted_ep) return NotInvertible{GInverseKind::WeightedMP, "not weighted-EP: " + verdict.reason};
  const Mat<S> g = group_inverse(a).value().value;
  Mat<S> p = *verdict.p;
  if (!(p == identity_like(a) - a * g)) throw VerificationFailure("1 - a^#a != 1 - aa^# for a weighted-EP element");
  Decomposition<S> d{Flavor::IdemP, Side::Core, n, p, unit_for(Flavor::IdemP, Side::Core, a, p, n)};
  try {
    validate(a, e, d);
    validate(a, f, Decomposition<S>{Flavor::IdemP, Side::Dual, n, d.element, d.unit});
  } catch (const InvalidCertificate& err) {
    throw VerificationFailure(std::string("EP idempotent violates: ") + err.what());
  }
  return d;
}

// Certifies weighted-EP from an element s with (es)* = es, (fs)* = fs,
// as = sa = 0 and v = aⁿ + s invertible. Returns the common value
// a^{e,#} = a_{f,#}; v commutes with a, which is what makes the core-side and
// dual-side formulas coincide.
template <StarScalar S>
Mat<S> ep_from_s(const Mat<S>& a, const Weight<S>& e, const Weight<S>& f, const Mat<S>& s, int n) {
  detail::check_exponent(n);
  a.check_compatible(s);
  if (!is_hermitian_wrt(e, s)) throw InvalidCertificate("(es)* != es");
  if (!is_hermitian_wrt(f, s)) throw InvalidCertificate("(fs)* != fs");
  if (!(a * s).is_zero()) throw InvalidCertificate("as != 0");
  if (!(s * a).is_zero()) throw InvalidCertificate("sa != 0");
  const Mat<S> v = power(a, n) + s;
  if (!is_invertible(v)) throw InvalidCertificate("aⁿ + s is not invertible");
  if (!(a * v == v * a)) throw VerificationFailure("v does not commute with a");
  Mat<S> core = core_from_s(a, e, s, n);
  Mat<S> dual = dual_from_s(a, f, s, n);
  if (!(core == dual)) throw VerificationFailure("core-side and dual-side values differ under EP hypotheses");
  return core;
}

// ---------------------------------------------------------------------------
// Uniqueness of the idempotent certificate

// Over F_p: enumerates every idempotent satisfying the flavor's conditions
// and checks that exactly one exists (the canonical one). Over Q and Q(i):
// checks the annihilator identity ∘(aⁿ) = ∘(1-p) on bases of both left
// kernels (core side) or the mirrored right-kernel identity (dual side).
template <StarScalar S>
bool uniqueness_audit(const Mat<S>& a, const Weight<S>& w, int n, Flavor flavor, Side side = Side::Core) {
  auto d = decompose(a, w, side, flavor, n);
  if (!d) throw ArgumentError("uniqueness audit requires an invertible instance: " + d.failure().reason);
  const Mat<S>& p = d.value().element;
  if constexpr (is_finite_field_v<S>) {
    const auto space = make_space(a.domain().modulus, a.dim());
    int found = 0;
    bool canonical_seen = false;
    for_each_matrix(space, [&](const Mat<S>& cand) {
      if (!is_idempotent(cand) || !is_hermitian_wrt(w, cand)) return;
      if (!(side == Side::Core ? cand * a : a * cand).is_zero()) return;
      if (!is_invertible(unit_for(flavor, side, a, cand, n))) return;
      ++found;
      if (cand == p) canonical_seen = true;
    });
    return found == 1 && canonical_seen;
  } else {
    const Mat<S> an = power(a, n);
    const Mat<S> rest = identity_like(a) - p;
    if (side == Side::Core) {
      for (const auto& y : left_kernel_basis(an)) {
        for (const auto& c : row_times(y, rest)) {
          if (!c.is_zero()) return false;
        }
      }
      for (const auto& y : left_kernel_basis(rest)) {
        for (const auto& c : row_times(y, an)) {
          if (!c.is_zero()) return false;
        }
      }
    } else {
      for (const auto& y : left_kernel_basis(transpose(an))) {
        for (const auto& c : row_times(y, transpose(rest))) {
          if (!c.is_zero()) return false;
        }
      }
      for (const auto& y : left_kernel_basis(transpose(rest))) {
        for (const auto& c : row_times(y, transpose(an))) {
          if (!c.is_zero()) return false;
        }
      }
    }
    return true;
  }
}

}  // namespace wcore
