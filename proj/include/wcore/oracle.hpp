#pragma once

// Brute-force ground truth over M_n(F_p): every candidate x is tested against
// the defining equations directly, without any solving, and the resulting
// solution sets are compared with the closed-form constructions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcore/characterize.hpp"
#include "wcore/enumeration.hpp"
#include "wcore/ginverse.hpp"
#include "wcore/random.hpp"

namespace wcore {

using FpMat = Mat<PrimeField>;
using FpWeight = Weight<PrimeField>;

// Every x in M_n(F_p) satisfying the full equation set of `kind`, in
// enumeration order. Evaluation stops at the first failing equation.
inline std::vector<FpMat> brute_solutions(GInverseKind kind, const FpMat& a, const FpWeight* e = nullptr,
                                          const FpWeight* f = nullptr) {
  detail::require_weights(kind, a, e, f);
  const auto space = make_space(a.domain().modulus, a.dim());
  std::vector<FpMat> out;
  for_each_matrix(space, [&](const FpMat& x) {
    if (satisfies(kind, a, x, e, f)) out.push_back(x);
  });
  return out;
}

namespace detail {

template <class Pred>
std::vector<FpMat> filter(const std::vector<FpMat>& pool, Pred&& pred) {
  std::vector<FpMat> out;
  for (const auto& x : pool) {
    if (pred(x)) out.push_back(x);
  }
  return out;
}

inline bool is_certificate(const FpMat& a, const FpWeight& w, int n, Flavor flavor, Side side, const FpMat& cand);

}  // namespace detail

// All idempotents p with (wp)* = wp, pa = 0 (core) or ap = 0 (dual), and the
// flavor's unit invertible.
inline std::vector<FpMat> brute_idempotent_certificates(const FpMat& a, const FpWeight& w, int n, Flavor flavor,
                                                        Side side = Side::Core) {
  if (!is_idempotent_flavor(flavor)) throw ArgumentError("idempotent certificates are flavors p or q");
  detail::check_exponent(n);
  const auto space = make_space(a.domain().modulus, a.dim());
  std::vector<FpMat> out;
  for_each_matrix(space, [&](const FpMat& cand) {
    if (is_idempotent(cand) && detail::is_certificate(a, w, n, flavor, side, cand)) out.push_back(cand);
  });
  return out;
}

struct Mismatch {
  std::string check;  // "group", "ecore", "ecore-power", "cert-p-core", ...
  std::string detail;
  FpMat a;
  std::optional<FpMat> e;
  std::optional<FpMat> f;
};

struct CrossCheckReport {
  std::uint64_t instances = 0;
  std::uint64_t comparisons = 0;
  std::vector<Mismatch> mismatches;
};

namespace detail {

// Records a mismatch when `problem` is nonempty.
inline void record(CrossCheckReport& report, const std::string& check, const std::string& problem, const FpMat& a,
                   const FpWeight* e, const FpWeight* f) {
  ++report.comparisons;
  if (problem.empty()) return;
  Mismatch m{check, problem, a, std::nullopt, std::nullopt};
  if (e) m.e = e->value();
  if (f) m.f = f->value();
  report.mismatches.push_back(std::move(m));
}

// Unique-solution kinds: the construction succeeds iff the set is a
// singleton, and then the values agree.
inline std::string unique_problem(const InverseOutcome<PrimeField>& built, const std::vector<FpMat>& sols) {
  if (sols.size() > 1) return std::to_string(sols.size()) + " brute-force solutions (expected at most one)";
  if (built.ok() && sols.empty()) return "construction succeeded but brute force found no solution";
  if (!built.ok() && sols.size() == 1) {
    return "construction reported '" + built.failure().reason + "' but brute force found a solution";
  }
  if (built.ok() && !(built.value().value == sols.front())) return "constructed value differs from the brute-force solution";
  return {};
}

// Non-unique kinds ({1,3e}, {1,4f}): existence agrees and the constructed
// value is one of the solutions.
inline std::string exists_problem(const InverseOutcome<PrimeField>& built, const std::vector<FpMat>& sols) {
  if (built.ok() != !sols.empty()) {
    return built.ok() ? "construction succeeded but brute force found no solution"
                      : "construction failed but brute force found " + std::to_string(sols.size()) + " solutions";
  }
  if (built.ok()) {
    for (const auto& s : sols) {
      if (s == built.value().value) return {};
    }
    return "constructed value is not among the brute-force solutions";
  }
  return {};
}

inline std::string certificate_problem(const Outcome<Decomposition<PrimeField>>& built, const std::vector<FpMat>& sols) {
  if (sols.size() > 1) return std::to_string(sols.size()) + " idempotent certificates (uniqueness violated)";
  if (built.ok() != (sols.size() == 1)) {
    return built.ok() ? "decomposition exists but no idempotent certificate was enumerated"
                      : "idempotent certificate enumerated but the inverse does not exist";
  }
  if (built.ok() && !(built.value().element == sols.front())) return "enumerated certificate differs from the decomposition";
  return {};
}

inline bool is_certificate(const FpMat& a, const FpWeight& w, int n, Flavor flavor, Side side, const FpMat& cand) {
  if (!is_hermitian_wrt(w, cand)) return false;
  if (!(side == Side::Core ? cand * a : a * cand).is_zero()) return false;
  return is_invertible(unit_for(flavor, side, a, cand, n));
}

// Candidate pools for one a: `inner` holds matrices with axa = a (all of
// them in exhaustive mode), `idempotents` idempotent candidates.
struct Pools {
  std::vector<FpMat> inner;
  std::vector<FpMat> reflexive;  // inner ∩ {xax = x}
  std::vector<FpMat> idempotents;
};

inline Pools make_pools(const FpMat& a, std::vector<FpMat> inner, std::vector<FpMat> idempotents) {
  Pools p{std::move(inner), {}, std::move(idempotents)};
  p.reflexive = filter(p.inner, [&](const FpMat& x) { return x * a * x == x; });
  return p;
}

inline void compare_a(const FpMat& a, const Pools& pools, CrossCheckReport& report) {
  auto sols = filter(pools.reflexive, [&](const FpMat& x) { return a * x == x * a; });
  record(report, "group", unique_problem(group_inverse(a), sols), a, nullptr, nullptr);
}

inline void compare_side(const FpMat& a, const FpWeight& w, Side side, int n, const Pools& pools,
                         CrossCheckReport& report) {
  const bool core = side == Side::Core;
  const FpWeight* e = core ? &w : nullptr;
  const FpWeight* f = core ? nullptr : &w;
  const std::string suffix = core ? "-core" : "-dual";
  auto inner = filter(pools.inner, [&](const FpMat& x) {
    return equation_holds(core ? Equation::E3e : Equation::E4f, a, x, e, f);
  });
  record(report, core ? "13e" : "14f", exists_problem(core ? inv_13e(a, w) : inv_14f(a, w), inner), a, e, f);
  const GInverseKind kind = core ? GInverseKind::ECore : GInverseKind::FDualCore;
  auto sols = filter(pools.reflexive, [&](const FpMat& x) { return satisfies(kind, a, x, e, f); });
  record(report, core ? "ecore" : "fdualcore", unique_problem(core ? e_core(a, w) : f_dual_core(a, w), sols), a, e, f);
  if (n >= 2) {
    record(report, core ? "ecore-power" : "fdualcore-power",
           unique_problem(core ? e_core_via_power(a, w, n) : f_dual_core_via_power(a, w, n), sols), a, e, f);
  }
  for (auto flavor : {Flavor::IdemP, Flavor::IdemQ}) {
    auto certs = filter(pools.idempotents, [&](const FpMat& c) { return is_certificate(a, w, n, flavor, side, c); });
    record(report, "cert-" + std::string(to_string(flavor)) + suffix,
           certificate_problem(decompose(a, w, side, flavor, n), certs), a, e, f);
  }
}

inline void compare_pair(const FpMat& a, const FpWeight& e, const FpWeight& f, const Pools& pools,
                         CrossCheckReport& report) {
  ++report.instances;
  auto sols = filter(pools.reflexive, [&](const FpMat& x) {
    return equation_holds<PrimeField>(Equation::E3e, a, x, &e, nullptr) && equation_holds<PrimeField>(Equation::E4f, a, x, nullptr, &f);
  });
  record(report, "wmp", unique_problem(weighted_mp(a, e, f), sols), a, &e, &f);
}

inline std::vector<FpMat> all_idempotents(const EnumerationSpace& space) {
  std::vector<FpMat> out;
  for_each_matrix(space, [&](const FpMat& m) {
    if (is_idempotent(m)) out.push_back(m);
  });
  return out;
}

inline std::vector<FpMat> all_inner(const EnumerationSpace& space, const FpMat& a) {
  std::vector<FpMat> out;
  for_each_matrix(space, [&](const FpMat& x) {
    if (a * x * a == a) out.push_back(x);
  });
  return out;
}

}  // namespace detail

// Differential check of one instance against exhaustive brute force: group,
// {1,3e}, {1,4f}, weighted MP, e-core, f-dual core, the power forms when
// n >= 2, and the p/q idempotent certificates on both sides for exponent n,
// each against the complete solution set of its defining conditions.
inline CrossCheckReport cross_check(const FpMat& a, const FpWeight& e, const FpWeight& f, int n) {
  detail::check_exponent(n);
  a.check_compatible(e.value());
  a.check_compatible(f.value());
  const auto space = make_space(a.domain().modulus, a.dim());
  auto pools = detail::make_pools(a, detail::all_inner(space, a), detail::all_idempotents(space));
  CrossCheckReport report;
  detail::compare_a(a, pools, report);
  detail::compare_side(a, e, Side::Core, n, pools, report);
  detail::compare_side(a, f, Side::Dual, n, pools, report);
  detail::compare_pair(a, e, f, pools, report);
  return report;
}

enum class WeightPairs { All, Diagonal, Identity };

inline std::string_view to_string(WeightPairs w) {
  switch (w) {
    case WeightPairs::All: return "all";
    case WeightPairs::Diagonal: return "diagonal";
    case WeightPairs::Identity: return "identity";
  }
  return "?";
}

struct OracleReport {
  EnumerationSpace space;
  bool sampled = false;
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;
  int n = 1;
  WeightPairs pairs = WeightPairs::All;
  std::size_t weight_count = 0;
  CrossCheckReport result;
};

// Exhaustive sweep over every a in M_n(F_p) and the selected weight pairs
// (every pair (e, f) of invertible symmetric weights by default; e = f for
// Diagonal; e = f = 1 for Identity). Equivalent to calling cross_check() on
// each instance, with per-a and per-weight work shared.
inline OracleReport sweep(int modulus, std::size_t dim, int n, WeightPairs pairs = WeightPairs::All) {
  detail::check_exponent(n);
  OracleReport out{make_space(modulus, dim), false, 0, 0, n, pairs, 0, {}};
  require_exhaustive(out.space);
  PrimeDomain d(modulus);
  const auto weights = pairs == WeightPairs::Identity ? std::vector<FpWeight>{FpWeight::identity(dim, d)}
                                                      : all_weights(modulus, dim);
  out.weight_count = weights.size();
  const auto idempotents = detail::all_idempotents(out.space);
  for_each_matrix(out.space, [&](const FpMat& a) {
    auto pools = detail::make_pools(a, detail::all_inner(out.space, a), idempotents);
    detail::compare_a(a, pools, out.result);
    for (const auto& w : weights) {
      detail::compare_side(a, w, Side::Core, n, pools, out.result);
      detail::compare_side(a, w, Side::Dual, n, pools, out.result);
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
      for (std::size_t j = 0; j < weights.size(); ++j) {
        if (pairs != WeightPairs::All && i != j) continue;
        detail::compare_pair(a, weights[i], weights[j], pools, out.result);
      }
    }
  });
  return out;
}

// Sampled sweep for spaces beyond the exhaustive bound: `samples` random
// instances (a, e, f). Each instance's candidate pool is the constructed
// values and canonical idempotents plus 64 uniform random matrices; a
// mismatch is any pooled candidate that contradicts a construction.
inline OracleReport sweep_sampled(int modulus, std::size_t dim, int n, std::uint64_t samples, std::uint64_t seed) {
  detail::check_exponent(n);
  OracleReport out{make_space(modulus, dim), true, samples, seed, n, WeightPairs::All, 0, {}};
  PrimeDomain d(modulus);
  Rng rng(seed);
  auto push_unique = [](std::vector<FpMat>& v, FpMat x) {
    for (const auto& u : v) {
      if (u == x) return;
    }
    v.push_back(std::move(x));
  };
  for (std::uint64_t k = 0; k < samples; ++k) {
    FpMat a = random_mat<PrimeField>(dim, d, rng);
    FpWeight e = random_weight<PrimeField>(dim, d, rng, rng.coin());
    FpWeight f = random_weight<PrimeField>(dim, d, rng, rng.coin());
    std::vector<FpMat> inner;
    std::vector<FpMat> idem;
    for (auto kind : kAllKinds) {
      auto built = compute(kind, a, &e, &f);
      if (built) push_unique(inner, built.value().value);
    }
    for (auto side : {Side::Core, Side::Dual}) {
      for (auto flavor : {Flavor::IdemP, Flavor::IdemQ}) {
        auto dec = decompose(a, side == Side::Core ? e : f, side, flavor, n);
        if (dec) push_unique(idem, dec.value().element);
      }
    }
    for (int r = 0; r < 64; ++r) {
      FpMat x = random_mat<PrimeField>(dim, d, rng);
      if (is_idempotent(x)) push_unique(idem, x);
      if (a * x * a == a) push_unique(inner, std::move(x));
    }
    auto pools = detail::make_pools(a, std::move(inner), std::move(idem));
    detail::compare_a(a, pools, out.result);
    detail::compare_side(a, e, Side::Core, n, pools, out.result);
    detail::compare_side(a, f, Side::Dual, n, pools, out.result);
    detail::compare_pair(a, e, f, pools, out.result);
  }
  return out;
}

}  // namespace wcore
