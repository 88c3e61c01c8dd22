#include <gtest/gtest.h>

#include "support/instances.hpp"
#include "support/naive.hpp"
#include "wcore/oracle.hpp"

namespace wcore {
namespace {

using QMat = Mat<Rational>;
using CMat = Mat<GaussianRational>;
using FMat = Mat<PrimeField>;
using QDec = Decomposition<Rational>;

const RationalDomain kQ{};
const GaussianDomain kQi{};

QMat q(std::initializer_list<std::initializer_list<long long>> rows) { return QMat::of(kQ, rows); }

const QMat kIdem = q({{1, 1}, {0, 0}});
const QMat kE11 = q({{1, 0}, {0, 0}});
const QMat kE22 = q({{0, 0}, {0, 1}});
const QMat kI = QMat::identity(2, kQ);
const QMat kZero = QMat::zero(2, kQ);
const Weight<Rational> kI2 = Weight<Rational>::identity(2, kQ);

TEST(Decompose, Examples) {
  auto d = decompose_idempotent(kI, kI2, 1).value();
  EXPECT_TRUE(d.element.is_zero());
  EXPECT_EQ(d.unit, kI);
  d = decompose_idempotent(kZero, kI2, 1).value();
  EXPECT_EQ(d.element, kI);
  EXPECT_EQ(d.unit, kI);
  d = decompose_idempotent(kIdem, kI2, 1).value();
  EXPECT_EQ(d.element, kE22);
  EXPECT_EQ(d.unit, q({{1, 1}, {0, 1}}));
  EXPECT_TRUE(is_invertible(d.unit));

  auto dq = decompose_q(kIdem, kI2, 1).value();
  EXPECT_EQ(dq.element, kE22);
  EXPECT_EQ(dq.unit, kI);
  dq = decompose_q(kZero, kI2, 1).value();
  EXPECT_EQ(dq.element, kI);
  EXPECT_EQ(dq.unit, kI);
  dq = decompose_q(kI, kI2, 1).value();
  EXPECT_TRUE(dq.element.is_zero());
  EXPECT_EQ(dq.unit, kI);

  EXPECT_FALSE(decompose_idempotent(q({{0, 1}, {0, 0}}), kI2, 1));
  EXPECT_THROW(decompose(kIdem, kI2, Side::Core, Flavor::ElemS, 1), ArgumentError);
  EXPECT_THROW(decompose_idempotent(kIdem, kI2, 0), ArgumentError);
}

// p = 1 - a·a^{e,#} and u = a + p by hand.
TEST(Decompose, NaiveOracle) {
  auto a = naive::from({{1, 1}, {0, 0}});
  auto x = naive::from({{1, 0}, {0, 0}});
  auto p = naive::sub(naive::eye(2), naive::mul(a, x));
  EXPECT_EQ(naive::to_mat(p), kE22);
  EXPECT_EQ(naive::to_mat(naive::add(a, p)), q({{1, 1}, {0, 1}}));
  auto u = naive::add(a, p);
  EXPECT_EQ(naive::to_mat(naive::mul(naive::inv2(u), naive::sub(naive::eye(2), p))), kE11);
}

TEST(Reconstruct, CoreExamples) {
  EXPECT_EQ(core_from_pu(kI, kI2, QDec{Flavor::IdemP, Side::Core, 1, kZero, kI}), kI);
  EXPECT_EQ(core_from_pu(kIdem, kI2, QDec{Flavor::IdemP, Side::Core, 1, kE22, q({{1, 1}, {0, 1}})}), kE11);
  const QMat u2 = kIdem * kIdem + kE22;
  EXPECT_EQ(core_from_pu(kIdem, kI2, QDec{Flavor::IdemP, Side::Core, 2, kE22, u2}), kE11);

  EXPECT_EQ(core_from_s(kI, kI2, kZero, 1), kI);
  EXPECT_EQ(core_from_s(kIdem, kI2, q({{0, 0}, {0, 2}}), 1), kE11);
  EXPECT_TRUE(core_from_s(kZero, kI2, kI, 1).is_zero());

  EXPECT_EQ(core_from_qw(kI, kI2, QDec{Flavor::IdemQ, Side::Core, 1, kZero, kI}), kI);
  EXPECT_EQ(core_from_qw(kIdem, kI2, QDec{Flavor::IdemQ, Side::Core, 1, kE22, kI}), kE11);
  auto d2 = decompose_q(kIdem, kI2, 2).value();
  EXPECT_EQ(core_from_qw(kIdem, kI2, d2), kE11);

  EXPECT_EQ(core_from_t(kI, kI2, kZero, 1), kI);
  EXPECT_EQ(core_from_t(kIdem, kI2, q({{0, 0}, {0, 3}}), 1), kE11);
  EXPECT_TRUE(core_from_t(kZero, kI2, kI, 1).is_zero());
}

// v = [[1,1],[0,2]] and v⁻¹av⁻¹ by the adjugate formula.
TEST(Reconstruct, NaiveSFormula) {
  auto a = naive::from({{1, 1}, {0, 0}});
  auto v = naive::add(a, naive::from({{0, 0}, {0, 2}}));
  auto vi = naive::inv2(v);
  EXPECT_EQ(naive::to_mat(naive::mul(naive::mul(vi, a), vi)), kE11);
  // z = a(1-t) + t with t = diag(0,3); z⁻¹a(1-t)z⁻¹.
  auto t = naive::from({{0, 0}, {0, 3}});
  auto rest = naive::sub(naive::eye(2), t);
  auto z = naive::add(naive::mul(a, rest), t);
  auto zi = naive::inv2(z);
  EXPECT_EQ(naive::to_mat(naive::mul(naive::mul(naive::mul(zi, a), rest), zi)), kE11);
}

TEST(Reconstruct, DualExamples) {
  const QMat a = star(kIdem);
  const QMat expected = star(kE11);
  for (auto flavor : {Flavor::IdemP, Flavor::IdemQ}) {
    for (int n : {1, 2, 3}) {
      auto d = decompose(a, kI2, Side::Dual, flavor, n).value();
      EXPECT_EQ(reconstruct(a, kI2, d), expected);
      EXPECT_EQ(flavor == Flavor::IdemP ? dual_from_pu(a, kI2, d) : dual_from_qw(a, kI2, d), expected);
      EXPECT_EQ(dual_from_s(a, kI2, d.element, n), expected);
      EXPECT_EQ(dual_from_t(a, kI2, d.element, n), expected);
    }
  }
  for (auto flavor : {Flavor::IdemP, Flavor::IdemQ}) {
    auto d = decompose(kI, kI2, Side::Dual, flavor, 1).value();
    EXPECT_EQ(reconstruct(kI, kI2, d), kI);
    auto z = decompose(kZero, kI2, Side::Dual, flavor, 1).value();
    EXPECT_TRUE(reconstruct(kZero, kI2, z).is_zero());
  }
}

TEST(Reconstruct, RejectsBadCertificates) {
  // Not idempotent.
  EXPECT_THROW(core_from_pu(kIdem, kI2, QDec{Flavor::IdemP, Side::Core, 1, q({{0, 0}, {0, 2}}), q({{1, 1}, {0, 2}})}),
               InvalidCertificate);
  // pa != 0.
  EXPECT_THROW(core_from_s(kIdem, kI2, kE11, 1), InvalidCertificate);
  // (es)* != es.
  EXPECT_THROW(core_from_s(kIdem, kI2, q({{0, 1}, {0, 1}}), 1), InvalidCertificate);
  // Unit not matching its formula.
  EXPECT_THROW(core_from_pu(kIdem, kI2, QDec{Flavor::IdemP, Side::Core, 1, kE22, kI}), InvalidCertificate);
  // Unit singular: s = 0 with a singular.
  EXPECT_THROW(core_from_s(kIdem, kI2, kZero, 1), InvalidCertificate);
  // Wrong flavor or side for the entry point.
  EXPECT_THROW(core_from_qw(kIdem, kI2, QDec{Flavor::IdemP, Side::Core, 1, kE22, q({{1, 1}, {0, 1}})}),
               InvalidCertificate);
  EXPECT_THROW(dual_from_pu(kIdem, kI2, QDec{Flavor::IdemP, Side::Core, 1, kE22, q({{1, 1}, {0, 1}})}),
               InvalidCertificate);
  EXPECT_THROW(core_from_s(kIdem, kI2, kE22, 9), ArgumentError);
}

// With t ≠ 1 - a_{f,#}a, the ordering of the unit matters on the dual side
// for n >= 2: z⁻¹(1-t)a^{n-1} is the inverse, (1-t)a^{n-1}z⁻¹ need not be.
TEST(Reconstruct, DualElementFormulaOrdering) {
  Rng rng(77);
  int differing = 0;
  for (int k = 0; k < 40; ++k) {
    QMat a = random_group_invertible<Rational>(3, 2, kQ, rng);
    auto f = random_weight<Rational>(3, kQ, rng);
    for (int n : {2, 3}) {
      auto t = random_element_certificate(a, f, Side::Dual, Flavor::ElemT, n, rng);
      if (!t) continue;
      const QMat z = unit_for(Flavor::ElemT, Side::Dual, a, *t, n);
      const QMat rest = identity_like(a) - *t;
      const QMat expected = f_dual_core(a, f).value().value;
      EXPECT_EQ(dual_from_t(a, f, *t, n), expected);
      const QMat transposed = rest * power(a, n - 1) * *inverse(z);
      if (!(transposed == expected)) ++differing;
    }
  }
  EXPECT_GT(differing, 0);
}

TEST(Gram, Examples) {
  EXPECT_EQ(gram_formula(kI, kI2).value(), kI);
  EXPECT_EQ(gram_formula(kIdem, kI2).value(), kE11);
  EXPECT_TRUE(gram_formula(kZero, kI2).value().is_zero());
  EXPECT_EQ(dual_gram_formula(kI, kI2).value(), kI);
  EXPECT_EQ(dual_gram_formula(star(kIdem), kI2).value(), star(kE11));
  EXPECT_TRUE(dual_gram_formula(kZero, kI2).value().is_zero());
  EXPECT_FALSE(gram_formula(q({{0, 1}, {0, 0}}), kI2));
  EXPECT_FALSE(dual_gram_formula(q({{0, 1}, {0, 0}}), kI2));
}

TEST(Gram, NaiveOracle) {
  auto a = naive::from({{1, 1}, {0, 0}});
  auto p = naive::from({{0, 0}, {0, 1}});
  auto g = naive::add(naive::mul(naive::transpose(a), a), p);
  EXPECT_EQ(g, naive::from({{1, 1}, {1, 2}}));
  EXPECT_EQ(naive::to_mat(naive::mul(naive::inv2(g), naive::transpose(a))), kE11);
}

TEST(Gram, ConverseExamples) {
  auto r = gram_converse_check(kI, kI2, kZero);
  EXPECT_TRUE(r.invertible);
  EXPECT_EQ(*r.inverse, kI);
  EXPECT_THROW(gram_converse_check(q({{0, 1}, {0, 0}}), kI2, kE11), InvalidCertificate);
  r = gram_converse_check(kIdem, kI2, kE22);
  EXPECT_TRUE(r.invertible);
  EXPECT_EQ(*r.inverse, kE11);
  // Valid hypotheses but a*ea + ep singular.
  EXPECT_FALSE(gram_converse_check(kIdem, kI2, kZero).invertible);
  auto dr = dual_gram_converse_check(star(kIdem), kI2, star(kE22) * kZero + kE22);
  EXPECT_TRUE(dr.invertible);
  EXPECT_EQ(*dr.inverse, star(kE11));
}

TEST(Ep, Examples) {
  Rng rng(3);
  QMat inv_a = random_invertible<Rational>(3, kQ, rng);
  auto e3 = random_weight<Rational>(3, kQ, rng, true);
  auto f3 = random_weight<Rational>(3, kQ, rng);
  auto v = is_weighted_ep(inv_a, e3, f3);
  EXPECT_TRUE(v.weighted_ep);
  EXPECT_EQ(*v.e_core, *inverse(inv_a));

  EXPECT_TRUE(is_weighted_ep(kE11, kI2, kI2).weighted_ep);

  auto n = is_weighted_ep(kIdem, kI2, kI2);
  EXPECT_FALSE(n.weighted_ep);
  EXPECT_EQ(*n.e_core, kE11);
  // a_{#} = a†·a·a^# = a†a for idempotent a.
  naive::M mp{{naive::Q(1, 2), 0}, {naive::Q(1, 2), 0}};
  EXPECT_EQ(*n.f_dual_core, naive::to_mat(naive::mul(mp, naive::from({{1, 1}, {0, 0}}))));
  EXPECT_FALSE(n.p.has_value());
  EXPECT_FALSE(n.reason.empty());

  auto dec = ep_decompose(kI, kI2, kI2, 1).value();
  EXPECT_TRUE(dec.element.is_zero());
  dec = ep_decompose(kE11, kI2, kI2, 1).value();
  EXPECT_EQ(dec.element, kE22);
  EXPECT_EQ(kE11 + dec.element, kI);

  QMat a = q({{2, 0}, {0, 0}});
  Weight<Rational> e(q({{1, 0}, {0, 3}}));
  Weight<Rational> f(q({{2, 0}, {0, 1}}));
  dec = ep_decompose(a, e, f, 2).value();
  EXPECT_EQ(dec.element, kE22);
  EXPECT_EQ(dec.unit, q({{4, 0}, {0, 1}}));
  EXPECT_TRUE(is_hermitian_wrt(e, dec.element));
  EXPECT_TRUE(is_hermitian_wrt(f, dec.element));
  EXPECT_TRUE((a * dec.element).is_zero());
  EXPECT_TRUE((dec.element * a).is_zero());

  EXPECT_FALSE(ep_decompose(kIdem, kI2, kI2, 1));
  EXPECT_EQ(ep_from_s(a, e, f, q({{0, 0}, {0, 5}}), 1), kE11.scaled(Rational(1, 2)));
  EXPECT_THROW(ep_from_s(kIdem, kI2, kI2, kE22, 1), InvalidCertificate);
}

TEST(Uniqueness, Examples) {
  PrimeDomain f2(2);
  EXPECT_TRUE(uniqueness_audit(FMat::identity(2, f2), FpWeight::identity(2, f2), 1, Flavor::IdemP));
  PrimeDomain f3(3);
  FMat a = FMat::of(f3, {{1, 0}, {0, 0}});
  EXPECT_TRUE(uniqueness_audit(a, FpWeight::identity(2, f3), 1, Flavor::IdemP));
  EXPECT_EQ(brute_idempotent_certificates(a, FpWeight::identity(2, f3), 1, Flavor::IdemP).size(), 1U);
  EXPECT_TRUE(uniqueness_audit(FMat::zero(2, f3), FpWeight::identity(2, f3), 1, Flavor::IdemQ));
  EXPECT_TRUE(uniqueness_audit(kIdem, kI2, 2, Flavor::IdemP));
  EXPECT_TRUE(uniqueness_audit(kIdem, kI2, 1, Flavor::IdemQ, Side::Dual));
  EXPECT_THROW(uniqueness_audit(q({{0, 1}, {0, 0}}), kI2, 1, Flavor::IdemP), ArgumentError);
}

// --- properties --------------------------------------------------------------

template <class S>
void check_round_trips(const typename S::domain_type& d, std::uint64_t seed, int trials, long long max_dim = 3) {
  Rng rng(seed);
  int non_idempotent = 0;
  int instances = 0;
  for (int k = 0; k < trials; ++k) {
    const auto dim = static_cast<std::size_t>(rng.uniform(1, max_dim));
    Mat<S> a = random_group_invertible<S>(dim, d, rng.next());
    auto w = random_weight<S>(dim, d, rng, !std::is_same_v<S, GaussianRational> && rng.coin());
    for (auto side : {Side::Core, Side::Dual}) {
      auto direct = side == Side::Core ? e_core(a, w) : f_dual_core(a, w);
      if (!direct) continue;
      ++instances;
      const Mat<S>& x = direct.value().value;
      for (int n : {1, 2, 3}) {
        for (auto flavor : {Flavor::IdemP, Flavor::IdemQ}) {
          auto dec = decompose(a, w, side, flavor, n).value();
          EXPECT_EQ(reconstruct(a, w, dec), x);
          // An idempotent certificate is also a valid element certificate.
          auto el = flavor == Flavor::IdemP ? Flavor::ElemS : Flavor::ElemT;
          EXPECT_EQ(reconstruct(a, w, Decomposition<S>{el, side, n, dec.element, unit_for(el, side, a, dec.element, n)}), x);
          EXPECT_TRUE(uniqueness_audit(a, w, n, flavor, side));
        }
        for (auto flavor : {Flavor::ElemS, Flavor::ElemT}) {
          auto el = random_element_certificate(a, w, side, flavor, n, rng);
          if (!el) continue;
          non_idempotent += is_idempotent(*el) ? 0 : 1;
          EXPECT_EQ(reconstruct(a, w, Decomposition<S>{flavor, side, n, *el, unit_for(flavor, side, a, *el, n)}), x);
        }
      }
    }
    auto g = gram_formula(a, w);
    auto ec = e_core(a, w);
    EXPECT_EQ(g.ok(), ec.ok());
    if (g) EXPECT_EQ(g.value(), ec.value().value);
    auto dg = dual_gram_formula(a, w);
    auto fd = f_dual_core(a, w);
    EXPECT_EQ(dg.ok(), fd.ok());
    if (dg) EXPECT_EQ(dg.value(), fd.value().value);
  }
  EXPECT_GT(instances, trials / 2);
  EXPECT_GT(non_idempotent, 10);
}

TEST(RoundTrip, Q) { check_round_trips<Rational>(kQ, 200, 25); }
TEST(RoundTrip, Qi) { check_round_trips<GaussianRational>(kQi, 201, 25); }
TEST(RoundTrip, F5) { check_round_trips<PrimeField>(PrimeDomain(5), 202, 40, 2); }

// With identity weights every produced p and q is a projection.
TEST(Projections, IdentityWeights) {
  Rng rng(300);
  for (int k = 0; k < 30; ++k) {
    const std::size_t dim = 1 + static_cast<std::size_t>(rng.uniform(0, 2));
    CMat a = random_group_invertible<GaussianRational>(dim, kQi, rng.next());
    auto one = Weight<GaussianRational>::identity(dim, kQi);
    for (auto side : {Side::Core, Side::Dual}) {
      for (auto flavor : {Flavor::IdemP, Flavor::IdemQ}) {
        for (int n : {1, 2}) {
          auto d = decompose(a, one, side, flavor, n).value();
          EXPECT_EQ(star(d.element), d.element);
          EXPECT_TRUE(is_idempotent(d.element));
        }
      }
    }
  }
}

TEST(Ep, ConstructedInstances) {
  Rng rng(400);
  for (int k = 0; k < 30; ++k) {
    const std::size_t dim = 1 + static_cast<std::size_t>(rng.uniform(0, 3));
    const auto rank = static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(dim)));
    auto inst = wtest::random_ep_instance<Rational>(dim, rank, kQ, rng, true);
    auto v = is_weighted_ep(inst.a, inst.e, inst.f);
    ASSERT_TRUE(v.weighted_ep) << v.reason;
    auto mp = weighted_mp(inst.a, inst.e, inst.f);
    EXPECT_EQ(mp.value().value, group_inverse(inst.a).value().value);
    for (int n : {1, 2, 3}) {
      auto dec = ep_decompose(inst.a, inst.e, inst.f, n);
      ASSERT_TRUE(dec);
      EXPECT_EQ(dec.value().element, *v.p);
      EXPECT_TRUE(is_invertible(power(inst.a, n) + *v.p));
      EXPECT_EQ(ep_from_s(inst.a, inst.e, inst.f, *v.p, n), *v.e_core);
    }
  }
}

TEST(Ep, VerdictMatchesDecomposition) {
  Rng rng(401);
  int ep = 0;
  for (int k = 0; k < 60; ++k) {
    const std::size_t dim = 2 + static_cast<std::size_t>(rng.uniform(0, 1));
    PrimeDomain f3(3);
    FMat a = random_mat<PrimeField>(dim, f3, rng);
    auto e = random_weight<PrimeField>(dim, f3, rng, rng.coin());
    auto f = rng.coin() ? e : random_weight<PrimeField>(dim, f3, rng);
    auto v = is_weighted_ep(a, e, f);
    EXPECT_EQ(v.weighted_ep, ep_decompose(a, e, f, 1).ok());
    ep += v.weighted_ep ? 1 : 0;
  }
  EXPECT_GT(ep, 0);
}

}  // namespace
}  // namespace wcore
