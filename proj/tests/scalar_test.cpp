#include <gtest/gtest.h>

#include "wcore/random.hpp"
#include "wcore/scalar.hpp"

namespace wcore {
namespace {

TEST(Rational, AddsExactly) { EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6)); }

TEST(Rational, CanonicalForm) {
  Rational x(BigInt(-6), BigInt(-4));
  EXPECT_EQ(x.numerator(), 3);
  EXPECT_EQ(x.denominator(), 2);
  Rational y(BigInt(4), BigInt(-8));
  EXPECT_EQ(y.str(), "-1/2");
  EXPECT_EQ((Rational(2, 3) - Rational(2, 3)).str(), "0");
}

TEST(Rational, Inverse) {
  EXPECT_EQ(inv(Rational(2, 3)), Rational(3, 2));
  EXPECT_THROW(inv(Rational(0)), DivisionByZero);
  EXPECT_THROW(Rational(1) / Rational(0), DivisionByZero);
  EXPECT_THROW(Rational(BigInt(1), BigInt(0)), DivisionByZero);
}

TEST(Rational, ConjugationIsIdentity) { EXPECT_EQ(conj(Rational(3, 4)), Rational(3, 4)); }

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational::parse("+3/9"), Rational(1, 3));
  EXPECT_EQ(Rational::parse("123456789012345678901234567890/2").str(), "61728394506172839450617283945");
  EXPECT_THROW(Rational::parse("1/0"), DivisionByZero);
  EXPECT_THROW(Rational::parse("abc"), ArgumentError);
  EXPECT_THROW(Rational::parse("1/-2"), ArgumentError);
  EXPECT_THROW(Rational::parse(""), ArgumentError);
}

TEST(GaussianRational, ConjugateProduct) {
  GaussianRational z(Rational(1), Rational(1));
  EXPECT_EQ(z * conj(z), GaussianRational(2));
}

TEST(GaussianRational, InverseOfI) {
  EXPECT_EQ(inv(GaussianRational::i()), -GaussianRational::i());
  EXPECT_THROW(inv(GaussianRational(0)), DivisionByZero);
}

TEST(GaussianRational, Conjugation) {
  GaussianRational z(Rational(1), Rational(2));
  EXPECT_EQ(conj(z), GaussianRational(Rational(1), Rational(-2)));
  EXPECT_EQ(z.str(), "1+2i");
  EXPECT_EQ(conj(z).str(), "1-2i");
}

TEST(PrimeField, Arithmetic) {
  EXPECT_EQ(PrimeField(2, 5) * PrimeField(3, 5), PrimeField(1, 5));
  EXPECT_EQ(inv(PrimeField(2, 5)), PrimeField(3, 5));
  EXPECT_EQ(conj(PrimeField(4, 5)), PrimeField(4, 5));
  EXPECT_EQ(PrimeField(-1, 3), PrimeField(2, 3));
  EXPECT_EQ(-PrimeField(1, 2), PrimeField(1, 2));
  EXPECT_THROW(inv(PrimeField(0, 3)), DivisionByZero);
}

TEST(PrimeField, RejectsMixedModuli) {
  EXPECT_THROW(PrimeField(1, 3) + PrimeField(1, 5), BackendMismatch);
  EXPECT_THROW(PrimeField(1, 3) * PrimeField(1, 2), BackendMismatch);
}

TEST(PrimeField, RejectsUnsupportedModulus) {
  EXPECT_THROW(PrimeField(1, 7), ArgumentError);
  EXPECT_THROW(PrimeDomain(4), ArgumentError);
}

TEST(PrimeField, EveryNonzeroElementInvertible) {
  for (int p : {2, 3, 5}) {
    PrimeDomain d(p);
    for (int k = 1; k < p; ++k) EXPECT_EQ(d.element(k) * inv(d.element(k)), d.one()) << "p=" << p << " k=" << k;
  }
}

template <class S>
class ScalarLaws : public ::testing::Test {};

using Backends = ::testing::Types<Rational, GaussianRational, PrimeField>;
TYPED_TEST_SUITE(ScalarLaws, Backends);

template <class S>
typename S::domain_type test_domain() {
  if constexpr (std::is_same_v<S, PrimeField>) {
    return PrimeDomain(5);
  } else {
    return {};
  }
}

// Hand-rolled property checks over seeded random samples.
TYPED_TEST(ScalarLaws, InvolutionAndInverseLaws) {
  using S = TypeParam;
  const auto d = test_domain<S>();
  Rng rng(20240611);
  for (int trial = 0; trial < 300; ++trial) {
    S x = sample_scalar(d, rng) + sample_scalar(d, rng) / sample_nonzero<S>(d, rng);
    S y = sample_scalar(d, rng);
    EXPECT_EQ(conj(conj(x)), x);
    EXPECT_EQ(conj(x + y), conj(x) + conj(y));
    EXPECT_EQ(conj(x * y), conj(x) * conj(y));
    EXPECT_EQ(conj(x * y), conj(y) * conj(x));
    if (!x.is_zero()) {
      EXPECT_EQ(inv(inv(x)), x);
      EXPECT_EQ(x * inv(x), d.one());
    }
    EXPECT_EQ(x + (-x), d.zero());
  }
}

TYPED_TEST(ScalarLaws, EqualValuesHaveIdenticalText) {
  using S = TypeParam;
  const auto d = test_domain<S>();
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    S x = sample_scalar(d, rng);
    S y = sample_nonzero<S>(d, rng);
    S lhs = (x * y) / y;
    EXPECT_EQ(lhs, x);
    EXPECT_EQ(lhs.str(), x.str());
  }
}

}  // namespace
}  // namespace wcore
