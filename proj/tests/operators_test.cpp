#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qmod/catalog.hpp"
#include "qmod/errors.hpp"
#include "qmod/operators.hpp"

namespace qmod {
namespace {

QSeries S(std::initializer_list<Term> t, Exponent prec) { return QSeries::make(t, prec); }

TEST(ApplyU, Definition) {
  EXPECT_EQ(apply_U(S({{-2, 1}, {4, 3}}, 6), 2), S({{-1, 1}, {2, 3}}, 3));
  QSeries f = S({{-1, 2}, {3, 1}}, 7);
  EXPECT_EQ(apply_U(f, 1), f);
  EXPECT_EQ(apply_U(catalog_form("G27", 9), 2).coefficient(1), -1);
  // prec = ceil(prec / m), including negative precisions.
  EXPECT_EQ(apply_U(QSeries::zero(7), 3).prec(), 3);
  EXPECT_EQ(apply_U(QSeries::zero(-7), 3).prec(), -2);
}

TEST(ApplyV, Definition) {
  EXPECT_EQ(apply_V(S({{1, 1}}, 2), 3), S({{3, 1}}, 4));
}

TEST(UV, SectionAndProjector) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    QSeries f = oracle::random_series(rng, -4 + trial % 5, 10 + trial % 9);
    std::int64_t m = 1 + trial % 5;
    EXPECT_EQ(apply_U(apply_V(f, m), m), f);

    // V U keeps exactly the exponents divisible by m.
    QSeries vu = apply_V(apply_U(f, m), m);
    std::vector<Term> filtered;
    for (const auto& [e, c] : f.terms()) {
      if (mod_floor(e, m) == 0 && e < vu.prec()) filtered.emplace_back(e, c);
    }
    EXPECT_EQ(vu, QSeries::make(filtered, vu.prec()));
  }
}

TEST(ApplyU, Linearity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    QSeries f = oracle::random_series(rng, -3, 20);
    QSeries g = oracle::random_series(rng, 0, 17);
    EXPECT_EQ(apply_U(f + g, 3), apply_U(f, 3) + apply_U(g, 3));
  }
}

TEST(Theta, Basics) {
  EXPECT_EQ(theta(S({{-3, 1}}, 5)), S({{-3, -3}}, 5));
  EXPECT_TRUE(theta(S({{0, 7}}, 5)).is_zero());
  EXPECT_EQ(theta(S({{0, 7}}, 5)).prec(), 5);
}

TEST(Theta, LeibnizRule) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    QSeries f = oracle::random_series(rng, -2, 12);
    QSeries g = oracle::random_series(rng, -1, 9);
    QSeries lhs = theta(f * g);
    QSeries rhs = theta(f) * g + f * theta(g);
    EXPECT_FALSE(first_difference(lhs, rhs).has_value());
  }
}

TEST(Hecke, PrimeClosedForm) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    QSeries f = oracle::random_series(rng, -1, 60);
    for (std::int64_t p : {2, 3, 5}) {
      for (int k : {1, 2, 4}) {
        QSeries t = hecke(f, k, p, 1);
        Integer pk1;
        mpz_ui_pow_ui(pk1.get_mpz_t(), p, k - 1);
        for (Exponent e = t.order() - 3; e < t.prec(); ++e) {
          Integer expected = f.coefficient(e * p);
          if (mod_floor(e, p) == 0) expected += pk1 * f.coefficient(e / p);
          ASSERT_EQ(t.coefficient(e), expected) << "p=" << p << " k=" << k << " e=" << e;
        }
      }
    }
  }
}

TEST(Hecke, NewformAtTwo) {
  QSeries t = hecke(catalog_form("g27", 40), 2, 2, 1);
  EXPECT_EQ(t.coefficient(1), 0);
}

TEST(Hecke, PrecisionDominatedByU) {
  QSeries f = catalog_form("G27", 100);
  EXPECT_EQ(hecke(f, 2, 2, 1).prec(), 50);
  EXPECT_EQ(hecke(f, 2, 2, 3).prec(), 13);
  EXPECT_THROW(hecke(f, 2, 4, 1), PreconditionError);
  EXPECT_THROW(hecke(f, 0, 2, 1), PreconditionError);
}

TEST(Kronecker, SmallValues) {
  EXPECT_EQ(kronecker(8, 1), 1);
  EXPECT_EQ(kronecker(8, 2), 0);
  EXPECT_EQ(kronecker(8, 3), -1);
  EXPECT_EQ(kronecker(8, 7), 1);
  EXPECT_EQ(kronecker(12, 5), -1);
  EXPECT_EQ(kronecker(8, -1), 1);
  EXPECT_EQ(kronecker(12, -1), 1);
  EXPECT_EQ(kronecker(-4, -1), -1);
  EXPECT_EQ(kronecker(8, 0), 0);
}

TEST(Kronecker, AgreesWithJacobiBruteForceTo10000) {
  for (std::int64_t D : {8, 12}) {
    for (std::int64_t n = -10000; n <= 10000; ++n) {
      ASSERT_EQ(kronecker(D, n), oracle::character_via_jacobi(D, n)) << "D=" << D << " n=" << n;
    }
  }
  // The residue description: chi_8(n) = 1 iff n = +-1 mod 8, chi_12(n) = 1 iff n = +-1 mod 12.
  for (std::int64_t n = 1; n < 200; n += 2) {
    std::int64_t r8 = n % 8;
    if (n % 2) EXPECT_EQ(kronecker(8, n), (r8 == 1 || r8 == 7) ? 1 : -1);
    if (n % 3 != 0) {
      std::int64_t r12 = n % 12;
      EXPECT_EQ(kronecker(12, n), (r12 == 1 || r12 == 11) ? 1 : -1);
    }
  }
}

TEST(Kronecker, CharacterProperties) {
  for (std::int64_t D : {5, 8, 12, 13, -3, -4}) {
    KroneckerCharacter chi(D);
    std::int64_t period = D < 0 ? -D : D;
    for (std::int64_t a = -60; a < 60; ++a) {
      EXPECT_EQ(chi(a) == 0, std::gcd(a < 0 ? -a : a, period) != 1);
      EXPECT_EQ(chi(a + period), chi(a)) << D << " " << a;
      for (std::int64_t b = 1; b < 30; ++b) EXPECT_EQ(chi(a * b), chi(a) * chi(b));
    }
  }
  EXPECT_THROW(KroneckerCharacter(7), PreconditionError);
}

TEST(Twist, Examples) {
  EXPECT_EQ(twist(S({{1, 1}, {5, -2}}, 6), 8), S({{1, 1}, {5, 2}}, 6));
  EXPECT_TRUE(twist(QSeries::zero(9), 8).is_zero());
  QSeries f = catalog_form("G36", 200);
  QSeries twice = twist(twist(f, 8), 8);
  for (const auto& [e, c] : f.terms()) {
    if (e % 2 != 0) EXPECT_EQ(twice.coefficient(e), c);
  }
}

TEST(Twist, CommutesWithU) {
  for (std::int64_t p : {3, 5, 7, 11}) {
    for (int m : {0, 1}) {
      Exponent pk = checked_pow(p, 2 * m + 1);
      QSeries G = catalog_form("G32", 30 * pk + 1);
      QSeries lhs = apply_U(twist(G, 8), pk);
      QSeries rhs = scale(twist(apply_U(G, pk), 8), Integer(kronecker(8, pk)));
      EXPECT_EQ(lhs, rhs) << p << " " << m;
    }
  }
}

TEST(IsInert, Examples) {
  EXPECT_TRUE(is_inert(3, -4));
  EXPECT_FALSE(is_inert(5, -4));
  EXPECT_TRUE(is_inert(2, -3));
  EXPECT_FALSE(is_inert(3, -3));
  EXPECT_FALSE(is_inert(2, -4));
  EXPECT_THROW(is_inert(5, -7), PreconditionError);
  EXPECT_THROW(is_inert(9, -4), PreconditionError);
}

TEST(IsInert, MatchesKroneckerOfDisc) {
  // An odd prime is inert exactly when (D | p) = -1.
  for (std::int64_t p = 3; p < 500; p += 2) {
    if (!is_prime(p)) continue;
    EXPECT_EQ(is_inert(p, -4), kronecker(-4, p) == -1) << p;
    if (p != 3) EXPECT_EQ(is_inert(p, -3), kronecker(-3, p) == -1) << p;
  }
}

}  // namespace
}  // namespace qmod
