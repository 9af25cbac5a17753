#include "qlzero/hecke.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qlzero;
using R = RatFuncQ;
using P = LaurentPoly<R>;
using T = TensorPoly<R>;

namespace {

const R qq = R::qpow(1) - R::qpow(-1);

T unit(const char* s) { return T::basis(2, 2, signs_from(s), P::constant(2, R(1))); }

}  // namespace

TEST(S, TableEntries) {
  EXPECT_EQ(S_apply(unit("++"), 0), R(-1) * R::qpow(-1) * unit("++"));
  EXPECT_EQ(S_apply(unit("--"), 0), R(-1) * R::qpow(-1) * unit("--"));
  EXPECT_EQ(S_apply(unit("-+"), 0), R(-1) * unit("+-"));
  EXPECT_EQ(S_apply(unit("+-"), 0), qq * unit("+-") - unit("-+"));
}

TEST(S, SingletEigenvalue) {
  T v1 = unit("+-") - R::qpow(-1) * unit("-+");
  EXPECT_EQ(S_apply(v1, 0), R::qpow(1) * v1);
}

TEST(S, QuadraticRelationOnTheBasis) {
  for (const auto& x : tensor_basis<R>(3, 1))
    for (int j = 0; j < 2; ++j) EXPECT_TRUE((S_apply(x, j) - S_apply(x, j, -1) - qq * x).is_zero());
}

TEST(G, ConstantsAndLinearMonomials) {
  P one = P::constant(2, R(1));
  EXPECT_EQ(G_apply(one, 0, 1), R::qpow(1) * one);
  P z2 = P::var(2, 1);
  EXPECT_EQ(G_apply(z2, 0, 1), P::var(2, 0, R::qpow(-1)));
  EXPECT_EQ(G_apply(z2, 0, 1, -1), P::var(2, 0, R::qpow(-1)) + P::var(2, 1, R::qpow(-1) - R::qpow(1)));
}

TEST(G, QuadraticRelationOnRandomPolynomials) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> ex(-3, 3), co(-3, 3);
  for (int t = 0; t < 20; ++t) {
    P f(3);
    for (int k = 0; k < 5; ++k) f.add_term(Exps{ex(rng), ex(rng), ex(rng)}, R(co(rng)));
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(G_apply(f, j, j + 1) - G_apply(f, j, j + 1, -1), qq * f);
      EXPECT_EQ(G_apply(G_apply(f, j, j + 1), j, j + 1, -1), f);
    }
  }
}

TEST(R, PlusPlusEntry) {
  // spectral z = z_2/z_1: numerator (z - q^2) z_1, denominator (1 - q^2 z) z_1
  T num = R_numerator(unit("++"), 0, 1, 0, 1);
  EXPECT_EQ(num, T::basis(2, 2, signs_from("++"), P::var(2, 1) - P::var(2, 0, R::qpow(2))));
  EXPECT_EQ(R_denominator<R>(2, 0, 1), P::var(2, 0) - P::var(2, 1, R::qpow(2)));
}

TEST(R, ConsistentWithSOnTheFullBasis) {
  for (const auto& x : tensor_basis<R>(2, 2)) {
    T lhs = R_numerator(x, 0, 1, 0, 1).times(P::var(2, 1, R::qpow(1)) - P::var(2, 0, R::qpow(-1)));
    T rhs = RS_numerator(x, 0, 0, 1).times(R_denominator<R>(2, 0, 1));
    EXPECT_TRUE((lhs - rhs).is_zero());
  }
}

TEST(HeckeSuite, N3AllPass) {
  Window w;
  w.N = 3;
  w.lo = -3;
  w.hi = 0;
  auto rep = hecke_suite<R>(3, w);
  EXPECT_EQ(rep.records.size(), 7u);
  for (const auto& r : rep.records) {
    EXPECT_EQ(r.status, Status::pass) << r.id;
    EXPECT_EQ(r.residual, 0) << r.id;
  }
}

TEST(HeckeSuite, N2GQuadraticOnWindow) {
  Window w;
  w.N = 2;
  w.lo = -3;
  w.hi = 0;
  auto rep = hecke_suite<R>(2, w);
  bool seen = false;
  for (const auto& r : rep.records)
    if (r.id == "hecke/N2/G-hecke") {
      seen = true;
      EXPECT_EQ(r.status, Status::pass);
      EXPECT_EQ(r.detail["monomials"], 16);
    }
  EXPECT_TRUE(seen);
}

TEST(HeckeSuite, BrokenRelationIsDetected) {
  // the quadratic relation with the wrong sign of (q - q^-1) must not hold
  long bad = 0;
  for (const auto& x : tensor_basis<R>(2, 1)) bad += !(S_apply(x, 0) - S_apply(x, 0, -1) + qq * x).is_zero();
  EXPECT_GT(bad, 0);
}
