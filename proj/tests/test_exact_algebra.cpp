#include "test_support.hpp"

#include <hm/matrix.hpp>
#include <hm/ratfn.hpp>

#include <gtest/gtest.h>

using namespace hm;
using hm::testing::RandomSource;

namespace {

const MultiPoly& n() { return *chart_norm_ptr(); }
MultiPoly x(int a) { return MultiPoly::x(a); }
MultiPoly y(int a) { return MultiPoly::y(a); }
GaussianRational q(long a, long b = 1) { return GaussianRational(a, b); }
GaussianRational gi(long re, long im) { return GaussianRational(mpq_class(re), mpq_class(im)); }

}  // namespace

// ---------------------------------------------------------------------------
// GaussianRational

TEST(GaussianRational, ComponentsAreInLowestTerms) {
  GaussianRational z = GaussianRational::parse("2/4-6/3i");
  EXPECT_EQ(z.re(), mpq_class(1, 2));
  EXPECT_EQ(z.im(), mpq_class(-2));
  EXPECT_EQ(z.to_string(), "1/2-2i");
}

TEST(GaussianRational, NormOfProductWithConjugate) {
  GaussianRational z = gi(3, -4);
  EXPECT_EQ(z * z.conj(), q(25));
  EXPECT_EQ(z.norm(), mpq_class(25));
}

TEST(GaussianRational, FieldAxiomsOnRandomValues) {
  RandomSource rs(11);
  for (int k = 0; k < 200; ++k) {
    GaussianRational a = rs.gaussian(), b = rs.gaussian(), c = rs.nonzero_gaussian();
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(c * c.inverse(), q(1));
    EXPECT_EQ(a / c * c, a);
    EXPECT_GE(sgn(a.norm()), 0);
  }
}

TEST(GaussianRational, InverseOfZeroThrows) {
  EXPECT_THROW(GaussianRational().inverse(), DivisionByZero);
  EXPECT_THROW(q(1) / GaussianRational(), DivisionByZero);
}

TEST(GaussianRational, GrammarRoundTrip) {
  for (const char* s : {"0", "-3", "5/7", "1i", "-1i", "2/3i", "1+1i", "-1/2-3/4i", "7-1i"})
    EXPECT_EQ(GaussianRational::parse(s).to_string(), s) << s;
  RandomSource rs(5);
  for (int k = 0; k < 100; ++k) {
    GaussianRational z = rs.gaussian(50);
    EXPECT_EQ(GaussianRational::parse(z.to_string()), z);
  }
}

TEST(GaussianRational, MalformedInputIsRejected) {
  for (const char* s : {"", "x", "1/0", "1+", "1+i", "i", "1/2/3", "--1", "1 2", "1+2", "1.5"})
    EXPECT_THROW(GaussianRational::parse(s), ParseError) << '"' << s << '"';
}

TEST(GaussianRational, PointParsing) {
  Point4 p = parse_point("1+1i, 1, -2/3, 1i");
  EXPECT_EQ(p[0], gi(1, 1));
  EXPECT_EQ(p[2], q(-2, 3));
  EXPECT_EQ(to_string(p), "1+1i,1,-2/3,1i");
  EXPECT_THROW(parse_point("1,1,1"), ParseError);
  EXPECT_THROW(parse_point("1,1,1,1,1"), ParseError);
}

// ---------------------------------------------------------------------------
// MultiPoly

TEST(PolyArith, DifferenceOfSquares) { EXPECT_EQ((x(1) + y(1)) * (x(1) - y(1)), x(1) * x(1) - y(1) * y(1)); }

TEST(PolyArith, ZeroAnnihilates) {
  MultiPoly z = n() * MultiPoly(0);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.size(), 0u);
}

TEST(PolyArith, GaussianCoefficients) {
  EXPECT_EQ((gi(1, 1) * x(1)) * (gi(1, -1) * x(1)), q(2) * x(1).pow(2));
}

TEST(PolyArith, RingAxiomsOnRandomPolynomials) {
  RandomSource rs(3);
  for (int k = 0; k < 30; ++k) {
    MultiPoly a = rs.poly(), b = rs.poly(), c = rs.poly();
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(PolyArith, NoZeroCoefficientsStored) {
  MultiPoly p = x(1) + y(2) - x(1);
  EXPECT_EQ(p.size(), 1u);
  for (const auto& t : p.terms()) EXPECT_FALSE(t.coef.is_zero());
}

TEST(PolyArith, CanonicalTextRoundTrip) {
  EXPECT_EQ((x(1) * x(1) + q(-1, 2) * y(3)).to_string(), "1 * x1^2 + -1/2 * y3^1");
  RandomSource rs(8);
  for (int k = 0; k < 30; ++k) {
    MultiPoly p = rs.poly(6, 3);
    EXPECT_EQ(MultiPoly::parse(p.to_string()), p);
  }
  EXPECT_EQ(MultiPoly::parse("0"), MultiPoly());
  EXPECT_THROW(MultiPoly::parse("1 * z1^2"), ParseError);
}

TEST(PolyArith, GradedLexOrderIsDescending) {
  MultiPoly p = MultiPoly(1) + y(4) + x(1) + x(1) * y(1) + x(2).pow(3);
  const auto& t = p.terms();
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_TRUE(t[i].mono < t[i - 1].mono);
  EXPECT_EQ(t.front().mono.degree(), 3u);
}

TEST(PolyArith, ExactDivision) {
  RandomSource rs(21);
  for (int k = 0; k < 10; ++k) {
    MultiPoly a = rs.poly(), d = rs.denominator();
    EXPECT_EQ(divide_exact(a * d, d), a);
  }
  EXPECT_THROW(divide_exact(x(1) + MultiPoly(1), x(1)), NotDivisible);
}

TEST(Conjugate, Definition) {
  EXPECT_EQ(conjugate(x(1)), y(1));
  EXPECT_EQ(conjugate(gi(1, 1) * x(2) * y(3)), gi(1, -1) * y(2) * x(3));
}

TEST(Conjugate, InvolutionCommutingWithArithmetic) {
  RandomSource rs(4);
  for (int k = 0; k < 30; ++k) {
    MultiPoly a = rs.poly(), b = rs.poly();
    EXPECT_EQ(conjugate(conjugate(a)), a);
    EXPECT_EQ(conjugate(a * b), conjugate(a) * conjugate(b));
    EXPECT_EQ(conjugate(a + b), conjugate(a) + conjugate(b));
  }
}

// ---------------------------------------------------------------------------
// Evaluation

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate(n(), Point4{1L, 1L, 1L, 1L}), q(5));
  EXPECT_EQ(evaluate(RatFn(MultiPoly(1), chart_norm_ptr()), Point4{gi(1, 1), 1L, 1L, 1L}), q(1, 6));
  const Point4 p{0L, 1L, 1L, 1L};
  EXPECT_EQ(evaluate(RatFn(x(1), x(2)), p), q(0));
  EXPECT_THROW(evaluate(RatFn(x(2), x(1)), p), DenominatorVanishes);
}

TEST(Evaluate, ConjugateVariablesTakeConjugateValues) {
  EXPECT_EQ(evaluate(y(1), Point4{gi(2, 3), 1L, 1L, 1L}), gi(2, -3));
  EXPECT_EQ(evaluate(x(1) * y(1), Point4{gi(2, 3), 1L, 1L, 1L}), q(13));
}

TEST(Evaluate, RingHomomorphism) {
  RandomSource rs(6);
  for (int k = 0; k < 30; ++k) {
    MultiPoly a = rs.poly(), b = rs.poly();
    Point4 p = rs.point();
    EXPECT_EQ(evaluate(a * b, p), evaluate(a, p) * evaluate(b, p));
    EXPECT_EQ(evaluate(a + b, p), evaluate(a, p) + evaluate(b, p));
    EXPECT_EQ(evaluate(conjugate(a), p), evaluate(a, p).conj());
  }
}

TEST(Evaluate, PointEvaluatorAgreesWithGenericEvaluation) {
  RandomSource rs(7);
  Point4 p = rs.point();
  PointEvaluator eval(p);
  for (int k = 0; k < 20; ++k) {
    MultiPoly a = rs.poly(5, 4);
    EXPECT_EQ(eval(a), evaluate_in<GaussianRational>(a, conjugate_consistent(p)));
  }
}

// ---------------------------------------------------------------------------
// Rational functions

TEST(Wirtinger, Examples) {
  EXPECT_TRUE(ratfn_equal(wirtinger(RatFn(x(1) * y(1)), xvar(1)), RatFn(y(1))));
  const RatFn inv_n(MultiPoly(1), chart_norm_ptr());
  EXPECT_TRUE(ratfn_equal(wirtinger(inv_n, xvar(1)), RatFn(-y(1), chart_norm_ptr(), 2)));
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      EXPECT_TRUE(ratfn_equal(wirtinger(wirtinger(RatFn(n()), xvar(a)), yvar(b)), RatFn(a == b ? 1L : 0L)));
}

TEST(Wirtinger, QuotientRuleBumpsExponents) {
  const RatFn f(x(1), chart_norm_ptr(), 1);
  const RatFn d = wirtinger(f, xvar(2));
  ASSERT_EQ(d.factors().size(), 1u);
  EXPECT_EQ(d.factors()[0].exp, 2u);
  EXPECT_EQ(d.factors()[0].poly, chart_norm_ptr());
}

TEST(Wirtinger, ProductAndLinearityRules) {
  RandomSource rs(12);
  for (int k = 0; k < 10; ++k) {
    RatFn f(rs.poly(), rs.denominator()), g(rs.poly(), rs.denominator());
    for (int v : {xvar(1), yvar(3)}) {
      EXPECT_TRUE(ratfn_equal(wirtinger(f * g, v), wirtinger(f, v) * g + f * wirtinger(g, v)));
      EXPECT_TRUE(ratfn_equal(wirtinger(f - g, v), wirtinger(f, v) - wirtinger(g, v)));
    }
  }
}

TEST(RatFnEqual, Examples) {
  EXPECT_TRUE(ratfn_equal(RatFn(x(1), x(1)), RatFn(1L)));
  EXPECT_TRUE(ratfn_equal(RatFn(x(1) * x(1) - y(1) * y(1), x(1) - y(1)), RatFn(x(1) + y(1))));
  EXPECT_FALSE(ratfn_equal(RatFn(MultiPoly(1), n()), RatFn(MultiPoly(1), n() + MultiPoly(1))));
}

TEST(RatFnEqual, EquivalenceRelation) {
  RandomSource rs(13);
  for (int k = 0; k < 10; ++k) {
    MultiPoly a = rs.poly(), d = rs.denominator(), e = rs.denominator();
    RatFn f(a, d);
    RatFn g(a * e, d * e);
    RatFn h(a * e * e, share(d * e * e));
    EXPECT_TRUE(ratfn_equal(f, f));
    EXPECT_EQ(ratfn_equal(f, g), ratfn_equal(g, f));
    EXPECT_TRUE(ratfn_equal(f, g));
    EXPECT_TRUE(ratfn_equal(g, h));
    EXPECT_TRUE(ratfn_equal(f, h));
    EXPECT_FALSE(ratfn_equal(f, f + RatFn(1L)));
  }
}

TEST(RatFn, FieldOperationsAgreeWithEvaluation) {
  RandomSource rs(14);
  for (int k = 0; k < 20; ++k) {
    RatFn f(rs.poly(), rs.denominator()), g(rs.poly(), rs.denominator());
    Point4 p = rs.point();
    EXPECT_EQ(evaluate(f + g, p), evaluate(f, p) + evaluate(g, p));
    EXPECT_EQ(evaluate(f * g, p), evaluate(f, p) * evaluate(g, p));
    EXPECT_EQ(evaluate(conjugate(f), p), evaluate(f, p).conj());
  }
}

// ---------------------------------------------------------------------------
// Jets

TEST(Jet, TruncatedProductRule) {
  RandomSource rs(15);
  for (int k = 0; k < 50; ++k) {
    JetQ f{rs.gaussian(), rs.gaussian(), rs.gaussian(), rs.gaussian()};
    JetQ g{rs.gaussian(), rs.gaussian(), rs.gaussian(), rs.gaussian()};
    JetQ h = f * g;
    EXPECT_EQ(h.dsdt, f.value * g.dsdt + f.ds * g.dt + f.dt * g.ds + f.dsdt * g.value);
    if (!g.value.is_zero()) EXPECT_EQ(h / g, f);
  }
}

TEST(JetMixedSecond, Examples) {
  RandomSource rs(16);
  Point4 p = rs.point();
  EXPECT_EQ(jet_mixed_second(RatFn(x(1) * y(1)), p, 1, 1), q(1));
  EXPECT_EQ(jet_mixed_second(RatFn(x(1) * y(2)), p, 1, 1), q(0));
  // d^2(1/n)/dx1 dy2 = 2 y1 x2 / n^3 = 2/125 at (1,1,1,1)
  const RatFn inv_n(MultiPoly(1), chart_norm_ptr());
  const Point4 x0{1L, 1L, 1L, 1L};
  const GaussianRational symbolic = evaluate(wirtinger(wirtinger(inv_n, xvar(1)), yvar(2)), x0);
  EXPECT_EQ(symbolic, q(2, 125));
  EXPECT_EQ(jet_mixed_second(inv_n, x0, 1, 2), symbolic);
}

TEST(JetMixedSecond, DenominatorVanishes) {
  EXPECT_THROW(jet_mixed_second(RatFn(MultiPoly(1), x(1)), Point4{0L, 1L, 1L, 1L}, 1, 1), DenominatorVanishes);
}

TEST(JetMixedSecond, AgreesWithSymbolicWirtinger) {
  RandomSource rs(17);
  for (int k = 0; k < 8; ++k) {
    RatFn f(rs.poly(4, 3), {{share(rs.denominator()), 2}, {chart_norm_ptr(), 1}});
    Point4 p = rs.point();
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b)
        EXPECT_EQ(jet_mixed_second(f, p, a, b), evaluate(wirtinger(wirtinger(f, xvar(a)), yvar(b)), p));
  }
}

// ---------------------------------------------------------------------------
// Matrices

TEST(Bareiss, Examples) {
  PolyMatrix m{{x(1), MultiPoly(1)}, {MultiPoly(1), y(1)}};
  EXPECT_EQ(bareiss_determinant(m), x(1) * y(1) - MultiPoly(1));
  auto [det, adj] = bareiss(PolyMatrix::identity(5));
  EXPECT_EQ(det, MultiPoly(1));
  EXPECT_EQ(adj, PolyMatrix::identity(5));
}

TEST(Bareiss, AdjugateIdentityUpToFiveByFive) {
  RandomSource rs(18);
  for (std::size_t size = 1; size <= 5; ++size) {
    PolyMatrix m(size, size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) m(i, j) = rs.poly(size <= 3 ? 3 : 2, 1);
    auto [det, adj] = bareiss(m);
    EXPECT_EQ(m * adj, det * PolyMatrix::identity(size)) << size;
    EXPECT_EQ(adj * m, det * PolyMatrix::identity(size)) << size;
  }
}

TEST(Bareiss, PivotingHandlesZeroLeadingEntry) {
  PolyMatrix m{{MultiPoly(0), x(1)}, {y(1), MultiPoly(2)}};
  EXPECT_EQ(bareiss_determinant(m), -(x(1) * y(1)));
  ScalarMatrix s{{q(0), q(1)}, {q(1), q(0)}};
  EXPECT_EQ(bareiss_determinant(s), q(-1));
}

TEST(Bareiss, DeterminantCommutesWithEvaluation) {
  RandomSource rs(19);
  PolyMatrix m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = rs.poly(3, 1);
  Point4 p = rs.point();
  EXPECT_EQ(evaluate(bareiss_determinant(m), p), bareiss_determinant(evaluate(m, p)));
}

TEST(Matrix, RingAxiomsOnSmallInstances) {
  RandomSource rs(20);
  auto random = [&rs] {
    PolyMatrix m(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) m(i, j) = rs.poly(2, 1);
    return m;
  };
  PolyMatrix a = random(), b = random(), c = random();
  EXPECT_EQ(a * (b + c), a * b + a * c);
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ((a * b).transpose(), b.transpose() * a.transpose());
  EXPECT_EQ(a * PolyMatrix::identity(2), a);
}

TEST(Matrix, HermitianUnderConjugation) {
  PolyMatrix h{{x(1) * y(1), gi(0, 1) * x(2)}, {gi(0, -1) * y(2), n()}};
  EXPECT_TRUE(is_hermitian(h));
  h(0, 1) = x(2);
  EXPECT_FALSE(is_hermitian(h));
}
