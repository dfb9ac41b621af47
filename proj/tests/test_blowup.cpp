#include <doctest.h>

#include "fol/blowup.hpp"
#include "fol/errors.hpp"
#include "fol/parse.hpp"
#include "support.hpp"

using namespace fol;

namespace {

VectorField F(const char* text, int trunc = 12) { return parse_field(text, trunc); }

// Chart coordinates are printed and parsed with the names x, y, z.
VectorField chart_field(const char* text, int trunc) { return parse_field(text, trunc); }

}  // namespace

TEST_CASE("chart substitutions") {
  auto rows = point_chart(Var::z).substitution();
  CHECK(rows[0] == Exponent{1, 0, 1});
  CHECK(rows[1] == Exponent{0, 1, 1});
  CHECK(rows[2] == Exponent{0, 0, 1});
  ChartMap first = curve_chart(Var::x, ChartKind::CurveChartFirst);
  CHECK(first.divisor == Var::z);
  CHECK(first.substitution()[1] == Exponent{0, 1, 1});
  ChartMap second = curve_chart(Var::x, ChartKind::CurveChartSecond);
  CHECK(second.divisor == Var::y);
  CHECK(second.substitution()[2] == Exponent{0, 1, 1});
  auto w = weight2_chart().substitution();
  CHECK(w[1] == Exponent{0, 1, 1});
  CHECK(w[2] == Exponent{0, 0, 2});
}

TEST_CASE("point blow-up of the radial field is dicritical") {
  BlowupResult r = point_blowup(F("[x, y, z]"), point_chart(Var::z));
  CHECK(r.divisor_exponent == 1);
  CHECK(r.dicritical);
  CHECK(r.Y == chart_field("[0, 0, 1]", 10));
}

TEST_CASE("point blow-up of a normal-form field divides f and g by z") {
  VectorField X = F("[y + x^2 - 3*y*z + z^3, x*y + 2*z^2, z^2]");
  BlowupResult r = point_blowup(X, point_chart(Var::z));
  CHECK(r.divisor_exponent == 0);
  MSeries ftilde = r.raw[0] - MSeries::variable(Var::y, r.raw.trunc());
  CHECK(divisor_power(ftilde, Var::z) >= 1);
  CHECK(divisor_power(r.raw[1], Var::z) >= 1);
}

TEST_CASE("point blow-up against the hand-substituted chart formula") {
  VectorField X = F("[y, x^2, z^2]", 10);
  BlowupResult r = point_blowup(X, point_chart(Var::z));
  // u' = v - u z, v' = u^2 z - v z, z' = z^2.
  CHECK(r.raw == chart_field("[y - x*z, x^2*z - y*z, z^2]", 9).truncated(r.raw.trunc()));
  CHECK(r.divisor_exponent == 0);
  CHECK(!r.dicritical);
  CHECK(classify(r.Y).tag == SingularityTag::NilpotentNonzero);
  CHECK_THROWS_AS(point_blowup(F("[1, x, z]"), point_chart(Var::z)), RegularPoint);
}

TEST_CASE("curve blow-up of X_lambda") {
  VectorField X = F("[y - z, z*x, z^3]", 12);
  BlowupResult r = curve_blowup(X, curve_chart(Var::x, ChartKind::CurveChartFirst));
  CHECK(r.divisor_exponent == 0);
  CHECK(r.Y == chart_field("[z*y - z, x - y*z^2, z^3]", 12).truncated(r.Y.trunc()));
  CHECK(classify(r.Y).tag == SingularityTag::NilpotentNonzero);
  CHECK_THROWS_AS(curve_blowup(F("[x, y, z]"), curve_chart(Var::x, ChartKind::CurveChartFirst)),
                  CenterNotInvariantOrNotSingular);
}

TEST_CASE("curve blow-up of normal forms with g(x,0,0) = lambda x stays nilpotent") {
  const char* fields[] = {"[y + z*x^2, z*(2x + y), z^2]", "[y, z*(x + x^2 - z*y), z^3]", "[y + z^2*x, z*(1/3*x), z^2]"};
  for (const char* text : fields) {
    BlowupResult r = curve_blowup(F(text), curve_chart(Var::x, ChartKind::CurveChartFirst));
    CHECK(classify(r.Y).tag == SingularityTag::NilpotentNonzero);
  }
}

TEST_CASE("weight-2 blow-up examples") {
  BlowupResult r = weight2_blowup(F("[y, z*x, z^2]", 14));
  CHECK(r.divisor_exponent == 1);
  CHECK(r.Y == chart_field("[y, x - 1/2*y*z, 1/2*z^2]", 14).truncated(r.Y.trunc()));
  auto inv = classify(r.Y).invariants;
  CHECK(inv[0] == Scalar(0));
  CHECK(inv[1] == Scalar(-1));
  CHECK(inv[2] == Scalar(0));

  CHECK(weight2_blowup(F("[z*y, z^2*x, z^3]", 14)).divisor_exponent == 3);

  BlowupResult n3 = weight2_blowup(F("[y, z*x, z^3]", 14));
  CHECK(n3.Y[2] == parse_series("1/2*z^4", 14).truncated(n3.Y[2].trunc()));
  CHECK(n3.Y[1] == parse_series("x - 1/2*y*z^3", 14).truncated(n3.Y[1].trunc()));

  // A unit factor h is divided out of the representative.
  BlowupResult unit = weight2_blowup(F("[(1 + x)*y, (1 + x)*z*x, (1 + x)*z^2]", 14));
  CHECK(unit.Y == r.Y.truncated(unit.Y.trunc()));

  CHECK_THROWS_AS(weight2_blowup(F("[x, y, z]")), NotInNormalForm);
}

TEST_CASE("divisor exponent is k-1 or k, k exactly when dicritical") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    VectorField X = testing::random_singular_field(rng, 10, 1 + trial % 2);
    if (X.is_zero()) continue;
    int k = order_at_origin(X);
    for (Var d : {Var::x, Var::y, Var::z}) {
      BlowupResult r = point_blowup(X, point_chart(d));
      CHECK(r.divisor_exponent >= k - 1);
      CHECK(r.divisor_exponent <= k);
      CHECK((r.divisor_exponent == k) == r.dicritical);
    }
  }
  // The radial field is the dicritical model.
  for (Var d : {Var::x, Var::y, Var::z}) {
    BlowupResult r = point_blowup(F("[x^2, x*y, x*z]"), point_chart(d));
    CHECK(r.dicritical == (r.divisor_exponent == 2));
  }
}

TEST_CASE("chart z and chart x transforms glue on the overlap") {
  std::mt19937_64 rng(7);
  int trunc = 9;
  for (int trial = 0; trial < 20; ++trial) {
    VectorField X = testing::random_singular_field(rng, trunc, 1);
    Scalar a = testing::random_scalar(rng, 3, false);
    if (a.is_zero()) a = Scalar(2);
    Scalar v0 = testing::random_scalar(rng, 3);
    VectorField RZ = pullback(X, point_chart(Var::z, {a, v0, Scalar()}));
    VectorField RX = pullback(X, point_chart(Var::x, {Scalar(), v0 / a, a.inverse()}));

    // Phi: chart z (u, v, z) -> chart x (x, v', w), both re-centered.
    MSeries u = MSeries::variable(Var::x, trunc), v = MSeries::variable(Var::y, trunc),
            z = MSeries::variable(Var::z, trunc);
    MSeries inv = inverse_unit(u + MSeries::constant(a, trunc));
    PolyMap Phi{(u + MSeries::constant(a, trunc)) * z,
                (v + MSeries::constant(v0, trunc)) * inv - MSeries::constant(v0 / a, trunc),
                inv - MSeries::constant(a.inverse(), trunc)};
    VectorField lhs;
    for (int r = 0; r < 3; ++r)
      lhs[r] = derivative(Phi[r], Var::x) * RZ[0] + derivative(Phi[r], Var::y) * RZ[1] +
               derivative(Phi[r], Var::z) * RZ[2];
    VectorField rhs{substitute(RX[0], Phi), substitute(RX[1], Phi), substitute(RX[2], Phi)};
    int t = std::min(lhs.trunc(), rhs.trunc());
    CHECK(t >= trunc - 2);
    CHECK(lhs.truncated(t) == rhs.truncated(t));
  }
}

TEST_CASE("two curve blow-ups equal one point blow-up on normal forms") {
  std::mt19937_64 rng(13);
  int trunc = 12;
  for (int trial = 0; trial < 20; ++trial) {
    MSeries f = testing::random_series(rng, trunc, 4, 1, 3);
    MSeries g = testing::random_series(rng, trunc, 4, 1, 3);
    int n = 2 + trial % 3;
    MSeries z = MSeries::variable(Var::z, trunc);
    VectorField X{MSeries::variable(Var::y, trunc) + z * f, z * g, MSeries::monomial({0, 0, n}, Scalar(1), trunc)};
    BlowupResult c1 = curve_blowup(X, curve_chart(Var::x, ChartKind::CurveChartFirst));
    // Pullbacks compose, so the second blow-up acts on the unfactored transform.
    BlowupResult c2 = curve_blowup(c1.raw, curve_chart(Var::y, ChartKind::CurveChartFirst));
    BlowupResult p = point_blowup(X, point_chart(Var::z));
    int t = std::min(c2.Y.trunc(), p.Y.trunc()) - 1;
    Factored a = factor_divisor(c2.Y.truncated(t), Var::z), b = factor_divisor(p.Y.truncated(t), Var::z);
    int s = std::min(a.Y.trunc(), b.Y.trunc());
    CHECK(a.Y.truncated(s) == b.Y.truncated(s));
  }
}
