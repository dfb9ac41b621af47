#include <doctest.h>

#include "fol/errors.hpp"
#include "fol/parse.hpp"
#include "fol/vector_field.hpp"
#include "support.hpp"

using namespace fol;

namespace {

VectorField F(const char* text, int trunc = 12) { return parse_field(text, trunc); }

Matrix3 random_invertible(std::mt19937_64& rng) {
  for (;;) {
    Matrix3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = testing::random_scalar(rng, 2);
    if (!m.determinant().is_zero()) return m;
  }
}

}  // namespace

TEST_CASE("classify examples") {
  CHECK(classify(F("[x^2, x*z, y - x*z]")).tag == SingularityTag::NilpotentNonzero);
  SingularityClass radial = classify(F("[x, y, z]"));
  CHECK(radial.tag == SingularityTag::Elementary);
  CHECK(radial.invariants[0] == Scalar(3));
  CHECK(radial.invariants[1] == Scalar(3));
  CHECK(radial.invariants[2] == Scalar(1));
  CHECK(classify(F("[x^2, y^2, z^2]")).tag == SingularityTag::ZeroLinearPart);
  CHECK(classify(F("[1 + x, y, z]")).tag == SingularityTag::Regular);
  // Nonzero eigenvalue hidden off the diagonal: x d/dy + y d/dx has eigenvalues +1, -1.
  CHECK(classify(F("[y, x, z^2]")).tag == SingularityTag::Elementary);
}

TEST_CASE("linear part layout") {
  Matrix3 m = linear_part(F("[y - 2z, 3x, i*z]"));
  CHECK(m(0, 1) == Scalar(1));
  CHECK(m(0, 2) == Scalar(-2));
  CHECK(m(1, 0) == Scalar(3));
  CHECK(m(2, 2) == Scalar::i());
  CHECK(m(0, 0).is_zero());
}

TEST_CASE("order_at_origin examples") {
  CHECK(order_at_origin(F("[x^2, x*z, y - x*z]")) == 1);
  CHECK(order_at_origin(F("[x^2, y^2, z^2]")) == 2);
  CHECK(order_at_origin(F("[y, 0, z^2]")) == 1);
  CHECK_THROWS_AS(order_at_origin(F("[0, 0, 0]")), AllZero);
}

TEST_CASE("order_wrt_curve examples") {
  CHECK(order_wrt_curve(F("[y, x*z, z^2]"), Var::z) == 1);
  CHECK(order_wrt_curve(F("[x^2, y^2, z]"), Var::z) == 1);
  CHECK(order_wrt_curve(F("[x, y, 0]"), Var::z) == 1);
  CHECK(order_wrt_curve(F("[x^2*z, y^3, x^2*y]"), Var::z) == 2);
  // Same field with the roles of x and z exchanged, measured along the x-axis.
  CHECK(order_wrt_curve(F("[z^2*y, y^3, x*z^2]"), Var::x) == 2);
  CHECK_THROWS_AS(order_wrt_curve(F("[0, 0, 0]"), Var::z), AllZero);
}

TEST_CASE("factor_divisor examples") {
  Factored f = factor_divisor(F("[z, z, z^2]"), Var::z);
  CHECK(f.exponent == 1);
  CHECK(f.Y == F("[1, 1, z]", 11));
  Factored g = factor_divisor(F("[x^2, x*z, y - x*z]"), Var::z);
  CHECK(g.exponent == 0);
  CHECK(g.Y == F("[x^2, x*z, y - x*z]"));
}

TEST_CASE("conjugate examples") {
  VectorField Z = F("[x^2, x*z, y - x*z]");
  CHECK(conjugate(Z, identity_map(13)) == Z);
  PolyMap swap{MSeries::variable(Var::y, 13), MSeries::variable(Var::x, 13), MSeries::variable(Var::z, 13)};
  CHECK(conjugate(F("[y, 0, 0]"), swap) == F("[0, x, 0]"));

  // Shear moving the graph (z^2, z, z) of a curve onto the z-axis.
  VectorField X = F("[y - z, z*x, z^3]");
  PolyMap H{parse_series("x + z^2", 13), parse_series("y + z", 13), parse_series("z", 13)};
  VectorField Y = conjugate(X, H);
  CHECK(Y.trunc() == 12);
  // Direct formula for a shear: Y = X o H - (d(shift)/dz) * H-component.
  CHECK(Y[0] == F("[y - 2*z^4, 0, 0]")[0]);
  CHECK(Y[1] == parse_series("z*x + z^3 - z^3", 12));
  CHECK(Y[2] == parse_series("z^3", 12));
  PolyMap singular{MSeries::variable(Var::x, 13), MSeries::variable(Var::x, 13), MSeries::variable(Var::z, 13)};
  CHECK_THROWS_AS(conjugate(X, singular), NonInvertibleLinearPart);
}

TEST_CASE("classification and order are invariant under linear changes") {
  std::mt19937_64 rng(31);
  const char* fields[] = {"[x^2, x*z, y - x*z]", "[x, y, z]", "[x^2, y^2, z^2]", "[y - z, z*x, z^3]",
                          "[x + y*z, 2y, x^2 - z]", "[y, z, x^3]"};
  for (const char* text : fields) {
    VectorField X = F(text);
    for (int k = 0; k < 10; ++k) {
      Matrix3 P = random_invertible(rng);
      VectorField Y = conjugate(X, linear_map(P, 13));
      CHECK(classify(Y).tag == classify(X).tag);
      CHECK(order_at_origin(Y) == order_at_origin(X));
    }
  }
}

TEST_CASE("factor then multiply reconstructs") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 30; ++k) {
    VectorField X{testing::random_series(rng, 10, 5, 0, 5), testing::random_series(rng, 10, 5, 0, 5),
                  testing::random_series(rng, 10, 5, 0, 5)};
    int e = 1 + k % 3;
    MSeries ze = MSeries::monomial({0, 0, e}, Scalar(1), 10 + e);
    VectorField Xe = ze * VectorField{X[0].truncated(10 + e), X[1].truncated(10 + e), X[2].truncated(10 + e)};
    Factored f = factor_divisor(Xe, Var::z);
    CHECK(f.exponent >= e);
    VectorField back = MSeries::monomial({0, 0, f.exponent}, Scalar(1), 10 + e) * f.Y;
    CHECK(back.truncated(f.Y.trunc()) == Xe.truncated(f.Y.trunc()));
  }
}

TEST_CASE("classification does not depend on untrusted coefficients") {
  const char* fields[] = {"[x^2, x*z, y - x*z]", "[x, y, z]", "[x^2, y^2, z^2]", "[y - z, z*x, z^3]"};
  for (const char* text : fields) {
    SingularityTag base = classify(F(text, 1)).tag;
    for (int t = 2; t <= 20; t += 3) CHECK(classify(F(text, t)).tag == base);
  }
  CHECK_THROWS_AS(classify(F("[x, y, z]", 0)), PrecisionExhausted);
}
