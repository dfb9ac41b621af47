#include <doctest.h>

#include <cmath>

#include "fol/errors.hpp"
#include "fol/series.hpp"
#include "support.hpp"

using namespace fol;

namespace {

MSeries X(int t) { return MSeries::variable(Var::x, t); }
MSeries Y(int t) { return MSeries::variable(Var::y, t); }
MSeries Z(int t) { return MSeries::variable(Var::z, t); }

}  // namespace

TEST_CASE("scalar arithmetic is exact") {
  Scalar a(mpq_class(1, 2), mpq_class(3, 4));
  Scalar b(mpq_class(-2, 3), mpq_class(1));
  CHECK(a * a.inverse() == Scalar(1));
  CHECK((a + b) - b == a);
  CHECK(a * b == Scalar(mpq_class(-1, 3) - mpq_class(3, 4), mpq_class(1, 2) - mpq_class(1, 2)));
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK_THROWS_AS(Scalar().inverse(), DomainError);
}

TEST_CASE("scalar canonical printing round-trips") {
  CHECK(Scalar(mpq_class(1, 2), mpq_class(3, 4)).str() == "1/2+3/4*i");
  CHECK(Scalar(mpq_class(-1, 2), mpq_class(-1)).str() == "-1/2-i");
  CHECK(Scalar(0, 1).str() == "i");
  CHECK(Scalar(0, -3).str() == "-3*i");
  CHECK(Scalar(mpq_class(4, 6)).str() == "2/3");
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    Scalar s = testing::random_scalar(rng, 9);
    CHECK(Scalar::parse(s.str()) == s);
  }
  CHECK_THROWS_AS(Scalar::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Scalar::parse("abc"), ParseError);
}

TEST_CASE("series_mul examples") {
  int t = 8;
  CHECK((X(t) + Y(t)) * (X(t) - Y(t)) == X(t) * X(t) - Y(t) * Y(t));
  MSeries s = X(t) * Z(t) + Scalar(3) * Y(t);
  CHECK(s * MSeries::constant(Scalar(1), t) == s);
  MSeries l = X(1) + Y(1) + Z(1);
  MSeries sq = l * l;
  CHECK(sq.trunc() == 1);
  CHECK(sq.is_zero());
}

TEST_CASE("substitute examples") {
  int t = 10;
  // (u, v, z) chart: x = uz, y = vz.
  std::array<MSeries, 3> chart{X(t) * Z(t), Y(t) * Z(t), Z(t)};
  CHECK(substitute(X(t) * Y(t), chart) == MSeries::monomial({1, 1, 2}, Scalar(1), t));
  CHECK(substitute(X(t), chart) == MSeries::monomial({1, 0, 1}, Scalar(1), t));
  // Curve on its own graph, with x playing the parameter.
  MSeries T = X(t);
  std::array<MSeries, 3> curve{power(T, 2), power(T, 4), MSeries(t)};
  CHECK(substitute(Y(t) - power(X(t), 2), curve).is_zero());
  std::array<MSeries, 3> bad{X(t) + MSeries::constant(Scalar(1), t), Y(t), Z(t)};
  CHECK_THROWS_AS(substitute(X(t), bad), NonzeroConstantTerm);
}

TEST_CASE("divide_by_variable examples") {
  int t = 9;
  CHECK(divide_by_variable(Z(t) * Z(t) + X(t) * Z(t), Var::z) == (Z(t) + X(t)).truncated(t - 1));
  CHECK_THROWS_AS(divide_by_variable(X(t), Var::z), NotDivisible);
  MSeries f = X(t) * Y(t) + power(Z(t), 3);
  MSeries q = divide_by_variable(Z(t) * f, Var::z);
  CHECK(q.trunc() == t - 1);
  CHECK(q == f.truncated(t - 1));
}

TEST_CASE("valuation examples") {
  int t = 9;
  CHECK(valuation(power(Z(t), 3) + power(Z(t), 5)) == Valuation(3));
  CHECK(!valuation(MSeries(t)).has_value());
  MSeries f = X(t) * Z(t) + Y(t) * Y(t);
  CHECK(valuation(Y(t) + Z(t) * f) == Valuation(1));
  USeries u(6);
  u[4] = Scalar(2);
  CHECK(valuation(u) == Valuation(4));
  CHECK(!valuation(USeries(6)).has_value());
}

TEST_CASE("unit inverses") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    MSeries s = testing::random_series(rng, 8, 6, 1, 4) + MSeries::constant(Scalar(2, 1), 8);
    MSeries prod = s * inverse_unit(s);
    CHECK(prod == MSeries::constant(Scalar(1), 8));
  }
  USeries u(10);
  u[0] = Scalar(1);
  u[1] = Scalar(-1);
  USeries inv = inverse_unit(u);
  for (int k = 0; k <= 10; ++k) CHECK(inv[k] == Scalar(1));
}

TEST_CASE("USeries division and composition") {
  USeries a(8), b(8);
  a[3] = Scalar(2);
  a[4] = Scalar(2);
  b[1] = Scalar(1);
  b[2] = Scalar(1);
  USeries q = divide(a, b);
  CHECK(q.trunc() == 7);
  CHECK(q[2] == Scalar(2));
  CHECK(valuation(q - USeries::constant(Scalar(0), 7)) == Valuation(2));
  for (int k = 3; k <= 7; ++k) CHECK(q[k].is_zero());

  std::array<USeries, 3> curve{USeries::parameter(6), USeries::parameter(6) * USeries::parameter(6),
                               USeries(6)};
  MSeries s = MSeries::variable(Var::y, 6) - power(MSeries::variable(Var::x, 6), 2);
  CHECK(compose(s, curve).is_zero());
  CHECK(substitute_square(USeries::parameter(4))[2] == Scalar(1));
}

TEST_CASE("ratio_divergence_estimate") {
  USeries geo(12);
  for (int k = 0; k <= 12; ++k) geo[k] = Scalar(1);
  DivergenceReport g = ratio_divergence_estimate(geo, 1);
  for (double r : g.ratios) CHECK(r == doctest::Approx(1.0));
  CHECK(std::fabs(g.gevrey_slope) < 1e-9);

  // c_k = k!, fitted against the frozen least-squares oracle (numpy lstsq on lgamma).
  USeries fact(20);
  mpz_class f = 1;
  for (int k = 0; k <= 20; ++k) {
    if (k > 0) f *= k;
    fact[k] = Scalar(mpq_class(f));
  }
  DivergenceReport r = ratio_divergence_estimate(fact, 1);
  CHECK(r.gevrey_slope == doctest::Approx(0.9937073018905882).epsilon(1e-9));
  CHECK(std::fabs(r.gevrey_slope - 1.0) < 0.01);

  USeries sparse(5);
  sparse[1] = Scalar(1);
  sparse[4] = Scalar(1);
  CHECK_THROWS_AS(ratio_divergence_estimate(sparse, 3), InsufficientSupport);
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 50; ++k) {
    MSeries a = testing::random_series(rng, 10, 6, 0, 5);
    MSeries b = testing::random_series(rng, 10, 6, 0, 5);
    MSeries c = testing::random_series(rng, 10, 6, 0, 5);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) + c == a + (b + c));
  }
}

TEST_CASE("substitution composes") {
  std::mt19937_64 rng(99);
  int t = 10;
  for (int k = 0; k < 30; ++k) {
    MSeries s = testing::random_series(rng, t, 6, 0, 4);
    std::array<MSeries, 3> A, B, AB;
    for (auto& c : A) c = testing::random_series(rng, t, 3, 1, 3);
    for (auto& c : B) c = testing::random_series(rng, t, 3, 1, 3);
    for (int v = 0; v < 3; ++v) AB[v] = substitute(A[v], B);
    CHECK(substitute(substitute(s, A), B) == substitute(s, AB));
  }
}

TEST_CASE("divide after multiply restores the series") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    MSeries s = testing::random_series(rng, 9, 6, 0, 9);
    for (int v = 0; v < 3; ++v) {
      MSeries prod = s * MSeries::variable(var_at(v), 9);
      CHECK(divide_by_variable(prod, var_at(v)) == s.truncated(8));
    }
  }
}

TEST_CASE("valuation is additive") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 50; ++k) {
    MSeries a = testing::random_series(rng, 12, 4, 1, 4);
    MSeries b = testing::random_series(rng, 12, 4, 1, 4);
    auto va = valuation(a), vb = valuation(b);
    if (!va || !vb || *va + *vb > 12) continue;
    CHECK(valuation(a * b) == Valuation(*va + *vb));
  }
}

TEST_CASE("series printing") {
  int t = 5;
  MSeries s = X(t) * X(t) - Scalar(3) * Y(t) * Z(t) + Scalar(0, 2) * Z(t) +
              Scalar(mpq_class(1, 2), mpq_class(1)) * X(t) + MSeries::constant(Scalar(-1), t);
  CHECK(to_string(s) == "-1 + (1/2+i)*x + 2*i*z + x^2 - 3*y*z");
  CHECK(to_string(MSeries(t)) == "0");
}
