#pragma once

#include <random>

#include "fol/series.hpp"

namespace fol::testing {

inline Scalar random_scalar(std::mt19937_64& rng, int spread = 3, bool complex = true) {
  std::uniform_int_distribution<int> num(-spread, spread);
  std::uniform_int_distribution<int> den(1, 3);
  mpq_class re(num(rng), den(rng));
  mpq_class im = complex ? mpq_class(num(rng), den(rng)) : mpq_class(0);
  return Scalar(re, im);
}

// Sparse random series with terms of degree in [min_deg, max_deg].
inline MSeries random_series(std::mt19937_64& rng, int trunc, int terms, int min_deg, int max_deg,
                             bool complex = true) {
  MSeries s(trunc);
  std::uniform_int_distribution<int> deg(min_deg, max_deg);
  for (int t = 0; t < terms; ++t) {
    int d = deg(rng);
    std::uniform_int_distribution<int> split(0, d);
    int a = split(rng);
    int b = std::uniform_int_distribution<int>(0, d - a)(rng);
    s.add_term({a, b, d - a - b}, random_scalar(rng, 3, complex));
  }
  return s;
}

}  // namespace fol::testing

#include "fol/separatrix.hpp"

namespace fol::testing {

// A field with a prescribed polynomial separatrix: an axis-invariant field pulled back by a
// unipotent shear H(x, y, z) = (x + p(y, z), y + q(z), z). The z-axis of the original becomes
// the curve H^{-1}(0, 0, T) = (-p(-q(T), T), -q(T), T).
struct PlantedField {
  VectorField X;
  FormalCurve separatrix;
};

inline PlantedField planted_field(std::mt19937_64& rng, int trunc, int min_order) {
  MSeries x = MSeries::variable(Var::x, trunc), y = MSeries::variable(Var::y, trunc),
          z = MSeries::variable(Var::z, trunc);
  std::uniform_int_distribution<int> zpow(std::max(min_order, 1), 3);
  VectorField A;
  // Every term of F and G contains x or y, so the z-axis is invariant.
  for (int i = 0; i < 2; ++i) {
    MSeries s = random_series(rng, trunc, 3, std::max(min_order, 1) - 1, 2);
    A[i] = (i == 0 ? x : y) * s + random_series(rng, trunc, 2, std::max(min_order, 1), 3) * (i == 0 ? y : x);
    A[i] = A[i].truncated(trunc);
  }
  A[2] = MSeries::monomial({0, 0, zpow(rng)}, random_scalar(rng, 2, false) + Scalar(3), trunc) +
         random_series(rng, trunc, 3, std::max(min_order, 2), 3);
  for (auto& c : A.comp)
    if (valuation(c) && *valuation(c) < min_order) c = c - c.truncated(min_order - 1);

  // p(y, z), q(z): polynomials of degree <= 3 with no constant term.
  MSeries p(trunc + 1), q(trunc + 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int d = (min_order >= 2 ? 2 : 1); d <= 3; ++d) {
    if (coin(rng)) q.add_term({0, 0, d}, random_scalar(rng, 2));
    for (int j = 0; j <= d; ++j)
      if (coin(rng)) p.add_term({0, j, d - j}, random_scalar(rng, 2));
  }
  PolyMap H{MSeries::variable(Var::x, trunc + 1) + p, MSeries::variable(Var::y, trunc + 1) + q,
            MSeries::variable(Var::z, trunc + 1)};
  PlantedField out;
  out.X = conjugate(A, H);

  // Inverse image of the z-axis.
  USeries T = USeries::parameter(trunc);
  std::array<USeries, 3> zt{USeries(trunc), USeries(trunc), T};
  USeries qT = compose(q.truncated(trunc), zt);
  std::array<USeries, 3> at{USeries(trunc), -qT, T};
  USeries pT = compose(p.truncated(trunc), at);
  out.separatrix = graph_curve(-pT, -qT);
  return out;
}

inline VectorField random_singular_field(std::mt19937_64& rng, int trunc, int min_deg) {
  return {random_series(rng, trunc, 4, min_deg, 3), random_series(rng, trunc, 4, min_deg, 3),
          random_series(rng, trunc, 4, min_deg, 3)};
}

// X conjugated by a shear of order c that moves its separatrix along the given axis to a curve
// with contact exactly c: for the z-axis, H = (x + z^c, y + 2 z^(c+1), z) and the axis becomes
// (-T^c, -2 T^(c+1), T).
inline PlantedField with_contact(const VectorField& X, Var axis, int c) {
  int t = X.trunc();
  int a = index(axis);
  int p = (a + 1) % 3, q = (a + 2) % 3;
  std::array<MSeries, 3> H;
  for (int v = 0; v < 3; ++v) H[v] = MSeries::variable(var_at(v), t + 1);
  Exponent ep{}, eq{};
  ep[a] = c;
  eq[a] = c + 1;
  H[p] = H[p] + MSeries::monomial(ep, Scalar(1), t + 1);
  H[q] = H[q] + MSeries::monomial(eq, Scalar(2), t + 1);
  FormalCurve curve;
  for (auto& s : curve.phi) s = USeries(t);
  curve.phi[a] = USeries::parameter(t);
  curve.phi[p][c] = Scalar(-1);
  curve.phi[q][c + 1] = Scalar(-2);
  curve.graph_over_z = a == 2;
  return {conjugate(X, PolyMap{H[0], H[1], H[2]}), curve};
}

}  // namespace fol::testing
