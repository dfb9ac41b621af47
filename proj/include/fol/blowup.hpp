#pragma once

#include <string>

#include "fol/vector_field.hpp"

namespace fol {

enum class ChartKind { PointChartX, PointChartY, PointChartZ, CurveChartFirst, CurveChartSecond, Weight2 };

// A monomial chart of a blow-up, optionally re-centered at a point of the exceptional divisor.
// Point chart with divisor d: x_i = (u_i + offset_i) u_d for i != d, x_d = u_d.
// Curve chart along axis a with the other coordinates p < q:
//   CurveChartFirst  x_p = (u_p + offset_p) u_q, divisor q  ({y=z=0}: y = v z),
//   CurveChartSecond x_q = (u_q + offset_q) u_p, divisor p  ({y=z=0}: z = w y).
// Weight2: (x, y, z) = (u, v w, w^2), divisor w, center {y=z=0}.
struct ChartMap {
  ChartKind kind = ChartKind::PointChartZ;
  Var divisor = Var::z;
  Var axis = Var::x;
  std::array<Scalar, 3> offset{};

  // Exponent matrix of the substitution without offsets: row i is the monomial replacing x_i.
  std::array<Exponent, 3> substitution() const;
  PolyMap map(int trunc) const;
  bool is_point_chart() const;
};

ChartMap point_chart(Var divisor, const std::array<Scalar, 3>& offset = {});
ChartMap curve_chart(Var axis, ChartKind kind, const Scalar& offset = Scalar());
ChartMap weight2_chart();

std::string chart_name(const ChartMap& chart);

struct BlowupResult {
  VectorField raw;  // pullback, before factoring
  VectorField Y;    // representative, not divisible by the divisor variable
  int divisor_exponent = 0;
  bool dicritical = false;
  ChartMap chart;
};

BlowupResult point_blowup(const VectorField& X, const ChartMap& chart);
BlowupResult curve_blowup(const VectorField& X, const ChartMap& chart);
// Y here is the bracket: the unit h o Pi is divided out as well.
BlowupResult weight2_blowup(const VectorField& X);

// Pullback of X through a monomial chart (no factoring, no precondition checks).
VectorField pullback(const VectorField& X, const ChartMap& chart);

}  // namespace fol
