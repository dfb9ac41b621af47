#include "fol/blowup.hpp"

#include "fol/errors.hpp"
#include "fol/normal_form.hpp"

namespace fol {

namespace {

Exponent unit_exp(int i) {
  Exponent e{0, 0, 0};
  e[i] = 1;
  return e;
}

std::pair<int, int> transverse_pair(Var axis) {
  int a = index(axis);
  int p = a == 0 ? 1 : 0;
  int q = a == 2 ? 1 : 2;
  return {p, q};
}

bool is_scaled(const ChartMap& c, int i) {
  if (c.kind == ChartKind::Weight2) return false;
  return c.substitution()[i] != unit_exp(i);
}

}  // namespace

std::array<Exponent, 3> ChartMap::substitution() const {
  std::array<Exponent, 3> rows{unit_exp(0), unit_exp(1), unit_exp(2)};
  int d = index(divisor);
  switch (kind) {
    case ChartKind::PointChartX:
    case ChartKind::PointChartY:
    case ChartKind::PointChartZ:
      for (int i = 0; i < 3; ++i)
        if (i != d) rows[i][d] = 1;
      break;
    case ChartKind::CurveChartFirst:
    case ChartKind::CurveChartSecond: {
      auto [p, q] = transverse_pair(axis);
      int scaled = kind == ChartKind::CurveChartFirst ? p : q;
      rows[scaled][d] = 1;
      break;
    }
    case ChartKind::Weight2:
      rows[1] = {0, 1, 1};
      rows[2] = {0, 0, 2};
      break;
  }
  return rows;
}

bool ChartMap::is_point_chart() const {
  return kind == ChartKind::PointChartX || kind == ChartKind::PointChartY || kind == ChartKind::PointChartZ;
}

PolyMap ChartMap::map(int trunc) const {
  auto rows = substitution();
  PolyMap H;
  for (int i = 0; i < 3; ++i) {
    H[i] = MSeries::monomial(rows[i], Scalar(1), trunc);
    if (is_scaled(*this, i)) H[i].add_term(unit_exp(index(divisor)), offset[i]);
  }
  return H;
}

ChartMap point_chart(Var divisor, const std::array<Scalar, 3>& offset) {
  ChartMap c;
  c.kind = static_cast<ChartKind>(index(divisor));
  c.divisor = divisor;
  c.offset = offset;
  c.offset[index(divisor)] = Scalar();
  return c;
}

ChartMap curve_chart(Var axis, ChartKind kind, const Scalar& offset) {
  if (kind != ChartKind::CurveChartFirst && kind != ChartKind::CurveChartSecond)
    throw DomainError("curve_chart needs a curve chart kind");
  ChartMap c;
  c.kind = kind;
  c.axis = axis;
  auto [p, q] = transverse_pair(axis);
  c.divisor = var_at(kind == ChartKind::CurveChartFirst ? q : p);
  c.offset[kind == ChartKind::CurveChartFirst ? p : q] = offset;
  return c;
}

ChartMap weight2_chart() {
  ChartMap c;
  c.kind = ChartKind::Weight2;
  c.divisor = Var::z;
  c.axis = Var::x;
  return c;
}

std::string chart_name(const ChartMap& chart) {
  switch (chart.kind) {
    case ChartKind::PointChartX: return "point_x";
    case ChartKind::PointChartY: return "point_y";
    case ChartKind::PointChartZ: return "point_z";
    case ChartKind::CurveChartFirst: return std::string("curve_first_") + var_name(chart.axis);
    case ChartKind::CurveChartSecond: return std::string("curve_second_") + var_name(chart.axis);
    case ChartKind::Weight2: return "weight2";
  }
  return "unknown";
}

VectorField pullback(const VectorField& X, const ChartMap& chart) {
  int trunc = X.trunc();
  PolyMap pi = chart.map(trunc);
  VectorField W{substitute(X[0], pi), substitute(X[1], pi), substitute(X[2], pi)};
  int d = index(chart.divisor);
  VectorField out;

  if (chart.kind == ChartKind::Weight2) {
    // z = w^2 gives w' = H/(2w); y = v w gives v' = (G - v w')/w.
    MSeries wdot = divide_by_variable(W[2], Var::z) * Scalar(mpq_class(1, 2));
    MSeries v = MSeries::variable(Var::y, trunc);
    out[0] = W[0];
    out[2] = wdot;
    out[1] = divide_by_variable(W[1] - v * wdot, Var::z);
    return out.truncated(out.trunc());
  }

  out[d] = W[d];
  for (int i = 0; i < 3; ++i) {
    if (i == d) continue;
    if (!is_scaled(chart, i)) {
      out[i] = W[i];
      continue;
    }
    MSeries ui = MSeries::variable(var_at(i), trunc);
    ui.add_term({0, 0, 0}, chart.offset[i]);
    out[i] = divide_by_variable(W[i] - ui * W[d], chart.divisor);
  }
  return out.truncated(out.trunc());
}

namespace {

BlowupResult finish(VectorField raw, const ChartMap& chart) {
  BlowupResult r;
  r.chart = chart;
  r.raw = std::move(raw);
  Factored f = factor_divisor(r.raw, chart.divisor);
  r.divisor_exponent = f.exponent;
  r.Y = std::move(f.Y);
  r.dicritical = divisor_power(r.Y[chart.divisor], chart.divisor) < 1 && !r.Y[chart.divisor].is_zero();
  return r;
}

}  // namespace

BlowupResult point_blowup(const VectorField& X, const ChartMap& chart) {
  if (!chart.is_point_chart()) throw DomainError("point_blowup needs a point chart");
  for (const auto& c : X.comp)
    if (!c.constant_term().is_zero()) throw RegularPoint("the origin is a regular point of the field");
  return finish(pullback(X, chart), chart);
}

BlowupResult curve_blowup(const VectorField& X, const ChartMap& chart) {
  if (chart.kind != ChartKind::CurveChartFirst && chart.kind != ChartKind::CurveChartSecond)
    throw DomainError("curve_blowup needs a curve chart");
  auto [p, q] = transverse_pair(chart.axis);
  for (int i = 0; i < 3; ++i) {
    MSeries on_axis = restrict_zero(restrict_zero(X[i], var_at(p)), var_at(q));
    if (!on_axis.is_zero())
      throw CenterNotInvariantOrNotSingular(std::string("component ") + var_name(var_at(i)) +
                                            " does not vanish on the center axis");
  }
  return finish(pullback(X, chart), chart);
}

BlowupResult weight2_blowup(const VectorField& X) {
  NormalFormMatch m = match_normal_form(X);
  if (!m.form) throw NotInNormalForm(m.violated);
  ChartMap chart = weight2_chart();
  BlowupResult r = finish(pullback(X, chart), chart);
  MSeries h = substitute(m.form->h, chart.map(m.form->h.trunc()));
  r.Y = (inverse_unit(h.truncated(r.Y.trunc())) * r.Y).truncated(r.Y.trunc());
  return r;
}

}  // namespace fol
