#include "fol/separatrix.hpp"

#include <algorithm>
#include <sstream>

#include "fol/errors.hpp"

namespace fol {

int FormalCurve::trunc() const { return std::min({phi[0].trunc(), phi[1].trunc(), phi[2].trunc()}); }

FormalCurve graph_curve(const USeries& a, const USeries& b) {
  int t = std::min(a.trunc(), b.trunc());
  FormalCurve c;
  c.phi = {a.truncated(t), b.truncated(t), USeries::parameter(t)};
  c.graph_over_z = true;
  return c;
}

FormalCurve axis_curve(Var axis, int trunc) {
  FormalCurve c;
  c.phi = {USeries(trunc), USeries(trunc), USeries(trunc)};
  c.phi[static_cast<std::size_t>(index(axis))] = USeries::parameter(trunc);
  c.graph_over_z = axis == Var::z;
  return c;
}

Valuation tangency(const FormalCurve& c) {
  if (!c.graph_over_z) throw NotGraph("tangency is measured for graphs over z");
  Valuation a = valuation(c[0]), b = valuation(c[1]);
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

namespace {

std::array<USeries, 3> image(const VectorField& X, const FormalCurve& phi) {
  return {compose(X[0], phi.phi), compose(X[1], phi.phi), compose(X[2], phi.phi)};
}

}  // namespace

ResidualReport invariance_residual(const VectorField& X, const FormalCurve& phi) {
  auto img = image(X, phi);
  std::array<USeries, 3> d{derivative(phi[0]), derivative(phi[1]), derivative(phi[2])};
  // Cross products of phi' with X o phi; the third one matters when phi2' vanishes.
  std::array<USeries, 3> res{d[0] * img[1] - d[1] * img[0], d[1] * img[2] - d[2] * img[1],
                             d[2] * img[0] - d[0] * img[2]};
  ResidualReport r;
  r.trunc = std::min({res[0].trunc(), res[1].trunc(), res[2].trunc()});
  r.vanishing_through = r.trunc;
  for (const auto& s : res) {
    Valuation v = valuation(s.truncated(r.trunc));
    if (v) r.vanishing_through = std::min(r.vanishing_through, *v - 1);
  }
  return r;
}

int multiplicity(const VectorField& X, const FormalCurve& phi) {
  ResidualReport rr = invariance_residual(X, phi);
  if (!rr.accepted())
    throw NotASeparatrix("invariance residual is nonzero at degree " + std::to_string(rr.vanishing_through + 1));
  auto img = image(X, phi);
  if (std::all_of(img.begin(), img.end(), [](const USeries& s) { return s.is_zero(); }))
    throw ZeroAlongCurve("X vanishes identically along the curve at trusted precision");

  std::array<Valuation, 3> dv;
  int best = -1;
  for (int i = 0; i < 3; ++i) {
    dv[i] = valuation(derivative(phi[i]));
    if (dv[i] && (best < 0 || *dv[i] < *dv[best])) best = i;
  }
  if (best < 0) throw NotASeparatrix("curve is constant at trusted precision");
  Valuation ord = valuation(img[best]);
  if (!ord) throw ZeroAlongCurve("component of X o phi along the tangent vanishes at trusted precision");
  int mult = *ord - *dv[best];

  for (int j = 0; j < 3; ++j) {
    if (j == best || !dv[j]) continue;
    Valuation oj = valuation(img[j]);
    if (!oj) continue;  // may lie beyond trusted precision
    if (*oj - *dv[j] != mult)
      throw NotASeparatrix("X o phi is not parallel to phi' (component orders disagree)");
    break;
  }
  return mult;
}

namespace {

struct Stage {
  // Which residual coefficients determine (a_d, b_d).
  enum Kind { Full, NullSplit, NextDegree } kind = Full;
  std::array<Scalar, 2> v{};  // row selector for the current degree (NullSplit)
  std::array<Scalar, 2> w{};  // left null vector of the linear block (NullSplit)
};

std::string witness(int d, const Matrix2& J, const std::array<Scalar, 2>& s0) {
  std::ostringstream os;
  os << "J = [[" << J(0, 0) << ", " << J(0, 1) << "], [" << J(1, 0) << ", " << J(1, 1) << "]], rhs = ["
     << -s0[0] << ", " << -s0[1] << "] at degree " << d;
  return os.str();
}

// Coefficient of z^m in F(a, b, z) - a' H(a, b, z) and G(a, b, z) - b' H(a, b, z).
std::array<Scalar, 2> residual_at(const VectorField& X, const USeries& a, const USeries& b, int m) {
  int t = m + 1;
  std::array<USeries, 3> curve{a.truncated(t), b.truncated(t), USeries::parameter(t)};
  for (auto& c : curve)
    if (c.trunc() < t) c = USeries(std::vector<Scalar>(c.coeffs()), t);
  USeries H = compose(X[2].truncated(m), curve);
  USeries Ex = compose(X[0].truncated(m), curve) - derivative(curve[0]) * H;
  USeries Ey = compose(X[1].truncated(m), curve) - derivative(curve[1]) * H;
  return {Ex.at(m), Ey.at(m)};
}

}  // namespace

FormalCurve solve_graph_separatrix(const VectorField& X, int N) {
  const MSeries& H = X[2];
  MSeries on_axis = restrict_zero(restrict_zero(H, Var::x), Var::y);
  Valuation nv = valuation(on_axis);
  if (!nv || *nv < 1)
    throw NotGraphParameterizable("d/dz component must vanish to finite positive order along the z-axis");
  int n = *nv;
  for (const auto& [e, c] : H.terms())
    if ((e[0] > 0 || e[1] > 0) && degree(e) <= n)
      throw NotGraphParameterizable("d/dz component does not z-parameterize the curve at lowest order");
  for (int i = 0; i < 2; ++i)
    if (!X[i].constant_term().is_zero()) throw NotGraphParameterizable("origin is a regular point");

  Matrix2 L0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      Exponent e{0, 0, 0};
      e[c] = 1;
      L0(r, c) = X[r].coeff(e);
    }
  int rank = 2;
  if (L0.determinant().is_zero()) rank = (L0(0, 0).is_zero() && L0(0, 1).is_zero() && L0(1, 0).is_zero() &&
                                          L0(1, 1).is_zero()) ? 0 : 1;

  Stage st;
  if (n == 1 || rank == 2) {
    st.kind = Stage::Full;
  } else if (rank == 1) {
    st.kind = Stage::NullSplit;
    int r = (L0(0, 0).is_zero() && L0(0, 1).is_zero()) ? 1 : 0;
    st.v[r] = Scalar(1);
    if (!L0(1, 0).is_zero() || !L0(0, 0).is_zero())
      st.w = {L0(1, 0), -L0(0, 0)};
    else
      st.w = {L0(1, 1), -L0(0, 1)};
  } else {
    st.kind = Stage::NextDegree;
    Matrix2 J1;
    for (int r = 0; r < 2; ++r) {
      J1(r, 0) = X[r].coeff({1, 0, 1});
      J1(r, 1) = X[r].coeff({0, 1, 1});
    }
    if (J1.determinant().is_zero())
      throw NotGraphParameterizable("linear block vanishes and the z-linear block is singular");
  }

  int lookahead = st.kind == Stage::Full ? 0 : 1;
  if (N + lookahead > X.trunc())
    throw PrecisionExhausted("solving to degree " + std::to_string(N) + " needs trunc " +
                             std::to_string(N + lookahead) + ", field has " + std::to_string(X.trunc()));

  USeries a(N), b(N);
  auto stage_eqs = [&](int d) -> std::array<Scalar, 2> {
    switch (st.kind) {
      case Stage::Full: return residual_at(X, a, b, d);
      case Stage::NullSplit: {
        auto cur = residual_at(X, a, b, d);
        auto next = residual_at(X, a, b, d + 1);
        return {st.v[0] * cur[0] + st.v[1] * cur[1], st.w[0] * next[0] + st.w[1] * next[1]};
      }
      case Stage::NextDegree: return residual_at(X, a, b, d + 1);
    }
    return {};
  };

  // Degree-1 consistency for the look-ahead schemes: these equations involve no unknown.
  if (st.kind != Stage::Full) {
    auto e1 = residual_at(X, a, b, 1);
    Scalar lhs = st.kind == Stage::NullSplit ? st.w[0] * e1[0] + st.w[1] * e1[1] : e1[0];
    Scalar rhs2 = st.kind == Stage::NullSplit ? Scalar() : e1[1];
    if (!lhs.is_zero() || !rhs2.is_zero())
      throw Obstructed(1, "equations at degree 1 have no unknowns and do not vanish");
  }

  for (int d = 1; d <= N; ++d) {
    auto eval = [&](long p, long q) {
      a[d] = Scalar(p);
      b[d] = Scalar(q);
      return stage_eqs(d);
    };
    auto s0 = eval(0, 0), s1 = eval(1, 0), s2 = eval(0, 1);
    Matrix2 J;
    for (int r = 0; r < 2; ++r) {
      J(r, 0) = s1[r] - s0[r];
      J(r, 1) = s2[r] - s0[r];
    }
    const std::array<std::array<long, 2>, 3> probes{{{1, 1}, {2, 0}, {0, 2}}};
    for (const auto& p : probes) {
      auto s = eval(p[0], p[1]);
      for (int r = 0; r < 2; ++r)
        if (s[r] != s0[r] + J(r, 0) * Scalar(p[0]) + J(r, 1) * Scalar(p[1]))
          throw Obstructed(d, "stage equations are not affine in the unknowns");
    }

    Scalar det = J.determinant();
    Scalar ad, bd;
    if (!det.is_zero()) {
      ad = (-s0[0] * J(1, 1) + s0[1] * J(0, 1)) / det;
      bd = (-s0[1] * J(0, 0) + s0[0] * J(1, 0)) / det;
    } else {
      // Resonant degree: solve when consistent, with the free parameter set to zero.
      int col = !J(0, 0).is_zero() || !J(1, 0).is_zero() ? 0 : (!J(0, 1).is_zero() || !J(1, 1).is_zero() ? 1 : -1);
      if (col < 0) {
        if (!s0[0].is_zero() || !s0[1].is_zero()) throw Obstructed(d, witness(d, J, s0));
      } else {
        if (J(0, col) * s0[1] != J(1, col) * s0[0]) throw Obstructed(d, witness(d, J, s0));
        int r = J(0, col).is_zero() ? 1 : 0;
        Scalar val = -s0[r] / J(r, col);
        (col == 0 ? ad : bd) = val;
      }
    }
    a[d] = ad;
    b[d] = bd;
  }
  return graph_curve(a, b);
}

FormalCurve transform_curve(const FormalCurve& phi, const ChartMap& chart) {
  FormalCurve out;
  if (chart.kind == ChartKind::Weight2) {
    if (!phi.graph_over_z) throw NotGraph("weight-2 transform needs a graph over z");
    if (!phi[1][0].is_zero() || !phi[2][0].is_zero()) throw CurveMissesCenter("curve does not meet {y=z=0}");
    USeries y2 = substitute_square(phi[1]);
    int t = y2.trunc() - 1;
    try {
      out.phi = {substitute_square(phi[0]).truncated(t), shift_down(y2, 1).truncated(t), USeries::parameter(t)};
    } catch (const NotDivisible& e) {
      throw DivisionObstructed(e.what());
    }
    out.graph_over_z = true;
    out.parameter_squared = true;
    return out;
  }

  int d = index(chart.divisor);
  auto rows = chart.substitution();
  std::vector<int> scaled;
  for (int i = 0; i < 3; ++i)
    if (i != d && rows[i][d] == 1) scaled.push_back(i);
  // The curve must meet the center: the divisor and scaled coordinates vanish at T = 0.
  if (!phi[d][0].is_zero()) throw CurveMissesCenter("curve does not pass through the blow-up center");
  for (int i : scaled)
    if (!phi[i][0].is_zero()) throw CurveMissesCenter("curve does not pass through the blow-up center");

  Valuation vd = valuation(phi[d]);
  if (!vd) throw DivisionObstructed("divisor coordinate vanishes along the curve");
  out.phi = phi.phi;
  for (int i : scaled) {
    Valuation vi = valuation(phi[i]);
    if (vi && *vi < *vd)
      throw DivisionObstructed(std::string("valuation of ") + var_name(var_at(i)) +
                               " is below that of the divisor coordinate; the curve lies in another chart");
    out.phi[i] = divide(phi[i], phi[d]) - USeries::constant(chart.offset[i], phi[i].trunc());
  }
  int t = out.trunc();
  for (auto& c : out.phi) c = c.truncated(t);
  out.graph_over_z = out.phi[2] == USeries::parameter(t) && phi.graph_over_z;
  return out;
}

Straightened straighten(const VectorField& X, const FormalCurve& phi, int m) {
  if (!phi.graph_over_z) throw NotGraph("straightening needs a graph over z");
  if (m > X.trunc()) throw PrecisionExhausted("straightening degree exceeds the field's trunc");
  int t = X.trunc() + 1;
  PolyMap Hm = identity_map(t);
  USeries am = phi[0].truncated(m), bm = phi[1].truncated(m);
  for (int k = 1; k <= am.trunc(); ++k) {
    Hm[0].add_term({0, 0, k}, am[k]);
    Hm[1].add_term({0, 0, k}, bm[k]);
  }
  Straightened out;
  out.X = conjugate(X, Hm);
  USeries ra = phi[0], rb = phi[1];
  for (int k = 0; k <= am.trunc(); ++k) {
    ra[k] = Scalar();
    rb[k] = Scalar();
  }
  out.curve = graph_curve(ra, rb);
  return out;
}

}  // namespace fol
