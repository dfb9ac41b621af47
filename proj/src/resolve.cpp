#include "fol/resolve.hpp"

#include <algorithm>

#include "fol/errors.hpp"
#include "fol/normal_form.hpp"
#include "fol/numeric.hpp"

namespace fol {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::ReachedElementary: return "reached_elementary";
    case Outcome::ReachedRegular: return "reached_regular";
    case Outcome::PersistentNormalFormMatched: return "persistent_normal_form_matched";
    case Outcome::MaxStepsExhausted: return "max_steps_exhausted";
  }
  return "unknown";
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::NotSemicomplete: return "not_semicomplete";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::SemicompleteByHolonomy: return "semicomplete_by_holonomy";
    case Verdict::NotSemicompleteByHolonomy: return "not_semicomplete_by_holonomy";
  }
  return "unknown";
}

Detection detect_persistent_normal_form(const VectorField& X, int N) {
  NormalFormMatch m = match_normal_form(X);
  if (!m.form) return NoMatch{m.violated};
  const NormalForm& nf = *m.form;
  if (nf.lambda.is_zero()) return NoMatch{"lambda = dg/dx(0) vanishes"};

  int degree = std::min(N, nf.bracket.trunc() - 1);
  if (degree < 2) return NoMatch{"insufficient precision to solve the separatrix"};
  PersistentReport r;
  try {
    r.separatrix_prefix = solve_graph_separatrix(nf.bracket, degree);
  } catch (const Error& e) {
    return NoMatch{"no graph separatrix: " + std::string(e.what())};
  }
  r.tangency = tangency(r.separatrix_prefix);
  if (r.tangency && *r.tangency < 2) return NoMatch{"separatrix is not tangent to the z-axis"};
  r.n = nf.n;
  r.lambda = nf.lambda;
  r.k = nf.k;
  return r;
}

Verdict semicomplete_obstruction(const PersistentReport& report) {
  if (report.n >= 3 || report.k >= 1) return Verdict::NotSemicomplete;
  return Verdict::Inconclusive;
}

std::optional<std::pair<mpq_class, mpq_class>> recognize_sancho_sanz(const VectorField& X) {
  const MSeries& F = X[0];
  const MSeries& G = X[1];
  const MSeries& H = X[2];
  if (F.size() != 1 || F.coeff({2, 0, 0}) != Scalar(1)) return std::nullopt;
  if (G.coeff({1, 0, 1}) != Scalar(1) || H.coeff({0, 1, 0}) != Scalar(1)) return std::nullopt;
  Scalar a = -G.coeff({1, 1, 0});
  Scalar b = -H.coeff({1, 0, 1});
  if (!a.is_real() || !b.is_real()) return std::nullopt;
  if (G.size() != (a.is_zero() ? 1u : 2u) || H.size() != (b.is_zero() ? 1u : 2u)) return std::nullopt;
  return std::make_pair(a.re(), b.re());
}

Verdict verdict_with_holonomy(const VectorField& X, const PersistentReport& report) {
  Verdict v = semicomplete_obstruction(report);
  if (v != Verdict::Inconclusive) return v;
  auto ab = recognize_sancho_sanz(X);
  if (!ab) return v;
  return holonomy_sancho_sanz(ab->first, ab->second).is_identity ? Verdict::SemicompleteByHolonomy
                                                                   : Verdict::NotSemicompleteByHolonomy;
}

namespace {

bool is_parameter(const USeries& s) { return s == USeries::parameter(s.trunc()); }

// Jordan basis for a nonzero nilpotent 2x2 block: e2 outside the kernel, e1 = L e2.
std::optional<Matrix2> jordan_basis(const Matrix2& L) {
  bool zero = L(0, 0).is_zero() && L(0, 1).is_zero() && L(1, 0).is_zero() && L(1, 1).is_zero();
  if (zero || !L.trace().is_zero() || !L.determinant().is_zero()) return std::nullopt;
  if (L(0, 0).is_zero() && L(1, 0).is_zero() && L(1, 1).is_zero() && L(0, 1).is_one()) return std::nullopt;
  // L e2 is a nonzero column of L.
  Eigen::Matrix<Scalar, 2, 1> e2(Scalar(0), Scalar(1));
  if (L(0, 1).is_zero() && L(1, 1).is_zero()) e2 = {Scalar(1), Scalar(0)};
  Matrix2 P;
  P.col(0) = L * e2;
  P.col(1) = e2;
  return P;
}

// Removes coordinate-monomial factors shared by all components.
VectorField strip_monomials(const VectorField& X) {
  VectorField Y = X;
  for (Var v : {Var::x, Var::y, Var::z}) Y = factor_divisor(Y, v).Y;
  return Y;
}

}  // namespace

Adapted adapt(const VectorField& X, const FormalCurve& phi, std::optional<int> straighten_to) {
  Adapted out{X, phi, {0, 1, 2}};
  if (!is_parameter(phi[2])) {
    int g = -1;
    for (int i = 0; i < 2; ++i)
      if (is_parameter(phi[i])) g = i;
    if (g < 0) throw NotGraph("curve is not a graph over a coordinate axis");
    std::swap(out.perm[g], out.perm[2]);
    out.X = permute(X, out.perm);
    for (int j = 0; j < 3; ++j) out.curve.phi[out.perm[j]] = phi[j];
  }
  out.curve.graph_over_z = true;

  Matrix3 lin = linear_part(out.X);
  Matrix2 L = lin.block<2, 2>(0, 0);
  if (auto P = jordan_basis(L)) {
    Matrix3 Q = Matrix3::Identity();
    Q.block<2, 2>(0, 0) = *P;
    out.X = conjugate(out.X, linear_map(Q, out.X.trunc() + 1));
    Matrix2 Pinv = P->inverse();
    USeries a = Pinv(0, 0) * out.curve[0] + Pinv(0, 1) * out.curve[1];
    USeries b = Pinv(1, 0) * out.curve[0] + Pinv(1, 1) * out.curve[1];
    out.curve = graph_curve(a, b);
  }
  if (straighten_to) {
    int m = std::min({*straighten_to, out.curve.trunc(), out.X.trunc()});
    Straightened s = straighten(out.X, out.curve, m);
    out.X = s.X;
    out.curve = s.curve;
  }
  return out;
}

ChartMap select_chart(const FormalCurve& phi) {
  int d = -1;
  Valuation best;
  for (int i : {2, 0, 1}) {
    Valuation v = valuation(phi[i]);
    if (v && (!best || *v < *best)) {
      best = v;
      d = i;
    }
  }
  if (d < 0) throw PrecisionExhausted("curve vanishes at trusted precision");
  if (*best < 1) throw CurveMissesCenter("curve does not pass through the origin");
  if (phi.trunc() - *best < 1) throw PrecisionExhausted("curve precision too low to select a chart");
  std::array<Scalar, 3> offset{};
  for (int i = 0; i < 3; ++i)
    if (i != d) offset[i] = phi[i].at(*best) / phi[d][*best];
  return point_chart(var_at(d), offset);
}

namespace {

void detect_step(TraceStep& step, const VectorField& vf, const FormalCurve& curve, int N) {
  try {
    // Degree-1 straightening is enough for the normal-form shape and keeps the contact order.
    Adapted a = adapt(vf, curve, 1);
    Detection d = detect_persistent_normal_form(a.X, N);
    if (auto* r = std::get_if<PersistentReport>(&d))
      step.match = *r;
    else
      step.no_match = std::get<NoMatch>(d).condition;
  } catch (const Error& e) {
    step.no_match = e.what();
  }
}

}  // namespace

ResolutionTrace resolve_along(const VectorField& X, const FormalCurve& phi, const ResolveOptions& opt) {
  ResidualReport rr = invariance_residual(X, phi);
  if (!rr.accepted())
    throw NotASeparatrix("curve fails the invariance equations at degree " + std::to_string(rr.vanishing_through + 1));

  ResolutionTrace trace;
  VectorField vf = X;
  VectorField rep = strip_monomials(X);
  FormalCurve curve = phi;
  int e = 0;
  std::optional<ChartMap> chart;

  for (int s = 0;; ++s) {
    TraceStep step;
    step.chart = chart;
    step.divisor_exponent = e;
    step.cls = classify(rep);
    step.order = step.cls.tag == SingularityTag::Regular ? 0 : order_at_origin(rep);
    try {
      step.mult = multiplicity(rep, curve);
    } catch (const ZeroAlongCurve&) {
      // Blow-ups keep the multiplicity finite, so past the first step this is lost precision.
      if (s == 0) throw;
      throw PrecisionExhausted("field precision exhausted after " + std::to_string(s) + " steps");
    }
    step.tangency = curve.graph_over_z ? tangency(curve) : Valuation();
    if (step.cls.tag == SingularityTag::NilpotentNonzero) detect_step(step, vf, curve, opt.N);
    if (step.match) step.match->verdict = semicomplete_obstruction(*step.match);
    if (step.match && !trace.report) trace.report = step.match;
    trace.steps.push_back(step);

    if (step.cls.tag == SingularityTag::Regular) {
      trace.outcome = Outcome::ReachedRegular;
      break;
    }
    if (step.cls.tag == SingularityTag::Elementary) {
      trace.outcome = Outcome::ReachedElementary;
      break;
    }
    if (step.match && opt.stop_on_match) {
      trace.outcome = Outcome::PersistentNormalFormMatched;
      break;
    }
    if (s == opt.max_steps) {
      trace.outcome = trace.report ? Outcome::PersistentNormalFormMatched : Outcome::MaxStepsExhausted;
      break;
    }
    if (rep.trunc() < 3) throw PrecisionExhausted("field precision exhausted after " + std::to_string(s) + " steps");

    chart = select_chart(curve);
    BlowupResult bl = point_blowup(rep, *chart);
    e = bl.divisor_exponent;
    rep = strip_monomials(bl.Y);
    vf = pullback(vf, *chart);
    curve = transform_curve(curve, *chart);
  }
  return trace;
}

std::string check_trace_invariants(const ResolutionTrace& trace) {
  for (std::size_t s = 1; s < trace.steps.size(); ++s) {
    const TraceStep& prev = trace.steps[s - 1];
    const TraceStep& cur = trace.steps[s];
    if (cur.mult > prev.mult) return "multiplicity increased at step " + std::to_string(s);
    if (prev.order >= 2 && cur.mult >= prev.mult)
      return "multiplicity did not drop after an order >= 2 source at step " + std::to_string(s);
  }
  return "";
}

}  // namespace fol
