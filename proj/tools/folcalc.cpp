// folcalc: command-line front end for the foliation library.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fol/blowup.hpp"
#include "fol/errors.hpp"
#include "fol/numeric.hpp"
#include "fol/parse.hpp"
#include "fol/resolve.hpp"
#include "fol/separatrix.hpp"

using nlohmann::json;
using namespace fol;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitPrecision = 4;

struct Common {
  std::string field;
  int trunc = 24;
  bool pretty = false;
  bool json_out = true;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool needs_field) {
  if (needs_field) cmd->add_option("field", c.field, "vector field \"[F, G, H]\"")->required();
  cmd->add_option("--trunc", c.trunc, "truncation degree")->check(CLI::Range(1, 200));
  cmd->add_flag("--json", c.json_out, "emit JSON (default)");
  cmd->add_flag("--pretty", c.pretty, "indent the JSON output");
  cmd->add_option("--out", c.out, "write the report to FILE");
}

void emit(const Common& c, const json& j) {
  std::string text = j.dump(c.pretty ? 2 : -1) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw std::runtime_error("cannot open " + c.out);
  f << text;
}

Var parse_var(const std::string& s) {
  if (s == "x") return Var::x;
  if (s == "y") return Var::y;
  return Var::z;
}

json series_list(const VectorField& X) {
  json a = json::array();
  for (const MSeries& s : X.comp) a.push_back(to_string(s));
  return a;
}

json curve_json(const FormalCurve& c) {
  json a = json::array();
  for (const USeries& s : c.phi) a.push_back(to_string(s, 'T'));
  return a;
}

json scalars(const std::array<Scalar, 3>& v) { return json::array({v[0].str(), v[1].str(), v[2].str()}); }

json matrix_json(const Matrix3& m) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back(json::array({m(r, 0).str(), m(r, 1).str(), m(r, 2).str()}));
  return rows;
}

json valuation_json(const Valuation& v) { return v ? json(*v) : json(nullptr); }

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json report_json(const PersistentReport& r) {
  return json{{"n", r.n},
              {"lambda", r.lambda.str()},
              {"k", r.k},
              {"tangency", valuation_json(r.tangency)},
              {"separatrix_prefix", curve_json(r.separatrix_prefix)},
              {"verdict", verdict_name(r.verdict)}};
}

json cmd_classify(const Common& c) {
  VectorField X = parse_field(c.field, c.trunc);
  SingularityClass cls = classify(X);
  json j{{"command", "classify"},
         {"input", to_string(X)},
         {"trunc", X.trunc()},
         {"class", tag_name(cls.tag)},
         {"linear_part", matrix_json(linear_part(X))},
         {"invariant_triple", scalars(cls.invariants)}};
  j["order"] = cls.tag == SingularityTag::Regular ? json(0) : json(order_at_origin(X));
  return j;
}

struct BlowupArgs {
  std::string center = "point";
  std::string chart = "z";
  std::string axis = "x";
  int weight = 1;
};

ChartMap curve_chart_for(Var axis, Var chart) {
  if (axis == chart) throw CenterNotInvariantOrNotSingular("--chart must differ from --axis");
  int p = -1, q = -1;
  for (int v = 0; v < 3; ++v) {
    if (v == index(axis)) continue;
    (p < 0 ? p : q) = v;
  }
  return curve_chart(axis, index(chart) == p ? ChartKind::CurveChartFirst : ChartKind::CurveChartSecond);
}

json cmd_blowup(const Common& c, const BlowupArgs& a) {
  VectorField X = parse_field(c.field, c.trunc);
  BlowupResult r;
  if (a.weight == 2) {
    r = weight2_blowup(X);
  } else if (a.center == "curve") {
    r = curve_blowup(X, curve_chart_for(parse_var(a.axis), parse_var(a.chart)));
  } else {
    r = point_blowup(X, point_chart(parse_var(a.chart)));
  }
  SingularityClass cls = classify(r.Y);
  return json{{"command", "blowup"},
              {"input", to_string(X)},
              {"trunc", X.trunc()},
              {"chart", chart_name(r.chart)},
              {"transform", series_list(r.Y)},
              {"transform_trunc", r.Y.trunc()},
              {"raw", series_list(r.raw)},
              {"divisor_exponent", r.divisor_exponent},
              {"dicritical", r.dicritical},
              {"new_class", tag_name(cls.tag)},
              {"new_invariant_triple", scalars(cls.invariants)}};
}

struct ResolveArgs {
  std::string separatrix = "auto";
  std::string axis = "z";
  std::string file;
  int max_steps = 4;
  int degree = -1;
};

bool usable_axis(const VectorField& X, Var v) {
  FormalCurve phi = axis_curve(v, X.trunc());
  if (!invariance_residual(X, phi).accepted()) return false;
  try {
    multiplicity(X, phi);
  } catch (const ZeroAlongCurve&) {
    return false;
  }
  return true;
}

// File format: "[a(T), b(T), c(T)]" with polynomial entries in T.
FormalCurve read_curve_file(const std::string& path, int trunc) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read separatrix file " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  std::string text = buf.str();
  for (char& ch : text) {
    if (ch == 'x' || ch == 'y' || ch == 'z') throw ParseError(0, "separatrix entries must be polynomials in T");
    if (ch == 'T') ch = 'x';
  }
  VectorField P = parse_field(text, trunc);
  FormalCurve out;
  for (int i = 0; i < 3; ++i) {
    USeries s(trunc);
    for (const auto& [e, coeff] : P[i].terms()) s[e[0]] = coeff;
    out.phi[static_cast<std::size_t>(i)] = s;
  }
  out.graph_over_z = out.phi[2] == USeries::parameter(trunc);
  return out;
}

json cmd_resolve(const Common& c, const ResolveArgs& a) {
  VectorField X = parse_field(c.field, c.trunc);
  int degree = a.degree > 0 ? std::min(a.degree, X.trunc() - 1) : X.trunc() - 1;
  FormalCurve phi;
  std::string source;
  if (a.separatrix == "axis") {
    phi = axis_curve(parse_var(a.axis), X.trunc());
    source = "axis_" + a.axis;
  } else if (a.separatrix == "file") {
    phi = read_curve_file(a.file, X.trunc());
    source = "file";
  } else if (a.separatrix == "solve") {
    phi = solve_graph_separatrix(X, degree);
    source = "solved";
  } else {
    std::optional<Var> found;
    for (Var v : {Var::z, Var::x, Var::y})
      if (!found && usable_axis(X, v)) found = v;
    if (found) {
      phi = axis_curve(*found, X.trunc());
      source = std::string("axis_") + var_name(*found);
    } else {
      phi = solve_graph_separatrix(X, degree);
      source = "solved";
    }
  }

  ResolveOptions opt;
  opt.max_steps = a.max_steps;
  opt.N = degree;
  ResolutionTrace t = resolve_along(X, phi, opt);

  json steps = json::array();
  for (const TraceStep& s : t.steps) {
    json js{{"chart", s.chart ? json(chart_name(*s.chart)) : json(nullptr)},
            {"class", tag_name(s.cls.tag)},
            {"invariant_triple", scalars(s.cls.invariants)},
            {"order", s.order},
            {"mult", s.mult},
            {"divisor_exponent", s.divisor_exponent},
            {"tangency", valuation_json(s.tangency)},
            {"match", s.match ? report_json(*s.match) : json(nullptr)},
            {"no_match", s.no_match.empty() ? json(nullptr) : json(s.no_match)}};
    if (s.chart) js["offset"] = scalars(s.chart->offset);
    steps.push_back(js);
  }
  json j{{"command", "resolve"},
         {"input", to_string(X)},
         {"trunc", X.trunc()},
         {"separatrix", {{"source", source}, {"curve", curve_json(phi)}}},
         {"steps", steps},
         {"outcome", outcome_name(t.outcome)}};
  if (t.report) {
    PersistentReport r = *t.report;
    r.verdict = verdict_with_holonomy(X, r);
    j["report"] = report_json(r);
    j["verdict"] = verdict_name(r.verdict);
  } else {
    j["report"] = nullptr;
    j["verdict"] = nullptr;
  }
  return j;
}

struct HolonomyArgs {
  std::string alpha = "0";
  std::string beta = "0";
  bool flow = false;
  double x0 = 1.0, y0 = 1.0, z0 = 1.0;
};

mpq_class read_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw ParseError(0, "expected a rational number, got '" + s + "'");
  q.canonicalize();
  return q;
}

json cmd_holonomy(const HolonomyArgs& a) {
  mpq_class alpha = read_rational(a.alpha), beta = read_rational(a.beta);
  Holonomy h = holonomy_sancho_sanz(alpha, beta);
  json m = json::array();
  for (int r = 0; r < 2; ++r) m.push_back(json::array({complex_json(h.matrix(r, 0)), complex_json(h.matrix(r, 1))}));
  json j{{"command", "holonomy"},
         {"alpha", alpha.get_str()},
         {"beta", beta.get_str()},
         {"matrix", m},
         {"is_identity", h.is_identity}};
  if (a.flow) j["zflow_gap"] = zflow_uniformity_check(alpha, beta, a.x0, a.y0, a.z0);
  return j;
}

struct TimeformArgs {
  std::string rho;
  int monomial = -1;
  double x0_re = 1.0, x0_im = 0.0;
  std::string turns = "1";
  int trunc = 24;
};

json cmd_timeform(const TimeformArgs& a) {
  mpq_class turns = read_rational(a.turns);
  std::complex<double> x0(a.x0_re, a.x0_im);
  std::complex<double> value;
  json j{{"command", "timeform"}, {"turns", turns.get_str()}, {"x0", complex_json(x0)}};
  if (a.monomial >= 0) {
    value = timeform_arc_integral(a.monomial, x0, turns);
    j["rho"] = "x^" + std::to_string(a.monomial);
  } else {
    MSeries s = parse_series(a.rho, a.trunc);
    USeries rho(s.trunc());
    for (const auto& [e, coeff] : s.terms()) {
      if (e[1] != 0 || e[2] != 0) throw DomainError("rho must be a polynomial in x");
      rho[e[0]] = coeff;
    }
    value = timeform_arc_integral(rho, x0, turns);
    j["rho"] = to_string(s);
  }
  j["integral"] = complex_json(value);
  return j;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return kExitParse;
    case ErrorKind::Precondition: return kExitPrecondition;
    case ErrorKind::Precision: return kExitPrecision;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal computations with singular holomorphic foliations"};
  app.require_subcommand(1);

  Common common;
  auto* classify_cmd = app.add_subcommand("classify", "classify the singular point at the origin");
  add_common(classify_cmd, common, true);

  BlowupArgs blow;
  auto* blowup_cmd = app.add_subcommand("blowup", "blow up the origin or a coordinate axis");
  add_common(blowup_cmd, common, true);
  blowup_cmd->add_option("--center", blow.center, "point or curve")->check(CLI::IsMember({"point", "curve"}));
  blowup_cmd->add_option("--chart", blow.chart, "point: divisor variable; curve: variable divided")
      ->check(CLI::IsMember({"x", "y", "z"}));
  blowup_cmd->add_option("--axis", blow.axis, "axis blown up by --center curve")->check(CLI::IsMember({"x", "y", "z"}));
  blowup_cmd->add_option("--weight", blow.weight, "1 or 2")->check(CLI::IsMember({1, 2}));

  ResolveArgs res;
  auto* resolve_cmd = app.add_subcommand("resolve", "follow a separatrix through successive blow-ups");
  add_common(resolve_cmd, common, true);
  resolve_cmd->add_option("--separatrix", res.separatrix, "auto, solve, axis or file")
      ->check(CLI::IsMember({"auto", "solve", "axis", "file"}));
  resolve_cmd->add_option("--axis", res.axis, "axis for --separatrix axis")->check(CLI::IsMember({"x", "y", "z"}));
  resolve_cmd->add_option("--separatrix-file", res.file, "curve \"[a(T), b(T), c(T)]\" for --separatrix file");
  resolve_cmd->add_option("--max-steps", res.max_steps, "blow-up steps")->check(CLI::Range(0, 64));
  resolve_cmd->add_option("--degree", res.degree, "separatrix solve degree (default trunc - 1)");

  HolonomyArgs hol;
  auto* holonomy_cmd = app.add_subcommand("holonomy", "holonomy of the Sancho-Sanz family");
  add_common(holonomy_cmd, common, false);
  holonomy_cmd->add_option("--alpha", hol.alpha, "rational alpha");
  holonomy_cmd->add_option("--beta", hol.beta, "rational beta");
  holonomy_cmd->add_flag("--flow", hol.flow, "also integrate the loop numerically");
  holonomy_cmd->add_option("--x0", hol.x0, "base point on the x-axis");
  holonomy_cmd->add_option("--y0", hol.y0, "initial y");
  holonomy_cmd->add_option("--z0", hol.z0, "initial z");

  TimeformArgs tf;
  auto* timeform_cmd = app.add_subcommand("timeform", "integrate dx/rho along a circular arc");
  add_common(timeform_cmd, common, false);
  auto* rho_opt = timeform_cmd->add_option("--rho", tf.rho, "polynomial rho(x)");
  auto* mono_opt = timeform_cmd->add_option("--monomial", tf.monomial, "use rho = x^m");
  rho_opt->excludes(mono_opt);
  timeform_cmd->add_option("--x0-re", tf.x0_re, "real part of the starting point");
  timeform_cmd->add_option("--x0-im", tf.x0_im, "imaginary part of the starting point");
  timeform_cmd->add_option("--turns", tf.turns, "rational number of turns");

  CLI11_PARSE(app, argc, argv);

  try {
    json j;
    if (*classify_cmd) j = cmd_classify(common);
    if (*blowup_cmd) j = cmd_blowup(common, blow);
    if (*resolve_cmd) j = cmd_resolve(common, res);
    if (*holonomy_cmd) j = cmd_holonomy(hol);
    if (*timeform_cmd) {
      if (tf.rho.empty() && tf.monomial < 0) throw DomainError("timeform needs --rho or --monomial");
      tf.trunc = common.trunc;
      j = cmd_timeform(tf);
    }
    emit(common, j);
  } catch (const Error& e) {
    json err{{"error", e.name()}, {"message", e.what()}};
    if (auto* pe = dynamic_cast<const ParseError*>(&e)) err["position"] = pe->position();
    emit(common, err);
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "folcalc: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
