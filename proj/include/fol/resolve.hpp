#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fol/blowup.hpp"
#include "fol/separatrix.hpp"

namespace fol {

enum class Outcome { ReachedElementary, ReachedRegular, PersistentNormalFormMatched, MaxStepsExhausted };
enum class Verdict { NotSemicomplete, Inconclusive, SemicompleteByHolonomy, NotSemicompleteByHolonomy };

std::string outcome_name(Outcome o);
std::string verdict_name(Verdict v);

struct PersistentReport {
  int n = 0;
  Scalar lambda;
  int k = 0;
  FormalCurve separatrix_prefix;
  Valuation tangency;  // of the solved separatrix with the z-axis
  Verdict verdict = Verdict::Inconclusive;
};

struct NoMatch {
  std::string condition;
};

using Detection = std::variant<PersistentReport, NoMatch>;

// X is read in adapted coordinates: the sought separatrix is tangent to the z-axis.
Detection detect_persistent_normal_form(const VectorField& X, int N = 24);

Verdict semicomplete_obstruction(const PersistentReport& report);

// Refines an inconclusive verdict with the holonomy criterion when X is a Sancho-Sanz field.
Verdict verdict_with_holonomy(const VectorField& X, const PersistentReport& report);

// (alpha, beta) when X is exactly x^2 dx + (x z - alpha x y) dy + (y - beta x z) dz.
std::optional<std::pair<mpq_class, mpq_class>> recognize_sancho_sanz(const VectorField& X);

struct Adapted {
  VectorField X;
  FormalCurve curve;
  std::array<int, 3> perm{0, 1, 2};  // variable j of the input became variable perm[j]
};

// Moves a graph separatrix onto a graph over z, puts a nilpotent (x, y) block in the form
// y d/dx, and optionally straightens the curve to degree m.
Adapted adapt(const VectorField& X, const FormalCurve& phi, std::optional<int> straighten_to);

// Point chart containing the transform of phi, re-centered at the selected point.
ChartMap select_chart(const FormalCurve& phi);

struct TraceStep {
  std::optional<ChartMap> chart;  // empty for the starting point
  SingularityClass cls;
  int order = 0;
  int mult = 0;
  int divisor_exponent = 0;
  Valuation tangency;
  std::optional<PersistentReport> match;
  std::string no_match;
};

struct ResolutionTrace {
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::MaxStepsExhausted;
  std::optional<PersistentReport> report;  // first match
};

struct ResolveOptions {
  int max_steps = 4;
  bool stop_on_match = true;
  int N = 24;
};

ResolutionTrace resolve_along(const VectorField& X, const FormalCurve& phi, const ResolveOptions& opt = {});

// Empty when the mult sequence is non-increasing and strictly drops after order >= 2 sources.
std::string check_trace_invariants(const ResolutionTrace& trace);

}  // namespace fol
