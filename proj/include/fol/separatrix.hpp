#pragma once

#include <utility>

#include "fol/blowup.hpp"
#include "fol/series.hpp"
#include "fol/vector_field.hpp"

namespace fol {

struct FormalCurve {
  std::array<USeries, 3> phi;
  bool graph_over_z = false;
  // Set after a weight-2 transform: the parameter s satisfies T = s^2.
  bool parameter_squared = false;

  int trunc() const;
  const USeries& operator[](int i) const { return phi[static_cast<std::size_t>(i)]; }
};

// (a(T), b(T), T).
FormalCurve graph_curve(const USeries& a, const USeries& b);
FormalCurve axis_curve(Var axis, int trunc);
// min(valuation(phi1), valuation(phi2)) for graph curves; nullopt when both vanish.
Valuation tangency(const FormalCurve& c);

struct ResidualReport {
  int vanishing_through = -1;  // largest d with every residual zero through degree d
  int trunc = 0;               // trusted degree of the residuals
  bool accepted() const { return vanishing_through >= trunc; }
};

ResidualReport invariance_residual(const VectorField& X, const FormalCurve& phi);

// Order of g in X o phi = g phi'.
int multiplicity(const VectorField& X, const FormalCurve& phi);

// Graph separatrix (x(z), y(z), z) through the origin, solved to degree N.
FormalCurve solve_graph_separatrix(const VectorField& X, int N);

FormalCurve transform_curve(const FormalCurve& phi, const ChartMap& chart);

struct Straightened {
  VectorField X;
  FormalCurve curve;
};

// Conjugates by (x + a_m(z), y + b_m(z), z) where a_m, b_m are the degree-m truncations of the graph.
Straightened straighten(const VectorField& X, const FormalCurve& phi, int m);

}  // namespace fol
