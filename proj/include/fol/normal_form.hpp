#pragma once

#include <optional>
#include <string>

#include "fol/vector_field.hpp"

namespace fol {

// X = z^k h [(y + z f) d/dx + z g d/dy + z^n d/dz] with h(0) != 0, f(0) = g(0) = 0.
struct NormalForm {
  int k = 0;
  int n = 0;
  MSeries h;
  VectorField bracket;
  MSeries f;
  MSeries g;
  Scalar lambda;  // dg/dx at the origin
};

struct NormalFormMatch {
  std::optional<NormalForm> form;
  std::string violated;  // first failed condition when form is empty
};

// Shape check only; the caller decides what to require of n and lambda.
NormalFormMatch match_normal_form(const VectorField& X);

}  // namespace fol
