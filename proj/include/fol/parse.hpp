#pragma once

#include <string>

#include "fol/vector_field.hpp"

namespace fol {

// Polynomial in x, y, z with Gaussian-rational coefficients: + - * / ^, parentheses,
// integers, fractions a/b, the unit i, and juxtaposition such as 2y or 3(x+z).
MSeries parse_series(const std::string& text, int trunc);

// "[F, G, H]".
VectorField parse_field(const std::string& text, int trunc);

}  // namespace fol
