#pragma once

#include <string>
#include <vector>

#include "fol/scalar.hpp"

namespace fol {

// c times a printed monomial, in the canonical series notation.
std::string term_string(const Scalar& c, const std::string& mono);
// Joins signed terms with " + " / " - "; an empty list prints as 0.
std::string join_terms(const std::vector<std::string>& parts);

}  // namespace fol
