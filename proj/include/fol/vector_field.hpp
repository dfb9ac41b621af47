#pragma once

#include <array>
#include <ostream>
#include <string>

#include "fol/series.hpp"

namespace fol {

// F d/dx + G d/dy + H d/dz.
struct VectorField {
  std::array<MSeries, 3> comp;

  VectorField() = default;
  VectorField(MSeries fx, MSeries fy, MSeries fz) : comp{std::move(fx), std::move(fy), std::move(fz)} {}

  const MSeries& operator[](int i) const { return comp[static_cast<std::size_t>(i)]; }
  MSeries& operator[](int i) { return comp[static_cast<std::size_t>(i)]; }
  const MSeries& operator[](Var v) const { return (*this)[index(v)]; }

  int trunc() const;
  bool is_zero() const;
  VectorField truncated(int trunc) const;

  friend bool operator==(const VectorField& a, const VectorField& b) { return a.comp == b.comp; }
};

VectorField operator*(const MSeries& h, const VectorField& X);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);

// Images of x, y, z under a coordinate change (x, y, z) = H(x~, y~, z~).
using PolyMap = std::array<MSeries, 3>;

PolyMap identity_map(int trunc);
PolyMap linear_map(const Matrix3& P, int trunc);

enum class SingularityTag { Regular, Elementary, NilpotentNonzero, ZeroLinearPart };

struct SingularityClass {
  SingularityTag tag = SingularityTag::Regular;
  std::array<Scalar, 3> invariants;  // trace, sum of principal 2x2 minors, determinant
};

std::string tag_name(SingularityTag tag);

// Entry (r, c) is the coefficient of variable c in component r.
Matrix3 linear_part(const VectorField& X);
std::array<Scalar, 3> invariant_triple(const Matrix3& m);

SingularityClass classify(const VectorField& X);
int order_at_origin(const VectorField& X);
// d = min(k, l + 1) for the center {the two other coordinates = 0}.
int order_wrt_curve(const VectorField& X, Var axis);

struct Factored {
  int exponent = 0;
  VectorField Y;
};

Factored factor_divisor(const VectorField& X, Var v);

// Y = (DH)^{-1} (X o H). Output trunc is min(X.trunc, H.trunc - 1).
VectorField conjugate(const VectorField& X, const PolyMap& H);

// Variable j becomes variable perm[j]; components move with their variables.
VectorField permute(const VectorField& X, const std::array<int, 3>& perm);
std::array<int, 3> inverse_permutation(const std::array<int, 3>& perm);

std::string to_string(const VectorField& X);
std::ostream& operator<<(std::ostream& os, const VectorField& X);

}  // namespace fol
