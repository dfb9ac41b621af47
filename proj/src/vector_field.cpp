#include "fol/vector_field.hpp"

#include <Eigen/LU>
#include <algorithm>

#include "fol/errors.hpp"

namespace fol {

int VectorField::trunc() const {
  return std::min({comp[0].trunc(), comp[1].trunc(), comp[2].trunc()});
}

bool VectorField::is_zero() const {
  return std::all_of(comp.begin(), comp.end(), [](const MSeries& s) { return s.is_zero(); });
}

VectorField VectorField::truncated(int trunc) const {
  return {comp[0].truncated(trunc), comp[1].truncated(trunc), comp[2].truncated(trunc)};
}

VectorField operator*(const MSeries& h, const VectorField& X) { return {h * X[0], h * X[1], h * X[2]}; }
VectorField operator+(const VectorField& a, const VectorField& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
VectorField operator-(const VectorField& a, const VectorField& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

PolyMap identity_map(int trunc) {
  return {MSeries::variable(Var::x, trunc), MSeries::variable(Var::y, trunc), MSeries::variable(Var::z, trunc)};
}

PolyMap linear_map(const Matrix3& P, int trunc) {
  PolyMap H{MSeries(trunc), MSeries(trunc), MSeries(trunc)};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Exponent e{0, 0, 0};
      e[c] = 1;
      H[r].add_term(e, P(r, c));
    }
  return H;
}

std::string tag_name(SingularityTag tag) {
  switch (tag) {
    case SingularityTag::Regular: return "regular";
    case SingularityTag::Elementary: return "elementary";
    case SingularityTag::NilpotentNonzero: return "nilpotent_nonzero";
    case SingularityTag::ZeroLinearPart: return "zero_linear_part";
  }
  return "unknown";
}

Matrix3 linear_part(const VectorField& X) {
  Matrix3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Exponent e{0, 0, 0};
      e[c] = 1;
      m(r, c) = X[r].coeff(e);
    }
  return m;
}

std::array<Scalar, 3> invariant_triple(const Matrix3& m) {
  Scalar minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                  m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  return {m.trace(), minors, m.determinant()};
}

SingularityClass classify(const VectorField& X) {
  if (X.trunc() < 1) throw PrecisionExhausted("classification needs trusted linear terms");
  SingularityClass out;
  Matrix3 m = linear_part(X);
  out.invariants = invariant_triple(m);
  if (std::any_of(X.comp.begin(), X.comp.end(), [](const MSeries& s) { return !s.constant_term().is_zero(); })) {
    out.tag = SingularityTag::Regular;
    return out;
  }
  auto nonzero = [](const Scalar& s) { return !s.is_zero(); };
  if (std::any_of(out.invariants.begin(), out.invariants.end(), nonzero))
    out.tag = SingularityTag::Elementary;
  else if (std::any_of(m.data(), m.data() + 9, nonzero))
    out.tag = SingularityTag::NilpotentNonzero;
  else
    out.tag = SingularityTag::ZeroLinearPart;
  return out;
}

int order_at_origin(const VectorField& X) {
  Valuation best;
  for (const auto& c : X.comp) {
    Valuation v = valuation(c);
    if (v && (!best || *v < *best)) best = v;
  }
  if (!best) throw AllZero("vector field vanishes at trusted precision");
  return *best;
}

int order_wrt_curve(const VectorField& X, Var axis) {
  std::array<int, 3> perm{0, 1, 2};
  if (axis != Var::z) std::swap(perm[index(axis)], perm[2]);
  VectorField Y = permute(X, perm);
  const std::array<bool, 3> transverse{true, true, false};
  Valuation k;
  for (int i = 0; i < 2; ++i) {
    Valuation d = partial_degree(Y[i], transverse);
    if (d && (!k || *d < *k)) k = d;
  }
  Valuation l = partial_degree(Y[2], transverse);
  if (!k && !l) throw AllZero("vector field vanishes at trusted precision");
  if (!k) return *l + 1;
  if (!l) return *k;
  return std::min(*k, *l + 1);
}

Factored factor_divisor(const VectorField& X, Var v) {
  Factored out;
  if (X.is_zero()) throw AllZero("cannot factor a field that vanishes at trusted precision");
  int e = X.trunc();
  for (const auto& c : X.comp)
    if (!c.is_zero()) e = std::min(e, divisor_power(c, v));
  out.exponent = e;
  out.Y = X;
  for (int k = 0; k < e; ++k)
    for (auto& c : out.Y.comp) c = divide_by_variable(c, v);
  out.Y = out.Y.truncated(out.Y.trunc());
  return out;
}

namespace {

using SeriesMatrix = std::array<std::array<MSeries, 3>, 3>;

VectorField mat_vec(const SeriesMatrix& m, const VectorField& v) {
  VectorField out;
  for (int r = 0; r < 3; ++r) out[r] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2];
  return out;
}

VectorField mat_vec(const Matrix3& m, const VectorField& v) {
  VectorField out;
  for (int r = 0; r < 3; ++r) out[r] = m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2];
  return out;
}

}  // namespace

VectorField conjugate(const VectorField& X, const PolyMap& H) {
  VectorField W{substitute(X[0], H), substitute(X[1], H), substitute(X[2], H)};

  SeriesMatrix J;
  Matrix3 L;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      J[r][c] = derivative(H[r], var_at(c));
      L(r, c) = J[r][c].constant_term();
    }
  if (L.determinant().is_zero()) throw NonInvertibleLinearPart("DH(0) is singular");
  Matrix3 Linv = L.inverse();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) J[r][c] -= MSeries::constant(L(r, c), J[r][c].trunc());

  // J = L + N with N(0) = 0, so Y = L^{-1}(W - N Y) converges one degree per round.
  int trunc = std::min(W.trunc(), H[0].trunc() - 1);
  for (const auto& h : H) trunc = std::min(trunc, h.trunc() - 1);
  VectorField base = mat_vec(Linv, W).truncated(trunc);
  VectorField Y = base;
  for (int round = 0; round <= trunc + 1; ++round) {
    VectorField next = base - mat_vec(Linv, mat_vec(J, Y)).truncated(trunc);
    next = next.truncated(trunc);
    if (next == Y) break;
    Y = std::move(next);
  }
  return Y;
}

VectorField permute(const VectorField& X, const std::array<int, 3>& perm) {
  VectorField out;
  for (int j = 0; j < 3; ++j) out[perm[j]] = permute_vars(X[j], perm);
  return out;
}

std::array<int, 3> inverse_permutation(const std::array<int, 3>& perm) {
  std::array<int, 3> inv{};
  for (int j = 0; j < 3; ++j) inv[perm[j]] = j;
  return inv;
}

std::ostream& operator<<(std::ostream& os, const VectorField& X) { return os << to_string(X); }

std::string to_string(const VectorField& X) {
  return "[" + to_string(X[0]) + ", " + to_string(X[1]) + ", " + to_string(X[2]) + "]";
}

}  // namespace fol
