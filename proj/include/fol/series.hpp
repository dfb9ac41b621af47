#pragma once

#include <array>
#include <map>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include "fol/scalar.hpp"

namespace fol {

enum class Var { x = 0, y = 1, z = 2 };

inline int index(Var v) { return static_cast<int>(v); }
inline Var var_at(int i) { return static_cast<Var>(i); }
char var_name(Var v);

using Exponent = std::array<int, 3>;

inline int degree(const Exponent& e) { return e[0] + e[1] + e[2]; }

// Ascending total degree; inside a degree, x-heavy monomials first.
struct GradedOrder {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return a > b;
  }
};

// nullopt stands for INFINITE: no nonzero coefficient at trusted precision.
using Valuation = std::optional<int>;

// Truncated power series in x, y, z. Terms of total degree above trunc() are never stored.
class MSeries {
 public:
  using Terms = std::map<Exponent, Scalar, GradedOrder>;

  MSeries() = default;
  explicit MSeries(int trunc) : trunc_(trunc) {}

  static MSeries constant(const Scalar& c, int trunc);
  static MSeries variable(Var v, int trunc);
  static MSeries monomial(const Exponent& e, const Scalar& c, int trunc);

  int trunc() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coeff(const Exponent& e) const;
  Scalar constant_term() const { return coeff({0, 0, 0}); }

  // Adds c*monomial(e); silently drops terms beyond trunc and cancels zeros.
  void add_term(const Exponent& e, const Scalar& c);

  // Never raises trunc.
  MSeries truncated(int trunc) const;

  MSeries& operator+=(const MSeries& o);
  MSeries& operator-=(const MSeries& o);
  MSeries& operator*=(const Scalar& c);

  friend MSeries operator+(MSeries a, const MSeries& b) { return a += b; }
  friend MSeries operator-(MSeries a, const MSeries& b) { return a -= b; }
  friend MSeries operator-(MSeries a) { return a *= Scalar(-1); }
  friend MSeries operator*(MSeries a, const Scalar& c) { return a *= c; }
  friend MSeries operator*(const Scalar& c, MSeries a) { return a *= c; }
  friend MSeries operator*(const MSeries& a, const MSeries& b);
  friend bool operator==(const MSeries& a, const MSeries& b) {
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

 private:
  Terms terms_;
  int trunc_ = 0;
};

MSeries series_mul(const MSeries& a, const MSeries& b);
MSeries power(const MSeries& s, int k);

// s(sub[0], sub[1], sub[2]). Output trunc is min(s.trunc, min sub trunc).
MSeries substitute(const MSeries& s, const std::array<MSeries, 3>& sub);

MSeries divide_by_variable(const MSeries& s, Var v);
MSeries multiply_by_monomial(const MSeries& s, const Exponent& e);
MSeries derivative(const MSeries& s, Var v);
// Sets v = 0.
MSeries restrict_zero(const MSeries& s, Var v);
// Inverse of a series with nonzero constant term, at the same trunc.
MSeries inverse_unit(const MSeries& s);
// Renames variables: variable j of s becomes variable perm[j] of the result.
MSeries permute_vars(const MSeries& s, const std::array<int, 3>& perm);

Valuation valuation(const MSeries& s);
// Least exponent sum over the variables flagged in mask, across all terms.
Valuation partial_degree(const MSeries& s, const std::array<bool, 3>& mask);
// Largest e with v^e dividing every term (0 for series with a v-free term; trunc for zero).
int divisor_power(const MSeries& s, Var v);
// True when a and b agree on every monomial of degree <= through.
bool agree_through(const MSeries& a, const MSeries& b, int through);

std::string to_string(const MSeries& s);
inline std::ostream& operator<<(std::ostream& os, const MSeries& s) {
  return os << to_string(s) << " [trunc " << s.trunc() << "]";
}

// Truncated series in one parameter T, dense, coefficients 0..trunc.
class USeries {
 public:
  USeries() : coeffs_(1) {}
  explicit USeries(int trunc) : coeffs_(static_cast<std::size_t>(trunc) + 1) {}
  USeries(std::vector<Scalar> coeffs, int trunc);

  static USeries parameter(int trunc);  // T
  static USeries constant(const Scalar& c, int trunc);

  int trunc() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Scalar& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  Scalar& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
  // Coefficient or zero past trunc; callers decide whether that is trusted.
  Scalar at(int k) const { return k <= trunc() ? (*this)[k] : Scalar(); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  // Never raises trunc.
  USeries truncated(int trunc) const;

  USeries& operator+=(const USeries& o);
  USeries& operator-=(const USeries& o);
  USeries& operator*=(const Scalar& c);
  friend USeries operator+(USeries a, const USeries& b) { return a += b; }
  friend USeries operator-(USeries a, const USeries& b) { return a -= b; }
  friend USeries operator-(USeries a) { return a *= Scalar(-1); }
  friend USeries operator*(USeries a, const Scalar& c) { return a *= c; }
  friend USeries operator*(const Scalar& c, USeries a) { return a *= c; }
  friend USeries operator*(const USeries& a, const USeries& b);
  friend bool operator==(const USeries& a, const USeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Scalar> coeffs_;
};

Valuation valuation(const USeries& s);
USeries derivative(const USeries& s);
USeries inverse_unit(const USeries& s);
// a / T^p, exact; throws NotDivisible when a low coefficient is nonzero. trunc drops by p.
USeries shift_down(const USeries& a, int p);
// a / b where b has valuation p and a has valuation >= p.
USeries divide(const USeries& a, const USeries& b);
// s(T^2) with trunc 2*s.trunc + 1 (odd coefficients vanish exactly).
USeries substitute_square(const USeries& s);
// s(c0(T), c1(T), c2(T)) where the ci have zero constant term.
USeries compose(const MSeries& s, const std::array<USeries, 3>& curve);

std::string to_string(const USeries& s, char param = 'T');

struct DivergenceReport {
  std::vector<int> support;      // indices of nonzero coefficients used
  std::vector<double> ratios;    // |c_k| / |c_{k+1}| along the support
  double gevrey_slope = 0;       // least-squares slope against k log k
};

DivergenceReport ratio_divergence_estimate(const USeries& s, int support_stride);

}  // namespace fol
