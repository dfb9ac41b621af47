#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "fol/errors.hpp"
#include "fol/series.hpp"
#include "format.hpp"

namespace fol {

USeries::USeries(std::vector<Scalar> coeffs, int trunc) : coeffs_(std::move(coeffs)) {
  coeffs_.resize(static_cast<std::size_t>(trunc) + 1);
}

USeries USeries::parameter(int trunc) {
  USeries s(trunc);
  if (trunc >= 1) s[1] = Scalar(1);
  return s;
}

USeries USeries::constant(const Scalar& c, int trunc) {
  USeries s(trunc);
  s[0] = c;
  return s;
}

bool USeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_zero(); });
}

USeries USeries::truncated(int trunc) const {
  trunc = std::min(trunc, this->trunc());
  std::vector<Scalar> c(coeffs_.begin(), coeffs_.begin() + trunc + 1);
  return USeries(std::move(c), trunc);
}

USeries& USeries::operator+=(const USeries& o) {
  if (o.trunc() < trunc()) coeffs_.resize(o.coeffs_.size());
  for (int k = 0; k <= trunc(); ++k) (*this)[k] += o[k];
  return *this;
}

USeries& USeries::operator-=(const USeries& o) {
  if (o.trunc() < trunc()) coeffs_.resize(o.coeffs_.size());
  for (int k = 0; k <= trunc(); ++k) (*this)[k] -= o[k];
  return *this;
}

USeries& USeries::operator*=(const Scalar& c) {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

USeries operator*(const USeries& a, const USeries& b) {
  int n = std::min(a.trunc(), b.trunc());
  USeries out(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

Valuation valuation(const USeries& s) {
  for (int k = 0; k <= s.trunc(); ++k)
    if (!s[k].is_zero()) return k;
  return std::nullopt;
}

USeries derivative(const USeries& s) {
  USeries out(std::max(s.trunc() - 1, 0));
  for (int k = 1; k <= s.trunc(); ++k) out[k - 1] = s[k] * Scalar(k);
  return out;
}

USeries inverse_unit(const USeries& s) {
  if (s[0].is_zero()) throw DomainError("series is not a unit: zero constant term");
  USeries r(s.trunc());
  Scalar inv0 = s[0].inverse();
  r[0] = inv0;
  for (int k = 1; k <= s.trunc(); ++k) {
    Scalar acc;
    for (int j = 1; j <= k; ++j)
      if (!s[j].is_zero()) acc += s[j] * r[k - j];
    r[k] = -acc * inv0;
  }
  return r;
}

USeries shift_down(const USeries& a, int p) {
  for (int k = 0; k < p && k <= a.trunc(); ++k)
    if (!a[k].is_zero()) throw NotDivisible("coefficient of T^" + std::to_string(k) + " is nonzero");
  USeries out(a.trunc() - p);
  for (int k = 0; k <= out.trunc(); ++k) out[k] = a[k + p];
  return out;
}

USeries divide(const USeries& a, const USeries& b) {
  Valuation p = valuation(b);
  if (!p) throw DomainError("division by a series that vanishes at trusted precision");
  return shift_down(a, *p) * inverse_unit(shift_down(b, *p));
}

USeries substitute_square(const USeries& s) {
  USeries out(2 * s.trunc() + 1);
  for (int k = 0; k <= s.trunc(); ++k) out[2 * k] = s[k];
  return out;
}

USeries compose(const MSeries& s, const std::array<USeries, 3>& curve) {
  int trunc = s.trunc();
  for (const auto& c : curve) {
    if (!c[0].is_zero()) throw NonzeroConstantTerm("curve component has constant term " + c[0].str());
    trunc = std::min(trunc, c.trunc());
  }
  std::array<std::vector<USeries>, 3> pw;
  auto pow_of = [&](int v, int k) -> const USeries& {
    auto& cache = pw[v];
    if (cache.empty()) cache.push_back(USeries::constant(Scalar(1), trunc));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * curve[v].truncated(trunc));
    return cache[static_cast<std::size_t>(k)];
  };
  USeries out(trunc);
  for (const auto& [e, c] : s.terms()) {
    if (degree(e) > trunc) break;
    USeries t = pow_of(0, e[0]) * pow_of(1, e[1]) * pow_of(2, e[2]);
    out += t * c;
  }
  return out;
}

std::string to_string(const USeries& s, char param) {
  std::vector<std::string> parts;
  for (int k = 0; k <= s.trunc(); ++k) {
    if (s[k].is_zero()) continue;
    std::string mono;
    if (k >= 1) mono = std::string(1, param);
    if (k > 1) mono += "^" + std::to_string(k);
    parts.push_back(term_string(s[k], mono));
  }
  return join_terms(parts);
}

namespace {

double log_abs(const mpz_class& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

// log|c| for a nonzero Gaussian rational without overflowing doubles.
double log_modulus(const Scalar& c) {
  mpq_class n = c.norm2();
  return 0.5 * (log_abs(n.get_num()) - log_abs(n.get_den()));
}

}  // namespace

DivergenceReport ratio_divergence_estimate(const USeries& s, int support_stride) {
  if (support_stride < 1) throw DomainError("support stride must be positive");
  Valuation v = valuation(s);
  if (!v) throw InsufficientSupport("series vanishes at trusted precision");
  DivergenceReport rep;
  std::vector<double> logs;
  for (int k = *v; k <= s.trunc(); k += support_stride) {
    if (s[k].is_zero()) continue;
    rep.support.push_back(k);
    logs.push_back(log_modulus(s[k]));
  }
  if (rep.support.size() < 4)
    throw InsufficientSupport("only " + std::to_string(rep.support.size()) +
                              " nonzero coefficients on the stride");
  for (std::size_t j = 0; j + 1 < logs.size(); ++j) rep.ratios.push_back(std::exp(logs[j] - logs[j + 1]));

  // log|c_j| ~ slope * j log j + a * j + b * log j + c, j = 1, 2, ... along the support.
  auto rows = static_cast<Eigen::Index>(logs.size());
  Eigen::MatrixXd design(rows, 4);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    double j = static_cast<double>(r + 1);
    design.row(r) << j * std::log(j), j, std::log(j), 1.0;
    rhs(r) = logs[static_cast<std::size_t>(r)];
  }
  Eigen::Vector4d fit = design.colPivHouseholderQr().solve(rhs);
  rep.gevrey_slope = fit(0);
  return rep;
}

}  // namespace fol
