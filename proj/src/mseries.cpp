#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "fol/errors.hpp"
#include "fol/series.hpp"
#include "format.hpp"

namespace fol {

char var_name(Var v) { return "xyz"[index(v)]; }

MSeries MSeries::constant(const Scalar& c, int trunc) {
  MSeries s(trunc);
  s.add_term({0, 0, 0}, c);
  return s;
}

MSeries MSeries::variable(Var v, int trunc) {
  Exponent e{0, 0, 0};
  e[index(v)] = 1;
  return monomial(e, Scalar(1), trunc);
}

MSeries MSeries::monomial(const Exponent& e, const Scalar& c, int trunc) {
  MSeries s(trunc);
  s.add_term(e, c);
  return s;
}

Scalar MSeries::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar() : it->second;
}

void MSeries::add_term(const Exponent& e, const Scalar& c) {
  if (degree(e) > trunc_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MSeries MSeries::truncated(int trunc) const {
  trunc = std::min(trunc, trunc_);
  MSeries out(trunc);
  for (const auto& [e, c] : terms_) {
    if (degree(e) > trunc) break;
    out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

MSeries& MSeries::operator+=(const MSeries& o) {
  if (o.trunc_ < trunc_) *this = truncated(o.trunc_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MSeries& MSeries::operator-=(const MSeries& o) {
  if (o.trunc_ < trunc_) *this = truncated(o.trunc_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MSeries& MSeries::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

namespace {

// Packs an exponent with all entries below 1024 into one key.
inline std::uint32_t pack(const Exponent& e) {
  return static_cast<std::uint32_t>(e[0]) | static_cast<std::uint32_t>(e[1]) << 10 |
         static_cast<std::uint32_t>(e[2]) << 20;
}

inline Exponent unpack(std::uint32_t k) {
  return {static_cast<int>(k & 1023u), static_cast<int>((k >> 10) & 1023u),
          static_cast<int>(k >> 20)};
}

}  // namespace

MSeries operator*(const MSeries& a, const MSeries& b) {
  int trunc = std::min(a.trunc(), b.trunc());
  MSeries out(trunc);
  if (a.is_zero() || b.is_zero()) return out;
  std::unordered_map<std::uint32_t, Scalar> acc;
  acc.reserve(a.size() * 2 + b.size() * 2);
  Scalar prod;
  for (const auto& [ea, ca] : a.terms()) {
    int da = degree(ea);
    if (da > trunc) break;
    for (const auto& [eb, cb] : b.terms()) {
      if (da + degree(eb) > trunc) break;
      prod = ca;
      prod *= cb;
      acc[pack({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]})] += prod;
    }
  }
  for (auto& [k, c] : acc)
    if (!c.is_zero()) out.add_term(unpack(k), c);
  return out;
}

MSeries series_mul(const MSeries& a, const MSeries& b) { return a * b; }

MSeries power(const MSeries& s, int k) {
  MSeries result = MSeries::constant(Scalar(1), s.trunc());
  MSeries base = s;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

MSeries substitute(const MSeries& s, const std::array<MSeries, 3>& sub) {
  int trunc = s.trunc();
  for (const auto& c : sub) {
    if (!c.constant_term().is_zero())
      throw NonzeroConstantTerm("substituted series has constant term " + c.constant_term().str());
    trunc = std::min(trunc, c.trunc());
  }
  MSeries out(trunc);
  if (s.is_zero()) return out;

  bool monomial_subs = std::all_of(sub.begin(), sub.end(), [](const MSeries& c) { return c.size() == 1; });
  if (monomial_subs) {
    std::array<Exponent, 3> img;
    std::array<Scalar, 3> coef;
    for (int v = 0; v < 3; ++v) {
      img[v] = sub[v].terms().begin()->first;
      coef[v] = sub[v].terms().begin()->second;
    }
    for (const auto& [e, c] : s.terms()) {
      Exponent ne{0, 0, 0};
      Scalar nc = c;
      for (int v = 0; v < 3; ++v) {
        for (int j = 0; j < 3; ++j) ne[j] += e[v] * img[v][j];
        for (int p = 0; p < e[v]; ++p) nc *= coef[v];
      }
      out.add_term(ne, nc);
    }
    return out;
  }

  // Powers of each substituted series, built on demand.
  std::array<std::vector<MSeries>, 3> pw;
  auto pow_of = [&](int v, int k) -> const MSeries& {
    auto& cache = pw[v];
    if (cache.empty()) cache.push_back(MSeries::constant(Scalar(1), trunc));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * sub[v].truncated(trunc));
    return cache[static_cast<std::size_t>(k)];
  };

  // Group the terms by their (x, y) exponent so the z-part is combined before multiplying.
  std::map<std::pair<int, int>, MSeries> inner;
  for (const auto& [e, c] : s.terms()) {
    if (degree(e) > trunc) break;
    auto [it, fresh] = inner.try_emplace({e[0], e[1]}, MSeries(trunc));
    MSeries term = pow_of(2, e[2]);
    term *= c;
    it->second += term;
  }
  for (const auto& [ab, zpart] : inner) {
    if (zpart.is_zero()) continue;
    MSeries prod = pow_of(0, ab.first) * pow_of(1, ab.second);
    out += prod * zpart;
  }
  return out;
}

MSeries divide_by_variable(const MSeries& s, Var v) {
  int i = index(v);
  MSeries out(s.trunc() - 1);
  for (const auto& [e, c] : s.terms()) {
    if (e[i] == 0) {
      std::ostringstream os;
      os << "term " << to_string(MSeries::monomial(e, c, s.trunc())) << " does not contain "
         << var_name(v);
      throw NotDivisible(os.str());
    }
    Exponent ne = e;
    --ne[i];
    out.add_term(ne, c);
  }
  return out;
}

MSeries multiply_by_monomial(const MSeries& s, const Exponent& m) {
  MSeries out(s.trunc() + degree(m));
  for (const auto& [e, c] : s.terms()) out.add_term({e[0] + m[0], e[1] + m[1], e[2] + m[2]}, c);
  return out;
}

MSeries derivative(const MSeries& s, Var v) {
  int i = index(v);
  MSeries out(s.trunc() - 1);
  for (const auto& [e, c] : s.terms()) {
    if (e[i] == 0) continue;
    Exponent ne = e;
    --ne[i];
    out.add_term(ne, c * Scalar(e[i]));
  }
  return out;
}

MSeries restrict_zero(const MSeries& s, Var v) {
  MSeries out(s.trunc());
  for (const auto& [e, c] : s.terms())
    if (e[index(v)] == 0) out.add_term(e, c);
  return out;
}

MSeries inverse_unit(const MSeries& s) {
  Scalar c0 = s.constant_term();
  if (c0.is_zero()) throw DomainError("series is not a unit: zero constant term");
  MSeries two = MSeries::constant(Scalar(2), s.trunc());
  MSeries r = MSeries::constant(c0.inverse(), s.trunc());
  // Newton iteration doubles the number of correct degrees each round.
  for (int correct = 1; correct <= s.trunc(); correct *= 2) r = r * (two - s * r);
  return r;
}

MSeries permute_vars(const MSeries& s, const std::array<int, 3>& perm) {
  MSeries out(s.trunc());
  for (const auto& [e, c] : s.terms()) {
    Exponent ne{0, 0, 0};
    for (int j = 0; j < 3; ++j) ne[perm[j]] = e[j];
    out.add_term(ne, c);
  }
  return out;
}

Valuation valuation(const MSeries& s) {
  if (s.is_zero()) return std::nullopt;
  return degree(s.terms().begin()->first);
}

Valuation partial_degree(const MSeries& s, const std::array<bool, 3>& mask) {
  Valuation best;
  for (const auto& [e, c] : s.terms()) {
    int d = 0;
    for (int j = 0; j < 3; ++j)
      if (mask[j]) d += e[j];
    if (!best || d < *best) best = d;
  }
  return best;
}

int divisor_power(const MSeries& s, Var v) {
  if (s.is_zero()) return s.trunc();
  int best = s.trunc();
  for (const auto& [e, c] : s.terms()) best = std::min(best, e[index(v)]);
  return best;
}

bool agree_through(const MSeries& a, const MSeries& b, int through) {
  return a.truncated(through).terms() == b.truncated(through).terms();
}

namespace {

std::string monomial_str(const Exponent& e) {
  std::string out;
  for (int v = 0; v < 3; ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += var_name(var_at(v));
    if (e[v] > 1) out += '^' + std::to_string(e[v]);
  }
  return out;
}

}  // namespace

std::string term_string(const Scalar& c, const std::string& mono) {
  if (mono.empty()) return c.str();
  if (c.is_one()) return mono;
  if (c == Scalar(-1)) return "-" + mono;
  if (c.is_real() || sgn(c.re()) == 0) return c.str() + "*" + mono;
  return "(" + c.str() + ")*" + mono;
}

std::string join_terms(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k][0] == '-')
      out += " - " + parts[k].substr(1);
    else
      out += " + " + parts[k];
  }
  return out;
}

std::string to_string(const MSeries& s) {
  std::vector<std::string> parts;
  for (const auto& [e, c] : s.terms()) parts.push_back(term_string(c, monomial_str(e)));
  return join_terms(parts);
}

}  // namespace fol
