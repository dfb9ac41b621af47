#include "fol/normal_form.hpp"

#include "fol/errors.hpp"

namespace fol {

namespace {

NormalFormMatch reject(std::string why) { return {std::nullopt, std::move(why)}; }

}  // namespace

NormalFormMatch match_normal_form(const VectorField& X) {
  if (X.is_zero()) return reject("field vanishes at trusted precision");
  for (const auto& c : X.comp)
    if (!c.constant_term().is_zero()) return reject("origin is a regular point");

  NormalForm nf;
  Factored fac = factor_divisor(X, Var::z);
  nf.k = fac.exponent;
  const VectorField& W = fac.Y;

  MSeries on_axis = restrict_zero(restrict_zero(W[2], Var::x), Var::y);
  Valuation n = valuation(on_axis);
  if (!n) return reject("d/dz component vanishes along the z-axis");
  if (divisor_power(W[2], Var::z) < *n) return reject("d/dz component is not z^n times a unit");
  nf.n = *n;
  if (nf.n < 2) return reject("n < 2");

  MSeries hz = W[2];
  for (int j = 0; j < nf.n; ++j) hz = divide_by_variable(hz, Var::z);
  nf.h = hz;
  nf.bracket = inverse_unit(hz) * W;
  nf.bracket = nf.bracket.truncated(hz.trunc());
  const VectorField& B = nf.bracket;

  MSeries fx = B[0] - MSeries::variable(Var::y, B[0].trunc());
  if (divisor_power(fx, Var::z) < 1) return reject("d/dx component is not y + z f");
  nf.f = divide_by_variable(fx, Var::z);
  if (!nf.f.constant_term().is_zero()) return reject("f(0,0,0) != 0");
  if (divisor_power(B[1], Var::z) < 1) return reject("d/dy component is not divisible by z");
  nf.g = divide_by_variable(B[1], Var::z);
  if (!nf.g.constant_term().is_zero()) return reject("g(0,0,0) != 0");
  nf.lambda = nf.g.coeff({1, 0, 0});
  return {nf, ""};
}

}  // namespace fol
