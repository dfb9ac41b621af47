#pragma once

#include <complex>

#include <Eigen/Dense>

#include "fol/series.hpp"

namespace fol {

struct Holonomy {
  Eigen::Matrix2cd matrix;
  bool is_identity = false;  // decided exactly
};

// exp of [[-2 pi i alpha, 2 pi i], [0, -2 pi i beta]].
Holonomy holonomy_sancho_sanz(const mpq_class& alpha, const mpq_class& beta);

// Integral of c'(t) / rho(c(t)) over c(t) = x0 exp(2 pi i turns t), t in [0, 1].
std::complex<double> timeform_arc_integral(const USeries& rho, std::complex<double> x0, const mpq_class& turns);
std::complex<double> timeform_arc_integral(int monomial_power, std::complex<double> x0, const mpq_class& turns);

// |(y, z)(end) - (y0, z0)|_max after transporting along x0 exp(2 pi i t) with
// dy/dx = z/x - alpha y/x, dz/dx = y/x^2 - beta z/x.
double zflow_uniformity_check(const mpq_class& alpha, const mpq_class& beta, std::complex<double> x0,
                              std::complex<double> y0, std::complex<double> z0);

}  // namespace fol
