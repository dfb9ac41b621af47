#include "fol/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "fol/errors.hpp"

namespace fol {

namespace {

using cd = std::complex<double>;
using cld = std::complex<long double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;

// Rounding 1/(l+1) through double leaves the arc open by about 1e-17 of a turn, which the
// large integrands near the origin amplify past the tolerance.
long double to_long_double(const mpq_class& q) {
  return static_cast<long double>(q.get_num().get_d()) / static_cast<long double>(q.get_den().get_d());
}

}  // namespace

Holonomy holonomy_sancho_sanz(const mpq_class& alpha, const mpq_class& beta) {
  Holonomy h;
  h.is_identity = alpha.get_den() == 1 && beta.get_den() == 1 && alpha != beta;
  const cd I(0.0, 1.0);
  double a = alpha.get_d(), b = beta.get_d();
  cd ea = std::exp(-I * kTwoPi * a);
  cd eb = std::exp(-I * kTwoPi * b);
  // Integer exponents give exactly 1; avoid the rounding of exp(-2 pi i k).
  if (alpha.get_den() == 1) ea = 1.0;
  if (beta.get_den() == 1) eb = 1.0;
  if (alpha != beta)
    h.matrix << ea, (eb - ea) / (a - b), 0.0, eb;
  else
    h.matrix << ea, I * kTwoPi * ea, 0.0, ea;
  return h;
}

namespace {

// Roots of a polynomial from the eigenvalues of its companion matrix.
std::vector<cd> polynomial_roots(const std::vector<cld>& c) {
  int deg = static_cast<int>(c.size()) - 1;
  while (deg > 0 && c[static_cast<std::size_t>(deg)] == cld(0)) --deg;
  int low = 0;
  while (low < deg && c[static_cast<std::size_t>(low)] == cld(0)) ++low;
  std::vector<cd> roots(static_cast<std::size_t>(low), cd(0.0));
  int m = deg - low;
  if (m <= 0) return roots;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
  cd lead(static_cast<cd>(c[static_cast<std::size_t>(deg)]));
  for (int i = 0; i < m; ++i) comp(0, i) = -cd(c[static_cast<std::size_t>(deg - 1 - i)]) / lead;
  for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  for (int i = 0; i < m; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

bool on_arc(cd root, cd x0, double turns) {
  double r0 = std::abs(x0);
  if (std::abs(std::abs(root) - r0) > 1e-9 * std::max(1.0, r0)) return false;
  if (std::abs(turns) >= 1.0) return true;
  double theta = std::arg(root / x0);
  double sweep = kTwoPi * turns;
  if (sweep >= 0) {
    if (theta < -1e-12) theta += kTwoPi;
    return theta <= sweep + 1e-9;
  }
  if (theta > 1e-12) theta -= kTwoPi;
  return theta >= sweep - 1e-9;
}

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
constexpr std::array<long double, 8> kXk{0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
                                         0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
                                         0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
                                         0.207784955007898467600689403773245L, 0.0L};
constexpr std::array<long double, 8> kWk{0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
                                         0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
                                         0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
                                         0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
constexpr std::array<long double, 4> kWg{0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
                                         0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class Fn>
cld gauss_kronrod(const Fn& f, long double a, long double b, long double& err) {
  long double c = 0.5L * (a + b), h = 0.5L * (b - a);
  cld fc = f(c);
  cld kron = fc * kWk[7];
  cld gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    cld f1 = f(c - h * kXk[j]), f2 = f(c + h * kXk[j]);
    kron += kWk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  err = std::abs((kron - gauss) * h);
  return kron * h;
}

template <class Fn>
cld adaptive(const Fn& f, long double a, long double b, long double tol, int depth) {
  long double err = 0;
  cld whole = gauss_kronrod(f, a, b, err);
  if (err <= tol || depth > 40) {
    if (depth > 40 && err > tol) throw IntegrationFailure("quadrature did not converge");
    return whole;
  }
  long double m = 0.5L * (a + b);
  return adaptive(f, a, m, 0.5L * tol, depth + 1) + adaptive(f, m, b, 0.5L * tol, depth + 1);
}

cld arc_integral(const std::vector<cld>& rho, cd x0, const mpq_class& turns) {
  if (x0 == cd(0.0)) throw PoleOnPath("the arc degenerates to the origin");
  if (std::all_of(rho.begin(), rho.end(), [](const cld& c) { return c == cld(0); }))
    throw PoleOnPath("rho vanishes identically");
  double tr = turns.get_d();
  for (cd r : polynomial_roots(rho))
    if (on_arc(r, x0, tr)) throw PoleOnPath("rho has a zero on the arc");

  long double tl = to_long_double(turns);
  cld x0l(x0.real(), x0.imag());
  const cld I(0, 1);
  auto integrand = [&](long double t) {
    cld c = x0l * std::exp(I * (kTwoPiL * tl * t));
    cld value(0);
    for (std::size_t k = rho.size(); k-- > 0;) value = value * c + rho[k];
    if (value == cld(0)) throw PoleOnPath("rho vanishes on the arc");
    return I * kTwoPiL * tl * c / value;
  };
  return adaptive(integrand, 0.0L, 1.0L, 1e-11L, 0);
}

}  // namespace

std::complex<double> timeform_arc_integral(const USeries& rho, std::complex<double> x0, const mpq_class& turns) {
  std::vector<cld> c;
  for (int k = 0; k <= rho.trunc(); ++k) {
    const Scalar& s = rho[k];
    c.emplace_back(static_cast<long double>(s.re().get_d()), static_cast<long double>(s.im().get_d()));
  }
  cld v = arc_integral(c, x0, turns);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::complex<double> timeform_arc_integral(int monomial_power, std::complex<double> x0, const mpq_class& turns) {
  if (monomial_power < 0) throw DomainError("monomial power must be non-negative");
  if (x0 == cd(0.0)) throw PoleOnPath("the arc degenerates to the origin");
  // For x^m the only zero is the origin, which the arc avoids.
  long double tl = to_long_double(turns);
  cld x0l(x0.real(), x0.imag());
  const cld I(0, 1);
  auto integrand = [&](long double t) {
    cld c = x0l * std::exp(I * (kTwoPiL * tl * t));
    return I * kTwoPiL * tl * c / std::pow(c, monomial_power);
  };
  cld v = adaptive(integrand, 0.0L, 1.0L, 1e-11L, 0);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double zflow_uniformity_check(const mpq_class& alpha, const mpq_class& beta, std::complex<double> x0,
                              std::complex<double> y0, std::complex<double> z0) {
  if (x0 == cd(0.0)) throw DomainError("base point must avoid x = 0");
  const double a = alpha.get_d(), b = beta.get_d();
  const cd I(0.0, 1.0);
  using State = std::array<cd, 2>;
  // Along x = x0 exp(2 pi i t): dY/dt = 2 pi i x A(x) Y.
  auto rhs = [&](double t, const State& s) -> State {
    cd x = x0 * std::exp(I * (kTwoPi * t));
    return {I * kTwoPi * (s[1] - a * s[0]), I * kTwoPi * (s[0] / x - b * s[1])};
  };

  // Dormand-Prince 5(4) with standard step-size control.
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
  const double rtol = 1e-12, atol = 1e-14;

  State y{y0, z0};
  double t = 0.0, h = 1e-3;
  auto comb = [](const State& s, std::initializer_list<std::pair<double, const State*>> terms, double h) {
    State out = s;
    for (const auto& [c, k] : terms)
      for (int i = 0; i < 2; ++i) out[i] += h * c * (*k)[i];
    return out;
  };
  State k1 = rhs(t, y);
  for (long steps = 0; t < 1.0; ++steps) {
    if (steps > 2'000'000 || h < 1e-15) throw IntegrationFailure("step size underflow in the loop integration");
    h = std::min(h, 1.0 - t);
    State k2 = rhs(t + c2 * h, comb(y, {{a21, &k1}}, h));
    State k3 = rhs(t + c3 * h, comb(y, {{a31, &k1}, {a32, &k2}}, h));
    State k4 = rhs(t + c4 * h, comb(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
    State k5 = rhs(t + c5 * h, comb(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
    State k6 = rhs(t + h, comb(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
    State next = comb(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
    State k7 = rhs(t + h, next);
    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      cd e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(next[i]));
      err = std::max(err, std::abs(e) / scale);
    }
    if (err <= 1.0) {
      t += h;
      y = next;
      k1 = k7;
    }
    double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }
  return std::max(std::abs(y[0] - y0), std::abs(y[1] - z0));
}

}  // namespace fol
