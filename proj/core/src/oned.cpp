// SPDX-License-Identifier: Apache-2.0
#include "pdq/oned.hpp"

#include <cmath>
#include <stdexcept>

#include "pdq/distortion.hpp"
#include "pdq/integrate.hpp"

namespace pdq {

namespace {

constexpr double kFTol = 1e-12;
// Tighter tolerance for the derivative integrals: the Newton polish drives
// F' to ~1e-12 in absolute terms, so the quadrature noise floor must sit
// well below that.
constexpr double kFDerivTol = 1e-14;

// Integral of f over [0,1] with the requested absolute tolerance, relaxed
// proportionally when the integral itself is large so extreme arguments
// (u -> 0 sends some integrands to 1/u^3) terminate promptly.
template <class Fn>
double integrate01(const Fn& f, double base_tol) {
  double coarse = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double a = i / 8.0;
    const double b = (i + 1) / 8.0;
    coarse += (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
  }
  const double tol = std::max(base_tol, 1e-13 * std::fabs(coarse));
  return adaptive_simpson(f, 0.0, 1.0, tol);
}

bool integer_gamma(double gamma, int& value) {
  const double rounded = std::nearbyint(gamma);
  if (std::fabs(gamma - rounded) < 1e-12 && rounded >= 1.0 && rounded <= 100.0) {
    value = static_cast<int>(rounded);
    return true;
  }
  return false;
}

// For integer gamma, F(u) = sum_k a_k u^(2k-1) with
// a_k = C(gamma, k) / (2 (gamma - k) + 1), k = 0..gamma.
std::vector<double> f_coefficients(int gamma) {
  std::vector<double> a(static_cast<std::size_t>(gamma) + 1);
  double binom = 1.0;
  for (int k = 0; k <= gamma; ++k) {
    a[static_cast<std::size_t>(k)] = binom / (2.0 * (gamma - k) + 1.0);
    binom *= static_cast<double>(gamma - k) / (k + 1.0);
  }
  return a;
}

void check_u(double u) {
  if (!(u > 0.0)) throw std::domain_error("F: u must be positive");
}

void check_gamma(double gamma) {
  if (!(gamma >= 1.0)) throw std::invalid_argument("F: gamma must be >= 1");
}

}  // namespace

double F(double u, double gamma) {
  check_u(u);
  check_gamma(gamma);
  int g;
  if (integer_gamma(gamma, g)) {
    const auto a = f_coefficients(g);
    const double u2 = u * u;
    double value = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) value = value * u2 + a[k];
    return value / u;
  }
  const PowExp pow_gamma(gamma);
  const double u2 = u * u;
  return integrate01([&](double w) { return pow_gamma(w * w + u2); }, kFTol) / u;
}

double F_prime(double u, double gamma) {
  check_u(u);
  check_gamma(gamma);
  int g;
  if (integer_gamma(gamma, g)) {
    const auto a = f_coefficients(g);
    const double u2 = u * u;
    double value = 0.0;
    for (std::size_t k = a.size(); k-- > 0;)
      value = value * u2 + a[k] * (2.0 * static_cast<double>(k) - 1.0);
    return value / u2;
  }
  const PowExp pow_gm1(gamma - 1.0);
  const double u2 = u * u;
  const double factor = (2.0 * gamma - 1.0) * u2;
  return integrate01([&](double w) { return pow_gm1(w * w + u2) * (factor - w * w); },
                     kFDerivTol) /
         u2;
}

double F_second(double u, double gamma) {
  check_u(u);
  check_gamma(gamma);
  int g;
  if (integer_gamma(gamma, g)) {
    const auto a = f_coefficients(g);
    const double u2 = u * u;
    double value = 0.0;
    for (std::size_t k = a.size(); k-- > 0;) {
      const double e = 2.0 * static_cast<double>(k) - 1.0;
      value = value * u2 + a[k] * e * (e - 1.0);
    }
    return value / (u2 * u);
  }
  const PowExp pow_gamma(gamma);
  const PowExp pow_gm1(gamma - 1.0);
  const PowExp pow_gm2(gamma - 2.0);
  return integrate01(
      [&](double w) {
        const double t = w * w + u * u;
        return 4.0 * gamma * (gamma - 1.0) * u * pow_gm2(t) - 2.0 * gamma * pow_gm1(t) / u +
               2.0 * pow_gamma(t) / (u * u * u);
      },
      kFDerivTol);
}

double g_upper_bound(double gamma) {
  check_gamma(gamma);
  return 1.0 / std::sqrt(2.0 * gamma - 1.0);
}

double g_closed_form(double gamma) {
  int g;
  if (!integer_gamma(gamma, g) || g < 1 || g > 3)
    throw std::invalid_argument("g_closed_form: only gamma in {1, 2, 3}; use g_numeric");
  switch (g) {
    case 1:
      return std::sqrt(1.0 / 3.0);
    case 2:
      return std::sqrt((std::sqrt(32.0 / 5.0) - 1.0) / 9.0);
    default:
      return std::sqrt((std::cbrt(32.0 / 7.0) - 1.0) / 5.0);
  }
}

double g_numeric(double gamma) {
  check_gamma(gamma);
  double lo = 1e-9;
  double hi = g_upper_bound(gamma);

  // Golden-section bracketing of the unique minimizer.
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = F(x1, gamma);
  double f2 = F(x2, gamma);
  while (hi - lo > 1e-8) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = F(x1, gamma);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = F(x2, gamma);
    }
  }

  // Safeguarded Newton on F' inside a sign-changing bracket. F' < 0 left of
  // the minimizer and > 0 right of it.
  double root_lo = 1e-9;
  double root_hi = g_upper_bound(gamma);
  double u = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double fp = F_prime(u, gamma);
    if (std::fabs(fp) < 1e-12) return u;
    if (fp < 0.0) {
      root_lo = u;
    } else {
      root_hi = u;
    }
    const double fs = F_second(u, gamma);
    double next = fs > 0.0 ? u - fp / fs : u;
    if (!(next > root_lo && next < root_hi)) next = 0.5 * (root_lo + root_hi);
    if (next == u) break;
    u = next;
  }
  return u;
}

namespace {

OneDimOptimum build_optimum(std::size_t levels, double length, double gamma, double beta) {
  if (levels < 1) throw std::invalid_argument("n_level_optimum: levels must be >= 1");
  if (!(length > 0.0)) throw std::invalid_argument("n_level_optimum: length must be positive");
  check_gamma(gamma);
  if (!(beta > 0.0)) throw std::invalid_argument("n_level_optimum: beta must be positive");

  const double g = g_numeric(gamma);
  const double half_cell = length / (2.0 * static_cast<double>(levels));

  OneDimOptimum opt;
  opt.gamma = gamma;
  opt.beta = beta;
  opt.height = half_cell * g;
  opt.points.resize(levels);
  opt.boundaries.resize(levels + 1);
  for (std::size_t n = 0; n < levels; ++n)
    opt.points[n] = half_cell * (2.0 * static_cast<double>(n) + 1.0);
  for (std::size_t n = 0; n <= levels; ++n)
    opt.boundaries[n] = length * static_cast<double>(n) / static_cast<double>(levels);
  opt.distortion = beta * std::pow(half_cell, 2.0 * gamma - 1.0) * F(g, gamma);
  return opt;
}

}  // namespace

OneDimOptimum one_level_optimum(double length, double gamma, double beta) {
  return build_optimum(1, length, gamma, beta);
}

OneDimOptimum n_level_optimum(std::size_t levels, double length, double gamma, double beta) {
  return build_optimum(levels, length, gamma, beta);
}

double max_elevation_cosine(const OneDimOptimum& optimum) {
  if (optimum.boundaries.size() < 2)
    throw std::invalid_argument("max_elevation_cosine: malformed optimum");
  const double half_cell = 0.5 * (optimum.boundaries[1] - optimum.boundaries[0]);
  return optimum.height / half_cell;
}

}  // namespace pdq
