// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace pdq {

// F(u, gamma) = integral over [0,1] of (w^2 + u^2)^gamma / u dw. Strictly
// convex in u > 0 with a unique minimizer g(gamma). Exact polynomial
// evaluation for integer gamma, adaptive Simpson (1e-12) otherwise.
double F(double u, double gamma);

// dF/du = u^-2 * integral of (w^2+u^2)^(gamma-1) * ((2 gamma - 1) u^2 - w^2).
double F_prime(double u, double gamma);

// d2F/du2; used to polish the minimizer.
double F_second(double u, double gamma);

// Strict upper bound on the minimizer: g(gamma) < 1 / sqrt(2 gamma - 1).
double g_upper_bound(double gamma);

// Closed-form minimizer, available for gamma in {1, 2, 3}:
//   g(1) = sqrt(1/3)
//   g(2) = sqrt((sqrt(32/5) - 1) / 9)
//   g(3) = sqrt(((32/7)^(1/3) - 1) / 5)
// Other gamma -> std::invalid_argument (use g_numeric).
double g_closed_form(double gamma);

// Minimizer of F for any gamma >= 1: golden-section bracketing on
// (0, g_upper_bound) followed by safeguarded Newton on F' to |F'| < 1e-12.
double g_numeric(double gamma);

// The optimal N-level deployment on [0, A] under uniform density: points
// x_n = (A/2N)(2n-1), a common height (A/2N) g(gamma), cell boundaries at
// multiples of A/N, and average distortion beta (A/2N)^(2 gamma - 1)
// F(g(gamma), gamma).
struct OneDimOptimum {
  std::vector<double> points;
  double height = 0.0;
  std::vector<double> boundaries;  // N + 1 ascending values from 0 to A
  double distortion = 0.0;
  double gamma = 1.0;
  double beta = 1.0;
};

OneDimOptimum one_level_optimum(double length, double gamma, double beta = 1.0);

OneDimOptimum n_level_optimum(std::size_t levels, double length, double gamma, double beta = 1.0);

// Cosine of the maximal elevation angle at the optimum, height over half the
// cell width; equals g(gamma), so 1/sqrt(3) at gamma = 1 for every N and A.
double max_elevation_cosine(const OneDimOptimum& optimum);

}  // namespace pdq
