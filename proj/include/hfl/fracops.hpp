#pragma once

#include <cstddef>
#include <vector>

#include "hfl/gridfn.hpp"

namespace hfl {

/// Fractional order with Hilfer type parameter.
/// Invariants: 0 < alpha < 1, 0 <= beta <= 1.
struct FracOrder {
    double alpha;
    double beta;
};

/// Gamma function for z > 0, relative error <= 1e-12.
/// Throws hfl::domain_error for non-positive or non-finite z.
double gamma(double z);

/// Riemann-Liouville fractional integral I^alpha of a sampled function,
/// alpha > 0. Product-trapezoidal rule: the piecewise-linear interpolant of
/// f is integrated exactly against the kernel (t-s)^(alpha-1)/Gamma(alpha).
/// Output node 0 is 0 (empty integral).
GridFunction rl_integral(const GridFunction& f, double alpha);

/// I^alpha f evaluated at a single point t in [a, b]. Off-grid t integrates
/// over the final partial cell against the same piecewise-linear
/// interpolant. At grid nodes the result equals
/// rl_integral(f, alpha).values[k] exactly.
double rl_integral_at(const GridFunction& f, double alpha, double t);

/// Riemann-Liouville derivative D(I^(1-alpha) f), 0 < alpha < 1, where D is
/// the second-order grid derivative (one-sided at the endpoints). The value
/// at t_0 is the one-sided stencil value; analytically the RL derivative may
/// be unbounded there.
GridFunction rl_derivative(const GridFunction& f, double alpha);

/// Caputo derivative I^(1-alpha)(D f), 0 < alpha < 1, lower terminal a.
GridFunction caputo_derivative(const GridFunction& f, double alpha);

/// Hilfer derivative I^(beta(1-alpha)) D I^((1-beta)(1-alpha)) f.
/// A zero-order integral (beta == 0 outer, beta == 1 inner) is skipped
/// exactly, so beta = 0 reproduces rl_derivative and beta = 1 reproduces
/// caputo_derivative bitwise.
GridFunction hilfer_derivative(const GridFunction& f, FracOrder ord);

namespace detail {

/// Second-order finite-difference derivative on the grid:
/// (-3 f0 + 4 f1 - f2)/(2h) at the left end, central differences inside,
/// (3 fN - 4 f(N-1) + f(N-2))/(2h) at the right end.
GridFunction diff_grid(const GridFunction& f);

/// Quadrature weights w such that, evaluated left to right,
/// sum_k w[k] * f.values[k] == rl_integral_at(f, alpha, t)
/// in exact arithmetic (and bitwise when accumulated in index order).
/// Used by the dense linear-system assembly.
std::vector<double> rl_weights_at(const GridFunction& grid, double alpha, double t);

}  // namespace detail

}  // namespace hfl
