#pragma once

#include <optional>
#include <vector>

#include "sampop/funcspace.hpp"
#include "sampop/quadrature.hpp"

namespace sampop {

struct SmoothnessParams {
    int r = 1;         // averaging order
    double s = 1.0;    // smoothness order (integer for omega, real for frac_k)
    double p = 2.0;
    double delta = 0.0;
    int h_grid_size = 64;
};

// All smoothness quantities of one (f, sigma, r, s, p) tuple.
struct SmoothnessReport {
    double omega_s = 0.0;
    std::optional<double> tau_s;
    double discrete_avg_dev = 0.0;
    double k_realization = 0.0;
    double semidiscrete_k = 0.0;
    std::optional<double> frac_k;
};

// C(n, k), exact in double for the orders used here (n <= 40).
double binomial(int n, int k);

// Forward difference sum_nu C(r,nu) (-1)^nu f(x + (r-nu) h).
double finite_difference(const RealFunction& f, int r, double h, double x);

// f(x + (r-nu)h) summed in the centered arrangement: the forward difference
// of order 2r anchored at x - rh. Backs the averaging identity.
double centered_difference(const RealFunction& f, int order2r, double h, double x);

// The h-grid the modulus maximizes over: h_grid_size log-spaced values below
// delta plus the endpoint h = delta itself. Exposed so property checks can
// compare moduli on matched grids (the computed max is a lower approximation
// of the true sup; subset grids keep inequality checks sound).
std::vector<double> modulus_h_grid(double delta, int h_grid_size = 64);

// max_h lp_norm(Delta_h^r f) over the given shifts.
double modulus_over(const RealFunction& f, int r, const std::vector<double>& hs, double p,
                    const QuadratureSpec& quad);
// Same over the default grid for (0, delta]. delta <= 0 returns 0.
double modulus(const RealFunction& f, int r, double delta, double p, const QuadratureSpec& quad,
               int h_grid_size = 64);

// The special averaged operator: -(2/C(2r,r)) sum_{j=1}^r (-1)^j C(2r,r-j)
// f_{delta j/r}(x), where f_a is the interval mean over (x-a, x+a).
double averaged_op(const RealFunction& f, double delta, int r, double x);

// Residual of the averaging identity
//   f(x) - f_{delta,r}(x) = 1/(2 c_r) Int_{-1}^{1} Delta_{delta y/r}^{2r} f(x) dy
// with the centered difference anchor and c_r = (-1)^r C(2r,r); the sign of
// c_r differs from the printed source of the identity, which does not balance
// (r=1: both sides would equal f_delta - f and f - f_delta). Must sit at
// quadrature tolerance for smooth f.
double averaged_identity_check(const RealFunction& f, double delta, int r, double x);

// f_{delta,r} - f as a function (window widened by delta, averaging kinks
// registered as breakpoints).
RealFunction averaged_deviation(const RealFunction& f, double delta, int r);

// discrete_seminorm of xi -> f_{delta,r}(xi) - f(xi) over the grid.
// Requires delta <= 1/(2 sigma) (boundary value accepted).
double discrete_avg_deviation(const RealFunction& f, const GridSet& grid, double delta, int r,
                              double p);

// Averaged (tau) modulus: lp_norm over x of the local modulus
//   sup { |Delta_h^r f(t)| : t, t + rh in [x - r delta/2, x + r delta/2] },
// the sup discretized on a local_grid x local_grid (t, h) tensor. A lower
// approximation; inequality checks with tau on the large side carry slack.
double tau_modulus(const RealFunction& f, int r, double delta, double p,
                   const QuadratureSpec& quad, int local_grid = 16);

// ||f - g_sigma||_p + sigma^{-s} |g_sigma|_{W_p^s} with
// g_sigma = bandlimited_project(f, sigma): the computable realization of the
// K-functional at scale 1/sigma.
double k_realization(const RealFunction& f, int s, double p, double sigma,
                     const QuadratureSpec& quad);

// The semi-discrete surrogate: discrete_avg_deviation at delta = gamma/sigma
// plus modulus(f, s, 1/sigma). Requires s <= 2r.
double semidiscrete_k(const RealFunction& f, const GridSet& grid, int r, int s, double p,
                      double sigma, const QuadratureSpec& quad);

// Fractional variant: ||f - g_sigma||_p + sigma^{-s} fractional_seminorm.
// Only p = 2 carries the spectral multiplier.
double frac_k(const RealFunction& f, double s, double p, double sigma,
              const QuadratureSpec& quad);

// delta^{1/p} * log-grid Riemann sum of omega_r(f,t)_p / t^{1/p+1} over
// (0, delta]: the scale-integral that dominates tau_r for r > 1/p.
// Approximate by construction; used only on the large side of checks.
double tau_integral_bound(const RealFunction& f, int r, double delta, double p,
                          const QuadratureSpec& quad, int scale_points = 12);

}  // namespace sampop
