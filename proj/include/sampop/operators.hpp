#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sampop/fft.hpp"
#include "sampop/funcspace.hpp"
#include "sampop/kernels.hpp"
#include "sampop/quadrature.hpp"

namespace sampop {

// S_sigma^phi with an explicit sample set and truncation policy. The grid
// carries the sample sites; invariant grid.sigma == sigma. truncation_radius
// is measured in kernel units: a term k enters S f(x) iff |sigma x - k| <= R
// (and the kernel itself reaches that far). tail_budget is the absolute
// bound accepted for the dropped terms, used to derive R when none is given.
struct SamplingOperator {
    Kernel kernel;
    double sigma = 1.0;
    GridSet grid;
    double truncation_radius = 0.0;
    double tail_budget = 1e-12;
};

// Grid spanning f's padded window. truncation_radius <= 0 means "derive from
// tail_budget and the kernel's decay".
SamplingOperator make_operator(const Kernel& ker, double sigma, const RealFunction& f,
                               double truncation_radius = 0.0, double tail_budget = 1e-12);
SamplingOperator make_operator(const Kernel& ker, const GridSet& grid,
                               double truncation_radius = 0.0, double tail_budget = 1e-12);

// One point of S_sigma^phi f. Throws config_error naming the uncovered range
// when the grid window is too small for the requested x. When tail is given
// it receives a bound on the magnitude of the truncated terms.
double sampling_apply(const SamplingOperator& op, const RealFunction& f, double x,
                      double* tail = nullptr);

// f - S_sigma f as a RealFunction (window/breakpoints/decay derived from f
// and the kernel). The plan caches f's samples; f is evaluated once per site.
RealFunction operator_residual(const SamplingOperator& op, const RealFunction& f);
// ||f - S_sigma f||_p. numerical_error for p outside [1, inf) or a sinc-type
// kernel with p <= polynomial decay threshold.
double operator_error(const SamplingOperator& op, const RealFunction& f, double p,
                      const QuadratureSpec& quad);
NormReport operator_error_report(const SamplingOperator& op, const RealFunction& f, double p,
                                 const QuadratureSpec& quad);

// Convenience: operator with the default uniform grid over f's padded window.
RealFunction operator_residual(const Kernel& ker, double sigma, const RealFunction& f);
double operator_error(const Kernel& ker, double sigma, const RealFunction& f, double p,
                      const QuadratureSpec& quad);

// |S_sigma f|_{W_p^s} via termwise kernel derivatives (chain rule in sigma).
double operator_seminorm(const SamplingOperator& op, const RealFunction& f, int s, double p,
                         const QuadratureSpec& quad);

// sum_k coef[k] phi(sigma x - (k0 + k)) and its W_p^s seminorm. Backs the
// discrete-norm equivalence checks, where the coefficients are free.
RealFunction expansion_function(const Kernel& ker, double sigma, std::vector<double> coef,
                                long k0);
double expansion_seminorm(const Kernel& ker, double sigma, const std::vector<double>& coef,
                          long k0, int s, double p, const QuadratureSpec& quad);

// Near-best band-limited approximation of f with cutoff sigma (cycles:
// supp fhat in [-sigma, sigma]), built by FFT on an oversampled window.
// Result carries .spectrum for spectral norms; eval is the periodic model
// restricted to the window, damped into the compact-support tail outside.
// aliasing_ratio is the energy fraction in the top modes of the transform;
// above 2% the resolution was too small and bandlimited_project throws
// numerical_error naming the offending ratio.
struct ProjectionDetail {
    std::shared_ptr<const TrigPoly> poly;
    double sigma = 0.0;
    double aliasing_ratio = 0.0;  // sqrt of energy fraction in modes >= 0.45 N
    double discard_l2 = 0.0;      // L2 mass removed above the cutoff
};
RealFunction bandlimited_project(const RealFunction& f, double sigma, int oversample = 8,
                                 double aliasing_tol = 0.02);
ProjectionDetail bandlimited_project_detail(const RealFunction& f, double sigma,
                                            int oversample = 8);

// |g|_{W_p^s}. Dispatch: the spectrum from bandlimited_project when p = 2,
// else analytic derivatives when present, else the spectrum's derivative under
// quadrature, else Richardson-checked central differences. The difference
// route throws numerical_error when the h and h/2 resolutions disagree by
// more than 10% (derivative not resolved at this smoothness).
double sobolev_seminorm(const RealFunction& g, int s, double p, const QuadratureSpec& quad);

// Fractional-order seminorm via the (2 pi |xi|)^s spectral multiplier.
// Requires g.spectrum (p is accepted for interface symmetry; only p = 2 is
// implemented, anything else throws config_error).
double fractional_seminorm(const RealFunction& g, double s, double p);

// Interpolation at the grid sites by Gaussian translates psi(u) = e^{-pi u^2}
// at unit scale u = sigma x. coefficients solve the symmetric collocation
// system M a = samples, M_jk = psi(u_j - u_k), with an optional Tikhonov term
// reg >= 0 (diagnostics only; default 0 keeps exact interpolation).
struct InterpolantSolution {
    std::vector<double> coefficients;
    double residual = 0.0;            // max_k |sum_j a_j psi(u_k - u_j) - samples[k]|
    double condition_estimate = 0.0;  // 2-norm estimate by power iteration
};
InterpolantSolution gaussian_interpolate(const GridSet& grid, const std::vector<double>& samples,
                                         double reg = 0.0);
// I_sigma^X f(x) = sum_j a_j psi(sigma x - sigma x_j).
double interpolant_eval(const GridSet& grid, const InterpolantSolution& sol, double x);
RealFunction interpolant_function(const GridSet& grid, const InterpolantSolution& sol,
                                  Interval window);
RealFunction interpolant_residual(const GridSet& grid, const InterpolantSolution& sol,
                                  const RealFunction& f);

}  // namespace sampop
