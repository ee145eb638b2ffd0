#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "sampop/quadrature.hpp"

namespace sampop {

enum class KernelFamily { sinc, bspline, gaussian, riesz };
enum class KernelDecay { compact, gaussian, polynomial };

// Evaluable reconstruction kernel with the metadata the operators need to pick
// truncation radii. fourier_eval follows the e^{-2 pi i x y} convention.
struct Kernel {
    std::function<double(double)> eval;
    double support_radius = std::numeric_limits<double>::infinity();
    KernelDecay decay = KernelDecay::polynomial;
    double decay_order = 0.0;   // polynomial only: |phi(u)| ~ C |u|^-decay_order
    double envelope_coef = 1.0; // the C above; drives truncation tail bounds
    std::function<double(double)> fourier_eval;
    KernelFamily family = KernelFamily::sinc;
    int order = 0;             // bspline order r
    double riesz_s = 0.0;
    double riesz_delta = 0.0;
    // derivatives[k-1] = phi^(k); present when the family has closed forms
    std::vector<std::function<double(double)>> derivatives;
};

// sin(pi x)/(pi x) with argument reduction (exact zeros at nonzero integers)
// and a series branch near 0.
double sinc_eval(double x);
// Closed-form sinc derivatives, order in {1,2,3}.
double sinc_deriv(int order, double x);

// Centered B-spline of order r >= 2 by the alternating truncated-power sum.
// Exactly 0 for |u| > r/2.
double bspline_eval(int r, double u);

// e^{-pi x^2}
double gaussian_eval(double x);

Kernel make_sinc_kernel();
Kernel make_bspline_kernel(int r);
Kernel make_gaussian_kernel();

// Kernel with Fourier transform (1 - |4 xi / 3|^s)_+^delta, evaluated by
// cosine-transform quadrature onto an eager uniform cache (cubic interpolation
// between cache nodes). eval is truncated to 0 beyond cache_radius.
Kernel riesz_build(double s, double delta, const QuadratureSpec& quad,
                   double cache_radius = 400.0);

}  // namespace sampop
