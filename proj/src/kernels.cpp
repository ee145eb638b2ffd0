#include "sampop/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "sampop/errors.hpp"

namespace sampop {

namespace {

// sin(pi x) and cos(pi x) reduced to |t| <= 1/2; keeps sinc and its
// derivatives accurate at arguments near large integers.
struct ReducedTrig {
    double t;       // x - nearest integer
    double sin_pi;  // sin(pi x)
    double cos_pi;  // cos(pi x)
};

ReducedTrig reduce_pi(double x) {
    const double m = std::nearbyint(x);
    const double t = x - m;
    const bool odd = std::fmod(std::abs(m), 2.0) == 1.0;
    const double s = std::sin(M_PI * t), c = std::cos(M_PI * t);
    return {t, odd ? -s : s, odd ? -c : c};
}

// Taylor coefficients of sinc: sum (-1)^n (pi x)^{2n} / (2n+1)!
double sinc_series(int deriv, double x) {
    double acc = 0.0;
    for (int n = 8; n >= 0; --n) {
        if (2 * n < deriv) continue;
        // d^k/dx^k x^{2n} = (2n)!/(2n-k)! x^{2n-k}
        double term = (n % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i < 2 * n; ++i) term *= M_PI;
        double fall = 1.0;
        for (int i = 0; i < deriv; ++i) fall *= (2 * n - i);
        double fact = 1.0;
        for (int i = 2; i <= 2 * n + 1; ++i) fact *= i;
        acc += term * fall / fact * std::pow(x, 2 * n - deriv);
    }
    return acc;
}

}  // namespace

double sinc_eval(double x) {
    if (std::abs(x) < 1e-4) return sinc_series(0, x);
    const auto r = reduce_pi(x);
    return r.sin_pi / (M_PI * x);
}

double sinc_deriv(int order, double x) {
    if (order < 1 || order > 3) throw config_error("sinc_deriv: order must be in 1..3");
    if (std::abs(x) < 2e-2) return sinc_series(order, x);
    const auto r = reduce_pi(x);
    const double ss = r.sin_pi, cc = r.cos_pi;
    const double px = M_PI * x;
    switch (order) {
        case 1:
            return (px * cc - ss) / (M_PI * x * x);
        case 2:
            return (-px * px * ss - 2.0 * px * cc + 2.0 * ss) / (M_PI * x * x * x);
        default:
            return (-px * px * px * cc + 3.0 * px * px * ss + 6.0 * px * cc - 6.0 * ss) /
                   (M_PI * x * x * x * x);
    }
}

double bspline_eval(int r, double u) {
    if (r < 2) throw config_error("bspline_eval: order must be >= 2");
    if (std::abs(u) > 0.5 * r) return 0.0;
    double fact = 1.0;
    for (int i = 2; i < r; ++i) fact *= i;
    double binom = 1.0;  // C(r, j)
    double acc = 0.0;
    for (int j = 0; j <= r; ++j) {
        const double base = 0.5 * r + u - j;
        if (base > 0.0) {
            double pw = 1.0;
            for (int i = 0; i < r - 1; ++i) pw *= base;
            acc += (j % 2 == 0 ? 1.0 : -1.0) * binom * pw;
        }
        binom = binom * (r - j) / (j + 1);
    }
    return acc / fact;
}

double gaussian_eval(double x) { return std::exp(-M_PI * x * x); }

Kernel make_sinc_kernel() {
    Kernel k;
    k.eval = [](double u) { return sinc_eval(u); };
    k.decay = KernelDecay::polynomial;
    k.decay_order = 1.0;
    k.envelope_coef = 1.0 / M_PI;
    k.fourier_eval = [](double xi) {
        const double a = std::abs(xi);
        if (a < 0.5) return 1.0;
        if (a == 0.5) return 0.5;
        return 0.0;
    };
    k.family = KernelFamily::sinc;
    for (int d = 1; d <= 3; ++d)
        k.derivatives.push_back([d](double u) { return sinc_deriv(d, u); });
    return k;
}

Kernel make_bspline_kernel(int r) {
    if (r < 2) throw config_error("make_bspline_kernel: order must be >= 2");
    Kernel k;
    k.eval = [r](double u) { return bspline_eval(r, u); };
    k.support_radius = 0.5 * r;
    k.decay = KernelDecay::compact;
    k.fourier_eval = [r](double xi) { return std::pow(sinc_eval(xi), r); };
    k.family = KernelFamily::bspline;
    k.order = r;
    // B_r' (u) = B_{r-1}(u + 1/2) - B_{r-1}(u - 1/2), defined down to order 2
    for (int d = 1; d <= r - 2; ++d) {
        k.derivatives.push_back([r, d](double u) {
            double acc = 0.0;
            double binom = 1.0;  // C(d, j)
            for (int j = 0; j <= d; ++j) {
                acc += (j % 2 == 0 ? 1.0 : -1.0) * binom * bspline_eval(r - d, u + 0.5 * d - j);
                binom = binom * (d - j) / (j + 1);
            }
            return acc;
        });
    }
    return k;
}

Kernel make_gaussian_kernel() {
    Kernel k;
    k.eval = [](double u) { return gaussian_eval(u); };
    k.decay = KernelDecay::gaussian;
    k.fourier_eval = [](double xi) { return std::exp(-M_PI * xi * xi); };
    k.family = KernelFamily::gaussian;
    k.derivatives = {
        [](double u) { return -2.0 * M_PI * u * gaussian_eval(u); },
        [](double u) { return (4.0 * M_PI * M_PI * u * u - 2.0 * M_PI) * gaussian_eval(u); },
        [](double u) {
            return (-8.0 * M_PI * M_PI * M_PI * u * u * u + 12.0 * M_PI * M_PI * u) *
                   gaussian_eval(u);
        },
    };
    return k;
}

namespace {

struct RieszCache {
    double spacing = 0.0;
    std::vector<double> values;  // values[m] = rho(m * spacing), m >= 0

    // Catmull-Rom through the four neighbors; even extension below 0,
    // truncated to 0 beyond the cache.
    double eval(double x) const {
        const double a = std::abs(x) / spacing;
        const double fl = std::floor(a);
        long m = (long)fl;
        if (m + 2 >= (long)values.size()) return 0.0;
        const double t = a - fl;
        const double pm1 = (m == 0) ? values[1] : values[m - 1];
        const double p0 = values[m], p1 = values[m + 1], p2 = values[m + 2];
        return 0.5 * (2.0 * p0 + t * (p1 - pm1) + t * t * (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2) +
                      t * t * t * (3.0 * (p0 - p1) + p2 - pm1));
    }
};

}  // namespace

Kernel riesz_build(double s, double delta, const QuadratureSpec& quad, double cache_radius) {
    if (!(s > 0)) throw config_error("riesz_build: s must be > 0");
    if (!(delta > 0)) throw config_error("riesz_build: delta must be > 0");
    if (!(cache_radius >= 4.0)) throw config_error("riesz_build: cache_radius must be >= 4");
    validate(quad);

    const auto symbol = [s, delta](double xi) {
        const double a = std::abs(xi) * 4.0 / 3.0;
        if (a >= 1.0) return 0.0;
        return std::pow(1.0 - std::pow(a, s), delta);
    };

    auto cache = std::make_shared<RieszCache>();
    cache->spacing = 1.0 / 128.0;
    const long count = (long)std::ceil(cache_radius / cache->spacing) + 4;
    cache->values.resize(count);
    for (long m = 0; m < count; ++m) {
        const double x = m * cache->spacing;
        // one quadrature panel per oscillation cycle of cos(2 pi xi x)
        const int panels = std::max(12, (int)std::ceil(0.75 * x));
        cache->values[m] = 2.0 * integrate_plain(
                                     [&](double xi) { return symbol(xi) * std::cos(2.0 * M_PI * xi * x); },
                                     0.0, 0.75, panels, quad.nodes_per_panel);
    }

    Kernel k;
    k.eval = [cache](double u) { return cache->eval(u); };
    k.support_radius = cache_radius;
    k.decay = KernelDecay::polynomial;
    k.decay_order = 1.0 + delta;
    k.envelope_coef = 3.0;  // covers the measured |rho| envelope near the origin
    k.fourier_eval = symbol;
    k.family = KernelFamily::riesz;
    k.riesz_s = s;
    k.riesz_delta = delta;
    return k;
}

}  // namespace sampop
