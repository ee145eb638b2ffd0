#include "sampop/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sampop/errors.hpp"
#include "sampop/operators.hpp"

namespace sampop {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw config_error(what);
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(),
                        [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
            v.end());
    return v;
}

// Weaker of two decay models; the difference of two functions only inherits
// what both provide.
Decay combine_decay(const Decay& a, const Decay& b) {
    auto rank = [](DecayClass c) {
        switch (c) {
            case DecayClass::none: return 0;
            case DecayClass::polynomial: return 1;
            case DecayClass::exponential: return 2;
            default: return 3;
        }
    };
    const Decay& weak = rank(a.cls) <= rank(b.cls) ? a : b;
    if (weak.cls == DecayClass::polynomial) {
        double q = weak.order;
        if (a.cls == DecayClass::polynomial) q = std::min(q, a.order);
        if (b.cls == DecayClass::polynomial) q = std::min(q, b.order);
        return Decay::polynomial_tail(q);
    }
    return weak;
}

// Interval mean of f over (x - a, x + a).
double ball_mean(const RealFunction& f, double x, double a, const QuadratureSpec& quad) {
    double v = integrate(f.eval, x - a, x + a, f.breakpoints, quad);
    return v / (2.0 * a);
}

// Averaging weights: f_{delta,r} = sum_j w_j f_{delta j / r}.
std::vector<double> averaging_weights(int r) {
    std::vector<double> w(static_cast<size_t>(r) + 1, 0.0);
    double c = binomial(2 * r, r);
    for (int j = 1; j <= r; ++j)
        w[static_cast<size_t>(j)] = -2.0 * ((j % 2 == 0) ? 1.0 : -1.0) * binomial(2 * r, r - j) / c;
    return w;
}

RealFunction difference_function(const RealFunction& f, int r, double h) {
    RealFunction d;
    d.label = f.label.empty() ? "diff" : f.label + "|diff";
    d.window = {f.window.lo - r * h, f.window.hi};
    d.decay = f.decay;
    std::vector<double> bp;
    for (double b : f.breakpoints)
        for (int nu = 0; nu <= r; ++nu) bp.push_back(b - (r - nu) * h);
    d.breakpoints = sorted_unique(std::move(bp));
    std::vector<double> coef(static_cast<size_t>(r) + 1);
    for (int nu = 0; nu <= r; ++nu)
        coef[static_cast<size_t>(nu)] = binomial(r, nu) * ((nu % 2 == 0) ? 1.0 : -1.0);
    d.eval = [fe = f.eval, coef, r, h](double x) {
        double acc = 0.0;
        for (int nu = 0; nu <= r; ++nu) acc += coef[static_cast<size_t>(nu)] * fe(x + (r - nu) * h);
        return acc;
    };
    return d;
}

RealFunction subtract(const RealFunction& f, const RealFunction& g) {
    RealFunction d;
    d.label = "difference";
    d.window = {std::min(f.window.lo, g.window.lo), std::max(f.window.hi, g.window.hi)};
    d.decay = combine_decay(f.decay, g.decay);
    std::vector<double> bp = f.breakpoints;
    bp.insert(bp.end(), g.breakpoints.begin(), g.breakpoints.end());
    bp.push_back(g.window.lo);
    bp.push_back(g.window.hi);
    d.breakpoints = sorted_unique(std::move(bp));
    d.eval = [fe = f.eval, ge = g.eval](double x) { return fe(x) - ge(x); };
    return d;
}

// ||f - bandlimited_project(f, sigma)||_p with panel density matched to the
// sigma-scale oscillation of the projection error.
double projection_gap(const RealFunction& f, const RealFunction& g, double p, double sigma,
                      const QuadratureSpec& quad) {
    QuadratureSpec qs = quad;
    qs.panels = std::max(quad.panels, static_cast<int>(std::ceil(2.0 * sigma)));
    return lp_norm(subtract(f, g), p, qs);
}

void validate_rp(int r, double p) {
    require(r >= 1 && r <= 16, "difference order r must be in [1, 16]");
    require(p >= 1.0, "p must be >= 1");
}

}  // namespace

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return std::round(v);
}

double finite_difference(const RealFunction& f, int r, double h, double x) {
    validate_rp(r, 1.0);
    double acc = 0.0;
    for (int nu = 0; nu <= r; ++nu) {
        double sign = (nu % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binomial(r, nu) * f.eval(x + (r - nu) * h);
    }
    return acc;
}

double centered_difference(const RealFunction& f, int order2r, double h, double x) {
    validate_rp(order2r, 1.0);
    double half = 0.5 * order2r;
    double acc = 0.0;
    for (int nu = 0; nu <= order2r; ++nu) {
        double sign = (nu % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binomial(order2r, nu) * f.eval(x + (half - nu) * h);
    }
    return acc;
}

std::vector<double> modulus_h_grid(double delta, int h_grid_size) {
    require(h_grid_size >= 1, "h_grid_size must be >= 1");
    std::vector<double> hs;
    if (delta <= 0.0) return hs;
    hs.reserve(static_cast<size_t>(h_grid_size) + 1);
    for (int i = 0; i < h_grid_size; ++i)
        hs.push_back(delta * std::pow(100.0, -static_cast<double>(h_grid_size - i) / h_grid_size));
    hs.push_back(delta);
    return hs;
}

double modulus_over(const RealFunction& f, int r, const std::vector<double>& hs, double p,
                    const QuadratureSpec& quad) {
    validate_rp(r, p);
    double best = 0.0;
    for (double h : hs) {
        if (h <= 0.0) continue;
        best = std::max(best, lp_norm(difference_function(f, r, h), p, quad));
    }
    return best;
}

double modulus(const RealFunction& f, int r, double delta, double p, const QuadratureSpec& quad,
               int h_grid_size) {
    require(delta >= 0.0, "delta must be >= 0");
    return modulus_over(f, r, modulus_h_grid(delta, h_grid_size), p, quad);
}

double averaged_op(const RealFunction& f, double delta, int r, double x) {
    validate_rp(r, 1.0);
    require(delta > 0.0, "averaging radius delta must be > 0");
    QuadratureSpec quad;
    auto w = averaging_weights(r);
    double acc = 0.0;
    for (int j = 1; j <= r; ++j)
        acc += w[static_cast<size_t>(j)] * ball_mean(f, x, delta * j / r, quad);
    return acc;
}

double averaged_identity_check(const RealFunction& f, double delta, int r, double x) {
    validate_rp(r, 1.0);
    require(delta > 0.0, "averaging radius delta must be > 0");
    double lhs = f.eval(x) - averaged_op(f, delta, r, x);
    double c = ((r % 2 == 0) ? 1.0 : -1.0) * binomial(2 * r, r);
    std::vector<double> ybreaks;
    for (double b : f.breakpoints)
        for (int k = -r; k <= r; ++k) {
            if (k == 0) continue;
            double y = r * (b - x) / (k * delta);
            if (std::fabs(y) < 1.0) ybreaks.push_back(y);
        }
    QuadratureSpec quad;
    double rhs = integrate(
                     [&](double y) { return centered_difference(f, 2 * r, delta * y / r, x); },
                     -1.0, 1.0, sorted_unique(std::move(ybreaks)), quad) /
                 (2.0 * c);
    return std::fabs(lhs - rhs);
}

RealFunction averaged_deviation(const RealFunction& f, double delta, int r) {
    validate_rp(r, 1.0);
    require(delta > 0.0, "averaging radius delta must be > 0");
    RealFunction d;
    d.label = f.label.empty() ? "avg_dev" : f.label + "|avg_dev";
    d.window = {f.window.lo - delta, f.window.hi + delta};
    d.decay = f.decay;
    std::vector<double> bp = f.breakpoints;
    for (double b : f.breakpoints)
        for (int j = 1; j <= r; ++j) {
            bp.push_back(b - delta * j / r);
            bp.push_back(b + delta * j / r);
        }
    d.breakpoints = sorted_unique(std::move(bp));
    auto w = averaging_weights(r);
    d.eval = [f, w, delta, r](double x) {
        QuadratureSpec quad;
        double acc = -f.eval(x);
        for (int j = 1; j <= r; ++j)
            acc += w[static_cast<size_t>(j)] * ball_mean(f, x, delta * j / r, quad);
        return acc;
    };
    return d;
}

double discrete_avg_deviation(const RealFunction& f, const GridSet& grid, double delta, int r,
                              double p) {
    validate_rp(r, p);
    require(delta >= 0.0, "delta must be >= 0");
    if (delta == 0.0) return 0.0;
    require(grid.sigma > 0.0, "grid density must be positive");
    require(delta <= 0.5 / grid.sigma + 1e-12,
            "averaging radius exceeds half the mean grid spacing");
    return discrete_seminorm(averaged_deviation(f, delta, r), grid, p);
}

double tau_modulus(const RealFunction& f, int r, double delta, double p,
                   const QuadratureSpec& quad, int local_grid) {
    validate_rp(r, p);
    require(delta >= 0.0, "delta must be >= 0");
    require(local_grid >= 2, "local_grid must be >= 2");
    if (delta == 0.0) return 0.0;

    int n = local_grid;
    RealFunction loc;
    loc.label = f.label.empty() ? "tau_local" : f.label + "|tau_local";
    double pad = 0.5 * r * delta;
    loc.window = {f.window.lo - pad, f.window.hi + pad};
    loc.decay = f.decay;
    std::vector<double> bp;
    for (double b : f.breakpoints) {
        bp.push_back(b - pad);
        bp.push_back(b);
        bp.push_back(b + pad);
    }
    loc.breakpoints = sorted_unique(std::move(bp));
    loc.eval = [f, r, delta, n, pad](double x) {
        double lo = x - pad;
        double best = 0.0;
        for (int i = 1; i <= n; ++i) {
            double h = delta * i / n;
            double span = r * (delta - h);
            int tcount = (span <= 0.0) ? 1 : n + 1;
            for (int k = 0; k < tcount; ++k) {
                double t = lo + (tcount == 1 ? 0.0 : span * k / n);
                double acc = 0.0;
                for (int nu = 0; nu <= r; ++nu) {
                    double sign = (nu % 2 == 0) ? 1.0 : -1.0;
                    acc += sign * binomial(r, nu) * f.eval(t + (r - nu) * h);
                }
                best = std::max(best, std::fabs(acc));
            }
        }
        return best;
    };
    return lp_norm(loc, p, quad);
}

// At p = 2 the projection is orthogonal and f - g vanishes outside the
// periodization window, so both terms reduce to coefficient sums.
double spectral_k(const RealFunction& f, double s, double sigma) {
    ProjectionDetail detail = bandlimited_project_detail(f, sigma);
    if (detail.aliasing_ratio > 0.02) {
        throw numerical_error("k realization: aliasing ratio " +
                              std::to_string(detail.aliasing_ratio) +
                              " exceeds 0.02; widen the window or raise sigma");
    }
    return detail.discard_l2 + std::pow(sigma, -s) * detail.poly->sobolev_seminorm(s);
}

double k_realization(const RealFunction& f, int s, double p, double sigma,
                     const QuadratureSpec& quad) {
    require(s >= 1 && s <= 3, "smoothness order s must be in [1, 3]");
    require(p >= 1.0, "p must be >= 1");
    require(sigma > 0.0, "sigma must be positive");
    if (p == 2.0) return spectral_k(f, static_cast<double>(s), sigma);
    RealFunction g = bandlimited_project(f, sigma);
    double gap = projection_gap(f, g, p, sigma, quad);
    return gap + std::pow(sigma, -static_cast<double>(s)) * sobolev_seminorm(g, s, p, quad);
}

double semidiscrete_k(const RealFunction& f, const GridSet& grid, int r, int s, double p,
                      double sigma, const QuadratureSpec& quad) {
    validate_rp(r, p);
    require(s >= 1, "smoothness order s must be >= 1");
    require(s <= 2 * r, "smoothness order s must not exceed 2r");
    require(sigma > 0.0, "sigma must be positive");
    require(std::fabs(grid.sigma - sigma) <= 1e-9 * sigma, "grid density must match sigma");
    double dev = discrete_avg_deviation(f, grid, grid.gamma / sigma, r, p);
    return dev + modulus(f, s, 1.0 / sigma, p, quad);
}

double frac_k(const RealFunction& f, double s, double p, double sigma,
              const QuadratureSpec& quad) {
    require(s > 0.0, "smoothness order s must be positive");
    require(p == 2.0, "fractional seminorms carry a spectral multiplier; p must be 2");
    require(sigma > 0.0, "sigma must be positive");
    (void)quad;
    return spectral_k(f, s, sigma);
}

double tau_integral_bound(const RealFunction& f, int r, double delta, double p,
                          const QuadratureSpec& quad, int scale_points) {
    validate_rp(r, p);
    require(delta > 0.0, "delta must be > 0");
    require(scale_points >= 2, "scale_points must be >= 2");
    double step = std::log(1000.0) / scale_points;
    double acc = 0.0;
    for (int i = 0; i < scale_points; ++i) {
        double t = delta * std::exp(-step * (scale_points - i - 0.5));
        acc += modulus(f, r, t, p, quad, 16) * std::pow(t, -1.0 / p) * step;
    }
    return std::pow(delta, 1.0 / p) * acc;
}

}  // namespace sampop
