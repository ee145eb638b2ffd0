#include "sampop/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sampop/errors.hpp"

namespace sampop {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

namespace {

double pow_abs(double v, double p) {
    const double a = std::abs(v);
    if (p == 1.0) return a;
    if (p == 2.0) return a * a;
    if (p == 3.0) return a * a * a;
    return std::pow(a, p);
}

// One side of the tail extension: doubling blocks from `start` in direction
// `dir` (+1/-1) until the block mass drops under tol_mass or blocks run out.
// Returns the mass added; *reached is the outermost abscissa visited.
double extend_tail(const std::function<double(double)>& mass, double start, int dir,
                   double tol_mass, const QuadratureSpec& quad, double* reached) {
    double acc = 0.0;
    double cur = start;
    double width = 1.0;
    for (int k = 0; k < quad.max_tail_blocks; ++k) {
        const double nxt = cur + dir * width;
        const double block = (dir > 0) ? integrate_plain(mass, cur, nxt, 8, quad.nodes_per_panel)
                                       : integrate_plain(mass, nxt, cur, 8, quad.nodes_per_panel);
        acc += block;
        cur = nxt;
        width *= 2.0;
        if (block < tol_mass) break;
    }
    *reached = cur;
    return acc;
}

}  // namespace

NormReport lp_norm_report(const RealFunction& f, double p, const QuadratureSpec& quad) {
    validate(quad);
    if (!(p >= 1.0)) throw config_error("lp_norm: p must be >= 1");
    if (!f.eval) throw config_error("lp_norm: function has no evaluator");

    const auto mass = [&](double x) { return pow_abs(f.eval(x), p); };

    NormReport rep;
    rep.covered = f.window;
    double total = integrate(mass, f.window.lo, f.window.hi, f.breakpoints, quad);

    double tail_mass_bound = 0.0;
    if (f.decay.cls == DecayClass::exponential || f.decay.cls == DecayClass::polynomial) {
        const double tol_mass = std::max(pow_abs(quad.tail_tolerance, p), 1e-280);
        double hi = 0.0, lo = 0.0;
        total += extend_tail(mass, f.window.hi, +1, tol_mass, quad, &hi);
        total += extend_tail(mass, f.window.lo, -1, tol_mass, quad, &lo);
        rep.covered = {lo, hi};
        if (f.decay.cls == DecayClass::polynomial) {
            const double q = f.decay.order;
            if (!(p * q > 1.0)) {
                std::ostringstream msg;
                msg << "lp_norm: polynomial tail model |x|^-" << q << " not integrable at p = " << p;
                throw numerical_error(msg.str());
            }
            // mass beyond R modeled as |f(R)|^p * R / (pq - 1) per side
            if (hi > 0) tail_mass_bound += pow_abs(f.eval(hi), p) * hi / (p * q - 1.0);
            if (lo < 0) tail_mass_bound += pow_abs(f.eval(lo), p) * (-lo) / (p * q - 1.0);
        } else {
            tail_mass_bound += 2.0 * tol_mass;  // blocks decay at least geometrically
        }
    }

    total = std::max(total, 0.0);
    rep.value = std::pow(total, 1.0 / p);
    rep.tail_bound = std::pow(tail_mass_bound, 1.0 / p);
    return rep;
}

double lp_norm(const RealFunction& f, double p, const QuadratureSpec& quad) {
    return lp_norm_report(f, p, quad).value;
}

namespace {

void check_separation(const GridSet& g) {
    const double bound = 2.0 * g.gamma / g.sigma;
    for (size_t i = 0; i + 1 < g.points.size(); ++i) {
        const double gap = g.points[i + 1] - g.points[i];
        if (!(gap > bound)) {
            std::ostringstream msg;
            msg << "grid separation violated: gap " << gap << " at index " << i
                << " not above 2*gamma/sigma = " << bound;
            throw config_error(msg.str());
        }
    }
}

}  // namespace

GridSet make_uniform_grid(double sigma, Interval window, double gamma) {
    if (!(sigma > 0)) throw config_error("make_uniform_grid: sigma must be > 0");
    if (!(gamma > 0) || gamma >= 0.5)
        throw config_error("make_uniform_grid: separation requires 0 < gamma < 1/2");
    GridSet g;
    g.sigma = sigma;
    g.gamma = gamma;
    g.kind = GridKind::uniform;
    const long kmin = (long)std::ceil(sigma * window.lo - 1e-9);
    const long kmax = (long)std::floor(sigma * window.hi + 1e-9);
    for (long k = kmin; k <= kmax; ++k) g.points.push_back((double)k / sigma);
    check_separation(g);
    return g;
}

GridSet make_kadec_grid(double sigma, Interval window, double epsilon, std::uint64_t seed,
                        double gamma) {
    if (!(sigma > 0)) throw config_error("make_kadec_grid: sigma must be > 0");
    if (!(epsilon >= 0) || epsilon >= 0.25)
        throw config_error("make_kadec_grid: epsilon must lie in [0, 1/4)");
    if (!(gamma > 0) || 2.0 * gamma >= 1.0 - 2.0 * epsilon)
        throw config_error("make_kadec_grid: need 2*gamma < 1 - 2*epsilon for separation");
    GridSet g;
    g.sigma = sigma;
    g.gamma = gamma;
    g.kind = GridKind::kadec_perturbed;
    g.epsilon = epsilon;
    const long jmin = (long)std::ceil(sigma * window.lo - 0.26);
    const long jmax = (long)std::floor(sigma * window.hi + 0.26);
    for (long j = jmin; j <= jmax; ++j) {
        const std::uint64_t key = seed ^ (0x9E3779B97F4A7C15ULL * (std::uint64_t)(j + (1L << 40)));
        const double u = (2.0 * uniform01(splitmix64(key)) - 1.0) * epsilon;
        const double x = ((double)j + u) / sigma;
        if (window.contains(x)) g.points.push_back(x);
    }
    check_separation(g);
    return g;
}

double discrete_seminorm(const RealFunction& f, const GridSet& grid, double p,
                         bool* empty_flag) {
    if (!(p >= 1.0)) throw config_error("discrete_seminorm: p must be >= 1");
    if (empty_flag) *empty_flag = grid.points.empty();
    if (grid.points.empty()) return 0.0;
    double acc = 0.0;
    for (double xi : grid.points) {
        const double v = f.eval(xi);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "discrete_seminorm: non-finite value at grid point " << xi;
            throw numerical_error(msg.str());
        }
        acc += pow_abs(v, p);
    }
    return std::pow(acc / grid.sigma, 1.0 / p);
}

}  // namespace sampop
