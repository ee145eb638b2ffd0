#include "sampop/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "sampop/errors.hpp"

namespace sampop {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Kernel values on a uniform stencil depend only on the residue sigma*x mod 1
// and the integer offset, so they are shared across quadrature nodes that sit
// at the same position within their panel pattern. Keyed by the residue
// quantized at 2^-40 (reuse jitter ~1e-12, below every norm tolerance here).
// Insertions stop at ~4 MB; later residues fall back to direct evaluation.
struct ResidueCache {
    long D = 0;  // offsets covered: d in [-D, D]
    std::size_t cap = 0;
    std::mutex mu;
    std::unordered_map<std::uint64_t, std::shared_ptr<const std::vector<double>>> map;
};

// sample values paired with their kernel shifts, kpos strictly increasing.
// lattice means kpos == k0, k0+1, ..., exactly.
struct StencilPlan {
    double sigma = 0.0;
    std::vector<double> samples;
    std::vector<double> kpos;
    double trunc = kInf;  // |sigma x - k| <= trunc terms enter
    bool lattice = false;
    long k0 = 0;
    std::shared_ptr<ResidueCache> cache;
};

double sample_pad(const Decay& d) {
    switch (d.cls) {
        case DecayClass::compact_support: return 1e-9;
        case DecayClass::exponential: return 2.0;
        case DecayClass::polynomial: return 10.0;
        case DecayClass::none: return 0.0;
    }
    return 0.0;
}

Interval padded_window(const RealFunction& f) {
    const double pad = sample_pad(f.decay);
    return {f.window.lo - pad, f.window.hi + pad};
}

// effective one-sided reach of the kernel in lattice units; infinity means
// every stored sample contributes
double kernel_reach(const Kernel& ker) {
    switch (ker.decay) {
        case KernelDecay::compact: return ker.support_radius + 1e-9;
        case KernelDecay::gaussian: return 7.0;  // exp(-pi*49) ~ 1e-67
        case KernelDecay::polynomial: return kInf;
    }
    return kInf;
}

// smallest R with the unit-amplitude tail sum of |phi| beyond R under budget
double radius_for_budget(const Kernel& ker, double budget) {
    if (!(budget > 0)) throw config_error("sampling operator: tail budget must be positive");
    switch (ker.decay) {
        case KernelDecay::compact:
            return ker.support_radius + 1e-9;
        case KernelDecay::gaussian:
            // sum_{|d| >= R-1} e^{-pi d^2} <= 3 e^{-pi (R-1)^2}
            return 1.0 + std::sqrt(std::max(1.0, std::log(3.0 / budget) / kPi));
        case KernelDecay::polynomial: {
            const double q = ker.decay_order;
            if (q <= 1.0) return kInf;  // non-summable: keep every sample
            // 2 C sum_{d > R} d^-q <= 2 C R^{1-q} / (q-1)
            return std::pow(2.0 * ker.envelope_coef / ((q - 1.0) * budget), 1.0 / (q - 1.0));
        }
    }
    return kInf;
}

double envelope(const Kernel& ker, double t) {
    const double a = std::abs(t);
    switch (ker.decay) {
        case KernelDecay::compact: return a > ker.support_radius ? 0.0 : ker.envelope_coef;
        case KernelDecay::gaussian: return std::exp(-kPi * a * a);
        case KernelDecay::polynomial:
            return ker.envelope_coef / std::pow(std::max(a, 1.0), ker.decay_order);
    }
    return 0.0;
}

void validate_operator(const SamplingOperator& op) {
    if (!(op.sigma > 0)) throw config_error("sampling operator: sigma must be positive");
    if (op.grid.points.empty()) throw config_error("sampling operator: empty grid");
    if (std::abs(op.grid.sigma - op.sigma) > 1e-9 * op.sigma)
        throw config_error("sampling operator: grid.sigma does not match the operator sigma");
    if (!(op.truncation_radius > 0))
        throw config_error("sampling operator: truncation radius must be resolved and positive");
}

StencilPlan plan_from(const SamplingOperator& op, const RealFunction& f) {
    validate_operator(op);
    StencilPlan pl;
    pl.sigma = op.sigma;
    pl.trunc = op.truncation_radius;
    const size_t n = op.grid.points.size();
    pl.samples.reserve(n);
    pl.kpos.reserve(n);
    for (double y : op.grid.points) {
        pl.samples.push_back(f.eval(y));
        pl.kpos.push_back(op.sigma * y);
    }
    pl.lattice = true;
    for (size_t i = 0; i < n; ++i) {
        const double r = std::round(pl.kpos[i]);
        if (std::abs(pl.kpos[i] - r) > 1e-9 ||
            (i > 0 && (long)r != (long)std::round(pl.kpos[i - 1]) + 1)) {
            pl.lattice = false;
            break;
        }
    }
    if (pl.lattice) {
        pl.k0 = (long)std::round(pl.kpos.front());
        for (size_t i = 0; i < n; ++i) pl.kpos[i] = (double)(pl.k0 + (long)i);
    }
    return pl;
}

void enable_cache(const Kernel& ker, StencilPlan& pl) {
    if (!pl.lattice || ker.family == KernelFamily::sinc) return;  // sinc has the trig path
    const double reach = std::min(kernel_reach(ker), pl.trunc);
    long D = (long)pl.kpos.size() - 1;
    if (std::isfinite(reach)) D = std::min(D, (long)std::ceil(reach));
    if (D < 1 || D > 65536) return;
    auto c = std::make_shared<ResidueCache>();
    c->D = D;
    c->cap = std::max<std::size_t>(8, (4u << 20) / ((std::size_t)(2 * D + 1) * 8));
    pl.cache = std::move(c);
}

double kernel_value(const Kernel& ker, int deriv, double t) {
    return deriv == 0 ? ker.eval(t) : ker.derivatives[(size_t)(deriv - 1)](t);
}

// sin(pi t) = sg*s0, cos(pi t) = sg*c0 for t = res + d, sg = (-1)^d
double sinc_factored(int deriv, double t, double s0, double c0, long d) {
    const double sg = (d & 1L) ? -1.0 : 1.0;
    const double sn = sg * s0, cs = sg * c0;
    const double u = kPi * t;
    switch (deriv) {
        case 0: return sn / u;
        case 1: return kPi * (cs / u - sn / (u * u));
        case 2: {
            const double u2 = u * u;
            return kPi * kPi * (-sn / u - 2.0 * cs / u2 + 2.0 * sn / (u2 * u));
        }
        default: {
            const double u2 = u * u, u3 = u2 * u;
            return kPi * kPi * kPi * (-cs / u + 3.0 * sn / u2 + 6.0 * cs / u3 - 6.0 * sn / (u2 * u2));
        }
    }
}

double stencil_eval(const Kernel& ker, const StencilPlan& pl, int deriv, double x) {
    const double u = pl.sigma * x;
    const double reach = std::min(kernel_reach(ker), pl.trunc);
    const long n = (long)pl.kpos.size();

    if (pl.lattice) {
        long jlo = 0, jhi = n - 1;
        if (std::isfinite(reach)) {
            jlo = std::max<long>(jlo, (long)std::ceil(u - reach) - pl.k0);
            jhi = std::min<long>(jhi, (long)std::floor(u + reach) - pl.k0);
        }
        if (jlo > jhi) return 0.0;
        const long m = (long)std::floor(u);
        const double res = u - (double)m;

        if (ker.family == KernelFamily::sinc && deriv <= 3) {
            const double s0 = std::sin(kPi * res), c0 = std::cos(kPi * res);
            double acc = 0.0;
            for (long j = jlo; j <= jhi; ++j) {
                const long d = m - pl.k0 - j;
                const double t = res + (double)d;
                if (std::abs(t) < 0.25)
                    acc += pl.samples[(size_t)j] * (deriv == 0 ? sinc_eval(t) : sinc_deriv(deriv, t));
                else
                    acc += pl.samples[(size_t)j] * sinc_factored(deriv, t, s0, c0, d);
            }
            return acc;
        }

        ResidueCache* rc = pl.cache.get();
        if (rc && m - pl.k0 - jhi >= -rc->D && m - pl.k0 - jlo <= rc->D) {
            const std::uint64_t key =
                ((std::uint64_t)llround(res * 1099511627776.0) << 2) | (std::uint64_t)deriv;
            std::shared_ptr<const std::vector<double>> vals;
            {
                std::lock_guard<std::mutex> lk(rc->mu);
                auto it = rc->map.find(key);
                if (it != rc->map.end()) vals = it->second;
            }
            if (!vals) {
                auto fresh = std::make_shared<std::vector<double>>((size_t)(2 * rc->D + 1));
                for (long d = -rc->D; d <= rc->D; ++d)
                    (*fresh)[(size_t)(d + rc->D)] = kernel_value(ker, deriv, res + (double)d);
                vals = fresh;
                std::lock_guard<std::mutex> lk(rc->mu);
                if (rc->map.size() < rc->cap) rc->map.emplace(key, vals);
            }
            double acc = 0.0;
            const double* v = vals->data();
            for (long j = jlo; j <= jhi; ++j)
                acc += pl.samples[(size_t)j] * v[(size_t)(m - pl.k0 - j + rc->D)];
            return acc;
        }

        double acc = 0.0;
        for (long j = jlo; j <= jhi; ++j)
            acc += pl.samples[(size_t)j] * kernel_value(ker, deriv, u - pl.kpos[(size_t)j]);
        return acc;
    }

    size_t i0 = 0, i1 = (size_t)n;
    if (std::isfinite(reach)) {
        i0 = (size_t)(std::lower_bound(pl.kpos.begin(), pl.kpos.end(), u - reach) -
                      pl.kpos.begin());
        i1 = (size_t)(std::upper_bound(pl.kpos.begin(), pl.kpos.end(), u + reach) -
                      pl.kpos.begin());
    }
    double acc = 0.0;
    for (size_t i = i0; i < i1; ++i)
        acc += pl.samples[i] * kernel_value(ker, deriv, u - pl.kpos[i]);
    return acc;
}

// bound on the dropped in-grid terms at this x (sites beyond the grid are
// governed by the sample-window pad policy, not counted here)
double truncation_tail(const Kernel& ker, const StencilPlan& pl, double x) {
    const double u = pl.sigma * x;
    const double reach = std::min(kernel_reach(ker), pl.trunc);
    if (!std::isfinite(reach)) return 0.0;
    double tail = 0.0;
    for (size_t i = 0; i < pl.kpos.size(); ++i) {
        const double t = u - pl.kpos[i];
        if (std::abs(t) > reach) tail += std::abs(pl.samples[i]) * envelope(ker, t);
    }
    return tail;
}

void check_coverage(const SamplingOperator& op, const RealFunction& f, Interval needed,
                    const char* who) {
    const Interval pw = padded_window(f);
    needed.lo = std::max(needed.lo, pw.lo);
    needed.hi = std::min(needed.hi, pw.hi);
    if (needed.lo > needed.hi) return;
    const double slack = 1.25 / op.sigma;
    const double lo = op.grid.points.front(), hi = op.grid.points.back();
    if (lo > needed.lo + slack || hi < needed.hi - slack) {
        std::ostringstream os;
        os << who << ": grid covers [" << lo << ", " << hi << "] but samples in ["
           << needed.lo << ", " << needed.hi << "] are required; missing ";
        if (lo > needed.lo + slack) os << "[" << needed.lo << ", " << lo << ")";
        if (lo > needed.lo + slack && hi < needed.hi - slack) os << " and ";
        if (hi < needed.hi - slack) os << "(" << hi << ", " << needed.hi << "]";
        throw config_error(os.str());
    }
}

Decay residual_decay(const Decay& fd, const Kernel& ker) {
    switch (ker.decay) {
        case KernelDecay::compact:
            return fd;
        case KernelDecay::gaussian:
            if (fd.cls == DecayClass::polynomial) return Decay::polynomial_tail(fd.order);
            return Decay::exponential_tail();
        case KernelDecay::polynomial: {
            double q = ker.decay_order;
            if (fd.cls == DecayClass::polynomial) q = std::min(q, fd.order);
            return Decay::polynomial_tail(q);
        }
    }
    return fd;
}

double window_extension(const Kernel& ker, double sigma) {
    switch (ker.decay) {
        case KernelDecay::compact: return (ker.support_radius + 1.0) / sigma;
        case KernelDecay::gaussian: return 8.0 / sigma;
        case KernelDecay::polynomial: return 3.0;
    }
    return 3.0;
}

// B-spline kernels have knots on the half lattice; register them as panel
// boundaries so every panel sees a smooth integrand
std::vector<double> kink_points(const Kernel& ker, double sigma, const Interval& w,
                                const std::vector<double>& inherited) {
    std::vector<double> bp = inherited;
    if (ker.family == KernelFamily::bspline) {
        const long m0 = (long)std::ceil(2.0 * sigma * w.lo);
        const long m1 = (long)std::floor(2.0 * sigma * w.hi);
        for (long m = m0; m <= m1; ++m) bp.push_back((double)m / (2.0 * sigma));
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             bp.end());
    return bp;
}

QuadratureSpec ripple_spec(const QuadratureSpec& quad, double sigma) {
    QuadratureSpec q2 = quad;
    q2.panels = std::max(quad.panels, (int)std::ceil(2.0 * sigma));
    return q2;
}

SamplingOperator resolve(const Kernel& ker, double sigma, const GridSet& grid, double radius,
                         double budget) {
    SamplingOperator op;
    op.kernel = ker;
    op.sigma = sigma;
    op.grid = grid;
    op.tail_budget = budget;
    op.truncation_radius = radius > 0 ? radius : radius_for_budget(ker, budget);
    return op;
}

}  // namespace

SamplingOperator make_operator(const Kernel& ker, double sigma, const RealFunction& f,
                               double truncation_radius, double tail_budget) {
    if (!(sigma > 0)) throw config_error("make_operator: sigma must be positive");
    if (!(f.window.width() > 0)) throw config_error("make_operator: empty function window");
    return resolve(ker, sigma, make_uniform_grid(sigma, padded_window(f)), truncation_radius,
                   tail_budget);
}

SamplingOperator make_operator(const Kernel& ker, const GridSet& grid, double truncation_radius,
                               double tail_budget) {
    return resolve(ker, grid.sigma, grid, truncation_radius, tail_budget);
}

double sampling_apply(const SamplingOperator& op, const RealFunction& f, double x,
                      double* tail) {
    const double reach = std::min(kernel_reach(op.kernel), op.truncation_radius);
    check_coverage(op, f, {x - reach / op.sigma, x + reach / op.sigma}, "sampling_apply");
    const StencilPlan pl = plan_from(op, f);
    if (tail) *tail = truncation_tail(op.kernel, pl, x);
    return stencil_eval(op.kernel, pl, 0, x);
}

namespace {

RealFunction residual_from_plan(const Kernel& ker, std::shared_ptr<StencilPlan> plan,
                                const RealFunction& f, const Interval& base_window) {
    RealFunction r;
    const double ext = window_extension(ker, plan->sigma);
    r.window = {base_window.lo - ext, base_window.hi + ext};
    r.decay = residual_decay(f.decay, ker);
    r.label = "residual[" + f.label + "]";
    r.breakpoints = kink_points(ker, plan->sigma, r.window, f.breakpoints);
    Kernel kc = ker;
    auto feval = f.eval;
    r.eval = [kc, plan, feval](double x) { return feval(x) - stencil_eval(kc, *plan, 0, x); };
    return r;
}

}  // namespace

RealFunction operator_residual(const SamplingOperator& op, const RealFunction& f) {
    check_coverage(op, f, padded_window(f), "operator_residual");
    auto plan = std::make_shared<StencilPlan>(plan_from(op, f));
    enable_cache(op.kernel, *plan);
    return residual_from_plan(op.kernel, plan, f, f.window);
}

NormReport operator_error_report(const SamplingOperator& op, const RealFunction& f, double p,
                                 const QuadratureSpec& quad) {
    return lp_norm_report(operator_residual(op, f), p, ripple_spec(quad, op.sigma));
}

double operator_error(const SamplingOperator& op, const RealFunction& f, double p,
                      const QuadratureSpec& quad) {
    return operator_error_report(op, f, p, quad).value;
}

RealFunction operator_residual(const Kernel& ker, double sigma, const RealFunction& f) {
    return operator_residual(make_operator(ker, sigma, f), f);
}

double operator_error(const Kernel& ker, double sigma, const RealFunction& f, double p,
                      const QuadratureSpec& quad) {
    return operator_error(make_operator(ker, sigma, f), f, p, quad);
}

namespace {

RealFunction expansion_with_deriv(const Kernel& ker, double sigma, std::vector<double> coef,
                                  long k0, int deriv) {
    if (!(sigma > 0)) throw config_error("expansion: sigma must be positive");
    if (coef.empty()) throw config_error("expansion: empty coefficient vector");
    auto plan = std::make_shared<StencilPlan>();
    plan->sigma = sigma;
    plan->samples = std::move(coef);
    plan->lattice = true;
    plan->k0 = k0;
    plan->kpos.reserve(plan->samples.size());
    for (size_t j = 0; j < plan->samples.size(); ++j)
        plan->kpos.push_back((double)(k0 + (long)j));
    enable_cache(ker, *plan);

    RealFunction g;
    const double ext = window_extension(ker, sigma);
    g.window = {(double)k0 / sigma - ext,
                (double)(k0 + (long)plan->samples.size() - 1) / sigma + ext};
    switch (ker.decay) {
        case KernelDecay::compact: g.decay = Decay::compact(); break;
        case KernelDecay::gaussian: g.decay = Decay::exponential_tail(); break;
        case KernelDecay::polynomial: g.decay = Decay::polynomial_tail(ker.decay_order); break;
    }
    g.label = "expansion";
    g.breakpoints = kink_points(ker, sigma, g.window, {});
    const double scale = std::pow(sigma, (double)deriv);
    Kernel kc = ker;
    g.eval = [kc, plan, deriv, scale](double x) {
        return scale * stencil_eval(kc, *plan, deriv, x);
    };
    return g;
}

}  // namespace

RealFunction expansion_function(const Kernel& ker, double sigma, std::vector<double> coef,
                                long k0) {
    return expansion_with_deriv(ker, sigma, std::move(coef), k0, 0);
}

double expansion_seminorm(const Kernel& ker, double sigma, const std::vector<double>& coef,
                          long k0, int s, double p, const QuadratureSpec& quad) {
    if (s < 0) throw config_error("expansion_seminorm: order must be >= 0");
    if (s > (int)ker.derivatives.size())
        throw config_error("expansion_seminorm: kernel exposes " +
                           std::to_string(ker.derivatives.size()) + " derivatives, order " +
                           std::to_string(s) + " requested");
    return lp_norm(expansion_with_deriv(ker, sigma, coef, k0, s), p, ripple_spec(quad, sigma));
}

double operator_seminorm(const SamplingOperator& op, const RealFunction& f, int s, double p,
                         const QuadratureSpec& quad) {
    check_coverage(op, f, padded_window(f), "operator_seminorm");
    StencilPlan pl = plan_from(op, f);
    if (!pl.lattice)
        throw config_error("operator_seminorm: defined for uniform grids only");
    return expansion_seminorm(op.kernel, op.sigma, pl.samples, pl.k0, s, p, quad);
}

ProjectionDetail bandlimited_project_detail(const RealFunction& f, double sigma, int oversample) {
    if (!(sigma > 0)) throw config_error("bandlimited_project: sigma must be positive");
    if (oversample < 2) throw config_error("bandlimited_project: oversample must be >= 2");
    const double pad = f.decay.cls == DecayClass::polynomial ? 16.0 : 2.0;
    const double a = f.window.lo - pad;
    const double L = (f.window.hi + pad) - a;
    const int K = (int)std::floor(sigma * L + 1e-9);

    size_t target = (size_t)oversample * (size_t)std::max(64, 2 * K + 2);
    size_t N = 256;
    while (N < target) N <<= 1;

    std::vector<std::complex<double>> buf(N);
    for (size_t j = 0; j < N; ++j) buf[j] = f.eval(a + (double)j * L / (double)N);
    fft_radix2(buf, false);

    double total = 0.0, top = 0.0, discard = 0.0;
    for (size_t k = 0; k < N; ++k) {
        const double e = std::norm(buf[k]);
        const long m = (k <= N / 2) ? (long)k : (long)k - (long)N;
        total += e;
        if (std::abs(m) >= (long)(0.45 * (double)N)) top += e;
        if (std::abs(m) > (long)K) discard += e;
    }

    auto poly = std::make_shared<TrigPoly>();
    poly->x0 = a;
    poly->length = L;
    poly->coef.assign((size_t)(2 * K + 1), {0.0, 0.0});
    for (int m = -K; m <= K; ++m) {
        const size_t idx = (size_t)((m % (long)N + (long)N) % (long)N);
        poly->coef[(size_t)(K + m)] = buf[idx] / (double)N;
    }
    // real input: enforce the Hermitian pairing exactly
    for (int m = 1; m <= K; ++m) {
        const auto cp = poly->coef[(size_t)(K + m)];
        const auto cm = poly->coef[(size_t)(K - m)];
        const auto avg = 0.5 * (cp + std::conj(cm));
        poly->coef[(size_t)(K + m)] = avg;
        poly->coef[(size_t)(K - m)] = std::conj(avg);
    }
    poly->coef[(size_t)K] = {poly->coef[(size_t)K].real(), 0.0};

    ProjectionDetail pr;
    pr.sigma = sigma;
    pr.aliasing_ratio = total > 0 ? std::sqrt(top / total) : 0.0;
    pr.discard_l2 = std::sqrt(discard * L) / (double)N;
    pr.poly = std::move(poly);
    return pr;
}

RealFunction bandlimited_project(const RealFunction& f, double sigma, int oversample,
                                 double aliasing_tol) {
    ProjectionDetail pr = bandlimited_project_detail(f, sigma, oversample);
    if (pr.aliasing_ratio > aliasing_tol) {
        std::ostringstream os;
        os << "bandlimited_project: aliasing ratio " << pr.aliasing_ratio << " exceeds "
           << aliasing_tol << " for '" << f.label << "'; raise oversample";
        throw numerical_error(os.str());
    }
    RealFunction g;
    g.window = {pr.poly->x0, pr.poly->x0 + pr.poly->length};
    g.decay = Decay::compact();
    g.label = "band[" + f.label + "]";
    auto poly = pr.poly;
    const Interval w = g.window;
    g.eval = [poly, w](double x) { return (x < w.lo || x > w.hi) ? 0.0 : poly->eval(x); };
    for (int d = 1; d <= 3; ++d) {
        auto dp = std::make_shared<const TrigPoly>(poly->derivative(d));
        g.derivatives.push_back(
            [dp, w](double x) { return (x < w.lo || x > w.hi) ? 0.0 : dp->eval(x); });
    }
    g.spectrum = poly;
    return g;
}

namespace {

double seminorm_fd(const RealFunction& f, int s, double p, const QuadratureSpec& quad) {
    auto feval = f.eval;
    auto quotient = [feval, s](double x, double h) {
        switch (s) {
            case 1: return (feval(x + h) - feval(x - h)) / (2.0 * h);
            case 2: return (feval(x + h) - 2.0 * feval(x) + feval(x - h)) / (h * h);
            default:
                return (feval(x + 2 * h) - 2.0 * feval(x + h) + 2.0 * feval(x - h) -
                        feval(x - 2 * h)) /
                       (2.0 * h * h * h);
        }
    };
    const double h = 0.02;
    RealFunction d;
    d.window = f.window;
    d.decay = f.decay;
    d.breakpoints = f.breakpoints;
    d.label = "fd[" + f.label + "]";
    d.eval = [quotient, h](double x) { return quotient(x, h); };
    const double coarse = lp_norm(d, p, quad);
    d.eval = [quotient, h](double x) { return quotient(x, 0.5 * h); };
    const double fine = lp_norm(d, p, quad);
    if (std::abs(coarse - fine) > 0.1 * std::max(fine, 1e-12)) {
        std::ostringstream os;
        os << "sobolev_seminorm: difference quotients disagree (h: " << coarse
           << ", h/2: " << fine << ") for '" << f.label
           << "'; the order-" << s << " derivative is not resolved";
        throw numerical_error(os.str());
    }
    // (4 D(h/2) - D(h))/3 cancels the h^2 term of the central quotients
    d.eval = [quotient, h](double x) {
        return (4.0 * quotient(x, 0.5 * h) - quotient(x, h)) / 3.0;
    };
    return lp_norm(d, p, quad);
}

}  // namespace

double sobolev_seminorm(const RealFunction& g, int s, double p, const QuadratureSpec& quad) {
    if (s < 1 || s > 3) throw config_error("sobolev_seminorm: order must be 1, 2 or 3");
    if (g.spectrum && p == 2.0) return g.spectrum->sobolev_seminorm((double)s);
    if ((int)g.derivatives.size() >= s) {
        RealFunction d;
        d.window = g.window;
        d.decay = g.decay;
        d.breakpoints = g.breakpoints;
        d.label = "d" + std::to_string(s) + "[" + g.label + "]";
        d.eval = g.derivatives[(size_t)(s - 1)];
        return lp_norm(d, p, quad);
    }
    if (g.spectrum) {
        auto dp = std::make_shared<const TrigPoly>(g.spectrum->derivative(s));
        RealFunction d;
        d.window = g.window;
        d.decay = Decay::compact();
        d.label = "d" + std::to_string(s) + "[" + g.label + "]";
        const Interval w = g.window;
        d.eval = [dp, w](double x) { return (x < w.lo || x > w.hi) ? 0.0 : dp->eval(x); };
        return lp_norm(d, p, quad);
    }
    return seminorm_fd(g, s, p, quad);
}

double fractional_seminorm(const RealFunction& g, double s, double p) {
    if (!(s > 0)) throw config_error("fractional_seminorm: order must be positive");
    if (p != 2.0)
        throw config_error("fractional_seminorm: only p = 2 has a spectral representation here");
    if (!g.spectrum)
        throw config_error("fractional_seminorm: '" + g.label +
                           "' carries no spectrum; build it with bandlimited_project");
    return g.spectrum->sobolev_seminorm(s);
}

namespace {

struct InterpCore {
    double sigma = 1.0;
    std::vector<double> x;  // grid sites
    std::vector<double> a;  // coefficients
};

double interp_eval(const InterpCore& c, double x) {
    const double reach = 8.0 / c.sigma;
    const size_t i0 = (size_t)(std::lower_bound(c.x.begin(), c.x.end(), x - reach) -
                               c.x.begin());
    const size_t i1 = (size_t)(std::upper_bound(c.x.begin(), c.x.end(), x + reach) -
                               c.x.begin());
    double acc = 0.0;
    for (size_t i = i0; i < i1; ++i)
        acc += c.a[i] * gaussian_eval(c.sigma * (x - c.x[i]));
    return acc;
}

double dense_dot(const double* a, const double* b, size_t n) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double vec_norm(const std::vector<double>& v) {
    return std::sqrt(dense_dot(v.data(), v.data(), v.size()));
}

}  // namespace

InterpolantSolution gaussian_interpolate(const GridSet& grid, const std::vector<double>& samples,
                                         double reg) {
    const size_t n = grid.points.size();
    if (n == 0) throw config_error("gaussian_interpolate: empty grid");
    if (samples.size() != n)
        throw config_error("gaussian_interpolate: " + std::to_string(samples.size()) +
                           " samples for " + std::to_string(n) + " grid points");
    if (!(grid.sigma > 0)) throw config_error("gaussian_interpolate: grid sigma must be positive");
    if (reg < 0) throw config_error("gaussian_interpolate: negative regularization");
    if (n > 4096) throw config_error("gaussian_interpolate: dense solve capped at 4096 points");

    std::vector<double> u(n);
    for (size_t i = 0; i < n; ++i) u[i] = grid.sigma * grid.points[i];

    // symmetric collocation matrix at unit scale; reg shifts the solve only,
    // the residual is always measured against the unshifted system
    std::vector<double> A(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) A[i * n + j] = gaussian_eval(u[i] - u[j]);

    std::vector<double> L = A;
    for (size_t i = 0; i < n; ++i) L[i * n + i] += reg;
    for (size_t j = 0; j < n; ++j) {
        double d = L[j * n + j] - dense_dot(&L[j * n], &L[j * n], j);
        if (!(d > 0))
            throw numerical_error(
                "gaussian_interpolate: collocation matrix lost positive definiteness at row " +
                std::to_string(j));
        const double piv = std::sqrt(d);
        L[j * n + j] = piv;
        for (size_t i = j + 1; i < n; ++i)
            L[i * n + j] = (L[i * n + j] - dense_dot(&L[i * n], &L[j * n], j)) / piv;
    }

    auto solve = [&](std::vector<double> b) {
        for (size_t i = 0; i < n; ++i)
            b[i] = (b[i] - dense_dot(&L[i * n], b.data(), i)) / L[i * n + i];
        for (size_t ii = n; ii-- > 0;) {
            double s = b[ii];
            for (size_t j = ii + 1; j < n; ++j) s -= L[j * n + ii] * b[j];
            b[ii] = s / L[ii * n + ii];
        }
        return b;
    };

    InterpolantSolution sol;
    sol.coefficients = solve(samples);

    sol.residual = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = dense_dot(&A[i * n], sol.coefficients.data(), n) - samples[i];
        sol.residual = std::max(sol.residual, std::abs(r));
    }

    // spectral condition estimate by power iteration on (A + reg I) and its inverse
    std::vector<double> v(n), w(n);
    for (size_t i = 0; i < n; ++i) v[i] = uniform01(splitmix64(42 + (std::uint64_t)i)) - 0.5;
    double nv = vec_norm(v);
    for (auto& t : v) t /= nv;
    double lam_max = 1.0;
    for (int it = 0; it < 60; ++it) {
        for (size_t i = 0; i < n; ++i)
            w[i] = dense_dot(&A[i * n], v.data(), n) + reg * v[i];
        const double nw = vec_norm(w);
        if (nw == 0) break;
        lam_max = nw;
        for (size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
    }
    for (size_t i = 0; i < n; ++i) v[i] = uniform01(splitmix64(9000 + (std::uint64_t)i)) - 0.5;
    nv = vec_norm(v);
    for (auto& t : v) t /= nv;
    double inv_max = 1.0;
    for (int it = 0; it < 60; ++it) {
        w = solve(v);
        const double nw = vec_norm(w);
        if (nw == 0) break;
        inv_max = nw;
        for (size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
    }
    sol.condition_estimate = lam_max * inv_max;
    if (sol.condition_estimate > 1e14) {
        std::ostringstream os;
        os << "gaussian_interpolate: condition estimate " << sol.condition_estimate
           << " exceeds 1e14; the node set is too close to confluent";
        throw numerical_error(os.str());
    }
    return sol;
}

double interpolant_eval(const GridSet& grid, const InterpolantSolution& sol, double x) {
    if (sol.coefficients.size() != grid.points.size())
        throw config_error("interpolant_eval: coefficient/grid size mismatch");
    InterpCore c{grid.sigma, grid.points, sol.coefficients};
    return interp_eval(c, x);
}

RealFunction interpolant_function(const GridSet& grid, const InterpolantSolution& sol,
                                  Interval window) {
    if (sol.coefficients.size() != grid.points.size())
        throw config_error("interpolant_function: coefficient/grid size mismatch");
    auto core = std::make_shared<InterpCore>();
    core->sigma = grid.sigma;
    core->x = grid.points;
    core->a = sol.coefficients;
    RealFunction g;
    g.window = window;
    g.decay = Decay::exponential_tail();
    g.label = "interpolant";
    g.eval = [core](double x) { return interp_eval(*core, x); };
    const double s = grid.sigma;
    auto c = core;
    g.derivatives.push_back([c, s](double x) {
        const double reach = 8.0 / s;
        const size_t i0 = (size_t)(std::lower_bound(c->x.begin(), c->x.end(), x - reach) -
                                   c->x.begin());
        const size_t i1 = (size_t)(std::upper_bound(c->x.begin(), c->x.end(), x + reach) -
                                   c->x.begin());
        double acc = 0.0;
        for (size_t i = i0; i < i1; ++i) {
            const double t = s * (x - c->x[i]);
            acc += c->a[i] * (-2.0 * kPi * t) * gaussian_eval(t) * s;
        }
        return acc;
    });
    g.derivatives.push_back([c, s](double x) {
        const double reach = 8.0 / s;
        const size_t i0 = (size_t)(std::lower_bound(c->x.begin(), c->x.end(), x - reach) -
                                   c->x.begin());
        const size_t i1 = (size_t)(std::upper_bound(c->x.begin(), c->x.end(), x + reach) -
                                   c->x.begin());
        double acc = 0.0;
        for (size_t i = i0; i < i1; ++i) {
            const double t = s * (x - c->x[i]);
            acc += c->a[i] * (4.0 * kPi * kPi * t * t - 2.0 * kPi) * gaussian_eval(t) * s * s;
        }
        return acc;
    });
    return g;
}

RealFunction interpolant_residual(const GridSet& grid, const InterpolantSolution& sol,
                                  const RealFunction& f) {
    RealFunction g = interpolant_function(
        grid, sol, {f.window.lo - 8.0 / grid.sigma, f.window.hi + 8.0 / grid.sigma});
    RealFunction r;
    r.window = g.window;
    r.decay = f.decay.cls == DecayClass::polynomial ? Decay::polynomial_tail(f.decay.order)
                                                    : Decay::exponential_tail();
    r.label = "residual[" + f.label + "]";
    r.breakpoints = f.breakpoints;
    auto feval = f.eval;
    auto geval = g.eval;
    r.eval = [feval, geval](double x) { return feval(x) - geval(x); };
    return r;
}

}  // namespace sampop
