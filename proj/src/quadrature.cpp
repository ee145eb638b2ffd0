#include "sampop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "sampop/errors.hpp"

namespace sampop {

void validate(const QuadratureSpec& spec) {
    if (spec.panels < 1) throw config_error("QuadratureSpec: panels must be >= 1");
    if (spec.nodes_per_panel < 2) throw config_error("QuadratureSpec: nodes_per_panel must be >= 2");
    if (!(spec.tail_tolerance > 0)) throw config_error("QuadratureSpec: tail_tolerance must be > 0");
    if (spec.refine_levels < 0) throw config_error("QuadratureSpec: refine_levels must be >= 0");
}

namespace {

using Rule = std::pair<std::vector<double>, std::vector<double>>;

Rule compute_rule(int n) {
    Rule rule;
    auto& [xs, ws] = rule;
    xs.resize(n);
    ws.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre P_n(x) and its derivative by the three-term recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        xs[i] = -x;
        xs[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    return rule;
}

const Rule& rule_for(int n) {
    static std::map<int, Rule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

double panel_sum(const std::function<double(double)>& fn, double a, double b,
                 const std::vector<double>& xs, const std::vector<double>& ws) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double x = mid + half * xs[i];
        const double v = fn(x);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "non-finite integrand value at x = " << x;
            throw numerical_error(msg.str());
        }
        acc += ws[i] * v;
    }
    return acc * half;
}

// Panel [a,b] graded toward `edge` (one of its endpoints): geometric
// subdivision with ratio 4 so algebraic singularities at the edge converge.
double graded_panel(const std::function<double(double)>& fn, double a, double b, double edge,
                    int levels, const std::vector<double>& xs, const std::vector<double>& ws) {
    if (levels <= 0) return panel_sum(fn, a, b, xs, ws);
    double acc = 0.0;
    double w = b - a;
    if (edge <= a + 0.25 * w * 1e-12) {  // grade toward a
        double lo = a + w * std::pow(0.25, levels);
        acc += panel_sum(fn, a, lo, xs, ws);
        while (lo < b - 1e-300) {
            double hi = std::min(b, a + (lo - a) * 4.0);
            acc += panel_sum(fn, lo, hi, xs, ws);
            lo = hi;
        }
    } else {  // grade toward b
        double hi = b - w * std::pow(0.25, levels);
        acc += panel_sum(fn, hi, b, xs, ws);
        while (hi > a + 1e-300) {
            double lo = std::max(a, b - (b - hi) * 4.0);
            acc += panel_sum(fn, lo, hi, xs, ws);
            hi = lo;
        }
    }
    return acc;
}

}  // namespace

const std::vector<double>& gl_nodes(int n) { return rule_for(n).first; }
const std::vector<double>& gl_weights(int n) { return rule_for(n).second; }

double integrate(const std::function<double(double)>& fn, double a, double b,
                 const std::vector<double>& breakpoints, const QuadratureSpec& spec) {
    if (!(b > a)) return 0.0;
    const auto& xs = gl_nodes(spec.nodes_per_panel);
    const auto& ws = gl_weights(spec.nodes_per_panel);

    std::vector<double> edges{a, b};
    for (double bp : breakpoints)
        if (bp > a && bp < b) edges.push_back(bp);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    double total = 0.0;
    for (size_t s = 0; s + 1 < edges.size(); ++s) {
        const double u = edges[s], v = edges[s + 1];
        const int m = std::max(1, (int)std::ceil((v - u) * spec.panels));
        const double w = (v - u) / m;
        for (int i = 0; i < m; ++i) {
            const double pa = u + i * w, pb = (i + 1 == m) ? v : u + (i + 1) * w;
            if (m == 1) {
                // Single panel between two edges: grade toward both.
                const double mid = 0.5 * (pa + pb);
                total += graded_panel(fn, pa, mid, pa, spec.refine_levels, xs, ws);
                total += graded_panel(fn, mid, pb, pb, spec.refine_levels, xs, ws);
            } else if (i == 0) {
                total += graded_panel(fn, pa, pb, pa, spec.refine_levels, xs, ws);
            } else if (i + 1 == m) {
                total += graded_panel(fn, pa, pb, pb, spec.refine_levels, xs, ws);
            } else {
                total += panel_sum(fn, pa, pb, xs, ws);
            }
        }
    }
    return total;
}

double integrate_plain(const std::function<double(double)>& fn, double a, double b,
                       int panels, int nodes) {
    if (!(b > a)) return 0.0;
    const auto& xs = gl_nodes(nodes);
    const auto& ws = gl_weights(nodes);
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i)
        total += panel_sum(fn, a + i * w, (i + 1 == panels) ? b : a + (i + 1) * w, xs, ws);
    return total;
}

}  // namespace sampop
