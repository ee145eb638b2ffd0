#pragma once

#include <functional>
#include <vector>

namespace sampop {

// Composite Gauss-Legendre quadrature, split at integrand breakpoints with
// geometric panel grading toward every segment edge. Deterministic for a
// fixed spec; all entry points are pure.

struct QuadratureSpec {
    int panels = 64;                // panels per unit length
    int nodes_per_panel = 10;       // Gauss-Legendre order per panel
    double tail_tolerance = 1e-10;  // absolute budget for dropped tails
    int refine_levels = 8;          // grading depth at segment edges
    int max_tail_blocks = 48;       // cap on doubling extension blocks
};

void validate(const QuadratureSpec& spec);

// Nodes and weights on [-1,1]. Computed by Newton iteration on the Legendre
// recurrence, cached per order. n >= 2.
const std::vector<double>& gl_nodes(int n);
const std::vector<double>& gl_weights(int n);

// Integral over [a,b], split at the breakpoints inside (a,b). Throws
// numerical_error naming the abscissa if fn returns a non-finite value.
double integrate(const std::function<double(double)>& fn, double a, double b,
                 const std::vector<double>& breakpoints, const QuadratureSpec& spec);

// Fixed panel count, no grading, no breakpoints. Used for tail blocks.
double integrate_plain(const std::function<double(double)>& fn, double a, double b,
                       int panels, int nodes);

}  // namespace sampop
