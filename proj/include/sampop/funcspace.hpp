#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sampop/quadrature.hpp"

namespace sampop {

struct TrigPoly;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

// How |f| behaves outside the window. Drives tail extension in lp_norm and
// truncation radii in the operators.
enum class DecayClass { compact_support, exponential, polynomial, none };

struct Decay {
    DecayClass cls = DecayClass::compact_support;
    double order = 0.0;  // polynomial only: |f(x)| ~ C |x|^-order

    static Decay compact() { return {DecayClass::compact_support, 0.0}; }
    static Decay exponential_tail() { return {DecayClass::exponential, 0.0}; }
    static Decay polynomial_tail(double q) { return {DecayClass::polynomial, q}; }
    static Decay none_tail() { return {DecayClass::none, 0.0}; }
};

// A concrete real-valued function on R. eval must return a finite value at
// every real argument; if decay is compact_support, eval is exactly 0 outside
// the window. breakpoints lists the kinks/jumps that quadrature must split at.
struct RealFunction {
    std::function<double(double)> eval;
    Interval window;
    Decay decay;
    std::string label;
    std::vector<double> breakpoints;
    // Optional analytic derivatives, derivatives[k-1] = f^(k). Present only on
    // smooth constructions that need Sobolev seminorms without differencing.
    std::vector<std::function<double(double)>> derivatives;
    // Set when the function came out of bandlimited_project: the periodic
    // model whose restriction eval computes. Enables spectral seminorms.
    std::shared_ptr<const TrigPoly> spectrum;

    double operator()(double x) const { return eval(x); }
};

struct NormReport {
    double value = 0.0;
    double tail_bound = 0.0;  // norm-units bound on mass beyond `covered`
    Interval covered;
};

// (integral of |f|^p)^(1/p) over the window, extended by the decay model until
// the tail budget is met. Throws numerical_error (naming the abscissa) on a
// non-finite evaluation, and when a polynomial tail model is not integrable.
double lp_norm(const RealFunction& f, double p, const QuadratureSpec& quad);
NormReport lp_norm_report(const RealFunction& f, double p, const QuadratureSpec& quad);

enum class GridKind { uniform, kadec_perturbed };

// Finite enumeration of a sampling set with density sigma. Invariant: points
// strictly increasing with min gap > 2*gamma/sigma.
struct GridSet {
    std::vector<double> points;
    double sigma = 1.0;
    double gamma = 0.49;
    GridKind kind = GridKind::uniform;
    double epsilon = 0.0;  // kadec_perturbed only
};

GridSet make_uniform_grid(double sigma, Interval window, double gamma = 0.49);

// Perturbed integer grid x_j = j + u_j, |u_j| <= epsilon < 1/4, scaled by
// 1/sigma. u_j is keyed by (seed, j) alone, so node j is reproducible
// independently of the enumeration window.
GridSet make_kadec_grid(double sigma, Interval window, double epsilon, std::uint64_t seed,
                        double gamma = 0.29);

// (sigma^-1 * sum over grid of |f(xi)|^p)^(1/p). Empty grid returns 0 and
// sets *empty_flag when provided.
double discrete_seminorm(const RealFunction& f, const GridSet& grid, double p,
                         bool* empty_flag = nullptr);

// Deterministic helpers shared by grid construction and the experiment seeds.
std::uint64_t splitmix64(std::uint64_t z);
double uniform01(std::uint64_t bits);

}  // namespace sampop
