#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "sampop/errors.hpp"
#include "sampop/funcspace.hpp"

using namespace sampop;

namespace {

RealFunction indicator01() {
    RealFunction f;
    f.eval = [](double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; };
    f.window = {0.0, 1.0};
    f.decay = Decay::compact();
    f.label = "indicator01";
    f.breakpoints = {0.0, 1.0};
    return f;
}

RealFunction sine_window() {
    RealFunction f;
    f.eval = [](double x) { return (x >= 0.0 && x <= 2.0 * M_PI) ? std::sin(x) : 0.0; };
    f.window = {0.0, 2.0 * M_PI};
    f.decay = Decay::compact();
    f.label = "sin_0_2pi";
    // pi is a kink of |sin|^p at odd p
    f.breakpoints = {0.0, M_PI, 2.0 * M_PI};
    return f;
}

RealFunction smooth_bump() {
    RealFunction f;
    f.eval = [](double x) {
        const double q = 1.0 - x * x;
        return q > 0.0 ? std::exp(1.0 - 1.0 / q) : 0.0;
    };
    f.window = {-1.0, 1.0};
    f.decay = Decay::compact();
    f.label = "bump";
    f.breakpoints = {-1.0, 1.0};
    return f;
}

RealFunction gauss_fn() {
    RealFunction f;
    f.eval = [](double x) { return std::exp(-M_PI * x * x); };
    f.window = {-6.0, 6.0};
    f.decay = Decay::exponential_tail();
    f.label = "gauss";
    return f;
}

}  // namespace

TEST_CASE("gauss-legendre rule integrates high-degree polynomials exactly") {
    // order 10 is exact through degree 19
    auto val = integrate_plain([](double x) { return std::pow(x, 19.0); }, 0.0, 1.0, 1, 10);
    CHECK(val == doctest::Approx(1.0 / 20.0).epsilon(1e-13));
    auto v2 = integrate_plain([](double x) { return x * x; }, -1.0, 2.0, 3, 4);
    CHECK(v2 == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("lp_norm closed forms") {
    QuadratureSpec quad;
    SUBCASE("unit indicator, p=2") {
        CHECK(lp_norm(indicator01(), 2.0, quad) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("zero function") {
        RealFunction z;
        z.eval = [](double) { return 0.0; };
        z.window = {-1.0, 1.0};
        z.decay = Decay::compact();
        CHECK(lp_norm(z, 2.0, quad) == 0.0);
    }
    SUBCASE("sin on [0,2pi]") {
        // int sin^2 = pi; int |sin| = 4; int |sin|^3 = 8/3
        CHECK(lp_norm(sine_window(), 2.0, quad) ==
              doctest::Approx(1.7724538509055160273).epsilon(1e-11));
        CHECK(lp_norm(sine_window(), 1.0, quad) == doctest::Approx(4.0).epsilon(1e-11));
        CHECK(lp_norm(sine_window(), 3.0, quad) ==
              doctest::Approx(1.38672254870126941).epsilon(1e-11));
    }
    SUBCASE("gaussian, p=2, exponential tail") {
        // ||e^{-pi x^2}||_2 = 2^{-1/4}
        CHECK(lp_norm(gauss_fn(), 2.0, quad) ==
              doctest::Approx(0.84089641525371454).epsilon(1e-11));
    }
    SUBCASE("algebraic cusp |x|^0.3 with graded panels") {
        RealFunction c;
        c.eval = [](double x) { return (std::abs(x) <= 1.0) ? std::pow(std::abs(x), 0.3) : 0.0; };
        c.window = {-1.0, 1.0};
        c.decay = Decay::compact();
        c.breakpoints = {-1.0, 0.0, 1.0};
        CHECK(lp_norm(c, 1.0, quad) == doctest::Approx(2.0 / 1.3).epsilon(1e-9));
    }
    SUBCASE("polynomial tail 1/(1+x^2)") {
        RealFunction f;
        f.eval = [](double x) { return 1.0 / (1.0 + x * x); };
        f.window = {-4.0, 4.0};
        f.decay = Decay::polynomial_tail(2.0);
        auto rep = lp_norm_report(f, 2.0, quad);
        // ||f||_2 = sqrt(pi/2)
        CHECK(rep.value == doctest::Approx(1.2533141373155003).epsilon(1e-6));
        CHECK(rep.covered.hi > 4.0);
        CHECK(rep.tail_bound < 1e-4);
    }
}

TEST_CASE("lp_norm homogeneity and triangle inequality") {
    QuadratureSpec quad;
    auto f = sine_window();
    const double base = lp_norm(f, 2.0, quad);
    for (double c : {-3.5, 0.25, 7.0}) {
        RealFunction g = f;
        g.eval = [c, f](double x) { return c * f.eval(x); };
        CHECK(lp_norm(g, 2.0, quad) == doctest::Approx(std::abs(c) * base).epsilon(1e-10));
    }

    // triangle inequality on a few seeded pairs
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const double a = 2.0 * uniform01(splitmix64(seed)) - 1.0;
        const double b = 2.0 * uniform01(splitmix64(seed ^ 0xabcdef)) - 1.0;
        RealFunction u, v, sum;
        u.eval = [a](double x) { return a * std::sin(3.0 * x) * std::exp(-x * x); };
        v.eval = [b](double x) { return b * std::cos(2.0 * x) * std::exp(-0.5 * x * x); };
        u.window = v.window = {-5.0, 5.0};
        u.decay = v.decay = Decay::compact();
        sum.eval = [&u, &v](double x) { return u.eval(x) + v.eval(x); };
        sum.window = u.window;
        sum.decay = Decay::compact();
        for (double p : {1.0, 2.0, 3.0}) {
            CHECK(lp_norm(sum, p, quad) <=
                  lp_norm(u, p, quad) + lp_norm(v, p, quad) + 1e-12);
        }
    }
}

TEST_CASE("lp_norm quadrature stability under panel doubling on smooth functions") {
    QuadratureSpec quad;
    QuadratureSpec fine = quad;
    fine.panels = quad.panels * 2;
    for (const auto& f : {smooth_bump(), gauss_fn()}) {
        const double a = lp_norm(f, 2.0, quad);
        const double b = lp_norm(f, 2.0, fine);
        CHECK(std::abs(a - b) < 1e-8);
    }
}

TEST_CASE("lp_norm rejects bad input") {
    QuadratureSpec quad;
    auto f = indicator01();
    CHECK_THROWS_AS(lp_norm(f, 0.5, quad), config_error);

    RealFunction bad;
    bad.eval = [](double x) { return x == x ? (x > 0.25 && x < 0.26 ? 1.0 / 0.0 : 1.0) : 0.0; };
    bad.window = {0.0, 1.0};
    bad.decay = Decay::compact();
    try {
        lp_norm(bad, 2.0, quad);
        FAIL("expected numerical_error");
    } catch (const numerical_error& e) {
        CHECK(std::string(e.what()).find("non-finite") != std::string::npos);
    }
}

TEST_CASE("uniform grid construction") {
    auto g = make_uniform_grid(2.0, {-1.0, 1.0});
    REQUIRE(g.points.size() == 5);
    CHECK(g.points.front() == doctest::Approx(-1.0));
    CHECK(g.points[2] == doctest::Approx(0.0));
    CHECK(g.points.back() == doctest::Approx(1.0));

    auto h = make_uniform_grid(1.0, {0.0, 3.5});
    REQUIRE(h.points.size() == 4);
    CHECK(h.points.back() == doctest::Approx(3.0));

    // min gap 1/sigma must exceed 2*gamma/sigma
    auto k = make_uniform_grid(4.0, {0.0, 1.0});
    for (size_t i = 0; i + 1 < k.points.size(); ++i)
        CHECK(k.points[i + 1] - k.points[i] > 2.0 * 0.49 / 4.0);

    CHECK_THROWS_AS(make_uniform_grid(2.0, {-1.0, 1.0}, 0.5), config_error);
    CHECK_THROWS_AS(make_uniform_grid(-1.0, {-1.0, 1.0}), config_error);
}

TEST_CASE("kadec grid construction") {
    SUBCASE("epsilon 0 reproduces the uniform grid") {
        auto u = make_uniform_grid(4.0, {-2.0, 2.0});
        auto k = make_kadec_grid(4.0, {-2.0, 2.0}, 0.0, 99);
        REQUIRE(u.points.size() == k.points.size());
        for (size_t i = 0; i < u.points.size(); ++i)
            CHECK(u.points[i] == doctest::Approx(k.points[i]).epsilon(1e-15));
    }
    SUBCASE("deterministic for a fixed seed") {
        auto a = make_kadec_grid(8.0, {-2.0, 2.0}, 0.2, 1234);
        auto b = make_kadec_grid(8.0, {-2.0, 2.0}, 0.2, 1234);
        REQUIRE(a.points.size() == b.points.size());
        for (size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
        auto c = make_kadec_grid(8.0, {-2.0, 2.0}, 0.2, 4321);
        bool same = a.points.size() == c.points.size();
        if (same)
            for (size_t i = 0; i < a.points.size(); ++i) same = same && a.points[i] == c.points[i];
        CHECK_FALSE(same);
    }
    SUBCASE("perturbations keyed by node index, not by window") {
        auto wide = make_kadec_grid(1.0, {-20.0, 20.0}, 0.2, 7);
        auto narrow = make_kadec_grid(1.0, {-3.0, 3.0}, 0.2, 7);
        // every narrow-window node appears in the wide grid
        for (double x : narrow.points) {
            bool found = false;
            for (double y : wide.points) found = found || std::abs(x - y) < 1e-14;
            CHECK(found);
        }
    }
    SUBCASE("worst-case separation") {
        auto g = make_kadec_grid(16.0, {-4.0, 4.0}, 0.2, 5);
        for (size_t i = 0; i + 1 < g.points.size(); ++i)
            CHECK(g.points[i + 1] - g.points[i] >= (1.0 - 2.0 * 0.2) / 16.0 - 1e-12);
    }
    CHECK_THROWS_AS(make_kadec_grid(4.0, {-1.0, 1.0}, 0.25, 1), config_error);
    CHECK_THROWS_AS(make_kadec_grid(4.0, {-1.0, 1.0}, 0.3, 1), config_error);
}

TEST_CASE("discrete seminorm") {
    RealFunction one;
    one.eval = [](double) { return 1.0; };
    one.window = {0.0, 10.0};
    one.decay = Decay::none_tail();

    auto g = make_uniform_grid(1.0, {0.0, 8.5});
    const double n = (double)g.points.size();
    CHECK(discrete_seminorm(one, g, 2.0) == doctest::Approx(std::sqrt(n)).epsilon(1e-13));

    RealFunction ident;
    ident.eval = [](double x) { return x; };
    ident.window = {0.0, 2.0};
    ident.decay = Decay::none_tail();
    auto g3 = make_uniform_grid(1.0, {0.0, 2.0});
    CHECK(discrete_seminorm(ident, g3, 1.0) == doctest::Approx(3.0).epsilon(1e-13));

    RealFunction zero;
    zero.eval = [](double) { return 0.0; };
    zero.window = {0.0, 1.0};
    zero.decay = Decay::compact();
    CHECK(discrete_seminorm(zero, g3, 2.0) == 0.0);

    GridSet empty;
    empty.sigma = 1.0;
    bool flag = false;
    CHECK(discrete_seminorm(one, empty, 2.0, &flag) == 0.0);
    CHECK(flag);

    // triangle inequality on the grid
    RealFunction sum;
    sum.eval = [&](double x) { return one.eval(x) + ident.eval(x); };
    sum.window = {0.0, 2.0};
    sum.decay = Decay::none_tail();
    CHECK(discrete_seminorm(sum, g3, 2.0) <=
          discrete_seminorm(one, g3, 2.0) + discrete_seminorm(ident, g3, 2.0) + 1e-12);
}
