#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sampop/errors.hpp"
#include "sampop/funcspace.hpp"
#include "sampop/kernels.hpp"

using namespace sampop;

TEST_CASE("sinc point values") {
    CHECK(sinc_eval(0.0) == 1.0);
    for (int k : {1, -1, 2, 7, -12, 20}) CHECK(sinc_eval((double)k) == 0.0);
    CHECK(sinc_eval(0.5) == doctest::Approx(0.63661977236758134).epsilon(1e-14));
    CHECK(sinc_eval(0.3) == doctest::Approx(std::sin(0.3 * M_PI) / (0.3 * M_PI)).epsilon(1e-14));
    // series branch agrees with the ratio form at the same point
    for (double x : {9.9e-5, 5e-5, 1e-6})
        CHECK(sinc_eval(x) == doctest::Approx(std::sin(M_PI * x) / (M_PI * x)).epsilon(1e-14));
    // orthonormality at integer offsets
    for (int j = -20; j <= 20; ++j)
        for (int k = -20; k <= 20; ++k)
            CHECK(sinc_eval((double)(j - k)) == (j == k ? 1.0 : 0.0));
}

TEST_CASE("sinc derivatives match difference quotients") {
    auto d1 = [](double x, double h) { return (sinc_eval(x + h) - sinc_eval(x - h)) / (2 * h); };
    auto d2 = [](double x, double h) {
        return (sinc_eval(x + h) - 2 * sinc_eval(x) + sinc_eval(x - h)) / (h * h);
    };
    auto d3 = [](double x, double h) {
        return (sinc_eval(x + 2 * h) - 2 * sinc_eval(x + h) + 2 * sinc_eval(x - h) -
                sinc_eval(x - 2 * h)) /
               (2 * h * h * h);
    };
    for (double x : {0.015, 0.37, 1.2, 3.8, -2.6}) {
        CHECK(sinc_deriv(1, x) == doctest::Approx(d1(x, 1e-5)).epsilon(1e-7));
        CHECK(sinc_deriv(2, x) == doctest::Approx(d2(x, 1e-4)).epsilon(1e-5));
        CHECK(std::abs(sinc_deriv(3, x) - d3(x, 1e-3)) < 2e-4);
    }
    CHECK(sinc_deriv(1, 0.0) == 0.0);
    CHECK(sinc_deriv(2, 0.0) == doctest::Approx(-M_PI * M_PI / 3.0).epsilon(1e-13));
    CHECK_THROWS_AS(sinc_deriv(4, 0.1), config_error);
}

TEST_CASE("bspline point values and support") {
    CHECK(bspline_eval(2, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bspline_eval(2, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(bspline_eval(2, 1.0) == 0.0);
    CHECK(bspline_eval(3, 0.0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(bspline_eval(3, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(bspline_eval(3, 1.0) == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(bspline_eval(4, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(bspline_eval(4, 0.5) == doctest::Approx(23.0 / 48.0).epsilon(1e-14));
    CHECK(bspline_eval(4, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(bspline_eval(2, 1.0001) == 0.0);
    CHECK(bspline_eval(4, -2.5) == 0.0);
    CHECK_THROWS_AS(bspline_eval(1, 0.0), config_error);
}

TEST_CASE("bspline partition of unity") {
    for (int r : {2, 3, 4}) {
        for (int i = 0; i < 100; ++i) {
            const double x = 100.0 * uniform01(splitmix64(1000 * r + i)) - 50.0;
            double sum = 0.0;
            for (long k = (long)std::floor(x - 0.5 * r) - 1; k <= (long)std::ceil(x + 0.5 * r) + 1;
                 ++k)
                sum += bspline_eval(r, x - (double)k);
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("bspline unit mass and Fourier transform") {
    QuadratureSpec quad;
    RealFunction b3;
    b3.eval = [](double u) { return bspline_eval(3, u); };
    b3.window = {-1.5, 1.5};
    b3.decay = Decay::compact();
    b3.breakpoints = {-1.5, -0.5, 0.5, 1.5};
    CHECK(lp_norm(b3, 1.0, quad) == doctest::Approx(1.0).epsilon(1e-11));

    auto k2 = make_bspline_kernel(2);
    CHECK(k2.fourier_eval(0.3) == doctest::Approx(0.736839729322250).epsilon(1e-12));
    CHECK(k2.fourier_eval(1.7) == doctest::Approx(0.0229465659650528).epsilon(1e-12));
    // independent route: direct cosine transform of the hat
    const double xi = 0.3;
    const double direct = integrate(
        [xi](double u) { return bspline_eval(2, u) * std::cos(2.0 * M_PI * xi * u); }, -1.0, 1.0,
        {0.0}, quad);
    CHECK(direct == doctest::Approx(k2.fourier_eval(xi)).epsilon(1e-11));
}

TEST_CASE("bspline derivative identity") {
    for (int r : {3, 4}) {
        auto k = make_bspline_kernel(r);
        REQUIRE((int)k.derivatives.size() == r - 2);
        for (double u : {-1.3, -0.2, 0.45, 1.1}) {
            const double h = 1e-6;
            const double fd = (bspline_eval(r, u + h) - bspline_eval(r, u - h)) / (2 * h);
            CHECK(k.derivatives[0](u) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
    auto k4 = make_bspline_kernel(4);
    for (double u : {-0.7, 0.3}) {
        const double h = 1e-5;
        const double fd =
            (bspline_eval(4, u + h) - 2 * bspline_eval(4, u) + bspline_eval(4, u - h)) / (h * h);
        CHECK(k4.derivatives[1](u) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("gaussian kernel") {
    CHECK(gaussian_eval(0.0) == 1.0);
    CHECK(gaussian_eval(0.5) == doctest::Approx(0.455938127765996237).epsilon(1e-15));
    CHECK(gaussian_eval(1.0) == doctest::Approx(0.0432139182637722497).epsilon(1e-15));
    for (double x : {0.3, -1.7, 2.2}) {
        const double v = gaussian_eval(x);
        CHECK(v * v == doctest::Approx(std::exp(-2.0 * M_PI * x * x)).epsilon(1e-14));
    }
    QuadratureSpec quad;
    RealFunction g;
    g.eval = [](double x) { return gaussian_eval(x); };
    g.window = {-6.0, 6.0};
    g.decay = Decay::exponential_tail();
    CHECK(lp_norm(g, 1.0, quad) == doctest::Approx(1.0).epsilon(1e-12));

    auto k = make_gaussian_kernel();
    const double h = 1e-5, x0 = 0.77;
    const double fd = (gaussian_eval(x0 + h) - gaussian_eval(x0 - h)) / (2 * h);
    CHECK(k.derivatives[0](x0) == doctest::Approx(fd).epsilon(1e-8));
    CHECK(k.fourier_eval(0.4) == doctest::Approx(gaussian_eval(0.4)).epsilon(1e-15));
}

TEST_CASE("riesz kernel from its cosine transform") {
    QuadratureSpec quad;
    auto k = riesz_build(2.0, 1.0, quad, 50.0);

    CHECK(k.eval(0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(k.eval(0.6) == doctest::Approx(0.397910399103425366).epsilon(2e-5));
    CHECK(std::abs(k.eval(1.0) - (-0.028668030607288435)) < 5e-6);
    CHECK(std::abs(k.eval(2.5) - (-0.016581611452810171)) < 5e-6);

    for (double x : {0.3, 1.1, 7.5, 24.0}) CHECK(k.eval(-x) == k.eval(x));

    CHECK(k.fourier_eval(0.0) == 1.0);
    CHECK(k.fourier_eval(0.75) == 0.0);
    CHECK(k.fourier_eval(0.9) == 0.0);
    CHECK(k.fourier_eval(0.375) == doctest::Approx(1.0 - 0.25).epsilon(1e-14));

    // unit mass, controlled by the x^-2 tail beyond the integration range
    const double mass = integrate_plain([&](double x) { return k.eval(x); }, -50.0, 50.0, 400, 10);
    CHECK(std::abs(mass - 1.0) < 6e-3);

    // empirical decay bound |rho(x)| (1+|x|)^{1+delta} stays bounded; the
    // constant near the origin is larger than in the oscillating tail
    double worst_all = 0.0, worst_tail = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double x = std::pow(10.0, -0.5 + 2.0 * i / 40.0);  // log grid up to ~31.6
        const double v = std::abs(k.eval(x)) * std::pow(1.0 + x, 2.0);
        worst_all = std::max(worst_all, v);
        if (x >= 2.0) worst_tail = std::max(worst_tail, v);
    }
    CHECK(worst_all < 3.0);
    CHECK(worst_tail < 1.0);
    CHECK(std::isfinite(worst_all));

    CHECK_THROWS_AS(riesz_build(-1.0, 1.0, quad), config_error);
    CHECK_THROWS_AS(riesz_build(2.0, 0.0, quad), config_error);
}
