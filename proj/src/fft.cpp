#include "sampop/fft.hpp"

#include <cmath>

#include "sampop/errors.hpp"

namespace sampop {

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw config_error("fft_radix2: length must be a nonzero power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * M_PI / (double)len * (inverse ? 1.0 : -1.0);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse)
        for (auto& z : a) z /= (double)n;
}

namespace {

void check_shape(const TrigPoly& g) {
    if (g.coef.empty() || g.coef.size() % 2 == 0)
        throw config_error("TrigPoly: coefficient vector must have odd length");
    if (!(g.length > 0)) throw config_error("TrigPoly: period length must be positive");
}

}  // namespace

std::complex<double> TrigPoly::mode(int m) const {
    check_shape(*this);
    const int K = max_mode();
    if (m < -K || m > K) return {0.0, 0.0};
    return coef[(size_t)(K + m)];
}

double TrigPoly::eval(double x) const {
    check_shape(*this);
    const int K = max_mode();
    const double th = 2.0 * M_PI * (x - x0) / length;
    double acc = coef[(size_t)K].real();
    const std::complex<double> step(std::cos(th), std::sin(th));
    std::complex<double> w = step;
    for (int m = 1; m <= K; ++m) {
        acc += 2.0 * (coef[(size_t)(K + m)] * w).real();
        // periodic re-anchor keeps the rotation error from accumulating
        if ((m & 127) == 127)
            w = std::polar(1.0, th * (double)(m + 1));
        else
            w *= step;
    }
    return acc;
}

TrigPoly TrigPoly::derivative(int order) const {
    check_shape(*this);
    if (order < 1) throw config_error("TrigPoly::derivative: order must be >= 1");
    const int K = max_mode();
    TrigPoly d = *this;
    for (int m = -K; m <= K; ++m) {
        const std::complex<double> factor(0.0, 2.0 * M_PI * (double)m / length);
        std::complex<double> pw(1.0, 0.0);
        for (int j = 0; j < order; ++j) pw *= factor;
        d.coef[(size_t)(K + m)] *= pw;
    }
    return d;
}

double TrigPoly::l2_norm() const {
    check_shape(*this);
    double s = 0.0;
    for (const auto& c : coef) s += std::norm(c);
    return std::sqrt(s * length);
}

double TrigPoly::sobolev_seminorm(double s) const {
    check_shape(*this);
    if (!(s >= 0)) throw config_error("TrigPoly::sobolev_seminorm: order must be >= 0");
    const int K = max_mode();
    double acc = 0.0;
    for (int m = -K; m <= K; ++m) {
        if (m == 0) continue;
        const double w = std::pow(2.0 * M_PI * std::abs((double)m) / length, 2.0 * s);
        acc += w * std::norm(coef[(size_t)(K + m)]);
    }
    return std::sqrt(acc * length);
}

}
