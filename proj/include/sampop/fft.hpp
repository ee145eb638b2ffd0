#pragma once

#include <complex>
#include <vector>

namespace sampop {

// In-place radix-2 transform; length must be a power of two.
// Forward kernel is e^{-2 pi i jk/n}; the inverse includes the 1/n factor.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

// Trigonometric polynomial on [x0, x0 + length].
// coef has odd length 2K+1 and coef[K + m] is the coefficient of
// e^{2 pi i m (x - x0)/length}.  Real-valued evaluation assumes the
// Hermitian symmetry coef[K - m] = conj(coef[K + m]).
struct TrigPoly {
    double x0 = 0.0;
    double length = 1.0;
    std::vector<std::complex<double>> coef;

    int max_mode() const { return (int)((coef.size() - 1) / 2); }
    std::complex<double> mode(int m) const;  // 0 outside the stored band
    double eval(double x) const;
    TrigPoly derivative(int order) const;
    double l2_norm() const;  // over one period, by Parseval

    // (sum_{m != 0} (2 pi |m| / length)^{2s} |c_m|^2 * length)^{1/2};
    // fractional s is allowed, which is how the fractional-smoothness
    // functionals are evaluated at p = 2.
    double sobolev_seminorm(double s) const;
};

}
