#pragma once

// Test-side oracles, independent of the library's transform path. Closed
// forms where they exist, series/quadrature otherwise. Nothing in here is
// used by the implementation under test.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

// Closed-form second-order kernel: (1/2pi) Int e^{ikx + alpha t k^2} dk
// = e^{x^2/(4 alpha t)} / (2 sqrt(pi (-alpha t))), valid for Re(alpha t) < 0.
inline cd gauss_kernel(cd alpha, double t, double x) {
    const cd at = alpha * t;
    return std::exp(x * x / (4.0 * at)) / (2.0 * std::sqrt(M_PI * (-at)));
}

// Airy function by its Maclaurin series (entire; adequate cancellation on
// the test range |x| <= 10, relative error ~1e-11 at x = -8).
inline double airy_series(double x) {
    const double ai0 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
    const double aip0 = -std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
    const double x3 = x * x * x;
    double f = 1.0, tf = 1.0;
    double g = x, tg = x;
    for (int k = 1; k < 200; ++k) {
        tf *= x3 / ((3.0 * k) * (3.0 * k - 1.0));
        tg *= x3 / ((3.0 * k + 1.0) * (3.0 * k));
        f += tf;
        g += tg;
        if (std::abs(tf) < 1e-18 && std::abs(tg) < 1e-18) break;
    }
    return ai0 * f + aip0 * g;
}

// Third-order kernel with alpha = i*a, a > 0:
// g_t(x) = (3 a t)^{-1/3} Ai(x (3 a t)^{-1/3}).
inline double airy_kernel(double a, double t, double x) {
    const double s = std::pow(3.0 * a * t, -1.0 / 3.0);
    return s * airy_series(x * s);
}

// Plain composite Simpson on [a, b].
inline cd simpson(const std::function<cd(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    cd s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * (h / 3.0);
}

// Mollified oscillatory quadrature for (1/2pi) Int e^{ikx} e^{alpha t k^p} dk
// with a small-epsilon ladder and Richardson extrapolation. Slow; used at a
// handful of points only.
inline cd mollified_fourier_quadrature(int p, cd alpha, double t, double x) {
    const std::vector<double> ladder{4e-3, 2e-3, 1e-3};
    std::vector<cd> vals;
    for (double eps : ladder) {
        const double kmax = std::sqrt(34.0 / eps);
        // resolve the fastest oscillation p*a*t*k^(p-1) + |x| at k = kmax
        const double freq =
            p * std::abs(alpha) * t * std::pow(kmax, p - 1.0) + std::abs(x) + 1.0;
        const int n = static_cast<int>(2.0 * kmax * freq) + 1000;
        auto integrand = [&](double k) {
            return std::exp(cd(0.0, k * x) + alpha * t * std::pow(k, double(p)) - eps * k * k);
        };
        vals.push_back(simpson(integrand, -kmax, kmax, std::min(n, 4'000'000)) /
                       (2.0 * M_PI));
    }
    // first-order Richardson cascade, ladder ratio 2
    for (std::size_t stage = 1; stage < vals.size(); ++stage) {
        const double f = std::pow(2.0, double(stage));
        for (std::size_t i = 0; i + stage < vals.size(); ++i)
            vals[i] = (f * vals[i + 1] - vals[i]) / (f - 1.0);
    }
    return vals[0];
}

// Total variation of the p = 4, alpha = -1, t = 1 kernel, frozen from an
// independent adaptive quadrature run (error estimate ~1e-8).
inline constexpr double kTvQuartic = 1.23729438581;

} // namespace oracle
