#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "pseudopath/evolution.hpp"
#include "pseudopath/grid.hpp"

namespace pseudopath {

/// Fundamental-solution samples g_t(x) = (1/2pi) Int e^{ikx} e^{alpha t k^p} dk
/// on a uniform grid. `tail_mass_bound` is an upper estimate of the |g| mass
/// the grid window misses (measured on the wider internal transform domain,
/// plus an envelope remainder beyond it).
struct SampledKernel {
    EvolutionSpec spec;
    double t = 0.0;
    Grid1D grid;
    std::vector<cd> values;
    double tail_mass_bound = 0.0;
};

/// Tuning knobs for the Fourier evaluation. Defaults satisfy the library's
/// stated tolerances (1e-8 decaying, 1e-6 mollified oscillatory).
struct KernelQuadratureOptions {
    /// Mollifier ladder base for purely oscillatory symbols. The ladder is
    /// geometric: {eps, eps/2, eps/4, eps/8}, Richardson extrapolated.
    double mollifier_eps = 0.05;
    int mollifier_rungs = 4;
    /// Symbol magnitude treated as negligible when choosing the k cutoff.
    double symbol_floor = 1e-13;
    /// Hard cap on the internal transform size.
    std::size_t max_transform = std::size_t(1) << 24;
    /// Grids whose tail bound exceeds this are rejected.
    double tail_gate = 1e-6;
};

SampledKernel compute_kernel(const EvolutionSpec& spec, double t, const Grid1D& grid,
                             const KernelQuadratureOptions& opts = {});

/// Grid-trapezoid approximation of Int g_t(x) dx over the window.
cd kernel_mass(const SampledKernel& k);

/// Grid-trapezoid approximation of Int |g_t(x)| dx. Throws NotIntegrable for
/// the constant-modulus p = 2, Re(alpha) = 0 kernel.
double total_variation(const SampledKernel& k);

/// Max over the grid of |g_t(x) - t^{-1/p} g_1(t^{-1/p} x)|.
double scaling_check(const EvolutionSpec& spec, double t, const Grid1D& grid,
                     const KernelQuadratureOptions& opts = {});

/// A window/resolution that keeps the tail bound under the gate for the
/// given evolution, sized from the symbol's decay (or the mollifier's).
Grid1D recommended_grid(const EvolutionSpec& spec, double t,
                        const KernelQuadratureOptions& opts = {});

/// CSV rows `x,re,im`, 15 significant digits.
void write_kernel_csv(const SampledKernel& k, std::ostream& out);

} // namespace pseudopath
