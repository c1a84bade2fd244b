#pragma once

#include <vector>

#include "pseudopath/kernel_engine.hpp"

namespace pseudopath {

/// Outcome of the bounded-variation gates. NoBoundedComplexMeasure means the
/// marginal total variations blow up and no bounded complex measure can back
/// the projective system.
enum class Verdict { ProjectiveLimitPossible, NoBoundedComplexMeasure };

const char* to_string(Verdict v);

/// Margin above 1 before a per-slice total variation is declared blowing up,
/// so quadrature noise cannot misclassify the probability (heat) case.
inline constexpr double kGateMargin = 1e-4;

/// Finite-horizon surrogate threshold for the product gate: the product of
/// per-factor variations may not exceed e^kLogThreshold.
inline const double kLogThreshold = 2.302585092994046; // ln 10

/// A semigroup probe: one evolution, one sampling window, times to pair up.
struct ConvolutionSemigroupProbe {
    EvolutionSpec spec;
    Grid1D grid;
    std::vector<double> times;

    ConvolutionSemigroupProbe(EvolutionSpec s, Grid1D g, std::vector<double> ts);
};

struct VariationReport {
    std::size_t n_slices = 0;
    double per_slice_tv = 0.0;
    double total = 0.0;
    Verdict verdict = Verdict::ProjectiveLimitPossible;
};

/// Discrete convolution of two kernels on the same grid (fast transform with
/// padding factor 2; wrap-around is excluded by the padding and what falls
/// outside the window is accrued into the tail bound). Result is tagged with
/// time a.t + b.t.
SampledKernel convolve_kernels(const SampledKernel& a, const SampledKernel& b);

/// Sup-norm distance between g_s * g_t and the directly computed g_{s+t}.
double chapman_kolmogorov_residual(const ConvolutionSemigroupProbe& probe, double s, double t,
                                   const KernelQuadratureOptions& opts = {});

/// Per-slice and total variation of the n-slice uniform marginal. The slice
/// variation is computed once at unit time through the scaling identity.
VariationReport marginal_variation(const EvolutionSpec& spec, double t, std::size_t n_slices,
                                   const Grid1D& grid, const KernelQuadratureOptions& opts = {});

/// Product gate over arbitrary per-factor variations: passes iff the sum of
/// logs stays at or below kLogThreshold.
Verdict product_variation_gate(const std::vector<double>& tv_list);

} // namespace pseudopath
