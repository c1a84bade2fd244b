#include "pseudopath/semigroup.hpp"

#include <cmath>
#include <sstream>

#include "pseudopath/fft.hpp"

namespace pseudopath {

const char* to_string(Verdict v) {
    return v == Verdict::ProjectiveLimitPossible ? "ProjectiveLimitPossible"
                                                 : "NoBoundedComplexMeasure";
}

ConvolutionSemigroupProbe::ConvolutionSemigroupProbe(EvolutionSpec s, Grid1D g,
                                                     std::vector<double> ts)
    : spec(s), grid(g), times(std::move(ts)) {
    for (double t : times) {
        if (t < spec.t_eps)
            throw TimeTooSmall("ConvolutionSemigroupProbe: probe time below t_eps");
    }
}

SampledKernel convolve_kernels(const SampledKernel& a, const SampledKernel& b) {
    if (!(a.grid == b.grid))
        throw GridMismatch("convolve_kernels: operands sampled on different grids");
    if (!a.spec.same_evolution(b.spec))
        throw SpecMismatch("convolve_kernels: operands belong to different evolutions");

    const std::size_t n = a.grid.n_points;
    const double dx = a.grid.spacing();

    // The convolution lattice is {2 x_min + m dx}; reading it back on the
    // original grid needs the origin to sit on the lattice.
    const double r = -a.grid.x_min / dx;
    const long long shift = std::llround(r);
    if (std::abs(r - static_cast<double>(shift)) > 1e-9 || shift < 0 ||
        shift >= static_cast<long long>(n))
        throw GridMismatch("convolve_kernels: grid lattice does not contain the origin");

    std::vector<cd> fa(2 * n, cd{}), fb(2 * n, cd{});
    std::copy(a.values.begin(), a.values.end(), fa.begin());
    std::copy(b.values.begin(), b.values.end(), fb.begin());
    fft_forward(fa);
    fft_forward(fb);
    for (std::size_t m = 0; m < 2 * n; ++m) fa[m] *= fb[m];
    fft_inverse(fa); // linear convolution, no wrap thanks to the padding

    SampledKernel out{a.spec, a.t + b.t, a.grid, {}, 0.0};
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.values[i] = fa[i + static_cast<std::size_t>(shift)] * dx;

    double tv_a = 0.0, tv_b = 0.0, dropped = 0.0;
    for (const auto& v : a.values) tv_a += std::abs(v);
    for (const auto& v : b.values) tv_b += std::abs(v);
    tv_a *= dx;
    tv_b *= dx;
    for (std::size_t m = 0; m + 1 < 2 * n; ++m) {
        if (m < static_cast<std::size_t>(shift) || m >= static_cast<std::size_t>(shift) + n)
            dropped += std::abs(fa[m]);
    }
    dropped *= dx * dx;
    out.tail_mass_bound =
        a.tail_mass_bound * tv_b + b.tail_mass_bound * tv_a +
        a.tail_mass_bound * b.tail_mass_bound + dropped;
    return out;
}

double chapman_kolmogorov_residual(const ConvolutionSemigroupProbe& probe, double s, double t,
                                   const KernelQuadratureOptions& opts) {
    if (s < probe.spec.t_eps || t < probe.spec.t_eps)
        throw TimeTooSmall("chapman_kolmogorov_residual: probed time below t_eps");

    // Purely oscillatory kernels are only meaningful on the wide recommended
    // window; evaluate there and restrict the comparison to the probe window.
    Grid1D eval = probe.grid;
    if (!probe.spec.decaying_symbol()) {
        const Grid1D rec = recommended_grid(probe.spec, s + t, opts);
        if (rec.x_min < probe.grid.x_min || rec.x_max > probe.grid.x_max ||
            rec.spacing() < probe.grid.spacing())
            eval = rec;
    }

    const auto gs = compute_kernel(probe.spec, s, eval, opts);
    const auto gt = compute_kernel(probe.spec, t, eval, opts);
    const auto conv = convolve_kernels(gs, gt);
    const auto direct = compute_kernel(probe.spec, s + t, eval, opts);
    double sup = 0.0;
    for (std::size_t i = 0; i < eval.n_points; ++i) {
        const double x = eval.point(i);
        if (x < probe.grid.x_min || x > probe.grid.x_max) continue;
        sup = std::max(sup, std::abs(conv.values[i] - direct.values[i]));
    }
    return sup;
}

VariationReport marginal_variation(const EvolutionSpec& spec, double t, std::size_t n_slices,
                                   const Grid1D& grid, const KernelQuadratureOptions& opts) {
    if (n_slices == 0)
        throw SliceTooSmall("marginal_variation: need at least one slice");
    const double slice = t / static_cast<double>(n_slices);
    if (slice < spec.t_eps) {
        std::ostringstream msg;
        msg << "marginal_variation: slice width " << slice << " is below t_eps";
        throw SliceTooSmall(msg.str());
    }

    // Int |g_s| is invariant under s, by the kernel scaling identity, so the
    // slice variation is evaluated once at unit time on the rescaled window.
    // Rescaling by the horizon rather than the slice keeps the value
    // independent of n_slices.
    const double scale = std::pow(t, -1.0 / spec.p);
    const Grid1D unit_grid(grid.x_min * scale, grid.x_max * scale, grid.n_points);
    const auto g1 = compute_kernel(spec, 1.0, unit_grid, opts);

    VariationReport rep;
    rep.n_slices = n_slices;
    rep.per_slice_tv = total_variation(g1);
    rep.total = std::pow(rep.per_slice_tv, static_cast<double>(n_slices));
    rep.verdict = rep.per_slice_tv > 1.0 + kGateMargin ? Verdict::NoBoundedComplexMeasure
                                                       : Verdict::ProjectiveLimitPossible;
    return rep;
}

Verdict product_variation_gate(const std::vector<double>& tv_list) {
    double log_sum = 0.0;
    for (double tv : tv_list) {
        if (tv < 0.0)
            throw NegativeVariation("product_variation_gate: negative total variation");
        log_sum += std::log(tv);
    }
    return log_sum <= kLogThreshold ? Verdict::ProjectiveLimitPossible
                                    : Verdict::NoBoundedComplexMeasure;
}

} // namespace pseudopath
