#include "pseudopath/path_functional.hpp"

#include <cmath>

#include "pseudopath/fft.hpp"

namespace pseudopath {

namespace {

cd atomic_eval(const AtomicComplexMeasure& m, double x) {
    cd s{};
    for (const auto& a : m.atoms) s += a.w * std::exp(cd(0.0, a.y[0] * x));
    return s;
}

std::vector<cd> initial_samples(const InitialDatum& u0, const Grid1D& grid) {
    if (!u0.grid_samples.empty()) {
        if (u0.grid_samples.size() != grid.n_points)
            throw GridMismatch("fk solver: grid_samples length differs from the grid");
        for (std::size_t i = 0; i < grid.n_points; ++i)
            if (std::abs(u0.grid_samples[i] - u0.eval(grid.point(i))) > 1e-12)
                throw InconsistentRepresentations("fk solver: grid_samples disagree with the "
                                                  "atomic form of u_0");
        return u0.grid_samples;
    }
    std::vector<cd> u(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) u[i] = u0.eval(grid.point(i));
    return u;
}

// exp(alpha dt k^p) on the transform frequencies (exact free propagation of
// the periodic extension, applied in Fourier space)
std::vector<cd> propagator(const EvolutionSpec& spec, double dt, std::size_t n, double dx) {
    std::vector<cd> mult(n);
    for (std::size_t m = 0; m < n; ++m) mult[m] = spec.symbol(dt, fft_omega(m, n, dx));
    return mult;
}

std::vector<cd> potential_factor(const PotentialSpec& V, double dt, const Grid1D& grid) {
    std::vector<cd> mult(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i)
        mult[i] = std::exp(dt * V.eval(grid.point(i)));
    return mult;
}

void pointwise(std::vector<cd>& u, const std::vector<cd>& mult) {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] *= mult[i];
}

double l2_norm(const std::vector<cd>& u, double dx) {
    double s = 0.0;
    for (const auto& v : u) s += std::norm(v);
    return std::sqrt(s * dx);
}

double l2_dist(const std::vector<cd>& a, const std::vector<cd>& b, double dx) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s * dx);
}

std::vector<cd> strang_run(const PathFunctionalSpec& pf, std::vector<cd> u,
                           const PotentialSpec& V, const Grid1D& grid, std::size_t steps) {
    const double dt = pf.horizon / static_cast<double>(steps);
    const bool has_V = !V.fourier.atoms.empty();
    const auto prop = propagator(pf.spec, dt, grid.n_points, grid.spacing());
    const auto half = has_V ? potential_factor(V, 0.5 * dt, grid) : std::vector<cd>{};
    for (std::size_t s = 0; s < steps; ++s) {
        if (has_V) pointwise(u, half);
        fft_forward(u);
        pointwise(u, prop);
        fft_inverse(u);
        if (has_V) pointwise(u, half);
    }
    return u;
}

} // namespace

PathFunctionalSpec::PathFunctionalSpec(EvolutionSpec s, double t) : spec(s), horizon(t) {
    if (horizon < spec.t_eps)
        throw TimeTooSmall("PathFunctionalSpec: horizon below t_eps");
}

PotentialSpec::PotentialSpec(AtomicComplexMeasure f) : fourier(std::move(f)) {
    if (fourier.dimension != 1)
        throw DimensionMismatch("PotentialSpec: potential atoms must be one dimensional");
}

cd PotentialSpec::eval(double x) const { return atomic_eval(fourier, x); }

InitialDatum::InitialDatum(AtomicComplexMeasure f, std::vector<cd> samples)
    : fourier(std::move(f)), grid_samples(std::move(samples)) {
    if (fourier.dimension != 1)
        throw DimensionMismatch("InitialDatum: atoms must be one dimensional");
}

cd InitialDatum::eval(double x) const { return atomic_eval(fourier, x); }

cd eval_path_functional(const PathFunctionalSpec& pf, const CylinderFunction& f) {
    if (std::abs(f.grid.horizon - pf.horizon) > 1e-12)
        throw GridMismatch("eval_path_functional: function horizon differs from the "
                           "functional's");
    return eval_LJ(f, CylinderMarginal(pf.spec, f.grid));
}

std::vector<cd> fk_time_sliced(const PathFunctionalSpec& pf, const InitialDatum& u0,
                               const PotentialSpec& V, std::size_t n_slices,
                               const Grid1D& grid) {
    if (n_slices == 0 || pf.horizon / static_cast<double>(n_slices) < pf.spec.t_eps)
        throw SliceTooSmall("fk_time_sliced: slice width below t_eps");
    const double dt = pf.horizon / static_cast<double>(n_slices);
    const bool has_V = !V.fourier.atoms.empty();
    const auto prop = propagator(pf.spec, dt, grid.n_points, grid.spacing());
    const auto fac = has_V ? potential_factor(V, dt, grid) : std::vector<cd>{};
    auto u = initial_samples(u0, grid);
    for (std::size_t s = 0; s < n_slices; ++s) {
        if (has_V) pointwise(u, fac);
        fft_forward(u);
        pointwise(u, prop);
        fft_inverse(u);
    }
    return u;
}

std::vector<cd> spectral_reference(const PathFunctionalSpec& pf, const InitialDatum& u0,
                                   const PotentialSpec& V, const Grid1D& grid, double tol,
                                   int max_halvings) {
    const auto u_init = initial_samples(u0, grid);
    const double dx = grid.spacing();
    std::size_t steps = 4;
    auto prev = strang_run(pf, u_init, V, grid, steps);
    for (int h = 0; h < max_halvings; ++h) {
        steps *= 2;
        auto next = strang_run(pf, u_init, V, grid, steps);
        if (l2_dist(prev, next, dx) < tol) return next;
        prev = std::move(next);
    }
    throw NoConvergence("spectral_reference: step halving did not reach the tolerance");
}

std::vector<ConvergencePoint> fk_convergence_report(const PathFunctionalSpec& pf,
                                                    const InitialDatum& u0,
                                                    const PotentialSpec& V, const Grid1D& grid,
                                                    const std::vector<std::size_t>& slice_ladder) {
    const auto ref = spectral_reference(pf, u0, V, grid);
    const double dx = grid.spacing();
    const double ref_norm = l2_norm(ref, dx);
    std::vector<ConvergencePoint> out;
    out.reserve(slice_ladder.size());
    for (std::size_t n : slice_ladder) {
        const auto u = fk_time_sliced(pf, u0, V, n, grid);
        out.push_back({n, l2_dist(u, ref, dx) / ref_norm});
    }
    return out;
}

bool continuity_bound_check(const PathFunctionalSpec& pf, const CylinderFunction& f) {
    return std::abs(eval_path_functional(pf, f)) <= f.fourier.fresnel_norm() + 1e-10;
}

} // namespace pseudopath
