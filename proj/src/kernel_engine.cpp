#include "pseudopath/kernel_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "pseudopath/fft.hpp"

namespace pseudopath {

namespace {

std::size_t next_pow2(double x) {
    std::size_t n = 2;
    while (static_cast<double>(n) < x) n <<= 1;
    return n;
}

// Mollifier values for the ladder; a single zero entry means the symbol
// decays on its own and no regularization is applied.
std::vector<double> mollifier_ladder(const EvolutionSpec& spec, const KernelQuadratureOptions& o) {
    if (spec.decaying_symbol()) return {0.0};
    std::vector<double> ladder(static_cast<std::size_t>(o.mollifier_rungs));
    double eps = o.mollifier_eps;
    for (auto& e : ladder) {
        e = eps;
        eps *= 0.5;
    }
    return ladder;
}

// One transform pass: g(x_j) on the internal lattice x_j = x0 + j*dx for the
// symbol damped by exp(-eps k^2).
std::vector<cd> transform_pass(const EvolutionSpec& spec, double t, double eps, std::size_t n,
                               double dx, double x0) {
    std::vector<cd> buf(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double k = fft_omega(m, n, dx);
        buf[m] = spec.symbol(t, k) * std::exp(-eps * k * k) * std::exp(cd(0.0, k * x0));
    }
    fft_inverse(buf);
    const double scale = 1.0 / dx;
    for (auto& v : buf) v *= scale;
    return buf;
}

// Richardson cascade for a geometric epsilon ladder of ratio 2, removing
// successive powers of eps.
std::vector<cd> richardson(std::vector<std::vector<cd>> tables) {
    const std::size_t m = tables.size();
    for (std::size_t stage = 1; stage < m; ++stage) {
        const double f = std::pow(2.0, static_cast<double>(stage));
        for (std::size_t i = 0; i + stage < m; ++i) {
            auto& lo = tables[i];      // larger eps
            auto& hi = tables[i + 1];  // smaller eps
            for (std::size_t j = 0; j < lo.size(); ++j)
                lo[j] = (f * hi[j] - lo[j]) / (f - 1.0);
        }
    }
    return std::move(tables[0]);
}

struct InternalLayout {
    std::size_t n_int = 0;
    std::size_t refine = 1; // internal points per requested step (power of two)
    std::size_t offset = 0; // index of grid.x_min on the internal lattice
    double dx_int = 0.0;
    double x0 = 0.0;
};

double oscillatory_half_width(const EvolutionSpec& spec, double t, double eps_min) {
    // Stationary-phase wavenumber at position x is k* = (|x| / (p t |a|))^{1/(p-1)};
    // the mollifier damps it by exp(-eps k*^2). Solve for the x where that
    // damping reaches ~1e-10.
    const double a = std::abs(spec.alpha.imag());
    const double target = 23.0; // ln(1e10)
    return static_cast<double>(spec.p) * t * a * std::pow(target / eps_min, 0.5 * (spec.p - 1));
}

} // namespace

SampledKernel compute_kernel(const EvolutionSpec& spec, double t, const Grid1D& grid,
                             const KernelQuadratureOptions& opts) {
    if (t < spec.t_eps) {
        throw TimeTooSmall("compute_kernel: t < t_eps; the t = 0 limit is a Dirac measure with "
                           "no sampled representation");
    }
    const double dx = grid.spacing();
    const auto ladder = mollifier_ladder(spec, opts);
    const double eps_min = ladder.back();

    // k-space cutoff where the (mollified) symbol drops below the floor.
    const double log_floor = -std::log(opts.symbol_floor);
    double k_need;
    if (spec.decaying_symbol()) {
        k_need = std::pow(log_floor / (-spec.alpha.real() * t), 1.0 / spec.p);
    } else {
        k_need = std::sqrt(log_floor / eps_min);
    }

    std::size_t refine = 1;
    while (M_PI / (dx / static_cast<double>(refine)) < 1.15 * k_need) refine <<= 1;
    const double dx_int = dx / static_cast<double>(refine);

    // x-space half-width of the internal transform domain.
    const double x_req = std::max(std::abs(grid.x_min), std::abs(grid.x_max));
    double half_width;
    if (spec.decaying_symbol()) {
        half_width = x_req + 8.0 * (1.0 + std::pow(std::abs(spec.alpha) * t, 1.0 / spec.p));
    } else {
        half_width = 1.3 * std::max(x_req, oscillatory_half_width(spec, t, eps_min));
    }

    InternalLayout lay;
    std::vector<cd> g;
    for (int attempt = 0;; ++attempt) {
        const std::size_t n_int = next_pow2(2.0 * half_width / dx_int);
        if (n_int > opts.max_transform)
            throw GridTooNarrow("compute_kernel: required internal transform exceeds the size "
                                "cap; widen the grid spacing or the window");
        const double width = static_cast<double>(n_int) * dx_int;
        const double center = 0.5 * (grid.x_min + grid.x_max);
        const double desired_left = center - 0.5 * width;
        long long steps = std::llround((grid.x_min - desired_left) / dx_int);
        const long long last = steps + static_cast<long long>((grid.n_points - 1) * refine);
        if (steps < 0) steps = 0;
        if (last >= static_cast<long long>(n_int))
            steps -= last - static_cast<long long>(n_int) + 1;
        if (steps < 0)
            throw GridTooNarrow("compute_kernel: requested window does not fit the internal "
                                "transform domain");

        lay = {n_int, refine, static_cast<std::size_t>(steps), dx_int,
               grid.x_min - static_cast<double>(steps) * dx_int};

        std::vector<std::vector<cd>> passes;
        passes.reserve(ladder.size());
        for (double eps : ladder) passes.push_back(transform_pass(spec, t, eps, n_int, dx_int, lay.x0));
        g = passes.size() == 1 ? std::move(passes[0]) : richardson(std::move(passes));

        if (!spec.decaying_symbol()) break;
        // Decaying case: make sure the domain actually contains the kernel.
        double peak = 0.0, edge = 0.0;
        for (std::size_t j = 0; j < n_int; ++j) peak = std::max(peak, std::abs(g[j]));
        const std::size_t band = n_int / 32;
        for (std::size_t j = 0; j < band; ++j) {
            edge = std::max(edge, std::abs(g[j]));
            edge = std::max(edge, std::abs(g[n_int - 1 - j]));
        }
        if (edge <= 1e-12 * peak || attempt >= 4) break;
        half_width *= 2.0;
    }

    SampledKernel out{spec, t, grid, {}, 0.0};
    out.values.resize(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) out.values[i] = g[lay.offset + i * lay.refine];

    // Tail bound: |g| mass measured outside the requested window on the
    // internal domain, plus an exponential-envelope remainder beyond its edges.
    const std::size_t win_lo = lay.offset;
    const std::size_t win_hi = lay.offset + (grid.n_points - 1) * lay.refine;
    double measured = 0.0;
    for (std::size_t j = 0; j < lay.n_int; ++j)
        if (j < win_lo || j > win_hi) measured += std::abs(g[j]);
    measured *= lay.dx_int;

    double peak = 0.0;
    for (std::size_t j = 0; j < lay.n_int; ++j) peak = std::max(peak, std::abs(g[j]));
    // Plateau from FFT round-off and the truncated symbol below symbol_floor;
    // bands at this level carry no usable decay information.
    const double noise_floor = std::max(1e-14, 10.0 * opts.symbol_floor) * peak;

    double remainder = 0.0;
    const std::size_t band = std::max<std::size_t>(lay.n_int / 32, 2);
    for (int side = 0; side < 2; ++side) {
        double m_outer = 0.0, m_inner = 0.0;
        for (std::size_t j = 0; j < band; ++j) {
            const std::size_t jo = side == 0 ? j : lay.n_int - 1 - j;
            const std::size_t ji = side == 0 ? j + band : lay.n_int - 1 - j - band;
            m_outer = std::max(m_outer, std::abs(g[jo]));
            m_inner = std::max(m_inner, std::abs(g[ji]));
        }
        if (m_outer <= noise_floor) {
            remainder += m_outer;
            continue;
        }
        const double gap = static_cast<double>(band) * lay.dx_int;
        const double decay = std::log(m_inner / m_outer) / gap;
        if (!(decay > 1e-12)) {
            remainder = std::numeric_limits<double>::infinity();
            break;
        }
        remainder += m_outer / decay;
    }
    out.tail_mass_bound = measured + remainder;
    if (!(out.tail_mass_bound < opts.tail_gate)) {
        std::ostringstream msg;
        msg << "compute_kernel: tail mass bound " << out.tail_mass_bound
            << " exceeds the grid gate " << opts.tail_gate << "; widen the grid";
        throw GridTooNarrow(msg.str());
    }
    return out;
}

cd kernel_mass(const SampledKernel& k) {
    cd sum{};
    for (const auto& v : k.values) sum += v;
    return sum * k.grid.spacing();
}

double total_variation(const SampledKernel& k) {
    if (k.spec.p == 2 && k.spec.alpha.real() == 0.0)
        throw NotIntegrable("total_variation: the p = 2, Re(alpha) = 0 kernel has constant "
                            "modulus and is not absolutely integrable");
    double sum = 0.0;
    for (const auto& v : k.values) sum += std::abs(v);
    return sum * k.grid.spacing();
}

double scaling_check(const EvolutionSpec& spec, double t, const Grid1D& grid,
                     const KernelQuadratureOptions& opts) {
    const auto g_t = compute_kernel(spec, t, grid, opts);
    const double s = std::pow(t, -1.0 / spec.p);
    const Grid1D scaled(grid.x_min * s, grid.x_max * s, grid.n_points);
    const auto g_1 = compute_kernel(spec, 1.0, scaled, opts);
    double residual = 0.0;
    for (std::size_t i = 0; i < grid.n_points; ++i)
        residual = std::max(residual, std::abs(g_t.values[i] - s * g_1.values[i]));
    return residual;
}

Grid1D recommended_grid(const EvolutionSpec& spec, double t, const KernelQuadratureOptions& opts) {
    const auto ladder = mollifier_ladder(spec, opts);
    const double eps_min = ladder.back();
    double half_width, k_need;
    const double log_floor = -std::log(opts.symbol_floor);
    if (spec.decaying_symbol()) {
        // Saddle-point envelope |g_t(x)| ~ exp(-c |x|^{p/(p-1)}) with
        // c = (p-1) p^{-p/(p-1)} cos(pi/(2(p-1))) / (|alpha| t)^{1/(p-1)},
        // halved for safety; p = 2 uses the exact Gaussian rate.
        const double pd = static_cast<double>(spec.p);
        double c;
        if (spec.p == 2) {
            c = -spec.alpha.real() / (4.0 * std::norm(spec.alpha) * t);
        } else {
            c = 0.5 * (pd - 1.0) * std::pow(pd, -pd / (pd - 1.0)) *
                std::cos(M_PI / (2.0 * (pd - 1.0))) /
                std::pow(std::abs(spec.alpha) * t, 1.0 / (pd - 1.0));
        }
        half_width = 2.0 + std::pow(log_floor / c, (pd - 1.0) / pd);
        k_need = std::pow(log_floor / (-spec.alpha.real() * t), 1.0 / spec.p);
    } else {
        const double a = std::abs(spec.alpha.imag());
        half_width = 1.1 * spec.p * t * a * std::pow(23.0 / eps_min, 0.5 * (spec.p - 1));
        k_need = std::sqrt(log_floor / eps_min);
    }
    const double dx = M_PI / (1.3 * k_need);
    const std::size_t n = next_pow2(2.0 * half_width / dx);
    const double x_min = -0.5 * static_cast<double>(n) * dx;
    return Grid1D(x_min, x_min + static_cast<double>(n) * dx, n);
}

void write_kernel_csv(const SampledKernel& k, std::ostream& out) {
    out.precision(15);
    out << "x,re,im\n";
    for (std::size_t i = 0; i < k.grid.n_points; ++i) {
        out << k.grid.point(i) << ',' << k.values[i].real() << ',' << k.values[i].imag() << '\n';
    }
}

} // namespace pseudopath
