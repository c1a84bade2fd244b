#include "pseudopath/projective.hpp"

#include <algorithm>
#include <cmath>

namespace pseudopath {

namespace {

constexpr double kTimeTol = 1e-12;
constexpr double kLocationTol = 1e-12;
constexpr double kWeightDrop = 1e-14;
constexpr double kWeightTol = 1e-10;

bool grids_equal(const TimeGrid& a, const TimeGrid& b) {
    if (std::abs(a.horizon - b.horizon) > kTimeTol || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a.times[i] - b.times[i]) > kTimeTol) return false;
    return true;
}

bool locations_equal(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > kLocationTol) return false;
    return true;
}

// increments tau_j = t_{j+1} - t_j with t_{n+1} = horizon
std::vector<double> increments(const TimeGrid& g) {
    std::vector<double> tau(g.size());
    for (std::size_t j = 0; j + 1 < g.size(); ++j) tau[j] = g.times[j + 1] - g.times[j];
    tau.back() = g.horizon - g.times.back();
    return tau;
}

} // namespace

TimeGrid::TimeGrid(double t, std::vector<double> ts) : horizon(t), times(std::move(ts)) {
    if (!(horizon > 0.0)) throw InadmissibleSpec("TimeGrid: horizon must be positive");
    if (times.empty()) throw InadmissibleSpec("TimeGrid: needs at least one time");
    double prev = 0.0;
    for (double t_j : times) {
        if (!(t_j > prev)) throw InadmissibleSpec("TimeGrid: times must be strictly increasing "
                                                  "and positive");
        prev = t_j;
    }
    if (!(times.back() < horizon))
        throw InadmissibleSpec("TimeGrid: times must lie strictly below the horizon");
}

bool refines(const TimeGrid& J, const TimeGrid& K) {
    if (std::abs(J.horizon - K.horizon) > kTimeTol) return false;
    for (double t : J.times) {
        bool found = false;
        for (double s : K.times)
            if (std::abs(t - s) <= kTimeTol) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

TimeGrid union_grid(const TimeGrid& J, const TimeGrid& K) {
    if (std::abs(J.horizon - K.horizon) > kTimeTol)
        throw GridMismatch("union_grid: horizons differ");
    std::vector<double> merged = J.times;
    merged.insert(merged.end(), K.times.begin(), K.times.end());
    std::sort(merged.begin(), merged.end());
    std::vector<double> out;
    for (double t : merged)
        if (out.empty() || t - out.back() > kTimeTol) out.push_back(t);
    return TimeGrid(J.horizon, std::move(out));
}

AtomicComplexMeasure::AtomicComplexMeasure(std::size_t dim, std::vector<Atom> as)
    : dimension(dim), atoms(std::move(as)) {
    for (const auto& a : atoms)
        if (a.y.size() != dimension)
            throw DimensionMismatch("AtomicComplexMeasure: atom location length differs from "
                                    "the measure dimension");
}

double AtomicComplexMeasure::fresnel_norm() const {
    double s = 0.0;
    for (const auto& a : atoms) s += std::abs(a.w);
    return s;
}

AtomicComplexMeasure canonicalize(const AtomicComplexMeasure& m) {
    std::vector<Atom> atoms = m.atoms;
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.y < b.y; });
    std::vector<Atom> merged;
    for (const auto& a : atoms) {
        if (!merged.empty() && locations_equal(merged.back().y, a.y))
            merged.back().w += a.w;
        else
            merged.push_back(a);
    }
    std::vector<Atom> kept;
    for (auto& a : merged)
        if (std::abs(a.w) >= kWeightDrop) kept.push_back(std::move(a));
    return AtomicComplexMeasure(m.dimension, std::move(kept));
}

CylinderFunction::CylinderFunction(TimeGrid g, AtomicComplexMeasure f)
    : grid(std::move(g)), fourier(std::move(f)) {
    if (fourier.dimension != grid.size())
        throw DimensionMismatch("CylinderFunction: measure dimension differs from the number "
                                "of grid times");
}

CylinderMarginal::CylinderMarginal(EvolutionSpec s, TimeGrid g, Pinning p)
    : spec(s), grid(std::move(g)), pinning(p) {
    for (double tau : increments(grid))
        if (tau < spec.t_eps)
            throw SliceTooSmall("CylinderMarginal: grid increment below t_eps");
}

CylinderFunction extend_cylinder(const CylinderFunction& f, const TimeGrid& K) {
    if (!refines(f.grid, K))
        throw NotARefinement("extend_cylinder: target grid does not refine the source grid");
    std::vector<std::size_t> idx(f.grid.size());
    for (std::size_t j = 0; j < f.grid.size(); ++j) {
        for (std::size_t k = 0; k < K.size(); ++k)
            if (std::abs(f.grid.times[j] - K.times[k]) <= kTimeTol) { idx[j] = k; break; }
    }
    std::vector<Atom> atoms;
    atoms.reserve(f.fourier.atoms.size());
    for (const auto& a : f.fourier.atoms) {
        Atom ext;
        ext.y.assign(K.size(), 0.0);
        ext.w = a.w;
        for (std::size_t j = 0; j < idx.size(); ++j) ext.y[idx[j]] = a.y[j];
        atoms.push_back(std::move(ext));
    }
    return CylinderFunction(K, AtomicComplexMeasure(K.size(), std::move(atoms)));
}

cd marginal_fourier(const CylinderMarginal& m, const std::vector<double>& y) {
    if (y.size() != m.grid.size())
        throw DimensionMismatch("marginal_fourier: argument length differs from the grid size");
    const auto tau = increments(m.grid);
    cd prod(1.0, 0.0);
    double Y = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        Y += y[j];
        prod *= std::exp(m.spec.alpha * tau[j] * std::pow(Y, static_cast<double>(m.spec.p)));
    }
    return prod;
}

namespace {

cd eval_quadrature(const CylinderFunction& f, const CylinderMarginal& m) {
    const std::size_t n = m.grid.size();
    if (n > 3)
        throw DimensionTooLarge("eval_LJ: quadrature method is gated to n <= 3");
    const auto tau = increments(m.grid);

    double X = 0.0;
    for (double t_j : tau) X = std::max(X, recommended_grid(m.spec, t_j).x_max);
    const std::size_t P = n == 1 ? 1024 : (n == 2 ? 256 : 96);
    const double dx = 2.0 * X / static_cast<double>(P);

    // kernels sampled on the doubled window so every pairwise difference of
    // axis nodes lands on their lattice
    std::vector<SampledKernel> ker;
    ker.reserve(n);
    const Grid1D kgrid(-2.0 * X, 2.0 * X, 2 * P);
    for (double t_j : tau) ker.push_back(compute_kernel(m.spec, t_j, kgrid));

    auto kval = [&](std::size_t j, double u) {
        const auto i = static_cast<std::size_t>(std::llround((u + 2.0 * X) / dx));
        return ker[j].values[i];
    };

    std::vector<std::size_t> idx(n, 0);
    std::vector<double> x(n);
    cd sum{};
    for (;;) {
        for (std::size_t j = 0; j < n; ++j) x[j] = -X + static_cast<double>(idx[j]) * dx;
        cd density(1.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double next = j + 1 < n ? x[j + 1] : 0.0; // terminal pinning
            density *= kval(j, x[j] - next);
        }
        cd fx{};
        for (const auto& a : f.fourier.atoms) {
            double phase = 0.0;
            for (std::size_t j = 0; j < n; ++j) phase += a.y[j] * x[j];
            fx += a.w * std::exp(cd(0.0, phase));
        }
        sum += fx * density;

        std::size_t j = 0;
        while (j < n && ++idx[j] == P) idx[j++] = 0;
        if (j == n) break;
    }
    return sum * std::pow(dx, static_cast<double>(n));
}

} // namespace

cd eval_LJ(const CylinderFunction& f, const CylinderMarginal& m, EvalMethod method) {
    if (!grids_equal(f.grid, m.grid))
        throw GridMismatch("eval_LJ: function and marginal live on different time grids");
    if (method == EvalMethod::Quadrature) return eval_quadrature(f, m);
    cd sum{};
    for (const auto& a : f.fourier.atoms) sum += a.w * marginal_fourier(m, a.y);
    return sum;
}

double compatibility_check(const CylinderFunction& f, const TimeGrid& K,
                           const CylinderMarginal& m_J, const CylinderMarginal& m_K) {
    if (!m_J.spec.same_evolution(m_K.spec))
        throw SpecMismatch("compatibility_check: marginals belong to different evolutions");
    const cd a = eval_LJ(f, m_J);
    const cd b = eval_LJ(extend_cylinder(f, K), m_K);
    return std::abs(a - b);
}

cd minimal_extension_eval(
    const std::vector<std::pair<CylinderFunction, CylinderMarginal>>& representations) {
    if (representations.empty())
        throw InconsistentRepresentations("minimal_extension_eval: no representations given");

    TimeGrid common = representations.front().first.grid;
    for (const auto& [f, m] : representations) common = union_grid(common, f.grid);

    const auto canon0 = canonicalize(extend_cylinder(representations[0].first, common).fourier);
    for (std::size_t r = 1; r < representations.size(); ++r) {
        const auto canon = canonicalize(extend_cylinder(representations[r].first, common).fourier);
        bool same = canon.atoms.size() == canon0.atoms.size();
        for (std::size_t i = 0; same && i < canon.atoms.size(); ++i) {
            same = locations_equal(canon.atoms[i].y, canon0.atoms[i].y) &&
                   std::abs(canon.atoms[i].w - canon0.atoms[i].w) <= kWeightTol;
        }
        if (!same)
            throw InconsistentRepresentations("minimal_extension_eval: representations extend "
                                              "to different cylinder functions");
    }
    return eval_LJ(representations.front().first, representations.front().second);
}

} // namespace pseudopath
