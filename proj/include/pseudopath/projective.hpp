#pragma once

#include <utility>
#include <vector>

#include "pseudopath/kernel_engine.hpp"

namespace pseudopath {

/// Finite set of sampling times inside (0, horizon). Time grids ordered by
/// inclusion form the directed set the projective system runs over.
struct TimeGrid {
    double horizon = 1.0;
    std::vector<double> times;

    TimeGrid() = default;
    TimeGrid(double t, std::vector<double> ts);

    std::size_t size() const { return times.size(); }
};

/// True when K contains every time of J (same horizon). Times are matched
/// within an absolute 1e-12.
bool refines(const TimeGrid& J, const TimeGrid& K);

/// Upper bound of two grids in the refinement order: the sorted union.
TimeGrid union_grid(const TimeGrid& J, const TimeGrid& K);

struct Atom {
    std::vector<double> y;
    cd w{};
};

/// Finite atomic complex measure on R^dimension. Serves as the Fourier side
/// of the algebra: a function f(v) = sum_j w_j e^{i <y_j, v>}.
struct AtomicComplexMeasure {
    std::size_t dimension = 0;
    std::vector<Atom> atoms;

    AtomicComplexMeasure() = default;
    AtomicComplexMeasure(std::size_t dim, std::vector<Atom> as);

    /// Banach algebra norm: the total variation sum |w_j|.
    double fresnel_norm() const;
};

/// Sorts atoms, merges coincident locations (within 1e-12) and drops weights
/// below 1e-14, making equality of represented functions decidable.
AtomicComplexMeasure canonicalize(const AtomicComplexMeasure& m);

/// F(x_1, ..., x_n) = sum_j w_j exp(i sum_k y_{j,k} x_k) on the grid's times.
struct CylinderFunction {
    TimeGrid grid;
    AtomicComplexMeasure fourier;

    CylinderFunction() = default;
    CylinderFunction(TimeGrid g, AtomicComplexMeasure f);
};

enum class Pinning { TerminalDelta };

/// Marginal complex measure mu_J of the pinned pseudo-path system: density
/// prod_{j=1}^{n} g_{tau_j}(x_j - x_{j+1}) with tau_j = t_{j+1} - t_j,
/// t_{n+1} = horizon and x_{n+1} = 0.
struct CylinderMarginal {
    EvolutionSpec spec;
    TimeGrid grid;
    Pinning pinning = Pinning::TerminalDelta;

    CylinderMarginal() = default;
    CylinderMarginal(EvolutionSpec s, TimeGrid g, Pinning p = Pinning::TerminalDelta);
};

enum class EvalMethod { Fourier, Quadrature };

/// Zero-padding extension of f to the finer grid K; pointwise equal to f
/// composed with the coordinate projection.
CylinderFunction extend_cylinder(const CylinderFunction& f, const TimeGrid& K);

/// Fourier transform of mu_J at y: prod_j exp(alpha tau_j Y_j^p) with the
/// cumulative sums Y_j = y_1 + ... + y_j.
cd marginal_fourier(const CylinderMarginal& m, const std::vector<double>& y);

/// The marginal functional L_J(f) = Int f dmu_J. The Fourier method is exact
/// on atoms; the Quadrature method evaluates the iterated integral on tensor
/// grids of sampled kernels (n <= 3, decaying symbols).
cd eval_LJ(const CylinderFunction& f, const CylinderMarginal& m,
           EvalMethod method = EvalMethod::Fourier);

/// |L_J(f) - L_K(extension of f)|; the executable projectivity statement.
double compatibility_check(const CylinderFunction& f, const TimeGrid& K,
                           const CylinderMarginal& m_J, const CylinderMarginal& m_K);

/// Common value of several representations of one cylinder function, after
/// checking on the union grid that they really represent the same function.
cd minimal_extension_eval(
    const std::vector<std::pair<CylinderFunction, CylinderMarginal>>& representations);

} // namespace pseudopath
