#pragma once

#include <vector>

#include "pseudopath/projective.hpp"

namespace pseudopath {

/// The functional L on the path algebra for one evolution and horizon. Paths
/// are never materialized; everything reduces to cylinder marginals.
struct PathFunctionalSpec {
    EvolutionSpec spec;
    double horizon = 1.0;

    PathFunctionalSpec() = default;
    PathFunctionalSpec(EvolutionSpec s, double t);
};

/// Bounded continuous potential V(x) = sum_j w_j e^{i y_j x}. Real-valued
/// potentials are built from conjugate-symmetric atom pairs.
struct PotentialSpec {
    AtomicComplexMeasure fourier;

    PotentialSpec() : fourier(1, {}) {}
    explicit PotentialSpec(AtomicComplexMeasure f);

    cd eval(double x) const;
};

/// Initial datum u_0(x) = sum_j w_j e^{i y_j x}; optional grid samples for
/// the solvers, validated against the atomic form.
struct InitialDatum {
    AtomicComplexMeasure fourier;
    std::vector<cd> grid_samples; // empty = derive from the atoms

    InitialDatum() : fourier(1, {}) {}
    explicit InitialDatum(AtomicComplexMeasure f, std::vector<cd> samples = {});

    cd eval(double x) const;
};

/// L(f) through the cylinder reduction: the marginal functional of f's grid.
cd eval_path_functional(const PathFunctionalSpec& pf, const CylinderFunction& f);

/// Time-sliced path-integral approximation of u(t, x) = L(f_{t,x}) on the
/// grid: per slice, multiply by e^{dt V(x)} (left-endpoint Riemann rule for
/// the exponent) and propagate freely by dt in Fourier space. First-order
/// (Lie) splitting; the grid is treated as one spatial period.
std::vector<cd> fk_time_sliced(const PathFunctionalSpec& pf, const InitialDatum& u0,
                               const PotentialSpec& V, std::size_t n_slices, const Grid1D& grid);

/// Reference solution of d_t u = (-i)^p alpha d_x^p u + V u by Strang
/// splitting with step halving until the discrete L2 increment drops below
/// tol. Throws NoConvergence after max_halvings.
std::vector<cd> spectral_reference(const PathFunctionalSpec& pf, const InitialDatum& u0,
                                   const PotentialSpec& V, const Grid1D& grid,
                                   double tol = 1e-9, int max_halvings = 20);

struct ConvergencePoint {
    std::size_t n_slices = 0;
    double l2_error = 0.0; // relative to the reference norm
};

/// Relative L2 errors of fk_time_sliced along a slice ladder, against the
/// spectral reference.
std::vector<ConvergencePoint> fk_convergence_report(const PathFunctionalSpec& pf,
                                                    const InitialDatum& u0,
                                                    const PotentialSpec& V, const Grid1D& grid,
                                                    const std::vector<std::size_t>& slice_ladder);

/// |L(f)| <= sum |w_j| up to a small tolerance.
bool continuity_bound_check(const PathFunctionalSpec& pf, const CylinderFunction& f);

} // namespace pseudopath
