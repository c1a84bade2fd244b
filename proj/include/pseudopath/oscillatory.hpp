#pragma once

#include <vector>

#include "pseudopath/projective.hpp"

namespace pseudopath {

/// Self-adjoint finite rank operator B given by its spectral decomposition.
/// The frame must be orthonormal to 1e-12.
struct FiniteRankOperator {
    std::size_t dimension = 0;
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors; // eigenvectors[i] is the i-th vector

    FiniteRankOperator() = default;
    FiniteRankOperator(std::size_t d, std::vector<double> evals,
                       std::vector<std::vector<double>> evecs);

    /// Dense matrix sum lambda_i v_i v_i^T.
    std::vector<std::vector<double>> matrix() const;
};

/// Zero operator of the given dimension.
FiniteRankOperator zero_operator(std::size_t d);

/// f(x) = sum_j w_j e^{i <y_j, x>} against the Fresnel weight with parameter
/// hbar.
struct FresnelIntegrand {
    std::size_t dimension = 0;
    AtomicComplexMeasure fourier;
    double hbar = 1.0;

    FresnelIntegrand() = default;
    FresnelIntegrand(std::size_t d, AtomicComplexMeasure f, double h);
};

/// det(I - B) = |det| e^{-i pi Ind} with Ind = #{eigenvalues > 1}. For real
/// spectra this equals the plain product prod (1 - lambda_i).
cd fredholm_det(const FiniteRankOperator& B);

/// The inverse square root of the determinant on the branch matching the
/// 1-D oscillatory quadrature: |det|^{-1/2} e^{-i pi Ind / 2}.
cd fredholm_det_rsqrt(const FiniteRankOperator& B);

/// Parseval/Cameron-Martin right hand side:
/// det^{-1/2} sum_j w_j exp(-(i hbar / 2) <y_j, (I-B)^{-1} y_j>).
cd parseval_rhs(const FiniteRankOperator& B, const FresnelIntegrand& f);

enum class QuadMethod { Regularized, GrowingBox };

/// Direct numerical evaluation of the normalized oscillatory integral of
/// e^{-(i/2 hbar) <x, Bx>} f(x), factorized over the eigenbasis of B.
/// Regularized: Gaussian damping e^{-eps u^2 / 2} with an epsilon ladder and
/// Richardson extrapolation. GrowingBox: one-sided improper integrals with
/// phase-matched radius ladders and iterated averaging.
cd fresnel_quadrature_lhs(const FiniteRankOperator& B, const FresnelIntegrand& f,
                          QuadMethod method);

/// A projection is an orthonormal set of rows spanning its range; a chain is
/// a nested increasing family of projections.
using Projection = std::vector<std::vector<double>>;
using ProjectionChain = std::vector<Projection>;

/// Finite-dimensional approximations I_{P_n} of the oscillatory integral
/// along each chain; every level is evaluated by the exact Gaussian-Fresnel
/// formula for the compressed operator P_n B P_n and projected atoms.
std::vector<std::vector<cd>> idim_osc_approx(const FiniteRankOperator& B,
                                             const FresnelIntegrand& f, std::size_t ambient_dim,
                                             const std::vector<ProjectionChain>& chains);

} // namespace pseudopath
