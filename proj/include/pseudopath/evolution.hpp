#pragma once

#include <cmath>
#include <complex>

#include "pseudopath/errors.hpp"

namespace pseudopath {

using cd = std::complex<double>;

/// Order/coefficient pair (p, alpha) of the evolution symbol exp(alpha t k^p),
/// together with the smallest admissible evolution time. Admissibility is
/// the condition |exp(alpha t k^p)| <= 1 for all real k and t >= 0:
/// Re(alpha) <= 0 for even p, Re(alpha) = 0 for odd p.
///
/// For p = 2 the Schroedinger scaling enters through alpha = -i/hbar; hbar is
/// not a separate field.
struct EvolutionSpec {
    int p = 2;
    cd alpha{-0.5, 0.0};
    double t_eps = 1e-3;

    EvolutionSpec() = default;
    EvolutionSpec(int order, cd coeff, double time_floor = 1e-3)
        : p(order), alpha(coeff), t_eps(time_floor) {
        if (p < 2) throw InadmissibleSpec("EvolutionSpec: p must be >= 2");
        if (alpha == cd(0.0, 0.0)) throw InadmissibleSpec("EvolutionSpec: alpha must be nonzero");
        if (p % 2 == 0) {
            if (alpha.real() > 0.0)
                throw InadmissibleSpec("EvolutionSpec: even p requires Re(alpha) <= 0");
        } else {
            if (alpha.real() != 0.0)
                throw InadmissibleSpec("EvolutionSpec: odd p requires purely imaginary alpha");
        }
        if (!(t_eps > 0.0)) throw InadmissibleSpec("EvolutionSpec: t_eps must be positive");
    }

    /// True when |exp(alpha t k^p)| -> 0 as |k| -> infinity, i.e. the symbol
    /// itself provides the k-space cutoff and no mollifier is needed.
    bool decaying_symbol() const { return p % 2 == 0 && alpha.real() < 0.0; }

    /// Symbol value exp(alpha t k^p).
    cd symbol(double t, double k) const {
        return std::exp(alpha * t * std::pow(k, static_cast<double>(p)));
    }

    bool same_evolution(const EvolutionSpec& o) const { return p == o.p && alpha == o.alpha; }
};

} // namespace pseudopath
