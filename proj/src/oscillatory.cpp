#include "pseudopath/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace pseudopath {

namespace {

constexpr double kOrthoTol = 1e-12;
constexpr double kSingularTol = 1e-12;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_orthonormal(const std::vector<std::vector<double>>& frame, std::size_t dim,
                       double tol, const char* who) {
    for (const auto& v : frame)
        if (v.size() != dim) throw DimensionMismatch(std::string(who) + ": frame vector length "
                                                                        "differs from dimension");
    for (std::size_t i = 0; i < frame.size(); ++i) {
        for (std::size_t j = i; j < frame.size(); ++j) {
            const double expect = i == j ? 1.0 : 0.0;
            if (std::abs(dot(frame[i], frame[j]) - expect) > tol)
                throw InadmissibleSpec(std::string(who) + ": frame is not orthonormal");
        }
    }
}

// Cyclic Jacobi diagonalization of a small symmetric matrix. Returns
// eigenvalues and the orthonormal eigenvector rows.
void jacobi_eigen(std::vector<std::vector<double>> A, std::vector<double>& evals,
                  std::vector<std::vector<double>>& evecs) {
    const std::size_t n = A.size();
    evecs.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) evecs[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += A[i][j] * A[i][j];
        if (off < 1e-28) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(A[p][q]) < 1e-300) continue;
                const double theta = 0.5 * std::atan2(2.0 * A[p][q], A[q][q] - A[p][p]);
                const double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = A[p][k], aqk = A[q][k];
                    A[p][k] = c * apk - s * aqk;
                    A[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = A[k][p], akq = A[k][q];
                    A[k][p] = c * akp - s * akq;
                    A[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vpk = evecs[p][k], vqk = evecs[q][k];
                    evecs[p][k] = c * vpk - s * vqk;
                    evecs[q][k] = s * vpk + c * vqk;
                }
            }
        }
    }
    evals.resize(n);
    for (std::size_t i = 0; i < n; ++i) evals[i] = A[i][i];
}

// |prod (1 - lambda)|^{-1/2} with phase e^{-i pi/2} per eigenvalue above 1,
// the branch that the one-dimensional Fresnel quadrature realizes.
cd branch_rsqrt(const std::vector<double>& eigenvalues) {
    double log_abs = 0.0;
    int ind = 0;
    for (double lam : eigenvalues) {
        if (std::abs(1.0 - lam) < kSingularTol)
            throw SingularOperator("oscillatory integral: eigenvalue 1 makes I - B singular");
        log_abs += std::log(std::abs(1.0 - lam));
        if (lam > 1.0) ++ind;
    }
    return std::exp(-0.5 * log_abs) *
           std::exp(cd(0.0, -0.5 * M_PI * static_cast<double>(ind)));
}

cd parseval_value(const std::vector<double>& eigenvalues,
                  const std::vector<std::vector<cd>>& eta_w, double hbar) {
    // eta_w rows: (eigen-coordinates..., weight) packed by the caller
    const cd det_rsqrt = branch_rsqrt(eigenvalues);
    cd sum{};
    for (const auto& row : eta_w) {
        double quad = 0.0;
        for (std::size_t i = 0; i < eigenvalues.size(); ++i)
            quad += row[i].real() * row[i].real() / (1.0 - eigenvalues[i]);
        sum += row.back() * std::exp(cd(0.0, -0.5 * hbar * quad));
    }
    return det_rsqrt * sum;
}

cd simpson(const std::function<cd(double)>& f, double a, double b, std::size_t n) {
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    cd s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i)
        s += f(a + static_cast<double>(i) * h) * (i % 2 ? 4.0 : 2.0);
    return s * (h / 3.0);
}

std::size_t nodes_for(double len, double freq) {
    const double n = len * (freq + 1.0) * 16.0 / (2.0 * M_PI) + 24.0;
    return std::min(static_cast<std::size_t>(n), std::size_t(400000));
}

// Int exp(i a u^2 / 2 + i eta u) du over the line, by Gaussian damping and a
// Richardson ladder in the damping strength. The damping is centered on the
// stationary point u* = -eta / a; off-center damping carries a bias of order
// eps eta^2 / a^2 that no affordable ladder can remove.
cd regularized_line(double a, double eta) {
    const double ustar = -eta / a;
    const double eps0 = std::min(0.1, 0.2 * std::abs(a));
    std::vector<cd> vals;
    double eps = eps0;
    for (int r = 0; r < 5; ++r, eps *= 0.5) {
        const double U = std::sqrt(60.0 / eps);
        const auto integrand = [&](double u) {
            const double v = u - ustar;
            return std::exp(cd(-0.5 * eps * v * v, 0.5 * a * u * u + eta * u));
        };
        // phase slope a u + eta = a (u - u*) stays below |a| U on the window
        vals.push_back(simpson(integrand, ustar - U, ustar + U,
                               nodes_for(2.0 * U, std::abs(a) * U)));
    }
    for (std::size_t stage = 1; stage < vals.size(); ++stage) {
        const double f = std::pow(2.0, static_cast<double>(stage));
        for (std::size_t i = 0; i + stage < vals.size(); ++i)
            vals[i] = (f * vals[i + 1] - vals[i]) / (f - 1.0);
    }
    return vals[0];
}

// Limit of an oscillating partial-sum sequence by iterated pairwise
// averaging; flags when the last stages still disagree.
cd euler_limit(std::vector<cd> s) {
    cd prev = s.back();
    while (s.size() > 1) {
        prev = s[0];
        for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
        s.pop_back();
    }
    if (std::abs(s[0] - prev) > 1e-5 * (1.0 + std::abs(s[0])))
        throw LadderDivergence("fresnel_quadrature_lhs: growing-box ladder does not settle");
    return s[0];
}

// One-sided improper integral Int_0^inf exp(i a u^2 / 2 + i e u) du with
// radii spaced by phase increments of pi.
cd growing_ray(double a, double e) {
    const double sgn = a > 0.0 ? 1.0 : -1.0;
    const auto integrand = [&](double u) { return std::exp(cd(0.0, 0.5 * a * u * u + e * u)); };
    std::vector<cd> partial;
    cd acc{};
    double R = 0.0, phase = 0.0;
    for (int k = 1; k <= 40; ++k) {
        const double target = phase + sgn * M_PI;
        // smallest radius beyond R with (a/2) r^2 + e r = target
        const double disc = e * e + 2.0 * a * target;
        const double root = std::sqrt(std::max(disc, 0.0));
        double next = (-e + (a > 0.0 ? root : -root)) / a;
        if (!(next > R)) next = (-e + (a > 0.0 ? -root : root)) / a;
        if (!(next > R)) next = R + 1.0; // past the stationary fold; keep moving
        acc += simpson(integrand, R, next,
                       nodes_for(next - R, std::abs(a) * next + std::abs(e)));
        partial.push_back(acc);
        phase = 0.5 * a * next * next + e * next;
        R = next;
    }
    return euler_limit(std::move(partial));
}

cd growing_box_line(double a, double eta) { return growing_ray(a, eta) + growing_ray(a, -eta); }

// normalized one-dimensional factor for eigenvalue lambda and eigen
// coordinate eta
cd fresnel_factor_1d(double lambda, double eta, double hbar, QuadMethod method) {
    if (std::abs(1.0 - lambda) < kSingularTol)
        throw SingularOperator("fresnel_quadrature_lhs: eigenvalue 1 makes I - B singular");
    const double a = (1.0 - lambda) / hbar;
    const cd raw = method == QuadMethod::Regularized ? regularized_line(a, eta)
                                                     : growing_box_line(a, eta);
    return raw / (std::sqrt(2.0 * M_PI * hbar) * std::exp(cd(0.0, 0.25 * M_PI)));
}

} // namespace

FiniteRankOperator::FiniteRankOperator(std::size_t d, std::vector<double> evals,
                                       std::vector<std::vector<double>> evecs)
    : dimension(d), eigenvalues(std::move(evals)), eigenvectors(std::move(evecs)) {
    if (eigenvalues.size() != dimension || eigenvectors.size() != dimension)
        throw DimensionMismatch("FiniteRankOperator: need exactly d eigenvalues and vectors");
    check_orthonormal(eigenvectors, dimension, kOrthoTol, "FiniteRankOperator");
}

FiniteRankOperator zero_operator(std::size_t d) {
    std::vector<std::vector<double>> frame(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) frame[i][i] = 1.0;
    return FiniteRankOperator(d, std::vector<double>(d, 0.0), std::move(frame));
}

std::vector<std::vector<double>> FiniteRankOperator::matrix() const {
    std::vector<std::vector<double>> M(dimension, std::vector<double>(dimension, 0.0));
    for (std::size_t k = 0; k < dimension; ++k)
        for (std::size_t i = 0; i < dimension; ++i)
            for (std::size_t j = 0; j < dimension; ++j)
                M[i][j] += eigenvalues[k] * eigenvectors[k][i] * eigenvectors[k][j];
    return M;
}

FresnelIntegrand::FresnelIntegrand(std::size_t d, AtomicComplexMeasure f, double h)
    : dimension(d), fourier(std::move(f)), hbar(h) {
    if (fourier.dimension != dimension)
        throw DimensionMismatch("FresnelIntegrand: measure dimension differs");
    if (!(hbar > 0.0)) throw InadmissibleSpec("FresnelIntegrand: hbar must be positive");
}

cd fredholm_det(const FiniteRankOperator& B) {
    double log_abs = 0.0;
    int ind = 0;
    for (double lam : B.eigenvalues) {
        if (std::abs(1.0 - lam) < kSingularTol)
            throw SingularOperator("fredholm_det: eigenvalue 1 makes I - B singular");
        log_abs += std::log(std::abs(1.0 - lam));
        if (lam > 1.0) ++ind;
    }
    return std::exp(log_abs) * std::exp(cd(0.0, -M_PI * static_cast<double>(ind)));
}

cd fredholm_det_rsqrt(const FiniteRankOperator& B) { return branch_rsqrt(B.eigenvalues); }

cd parseval_rhs(const FiniteRankOperator& B, const FresnelIntegrand& f) {
    if (B.dimension != f.dimension)
        throw DimensionMismatch("parseval_rhs: operator and integrand dimensions differ");
    std::vector<std::vector<cd>> eta_w;
    eta_w.reserve(f.fourier.atoms.size());
    for (const auto& atom : f.fourier.atoms) {
        std::vector<cd> row(B.dimension + 1);
        for (std::size_t i = 0; i < B.dimension; ++i)
            row[i] = cd(dot(B.eigenvectors[i], atom.y), 0.0);
        row.back() = atom.w;
        eta_w.push_back(std::move(row));
    }
    return parseval_value(B.eigenvalues, eta_w, f.hbar);
}

cd fresnel_quadrature_lhs(const FiniteRankOperator& B, const FresnelIntegrand& f,
                          QuadMethod method) {
    if (B.dimension != f.dimension)
        throw DimensionMismatch("fresnel_quadrature_lhs: dimensions differ");
    if (B.dimension > 3)
        throw DimensionTooLarge("fresnel_quadrature_lhs: direct quadrature is gated to d <= 3");
    cd sum{};
    for (const auto& atom : f.fourier.atoms) {
        cd prod(1.0, 0.0);
        for (std::size_t i = 0; i < B.dimension; ++i) {
            const double eta = dot(B.eigenvectors[i], atom.y);
            prod *= fresnel_factor_1d(B.eigenvalues[i], eta, f.hbar, method);
        }
        sum += atom.w * prod;
    }
    return sum;
}

std::vector<std::vector<cd>> idim_osc_approx(const FiniteRankOperator& B,
                                             const FresnelIntegrand& f, std::size_t ambient_dim,
                                             const std::vector<ProjectionChain>& chains) {
    if (B.dimension != ambient_dim || f.dimension != ambient_dim)
        throw DimensionMismatch("idim_osc_approx: operator/integrand not supported in the "
                                "ambient truncation");
    const auto M = B.matrix();

    std::vector<std::vector<cd>> out;
    out.reserve(chains.size());
    for (const auto& chain : chains) {
        for (const auto& level : chain)
            check_orthonormal(level, ambient_dim, 1e-10, "idim_osc_approx");
        for (std::size_t n = 0; n + 1 < chain.size(); ++n) {
            // every basis vector of level n must lie in the span of level n+1
            for (const auto& q : chain[n]) {
                std::vector<double> res = q;
                for (const auto& r : chain[n + 1]) {
                    const double c = dot(q, r);
                    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= c * r[i];
                }
                if (std::sqrt(dot(res, res)) > 1e-10)
                    throw NonNested("idim_osc_approx: projection chain is not nested");
            }
        }

        std::vector<cd> values;
        values.reserve(chain.size());
        for (const auto& level : chain) {
            const std::size_t k = level.size();
            // compressed operator Q M Q^T
            std::vector<std::vector<double>> Bk(k, std::vector<double>(k, 0.0));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    for (std::size_t r = 0; r < ambient_dim; ++r)
                        for (std::size_t c = 0; c < ambient_dim; ++c)
                            Bk[i][j] += level[i][r] * M[r][c] * level[j][c];
            std::vector<double> mu;
            std::vector<std::vector<double>> W;
            jacobi_eigen(Bk, mu, W);

            std::vector<std::vector<cd>> eta_w;
            eta_w.reserve(f.fourier.atoms.size());
            for (const auto& atom : f.fourier.atoms) {
                std::vector<double> z(k, 0.0);
                for (std::size_t i = 0; i < k; ++i) z[i] = dot(level[i], atom.y);
                std::vector<cd> row(k + 1);
                for (std::size_t i = 0; i < k; ++i) row[i] = cd(dot(W[i], z), 0.0);
                row.back() = atom.w;
                eta_w.push_back(std::move(row));
            }
            values.push_back(parseval_value(mu, eta_w, f.hbar));
        }
        out.push_back(std::move(values));
    }
    return out;
}

} // namespace pseudopath
