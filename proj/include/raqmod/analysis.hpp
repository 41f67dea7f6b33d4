#pragma once

#include "raqmod/json_io.hpp"
#include "raqmod/lattice.hpp"
#include "raqmod/series.hpp"

#include <complex>
#include <string>
#include <vector>

namespace raqmod {

struct EvalConfig {
    SymbolValues symbols;           // numeric values of named constants
    double target_abs_error = 1e-9;  // bound on the truncation tail
    double zeta_error = 1e-15;       // accuracy of each zeta value
};

// Series with numeric coefficients, ready for repeated evaluation.
struct NumericSeries {
    struct Term {
        int m, n, k;
        double c;
    };
    int r = 0, s = 0, order = 0;
    int max_m = 0, max_n = 0, min_k = 0, max_k = 0;
    std::vector<Term> terms;
};

NumericSeries compile_series(const RAForm& f, const EvalConfig& cfg = {});

// Heuristic bound for the omitted shells q^m qbar^n with max(m,n) > N:
// the outermost stored shell times rho/(1 - rho), rho = 2|q|.
double tail_bound(const NumericSeries& f, cplx z);

// sum c L^k q^m qbar^n with L = -2 pi y, q = exp(2 pi i z).
// Raises TailTooLarge when tail_bound exceeds cfg.target_abs_error.
cplx eval_series(const NumericSeries& f, cplx z, double target_abs_error);
cplx eval_series(const RAForm& f, cplx z, const EvalConfig& cfg = {});

// |f(-1/z) - z^r zbar^s f(z)|
double modularity_residual(const NumericSeries& f, cplx z, double target_abs_error);
double modularity_residual(const RAForm& f, cplx z, const EvalConfig& cfg = {});

// f = f0 + c f1 with c the named symbol; returns the real c minimising the
// summed squared S-residuals over `points`, and the largest residual left.
struct SymbolFit {
    double value = 0.0;
    double max_residual = 0.0;
};
SymbolFit fit_symbol_by_modularity(const RAForm& f, const std::string& symbol, const std::vector<cplx>& points,
                                   const EvalConfig& cfg = {});

struct QuadratureGrid {
    int nx = 64;          // Gauss-Legendre nodes in x on [-1/2, 1/2]
    int ny = 64;          // Gauss-Legendre nodes per y panel
    double y_max = 10.0;  // upper cutoff of the fundamental domain
};

struct PeterssonResult {
    cplx value;
    double abs_integral = 0.0;  // integral of |f conj(g)| y^{n-2}
    double error_estimate = 0.0;
};

// <f, g> = integral over the fundamental domain of f conj(g) y^n dx dy / y^2.
// Requires h(f) = h(g) (DegreeMismatch) and n = r_f + s_g (DomainError).
// Raises NonDecayingIntegrand when both constant terms are nonzero.  The y
// range [sqrt(1-x^2), y_max] is split at 1.5, 3 and 5; each panel uses ny
// nodes.  error_estimate compares against a grid with ny/2 nodes per panel.
PeterssonResult petersson(const RAForm& f, const RAForm& g, int n, const QuadratureGrid& grid = {},
                          const EvalConfig& cfg = {}, int jobs = 1);
// Independent oracle: nested adaptive Gauss-Kronrod (Boost).
cplx petersson_adaptive(const RAForm& f, const RAForm& g, int n, double y_max, double rel_tol,
                        const EvalConfig& cfg = {});

struct AffineFit {
    std::vector<double> coefficients;  // one per model term
    double constant = 0.0;
    std::vector<double> residuals;     // per point
    int rank = 0;
    bool rank_deficient = false;
};

// Least squares targets[i] ~ sum_j c_j model[j](z_i) + constant.
AffineFit fit_affine(const std::vector<std::pair<cplx, double>>& targets, const std::vector<RAForm>& model,
                     const EvalConfig& cfg = {});
// Same, on precomputed model values rows[i][j].
AffineFit fit_affine_values(const std::vector<std::vector<double>>& rows, const std::vector<double>& targets,
                            bool with_constant = true);

json affine_to_json(const AffineFit& f);

} // namespace raqmod
