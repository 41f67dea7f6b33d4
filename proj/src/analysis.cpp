#include "raqmod/analysis.hpp"
#include "raqmod/errors.hpp"
#include "raqmod/parallel.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace raqmod {

// ------------------------------------------------------------ evaluation

NumericSeries compile_series(const RAForm& f, const EvalConfig& cfg)
{
    NumericSeries out;
    out.r = f.r;
    out.s = f.s;
    out.order = f.order();
    out.min_k = 0;
    out.max_k = 0;
    bool first = true;
    for (const auto& [key, c] : f.series.terms()) {
        const double v = numeric_value(c, cfg.zeta_error, cfg.symbols);
        if (v == 0.0)
            continue;
        out.terms.push_back({key.m, key.n, key.k, v});
        out.max_m = std::max(out.max_m, key.m);
        out.max_n = std::max(out.max_n, key.n);
        out.min_k = first ? key.k : std::min(out.min_k, key.k);
        out.max_k = first ? key.k : std::max(out.max_k, key.k);
        first = false;
    }
    return out;
}

namespace {

struct Powers {
    std::vector<cplx> q, qb;
    std::vector<double> L;  // L^k at index k - min_k
    int min_k = 0;
};

Powers powers(const NumericSeries& f, cplx z)
{
    Powers p;
    const cplx q = std::exp(cplx(0.0, 2.0 * M_PI) * z);
    const cplx qb = std::conj(q);
    p.q.resize(f.max_m + 1);
    p.qb.resize(f.max_n + 1);
    p.q[0] = p.qb[0] = 1.0;
    for (int m = 1; m <= f.max_m; ++m)
        p.q[m] = p.q[m - 1] * q;
    for (int n = 1; n <= f.max_n; ++n)
        p.qb[n] = p.qb[n - 1] * qb;
    const double L = -2.0 * M_PI * z.imag();
    p.min_k = f.min_k;
    p.L.resize(f.max_k - f.min_k + 1);
    for (int k = f.min_k; k <= f.max_k; ++k)
        p.L[k - f.min_k] = std::pow(L, k);
    return p;
}

} // namespace

double tail_bound(const NumericSeries& f, cplx z)
{
    const double aq = std::exp(-2.0 * M_PI * z.imag());
    const double rho = 2.0 * aq;
    if (rho >= 1.0)
        return std::numeric_limits<double>::infinity();
    const Powers p = powers(f, z);
    double shell = 0.0;
    for (const auto& t : f.terms)
        if (std::max(t.m, t.n) == f.order)
            shell += std::abs(t.c * p.L[t.k - p.min_k]) * std::pow(aq, t.m + t.n);
    return shell * rho / (1.0 - rho);
}

cplx eval_series(const NumericSeries& f, cplx z, double target_abs_error)
{
    if (z.imag() <= 0)
        throw DomainError("eval_series: z must lie in the upper half plane");
    const double tail = tail_bound(f, z);
    if (tail > target_abs_error)
        throw TailTooLarge("tail bound " + format_double(tail) + " at z = (" + format_double(z.real()) + "," +
                           format_double(z.imag()) + ") exceeds " + format_double(target_abs_error));
    const Powers p = powers(f, z);
    cplx acc = 0.0;
    for (const auto& t : f.terms)
        acc += t.c * p.L[t.k - p.min_k] * p.q[t.m] * p.qb[t.n];
    return acc;
}

cplx eval_series(const RAForm& f, cplx z, const EvalConfig& cfg)
{
    return eval_series(compile_series(f, cfg), z, cfg.target_abs_error);
}

double modularity_residual(const NumericSeries& f, cplx z, double target_abs_error)
{
    const cplx lhs = eval_series(f, -1.0 / z, target_abs_error);
    const cplx rhs = std::pow(z, f.r) * std::pow(std::conj(z), f.s) * eval_series(f, z, target_abs_error);
    return std::abs(lhs - rhs);
}

double modularity_residual(const RAForm& f, cplx z, const EvalConfig& cfg)
{
    return modularity_residual(compile_series(f, cfg), z, cfg.target_abs_error);
}

SymbolFit fit_symbol_by_modularity(const RAForm& f, const std::string& symbol, const std::vector<cplx>& points,
                                   const EvalConfig& cfg)
{
    BiSeries f0(f.order()), f1(f.order());
    for (const auto& [key, c] : f.series.terms()) {
        f0.add(key.m, key.n, key.k, c.without(symbol));
        f1.add(key.m, key.n, key.k, c.linear_coefficient(symbol));
    }
    const NumericSeries n0 = compile_series(RAForm(f.r, f.s, f0), cfg);
    const NumericSeries n1 = compile_series(RAForm(f.r, f.s, f1), cfg);
    auto residual = [&](const NumericSeries& g, cplx z) {
        return eval_series(g, -1.0 / z, cfg.target_abs_error) -
               std::pow(z, f.r) * std::pow(std::conj(z), f.s) * eval_series(g, z, cfg.target_abs_error);
    };
    std::vector<cplx> R0, R1;
    double num = 0.0, den = 0.0;
    for (cplx z : points) {
        R0.push_back(residual(n0, z));
        R1.push_back(residual(n1, z));
        num += (std::conj(R1.back()) * R0.back()).real();
        den += std::norm(R1.back());
    }
    if (den == 0.0)
        throw DomainError("fit_symbol_by_modularity: '" + symbol + "' does not affect the S-residual");
    SymbolFit out;
    out.value = -num / den;
    for (std::size_t i = 0; i < points.size(); ++i)
        out.max_residual = std::max(out.max_residual, std::abs(R0[i] + out.value * R1[i]));
    return out;
}

// ------------------------------------------------------------ Petersson

namespace {

struct Rule {
    std::vector<double> x, w;  // on [-1, 1]
};

Rule gauss_legendre(int n)
{
    Rule r;
    const auto zeros = boost::math::legendre_p_zeros<double>(n);  // nonnegative half
    for (double x0 : zeros) {
        const double dp = boost::math::legendre_p_prime(n, x0);
        const double w = 2.0 / ((1.0 - x0 * x0) * dp * dp);
        r.x.push_back(x0);
        r.w.push_back(w);
        if (x0 != 0.0) {
            r.x.push_back(-x0);
            r.w.push_back(w);
        }
    }
    return r;
}

void check_pairing(const RAForm& f, const RAForm& g, int n)
{
    if (h_degree(f) != h_degree(g))
        throw DegreeMismatch("petersson: h(f) = " + std::to_string(h_degree(f)) + " but h(g) = " +
                             std::to_string(h_degree(g)));
    if (n != f.r + g.s)
        throw DomainError("petersson: n must equal r_f + s_g = " + std::to_string(f.r + g.s));
    const bool f0 = !f.series.is_zero() && f.series.terms().begin()->first.m == 0 &&
                    f.series.terms().begin()->first.n == 0;
    const bool g0 = !g.series.is_zero() && g.series.terms().begin()->first.m == 0 &&
                    g.series.terms().begin()->first.n == 0;
    if (f0 && g0)
        throw NonDecayingIntegrand("petersson: both arguments have a nonzero constant part");
}

// Integral with nx x-nodes and ny nodes per y panel; accumulates |integrand| too.
std::pair<cplx, double> grid_integral(const NumericSeries& F, const NumericSeries& G, int n, int nx, int ny,
                                      double y_max, double tol, int jobs)
{
    const Rule rx = gauss_legendre(nx), ry = gauss_legendre(ny);
    const std::size_t X = rx.x.size();
    std::vector<double> re(X), im(X), ab(X);
    parallel_for(X, jobs, [&](std::size_t i) {
        const double x = 0.5 * rx.x[i], wx = 0.5 * rx.w[i];
        const double y0 = std::sqrt(1.0 - x * x);
        std::vector<double> cuts{y0};
        for (double c : {1.5, 3.0, 5.0})
            if (c > y0 && c < y_max)
                cuts.push_back(c);
        cuts.push_back(y_max);
        KahanSum sr, si, sa;
        for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
            const double a = cuts[p], b = cuts[p + 1];
            const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
            for (std::size_t j = 0; j < ry.x.size(); ++j) {
                const double y = mid + half * ry.x[j];
                const cplx z(x, y);
                const cplx v = eval_series(F, z, tol) * std::conj(eval_series(G, z, tol)) * std::pow(y, n - 2);
                const double w = wx * half * ry.w[j];
                sr.add(w * v.real());
                si.add(w * v.imag());
                sa.add(w * std::abs(v));
            }
        }
        re[i] = sr.value();
        im[i] = si.value();
        ab[i] = sa.value();
    });
    return {cplx(pairwise_sum(re), pairwise_sum(im)), pairwise_sum(ab)};
}

} // namespace

PeterssonResult petersson(const RAForm& f, const RAForm& g, int n, const QuadratureGrid& grid, const EvalConfig& cfg,
                          int jobs)
{
    check_pairing(f, g, n);
    if (grid.nx < 2 || grid.ny < 2 || grid.y_max <= 1.5)
        throw DomainError("petersson: grid needs nx, ny >= 2 and y_max > 1.5");
    const NumericSeries F = compile_series(f, cfg), G = compile_series(g, cfg);
    const auto [value, abs_int] = grid_integral(F, G, n, grid.nx, grid.ny, grid.y_max, cfg.target_abs_error, jobs);
    const auto coarse = grid_integral(F, G, n, grid.nx / 2, grid.ny / 2, grid.y_max, cfg.target_abs_error, jobs);
    PeterssonResult out;
    out.value = value;
    out.abs_integral = abs_int;
    out.error_estimate = std::abs(value - coarse.first);
    return out;
}

cplx petersson_adaptive(const RAForm& f, const RAForm& g, int n, double y_max, double rel_tol, const EvalConfig& cfg)
{
    using boost::math::quadrature::gauss_kronrod;
    check_pairing(f, g, n);
    const NumericSeries F = compile_series(f, cfg), G = compile_series(g, cfg);
    auto integrand = [&](double x, double y) {
        const cplx z(x, y);
        return eval_series(F, z, cfg.target_abs_error) * std::conj(eval_series(G, z, cfg.target_abs_error)) *
               std::pow(y, n - 2);
    };
    auto part = [&](bool imag) {
        auto outer = [&](double x) {
            auto inner = [&](double y) {
                const cplx v = integrand(x, y);
                return imag ? v.imag() : v.real();
            };
            return gauss_kronrod<double, 31>::integrate(inner, std::sqrt(1.0 - x * x), y_max, 20, rel_tol * 1e-2);
        };
        return gauss_kronrod<double, 31>::integrate(outer, -0.5, 0.5, 20, rel_tol * 1e-1);
    };
    return cplx(part(false), part(true));
}

// ------------------------------------------------------------ fitting

AffineFit fit_affine_values(const std::vector<std::vector<double>>& rows, const std::vector<double>& targets,
                            bool with_constant)
{
    if (rows.size() != targets.size() || rows.empty())
        throw DomainError("fit_affine: need one model row per target");
    const int P = static_cast<int>(rows.size());
    const int T = static_cast<int>(rows[0].size());
    const int C = T + (with_constant ? 1 : 0);
    if (P <= C)
        throw DomainError("fit_affine: need more points than unknowns");
    Eigen::MatrixXd A(P, C);
    Eigen::VectorXd b(P);
    for (int i = 0; i < P; ++i) {
        if (static_cast<int>(rows[i].size()) != T)
            throw DomainError("fit_affine: ragged model rows");
        for (int j = 0; j < T; ++j)
            A(i, j) = rows[i][j];
        if (with_constant)
            A(i, T) = 1.0;
        b(i) = targets[i];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    const Eigen::VectorXd x = qr.solve(b);
    AffineFit out;
    out.rank = static_cast<int>(qr.rank());
    out.rank_deficient = out.rank < C;
    for (int j = 0; j < T; ++j)
        out.coefficients.push_back(x(j));
    if (with_constant)
        out.constant = x(T);
    const Eigen::VectorXd res = b - A * x;
    for (int i = 0; i < P; ++i)
        out.residuals.push_back(res(i));
    return out;
}

AffineFit fit_affine(const std::vector<std::pair<cplx, double>>& targets, const std::vector<RAForm>& model,
                     const EvalConfig& cfg)
{
    std::vector<NumericSeries> compiled;
    for (const auto& m : model)
        compiled.push_back(compile_series(m, cfg));
    std::vector<std::vector<double>> rows;
    std::vector<double> values;
    for (const auto& [z, v] : targets) {
        std::vector<double> row;
        for (const auto& c : compiled)
            row.push_back(eval_series(c, z, cfg.target_abs_error).real());
        rows.push_back(std::move(row));
        values.push_back(v);
    }
    return fit_affine_values(rows, values, true);
}

json affine_to_json(const AffineFit& f)
{
    return json{{"coefficients", f.coefficients},
                {"constant", f.constant},
                {"residuals", f.residuals},
                {"rank", f.rank},
                {"rank_deficient", f.rank_deficient}};
}

} // namespace raqmod
