#include "raqmod/analysis.hpp"
#include "raqmod/errors.hpp"
#include "raqmod/forms.hpp"
#include "raqmod/lattice.hpp"
#include "raqmod/operators.hpp"
#include "raqmod/parallel.hpp"

#include <boost/math/special_functions/zeta.hpp>
#include <doctest.h>

#include <cmath>

using namespace raqmod;

namespace {

const cplx kZ(0.3, 1.1);

// sum' (m z + n)^{-6} over a square, Richardson in the cutoff (error ~ M^-4).
cplx g6_lattice(cplx z, int M)
{
    auto box = [z](int K) {
        cplx s = 0;
        for (int m = -K; m <= K; ++m)
            for (int n = -K; n <= K; ++n)
                if (m || n)
                    s += std::pow(double(m) * z + double(n), -6);
        return s;
    };
    const cplx a = box(M), b = box(M / 2);
    return (16.0 * a - b) / 15.0;
}

// E(z,2) = sum' y^2 / |m z + n|^4 via its K-Bessel expansion, K_{3/2} in closed form.
double e2_bessel(cplx z)
{
    const double x = z.real(), y = z.imag(), pi = M_PI;
    const double z3 = boost::math::zeta<double>(3), z4 = boost::math::zeta<double>(4);
    double e = 2 * z4 * y * y + pi * z3 / y;
    for (int n = 1; n < 80; ++n) {
        double sig = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0)
                sig += std::pow(d, -3.0);
        const double X = 2 * pi * n * y;
        const double K = std::sqrt(pi / (2 * X)) * std::exp(-X) * (1 + 1 / X);
        e += 8 * pi * pi * std::sqrt(y) * std::pow(n, 1.5) * sig * K * std::cos(2 * pi * n * x);
    }
    return e;
}

} // namespace

TEST_CASE("evaluation basics")
{
    CHECK(eval_series(one(8), kZ) == cplx(1, 0));
    CHECK(std::abs(eval_series(L_form(8), cplx(0, 1)) - cplx(-2 * M_PI, 0)) < 1e-15);
    CHECK(modularity_residual(L_form(8), kZ) < 1e-14);
    CHECK_THROWS_AS(eval_series(eisenstein_G(4, 4), cplx(0.1, 0.3)), TailTooLarge);
}

TEST_CASE("G6 against its lattice sum")
{
    const cplx lhs = g6_lattice(kZ, 200);
    const cplx two_pi_i(0, 2 * M_PI);
    const cplx rhs = 2.0 * std::pow(two_pi_i, 6) / 120.0 * eval_series(eisenstein_G(6, 24), kZ);
    CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-7);
    CHECK(modularity_residual(eisenstein_G(6, 24), kZ) < 1e-10);
}

TEST_CASE("E_{1,1} against the Bessel expansion")
{
    for (cplx z : {kZ, cplx(0, 1), cplx(-0.4, 0.95)}) {
        const double want = -e2_bessel(z) / (8 * M_PI * M_PI * M_PI * z.imag());
        const cplx got = eval_series(real_eisenstein(1, 1, 24), z);
        CHECK(std::abs(got.real() - want) < 1e-12 * std::abs(want));
        CHECK(std::abs(got.imag()) < 1e-15);
    }
}

TEST_CASE("modularity residuals")
{
    CHECK(modularity_residual(real_eisenstein(2, 0, 24), kZ) < 1e-8);
    CHECK(modularity_residual(delta_cusp(24), kZ) < 1e-12);
    CHECK(modularity_residual(eisenstein_G(2, 24), kZ) > 1e-3);
    CHECK(modularity_residual(g2_star(24), kZ) < 1e-10);
}

TEST_CASE("affine fit recovers an exact model")
{
    const std::vector<std::vector<double>> rows{{1, 2}, {2, -1}, {0.5, 3}, {-1, 1}, {3, 0}};
    std::vector<double> t;
    for (const auto& r : rows)
        t.push_back(2.5 * r[0] - 0.75 * r[1] + 0.125);
    const AffineFit f = fit_affine_values(rows, t);
    CHECK(f.rank == 3);
    CHECK_FALSE(f.rank_deficient);
    CHECK(f.coefficients[0] == doctest::Approx(2.5).epsilon(1e-13));
    CHECK(f.coefficients[1] == doctest::Approx(-0.75).epsilon(1e-13));
    CHECK(f.constant == doctest::Approx(0.125).epsilon(1e-13));
    const AffineFit d = fit_affine_values({{1, 2}, {2, 4}, {3, 6}, {4, 8}}, {1, 2, 3, 4});
    CHECK(d.rank_deficient);
}

TEST_CASE("Petersson pairing")
{
    const int N = 16;
    const RAForm D = delta_cusp(N);
    const QuadratureGrid grid{32, 32, 10.0};
    const PeterssonResult dd = petersson(D, D, 12, grid);
    CHECK(dd.value.real() == doctest::Approx(1.03536205680432e-06).epsilon(1e-10));
    CHECK(std::abs(dd.value.imag()) < 1e-20);
    CHECK(dd.error_estimate < 1e-12);
    CHECK_THROWS_AS(petersson(eisenstein_G(4, N), eisenstein_G(4, N), 4, grid), NonDecayingIntegrand);
    CHECK_THROWS_AS(petersson(eisenstein_G(10, N), D, 12, grid), DegreeMismatch);
    CHECK_THROWS_AS(petersson(D, D, 10, grid), DomainError);
}

TEST_CASE("momentum bases")
{
    CHECK(momentum_basis(graph_c111()).size() == 2);
    CHECK(momentum_basis(graph_c211()).size() == 2);
    GraphSpec single{{"v"}, {{std::nullopt, 0}}};
    CHECK(momentum_basis(single).empty());
    CHECK(graph_sum(single, kZ, 10).value == 0.0);
    GraphSpec split{{"a", "b"}, {{std::nullopt, 0}, {std::nullopt, 1}}};
    CHECK_THROWS_AS(momentum_basis(split), DomainError);
    GraphSpec loop{{"a"}, {{0, 0}, {std::nullopt, 0}}};
    CHECK_THROWS_AS(momentum_basis(loop), DomainError);
    for (const GraphSpec& g : {graph_c111(), graph_c211()}) {
        const auto B = momentum_basis(g);
        for (const auto& b : B)
            for (std::size_t v = 0; v < g.vertices.size(); ++v) {
                long s = 0;
                for (std::size_t i = 0; i < g.edges.size(); ++i) {
                    if (g.edges[i].head == int(v))
                        s += b[i];
                    if (g.edges[i].tail == int(v))
                        s -= b[i];
                }
                CHECK(s == 0);
            }
    }
    const GraphSpec c = canonical_graph(graph_c211());
    CHECK(graph_to_json(canonical_graph(c)) == graph_to_json(c));
    CHECK(graph_to_json(graph_from_json(graph_to_json(c))) == graph_to_json(c));
}

TEST_CASE("two-edge graph is the non-holomorphic Eisenstein series E(z,2)")
{
    // Two half-edges into one vertex: sum' (y / pi |m z + n|^2)^2.
    GraphSpec g{{"v"}, {{std::nullopt, 0}, {std::nullopt, 0}}};
    const LatticeResult r = graph_sum(g, kZ, 2000);
    const double want = e2_bessel(kZ) / (M_PI * M_PI);
    CHECK(std::abs(r.value - want) / want < 1e-6);
    CHECK(std::abs(r.value - want) < 10 * r.error_estimate + 1e-12);
}

TEST_CASE("lattice sums are deterministic across thread counts")
{
    const double a = graph_sum(graph_c111(), kZ, 12, 1).value;
    CHECK(graph_sum(graph_c111(), kZ, 12, 4).value == a);
    const LatticeResult e1 = eisenstein_lattice(2, 0, kZ, 200, 1), e3 = eisenstein_lattice(2, 0, kZ, 200, 3);
    CHECK(e1.value == e3.value);
    CHECK(e1.imag_value == e3.imag_value);
}

TEST_CASE("compensated and pairwise summation")
{
    KahanSum k;
    k.add(1.0);
    for (int i = 0; i < 1000; ++i)
        k.add(1e-16);
    k.add(-1.0);
    CHECK(k.value() == doctest::Approx(1e-13).epsilon(1e-12));
    std::vector<double> parts{1e16, 1.0, -1e16, 1.0};
    CHECK(pairwise_sum(parts) == pairwise_sum(std::vector<double>(parts)));
    CHECK(pairwise_sum({}) == 0.0);
}
