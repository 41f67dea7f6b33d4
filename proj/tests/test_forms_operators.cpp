#include "raqmod/errors.hpp"
#include "raqmod/forms.hpp"
#include "raqmod/operators.hpp"
#include "support.hpp"

#include <doctest.h>

#include <vector>

using namespace raqmod;

namespace {

// q prod (1 - q^n)^24, computed in machine integers.
std::vector<long> eta24(int N)
{
    std::vector<long> p(N + 1, 0);
    p[0] = 1;
    for (int n = 1; n <= N; ++n)
        for (int t = 0; t < 24; ++t)
            for (int i = N; i >= n; --i)
                p[i] -= p[i - n];
    std::vector<long> out(N + 1, 0);
    for (int i = 1; i <= N; ++i)
        out[i] = p[i - 1];
    return out;
}

long sigma(int k, int n)
{
    long s = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) {
            long p = 1;
            for (int j = 0; j < k; ++j)
                p *= d;
            s += p;
        }
    return s;
}

} // namespace

TEST_CASE("cusp form coefficients match the eta product")
{
    const int N = 16;
    const RAForm D = delta_cusp(N);
    const auto tau = eta24(N);
    CHECK(tau[2] == -24);
    CHECK(tau[12] == -370944);
    for (int m = 0; m <= N; ++m)
        CHECK(D.series.coeff(m, 0, 0) == PeriodScalar(Rational(tau[m])));
    CHECK(D.series.size() == static_cast<std::size_t>(N));
    CHECK(D.r == 12);
    CHECK(D.s == 0);
}

TEST_CASE("holomorphic Eisenstein coefficients")
{
    const int N = 12;
    for (int k : {4, 6, 8, 10}) {
        const RAForm G = eisenstein_G(k, N);
        CHECK(G.series.coeff(0, 0, 0) == PeriodScalar(-bernoulli(k) / Rational(2 * k)));
        for (int m = 1; m <= N; ++m)
            CHECK(G.series.coeff(m, 0, 0) == PeriodScalar(Rational(sigma(k - 1, m))));
    }
    const RAForm G2 = eisenstein_G(2, N);
    CHECK(G2.series.coeff(0, 0, 0) == PeriodScalar(ratio(-1, 24)));
    CHECK(G2.series.coeff(4, 0, 0) == PeriodScalar(7));
    CHECK(constant_part(g2_star(N)) ==
          std::map<int, PeriodScalar>{{-1, PeriodScalar(ratio(-1, 4))}, {0, PeriodScalar(ratio(-1, 24))}});
    CHECK(frak_m(N).series.coeff(1, 0, 1) == PeriodScalar(4));
    CHECK(dbar(frak_m(N)) == one(N));
    CHECK_THROWS_AS(eisenstein_G(3, N), DomainError);
}

TEST_CASE("real-analytic Eisenstein constant parts")
{
    const int N = 4;
    const PeriodScalar z3 = PeriodScalar::zeta(3), z5 = PeriodScalar::zeta(5);
    CHECK(constant_part(real_eisenstein(1, 1, N)) ==
          std::map<int, PeriodScalar>{{-2, z3 * ratio(-1, 2)}, {1, PeriodScalar(ratio(1, 720))}});
    CHECK(constant_part(real_eisenstein(2, 2, N)) ==
          std::map<int, PeriodScalar>{{-4, z5 * ratio(9, 2)}, {1, PeriodScalar(ratio(-1, 2520))}});
    CHECK(del(real_eisenstein(2, 0, N)) == L_shift(eisenstein_G(4, N), 1));
    CHECK(del(real_eisenstein(1, 1, N)) == scale(real_eisenstein(2, 0, N), Rational(2)));
    CHECK(dbar(real_eisenstein(0, 2, N)) == L_shift(conjugate(eisenstein_G(4, N)), 1));
    CHECK(laplace(real_eisenstein(2, 2, N)) == scale(real_eisenstein(2, 2, N), Rational(-4)));
    CHECK(conjugate(real_eisenstein(3, 1, N)) == real_eisenstein(1, 3, N));
    CHECK_THROWS_AS(real_eisenstein(2, 1, N), DomainError);
    CHECK_THROWS_AS(real_eisenstein(0, 0, N), DomainError);
}

TEST_CASE("Eisenstein cocycle polynomials")
{
    const CocyclePoly s = eis_cocycle(2, 'S');
    CHECK(s.coeffs == std::map<std::pair<int, int>, Rational>{{{1, 1}, ratio(1, 144)}});
    const CocyclePoly t = eis_cocycle(2, 'T');
    const Rational c = ratio(-1, 720);
    CHECK(t.coeffs == std::map<std::pair<int, int>, Rational>{{{2, 0}, 3 * c}, {{1, 1}, 3 * c}, {{0, 2}, c}});
    for (int k = 2; k <= 8; ++k) {
        const CocyclePoly p = eis_cocycle(k, 'S');
        for (const auto& [ij, v] : p.coeffs) {
            CHECK(ij.first + ij.second == 2 * k - 2);
            CHECK(p.coeffs.at({ij.second, ij.first}) == v);
        }
        for (const auto& [ij, v] : eis_cocycle(k, 'T').coeffs)
            CHECK(ij.first + ij.second == 2 * k - 2);
    }
}

TEST_CASE("operator hand values")
{
    const int N = 6;
    CHECK(del(L_form(N)).series.is_zero());
    CHECK(dbar(L_form(N)).series.is_zero());
    BiSeries q(N);
    q.add(1, 0, 0, PeriodScalar(1));
    BiSeries want(N);
    want.add(1, 0, 1, PeriodScalar(2));
    want.add(1, 0, 0, PeriodScalar(2));
    CHECK(del(RAForm(2, 0, q)) == RAForm(3, -1, want));
    CHECK(dbar(eisenstein_G(4, N)).series.is_zero());
    CHECK(laplace(eisenstein_G(6, N)).series.is_zero());
    CHECK(dz(L_form(N)) == one(N).series);
    BiSeries twoq(N);
    twoq.add(1, 0, 0, PeriodScalar(2));
    CHECK(dz(RAForm(0, 0, q)) == twoq);
    CHECK(dz(one(N)).is_zero());
}

TEST_CASE("Laplacian eigenvalues of L^k f")
{
    const int N = 6;
    for (int n : {4, 6, 12})
        for (int k = -3; k <= 5; ++k) {
            const RAForm f = L_shift(n == 12 ? delta_cusp(N) : eisenstein_G(n, N), k);
            CHECK(laplace(f) == scale(f, Rational(k * (k - n + 1))));
        }
}

TEST_CASE("operators on random series")
{
    test::Random rnd(5);
    const int N = 6;
    for (int i = 0; i < 50; ++i) {
        const RAForm f = rnd.form(N), g = rnd.form(N);
        CHECK(del(dbar(f)) - dbar(del(f)) == h_op(f));
        CHECK(del(f * g) == del(f) * g + f * del(g));
        CHECK(laplace(f) == scale(f, Rational(f.r * (f.s - 1))) - dbar(del(f)));
        CHECK(del(laplace(f)) == laplace(del(f)));
        const RAForm Lf = L_shift(f, 1);
        CHECK(laplace(Lf) + scale(Lf, Rational(Lf.r + Lf.s)) == L_shift(laplace(f), 1));
    }
}

TEST_CASE("brackets")
{
    const int N = 8;
    const RAForm G4 = eisenstein_G(4, N), G6 = eisenstein_G(6, N);
    CHECK(rc_bracket1(G4, G4).series.is_zero());
    // [G4, G6]_1 is a cusp form of weight 12, so a multiple of Delta.
    const RAForm b = rc_bracket1(G4, G6);
    CHECK(b.r == 12);
    CHECK(b.s == 0);
    const PeriodScalar c1 = b.series.coeff(1, 0, 0);
    CHECK_FALSE(c1.is_zero());
    CHECK(b.series.coeff(0, 0, 0).is_zero());
    const RAForm D = delta_cusp(N);
    for (int m = 2; m <= N; ++m)
        CHECK(b.series.coeff(m, 0, 0) == c1 * D.series.coeff(m, 0, 0));
    const RAForm b2 = rc_bracket2(G4, G4);
    CHECK(b2.r == 12);
    CHECK(b2.series.coeff(0, 0, 0).is_zero());
    for (int m = 2; m <= N; ++m)
        CHECK(b2.series.coeff(m, 0, 0) == b2.series.coeff(1, 0, 0) * D.series.coeff(m, 0, 0));
    const RAForm e = real_eisenstein(1, 1, N);
    const RAForm s2 = sym_bracket2(e, e);
    CHECK(s2.r == 4);
    CHECK(s2.s == 4);
    const auto [a, c] = d_mixed(e);
    CHECK(a.r == 3);
    CHECK(a.s == 1);
    CHECK(c.r == 1);
    CHECK(c.s == 3);
}
