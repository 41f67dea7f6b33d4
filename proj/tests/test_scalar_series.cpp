#include "raqmod/errors.hpp"
#include "raqmod/forms.hpp"
#include "raqmod/json_io.hpp"
#include "raqmod/series.hpp"
#include "support.hpp"

#include <boost/math/special_functions/zeta.hpp>
#include <doctest.h>

#include <climits>

using namespace raqmod;

TEST_CASE("bernoulli numbers")
{
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == ratio(-1, 2));
    CHECK(bernoulli(2) == ratio(1, 6));
    CHECK(bernoulli(4) == ratio(-1, 30));
    CHECK(bernoulli(12) == ratio(-691, 2730));
    CHECK(bernoulli(7) == 0);
    // sum_{j<n} C(n,j) B_j = 0 for n >= 2
    for (int n = 2; n <= 20; ++n) {
        Rational s = 0;
        for (int j = 0; j < n; ++j)
            s += Rational(binomial(n, j)) * bernoulli(j);
        CHECK(s == 0);
    }
}

TEST_CASE("divisor sums against a direct loop")
{
    CHECK(divisor_sum(1, 4) == 7);
    CHECK(divisor_sum(3, 2) == 9);
    for (int k : {0, 1, 3, 5, 7})
        for (long n = 1; n <= 40; ++n) {
            Integer s = 0;
            for (long d = 1; d <= n; ++d)
                if (n % d == 0) {
                    Integer p;
                    mpz_ui_pow_ui(p.get_mpz_t(), d, k);
                    s += p;
                }
            CHECK(divisor_sum(k, n) == s);
        }
}

TEST_CASE("ratio canonicalizes signs")
{
    CHECK(ratio(1, -2) == ratio(-1, 2));
    CHECK(ratio(-4, -6) == ratio(2, 3));
    CHECK(to_string(ratio(3, -9)) == "-1/3");
    CHECK_THROWS_AS(ratio(1, 0), DomainError);
}

TEST_CASE("period scalar algebra")
{
    const PeriodScalar z3 = PeriodScalar::zeta(3), z5 = PeriodScalar::zeta(5);
    CHECK((PeriodScalar(2) + z3) * z3 == PeriodScalar(2) * z3 + z3 * z3);
    CHECK((z3 + PeriodScalar(-1) * z3).is_zero());
    const PeriodScalar p = z3 * z5;
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms().begin()->first.zetas == std::vector<int>{3, 5});
    CHECK(PeriodScalar(ratio(1, 240)).is_rational());
    CHECK_FALSE(z3.is_rational());

    test::Random rnd(11);
    for (int i = 0; i < 200; ++i) {
        const PeriodScalar a = rnd.scalar(), b = rnd.scalar(), c = rnd.scalar();
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("zeta values against boost")
{
    for (int s : {3, 5, 7, 9, 11})
        CHECK(zeta_value(s) == doctest::Approx(boost::math::zeta<double>(s)).epsilon(1e-15));
    CHECK(std::abs(zeta_value(3) - 1.2020569032) < 1e-9);
    const double z3 = boost::math::zeta<double>(3);
    CHECK(numeric_value(PeriodScalar::zeta(3) * PeriodScalar::zeta(3)) == doctest::Approx(z3 * z3).epsilon(1e-14));
    CHECK(numeric_value(PeriodScalar(ratio(1, 240))) == 1.0 / 240);
    CHECK(numeric_value(PeriodScalar::symbol("c"), 1e-12, {{"c", 2.5}}) == 2.5);
}

TEST_CASE("series ring properties")
{
    test::Random rnd(7);
    const int N = 6;
    for (int i = 0; i < 60; ++i) {
        RAForm f = rnd.form(N), g = rnd.form(N), h = rnd.form(N);
        CHECK(f * g == g * f);
        CHECK((f * g) * h == f * (g * h));
        g.r = f.r;
        g.s = f.s;
        CHECK(f * (g + f) == f * g + f * f);
        CHECK(f * one(N) == f);
        CHECK(L_shift(L_shift(f, 3), -3) == f);
        CHECK(conjugate(conjugate(f)) == f);
        CHECK(conjugate(f * h) == conjugate(f) * conjugate(h));
        CHECK((f - f).series.is_zero());
    }
}

TEST_CASE("series bookkeeping")
{
    const int N = 5;
    const RAForm G4 = eisenstein_G(4, N);
    CHECK(constant_part(G4) == std::map<int, PeriodScalar>{{0, PeriodScalar(ratio(1, 240))}});
    CHECK(constant_part(G4 + G4).at(0) == PeriodScalar(ratio(1, 120)));
    const RAForm L = L_shift(one(N), 1);
    CHECK(L == L_form(N));
    CHECK(L.r == -1);
    CHECK(L.s == -1);
    CHECK(L * L_shift(one(N), -1) == one(N));
    CHECK(L * L == RAForm(-2, -2, L_shift(one(N), 2).series));
    const RAForm LG4 = L_shift(G4, 1);
    CHECK(LG4.r == 3);
    CHECK(LG4.s == -1);
    CHECK(pole_order(g2_star(N)) == -1);
    CHECK(pole_order(G4) == 0);
    CHECK(pole_order(real_eisenstein(2, 2, N)) == -4);
    CHECK(pole_order(RAForm(0, 0, BiSeries(N))) == kNoPole);
    CHECK(in_filtration(G4, 0));
    CHECK_FALSE(in_filtration(g2_star(N), 0));
    BiSeries qqb(N);
    qqb.add(1, 1, 0, PeriodScalar(1));
    CHECK(constant_part(RAForm(0, 0, qqb)).empty());
    // Terms outside the truncation box are dropped.
    BiSeries q(2);
    q.add(3, 0, 0, PeriodScalar(1));
    CHECK(q.is_zero());
    CHECK(h_degree(G4) == 4);
}

TEST_CASE("json round trip")
{
    test::Random rnd(3);
    for (int i = 0; i < 40; ++i) {
        RAForm f = rnd.form(5);
        f.series.add(0, 0, 0, PeriodScalar::symbol("c") * PeriodScalar::zeta(5));
        CHECK(series_from_json(series_to_json(f)) == f);
        const PeriodScalar s = rnd.scalar();
        CHECK(scalar_from_json(scalar_to_json(s)) == s);
    }
    const json j = series_to_json(real_eisenstein(1, 1, 3));
    CHECK(dump_json(j) == dump_json(series_to_json(series_from_json(j))));
    CHECK(format_double(0.1) == "0.10000000000000001");
}
