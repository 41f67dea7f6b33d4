#include "raqmod/equivariant.hpp"
#include "raqmod/errors.hpp"
#include "raqmod/forms.hpp"
#include "raqmod/operators.hpp"
#include "raqmod/primitives.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace raqmod;

TEST_CASE("primitive of L q")
{
    const int N = 4;
    BiSeries lq(N);
    lq.add(1, 0, 1, PeriodScalar(1));
    const auto sol = solve_del_primitive(RAForm(3, -1, lq), 2);
    CHECK(sol.ok());
    BiSeries want(N);
    want.add(1, 0, 0, PeriodScalar(ratio(1, 2)));
    want.add(1, 0, -1, PeriodScalar(ratio(-1, 2)));
    want.add(1, 0, -2, PeriodScalar(ratio(1, 4)));
    CHECK(sol.primitive == RAForm(2, 0, want));
    CHECK(sol.free_parameters.size() == static_cast<std::size_t>(N + 1));
}

TEST_CASE("primitive solver inverts del on its image")
{
    test::Random rnd(17);
    for (int i = 0; i < 60; ++i) {
        const RAForm F = rnd.form(6);
        const RAForm f = del(F);
        const auto sol = solve_del_primitive(f, F.r);
        CHECK(del(sol.primitive) == f);
        // The solution differs from F by a kernel element L^{-r} g(qbar).
        const RAForm kernel = sol.primitive - F;
        for (const auto& [key, c] : kernel.series.terms()) {
            CHECK(key.m == 0);
            CHECK(key.k == -F.r);
        }
    }
}

TEST_CASE("primitive solver errors")
{
    const int N = 6;
    CHECK_THROWS_AS(solve_del_primitive(L_shift(g2_star(N), 1), 0), ObstructionViolated);
    const auto soft = solve_del_primitive(L_shift(g2_star(N), 1), 0, false);
    CHECK_FALSE(soft.ok());
    CHECK_THROWS_AS(solve_del_primitive(L_shift(eisenstein_G(4, N), 1), 3), WeightError);
    CHECK_THROWS_AS(build_double_eisenstein(2, 3, 0, N), CuspCorrectionRequired);
}

TEST_CASE("equivariant Eisenstein system reproduces the closed form")
{
    const int N = 8;
    for (int w : {2, 4, 6}) {
        const auto fam = solve_equivariant_system(eisenstein_system(w, N), "c");
        REQUIRE(fam.constants == std::vector<std::string>{"c"});
        // The closed form fixes the free constant; then every member agrees.
        const RAForm closed = real_eisenstein(w, 0, N);
        const auto vals = match_constants({fam.members.at({w, 0})}, {closed}, {"c"});
        REQUIRE(vals.count("c") == 1);
        PeriodScalar want(Monomial::zeta(w + 1), Rational(factorial(w)) / Rational(Integer(1) << (w + 1)));
        CHECK(vals.at("c") == want);
        for (const auto& [rs, f] : fam.members)
            CHECK(substitute(f, "c", vals.at("c")) == real_eisenstein(rs.first, rs.second, N));
        CHECK(check_equivariant_system(eisenstein_system(w, N), eisenstein_family(w, N).members).empty());
    }
}

TEST_CASE("double Eisenstein families")
{
    const int N = 6;
    const auto f0 = build_double_eisenstein(1, 1, 0, N);
    CHECK(f0.w == 2);
    CHECK(f0.members.size() == 5);
    CHECK(f0.undetermined_constants == std::vector<std::string>{"c_{1,1,0}"});
    const RAForm E02 = real_eisenstein(0, 2, N);
    const RAForm target = scale(E02 * E02, ratio(1, 2));
    const auto v = match_constants({f0.members.at({0, 4})}, {target}, {"c_{1,1,0}"});
    REQUIRE(v.count("c_{1,1,0}") == 1);
    CHECK(v.at("c_{1,1,0}") == PeriodScalar::zeta(3) * PeriodScalar::zeta(3) * ratio(1, 32));
    const auto f1 = build_double_eisenstein(1, 1, 1, N);
    CHECK(f1.members.size() == 3);
    CHECK(check_equivariant_system(double_eisenstein_system(1, 1, 1, N), f1.members).empty());
}

TEST_CASE("delta projector")
{
    const int N = 4;
    const auto A = eisenstein_family(2, N).members;
    std::map<std::pair<int, int>, RAForm> P{{{2, 0}, RAForm(2, 0, one(N).series)}};
    const FramePoly a = section_from_family(A, N), p = section_from_family(P, N);
    CHECK(frame_is_zero(delta_proj(3, p, a)));
    CHECK(frame_is_zero(delta_proj(3, a, p)));
    // k = 0 is the plain product.
    const auto prod = family_from_section(frame_change(delta_proj(0, p, a), Frame::Modular));
    for (const auto& [rs, f] : prod) {
        const int ra = rs.first - 2;
        if (ra >= 0 && ra + rs.second == 2)
            CHECK(f.series == A.at({ra, rs.second}).series);
        else
            CHECK(f.series.is_zero());
    }
    CHECK(frame_is_zero(section_from_family({}, N)));
    const FramePoly xy = frame_change(a, Frame::XY);
    CHECK(frame_change(xy, Frame::Modular) == a);
}
