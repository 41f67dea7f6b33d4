#include "raqmod/verify.hpp"
#include "raqmod/analysis.hpp"
#include "raqmod/equivariant.hpp"
#include "raqmod/errors.hpp"
#include "raqmod/forms.hpp"
#include "raqmod/lattice.hpp"
#include "raqmod/operators.hpp"
#include "raqmod/primitives.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace raqmod {

bool VerifyReport::passed() const
{
    for (const auto& c : checks)
        if (!c.passed)
            return false;
    return !checks.empty();
}

json report_to_json(const VerifyReport& r)
{
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back(json{{"id", c.id},
                              {"status", c.passed ? "pass" : "fail"},
                              {"kind", c.exact ? "exact" : "numeric"},
                              {"measured", c.measured},
                              {"threshold", c.threshold},
                              {"detail", c.detail}});
    return json{{"suite", r.suite}, {"status", r.passed() ? "pass" : "fail"}, {"seconds", r.seconds}, {"checks", checks}};
}

namespace {

const cplx kZ0(0.3, 1.1);

std::string point_label(cplx z)
{
    std::ostringstream os;
    os << z.real() << "+" << z.imag() << "i";
    return os.str();
}

int pick(int value, int fallback) { return value >= 0 ? value : fallback; }
double pick(double value, double fallback) { return value >= 0 ? value : fallback; }

// ---------------------------------------------------------------- checks

std::size_t diff_terms(const RAForm& a, const RAForm& b)
{
    if (a.r != b.r || a.s != b.s)
        return static_cast<std::size_t>(-1);
    return (a.series - b.series).size();
}

Check exact(const std::string& id, const RAForm& lhs, const RAForm& rhs)
{
    Check c;
    c.id = id;
    c.exact = true;
    if (lhs.r != rhs.r || lhs.s != rhs.s) {
        c.measured = -1;
        std::ostringstream os;
        os << "weights (" << lhs.r << "," << lhs.s << ") vs (" << rhs.r << "," << rhs.s << ")";
        c.detail = os.str();
        return c;
    }
    c.measured = static_cast<double>(diff_terms(lhs, rhs));
    c.passed = c.measured == 0;
    if (!c.passed)
        c.detail = std::to_string(static_cast<long>(c.measured)) + " differing terms";
    return c;
}

Check numeric(const std::string& id, double measured, double threshold, const std::string& detail = "")
{
    Check c;
    c.id = id;
    c.exact = false;
    c.measured = measured;
    c.threshold = threshold;
    c.passed = std::isfinite(measured) && measured < threshold;
    c.detail = detail;
    return c;
}

Check flag(const std::string& id, bool ok, const std::string& detail = "")
{
    Check c;
    c.id = id;
    c.exact = true;
    c.passed = ok;
    c.measured = ok ? 0 : 1;
    c.detail = detail;
    return c;
}

template <class Ex, class F>
Check expect_throw(const std::string& id, F&& f)
{
    try {
        f();
    } catch (const Ex& e) {
        return flag(id, true, e.what());
    } catch (const std::exception& e) {
        return flag(id, false, std::string("wrong exception: ") + e.what());
    }
    return flag(id, false, "no exception");
}

// Property over random samples: counts failing samples.
struct Property {
    explicit Property(std::string name) : id(std::move(name)) {}

    std::string id;
    int samples = 0;
    int failures = 0;
    std::string first;

    void record(bool ok, const std::string& what)
    {
        ++samples;
        if (!ok && failures++ == 0)
            first = what;
    }
    Check done() const
    {
        Check c;
        c.id = id;
        c.exact = true;
        c.measured = failures;
        c.passed = failures == 0 && samples > 0;
        c.detail = std::to_string(samples) + " samples" + (failures ? "; first failure: " + first : "");
        return c;
    }
};

bool same(const RAForm& a, const RAForm& b) { return diff_terms(a, b) == 0; }

// ---------------------------------------------------------------- random input

struct Random {
    std::mt19937_64 g;
    explicit Random(std::uint64_t seed) : g(seed) {}
    int uniform(int a, int b) { return std::uniform_int_distribution<int>(a, b)(g); }

    PeriodScalar scalar()
    {
        int p = 0;
        while (p == 0)
            p = uniform(-9, 9);
        const PeriodScalar c(ratio(p, uniform(1, 6)));
        switch (uniform(0, 7)) {
        case 0:
            return c * PeriodScalar::zeta(3);
        case 1:
            return c * PeriodScalar::zeta(5);
        default:
            return c;
        }
    }

    BiSeries series(int N, int terms, int kmin, int kmax)
    {
        BiSeries s(N);
        for (int t = 0; t < terms; ++t)
            s.add(uniform(0, N), uniform(0, N), uniform(kmin, kmax), scalar());
        return s;
    }

    RAForm form(int N, int terms = 6)
    {
        int r = uniform(-3, 5), s = uniform(-3, 5);
        if ((r + s) % 2)
            ++s;
        return RAForm(r, s, series(N, terms, -3, 3));
    }

    RAForm form(int N, int r, int s, int terms = 6) { return RAForm(r, s, series(N, terms, -3, 3)); }
};

// ---------------------------------------------------------------- helpers

RAForm E(int r, int s, int N) { return named_form("E:" + std::to_string(r) + "," + std::to_string(s), N); }
RAForm G(int k, int N) { return named_form("G" + std::to_string(k), N); }
RAForm Gbar(int k, int N) { return conjugate(G(k, N)); }
RAForm times(const Rational& q, const RAForm& f) { return scale(f, q); }
RAForm shift_eig(const RAForm& f, long lambda) { return laplace(f) + scale(f, Rational(lambda)); }

// ---------------------------------------------------------------- suites

void suite_sl2(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 10);
    Random rnd(o.seed);
    Property comm{"[del,dbar]=h"}, hdel{"[h,del]=2del"}, hdbar{"[h,dbar]=-2dbar"}, dL{"[del,L]=0"},
        dbL{"[dbar,L]=0"}, leib{"leibniz_del"}, leibb{"leibniz_dbar"}, dzc{"del=L*dz+r"}, dzbc{"dbar=-L*dzbar+s"},
        ker{"del(L^-r g(qbar))=0"}, conj{"conj(del f)=dbar(conj f)"};
    for (int i = 0; i < o.samples; ++i) {
        const RAForm f = rnd.form(N), g = rnd.form(N);
        const std::string tag = "sample " + std::to_string(i);
        comm.record(same(del(dbar(f)) - dbar(del(f)), h_op(f)), tag);
        hdel.record(same(h_op(del(f)) - del(h_op(f)), times(2, del(f))), tag);
        hdbar.record(same(h_op(dbar(f)) - dbar(h_op(f)), times(-2, dbar(f))), tag);
        dL.record(same(del(L_shift(f, 1)), L_shift(del(f), 1)), tag);
        dbL.record(same(dbar(L_shift(f, 1)), L_shift(dbar(f), 1)), tag);
        leib.record(same(del(f * g), del(f) * g + f * del(g)), tag);
        leibb.record(same(dbar(f * g), dbar(f) * g + f * dbar(g)), tag);
        dzc.record(same(del(f), RAForm(f.r + 1, f.s - 1, dz(f).L_shift(1) + f.series * Rational(f.r))), tag);
        dzbc.record(same(dbar(f), RAForm(f.r - 1, f.s + 1, -dzbar(f).L_shift(1) + f.series * Rational(f.s))), tag);
        BiSeries anti(N);
        for (int n = 0; n <= N; ++n)
            if (rnd.uniform(0, 2) == 0)
                anti.add(0, n, -f.r, rnd.scalar());
        ker.record(del(RAForm(f.r, f.s, anti)).series.is_zero(), tag);
        conj.record(same(conjugate(del(f)), dbar(conjugate(f))), tag);
    }
    for (const auto* p : {&comm, &hdel, &hdbar, &dL, &dbL, &leib, &leibb, &dzc, &dzbc, &ker, &conj})
        rep.checks.push_back(p->done());
}

void suite_laplace_ops(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 10);
    Random rnd(o.seed + 1);
    Property dLL{"(Delta+w)Lf=L*Delta f"}, cd{"[del,Delta]=0"}, cdb{"[dbar,Delta]=0"}, fact{"Delta=-dbar*del+r(s-1)"},
        fact2{"Delta=-del*dbar+s(r-1)"}, conj{"conj(Delta f)=Delta(conj f)"};
    for (int i = 0; i < o.samples; ++i) {
        const RAForm f = rnd.form(N);
        const std::string tag = "sample " + std::to_string(i);
        const RAForm Lf = L_shift(f, 1);
        dLL.record(same(shift_eig(Lf, Lf.r + Lf.s), L_shift(laplace(f), 1)), tag);
        cd.record(same(del(laplace(f)), laplace(del(f))), tag);
        cdb.record(same(dbar(laplace(f)), laplace(dbar(f))), tag);
        fact.record(same(laplace(f), scale(f, Rational(f.r * (f.s - 1))) - dbar(del(f))), tag);
        fact2.record(same(laplace(f), scale(f, Rational(f.s * (f.r - 1))) - del(dbar(f))), tag);
        conj.record(same(conjugate(laplace(f)), laplace(conjugate(f))), tag);
    }
    for (const auto* p : {&dLL, &cd, &cdb, &fact, &fact2, &conj})
        rep.checks.push_back(p->done());
    // Delta(L^k f) = -k(n-k-1) L^k f for holomorphic f of weight n.
    Property eig{"Delta(L^k G_n)=-k(n-k-1)L^k G_n"}, hol{"Delta(G_n)=0"};
    for (int n : {4, 6, 8, 10})
        for (int k = -2; k <= 4; ++k) {
            const RAForm f = L_shift(G(n, N), k);
            eig.record(same(laplace(f), scale(f, Rational(-k * (n - k - 1)))),
                       "n=" + std::to_string(n) + " k=" + std::to_string(k));
            if (k == 0)
                hol.record(laplace(f).series.is_zero(), "n=" + std::to_string(n));
        }
    rep.checks.push_back(eig.done());
    rep.checks.push_back(hol.done());
}

void suite_ramanujan(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 20);
    const RAForm m = named_form("m", N), G4 = G(4, N), G6 = G(6, N), D = named_form("delta", N);
    rep.checks.push_back(exact("del m = -m^2 + 20/3 L^2 G4", del(m), times(-1, m * m) + times(Rational(20, 3), L_shift(G4, 2))));
    rep.checks.push_back(exact("del G4 = -4 m G4 + 7/5 L G6", del(G4), times(-4, m * G4) + times(Rational(7, 5), L_shift(G6, 1))));
    rep.checks.push_back(
        exact("del G6 = -6 m G6 + 800/7 L G4^2", del(G6), times(-6, m * G6) + times(Rational(800, 7), L_shift(G4 * G4, 1))));
    rep.checks.push_back(exact("theta(Delta) = 0", serre_theta(D), RAForm(14, 0, BiSeries(N))));
    rep.checks.push_back(exact("del Delta = -12 m Delta", del(D), times(-12, m * D)));
    rep.checks.push_back(exact("theta(G4) = 7/10 G6", serre_theta(G4), times(Rational(7, 10), G6)));
    rep.checks.push_back(exact("theta(G6) = 400/7 G4^2", serre_theta(G6), times(Rational(400, 7), G4 * G4)));
    rep.checks.push_back(exact("dbar m = 1", dbar(m), one(N)));
    const bool tau = D.series.coeff(1, 0, 0) == PeriodScalar(1) && D.series.coeff(2, 0, 0) == PeriodScalar(-24) &&
                     D.series.coeff(3, 0, 0) == PeriodScalar(252);
    rep.checks.push_back(flag("tau(1..3) = 1, -24, 252", tau));
}

void suite_eisenstein_system(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 16);
    for (int w : {2, 4, 6, 8}) {
        const std::string W = "w=" + std::to_string(w);
        Property hol{W + " del system"}, anti{W + " dbar system"}, lap{W + " Delta E = -w E"},
            conj{W + " conj E_{r,s} = E_{s,r}"}, cst{W + " constant part"}, pole{W + " pole_order >= -w"},
            rat{W + " E - E^0 rational"};
        const Rational Bw2 = bernoulli(w + 2);
        for (int r = 0; r <= w; ++r) {
            const int s = w - r;
            const std::string tag = "(" + std::to_string(r) + "," + std::to_string(s) + ")";
            const RAForm e = E(r, s, N);
            const RAForm hr = s == 0 ? L_shift(G(w + 2, N), 1) : RAForm(r + 1, s - 1, BiSeries(N));
            const RAForm ar = r == 0 ? L_shift(Gbar(w + 2, N), 1) : RAForm(r - 1, s + 1, BiSeries(N));
            hol.record(same(s == 0 ? del(e) : del(e) - times(r + 1, E(r + 1, s - 1, N)), hr), tag);
            anti.record(same(r == 0 ? dbar(e) : dbar(e) - times(s + 1, E(r - 1, s + 1, N)), ar), tag);
            lap.record(same(laplace(e), times(-w, e)), tag);
            conj.record(same(conjugate(e), E(s, r, N)), tag);
            // -B_{w+2}/(2(w+1)(w+2)) L + (-1)^s (w!/2^{w+1}) C(w,r) zeta(w+1) L^{-w}
            Rational zc = Rational(factorial(w) * binomial(w, r)) / Rational(Integer(1) << (w + 1));
            if (s % 2)
                zc = -zc;
            std::map<int, PeriodScalar> want{{1, PeriodScalar(-Bw2 / Rational(2 * (w + 1) * (w + 2)))},
                                             {-w, PeriodScalar(Monomial::zeta(w + 1), zc)}};
            cst.record(constant_part(e) == want, tag);
            pole.record(pole_order(e) >= -w, tag);
            bool rational = true;
            const RAForm rest = e - real_eisenstein_constant(r, s, N);
            for (const auto& [key, c] : rest.series.terms())
                rational = rational && c.is_rational();
            rat.record(rational, tag);
        }
        for (const auto* p : {&hol, &anti, &lap, &conj, &cst, &pole, &rat})
            rep.checks.push_back(p->done());
    }
}

void suite_primitive_solver(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 24);
    Random rnd(o.seed + 2);
    Property back{"back-substitution"}, filt{"filtration P^{1-r} -> P^{-r}"};
    for (int i = 0; i < o.samples; ++i) {
        const std::string tag = "sample " + std::to_string(i);
        const int r = rnd.uniform(-2, 6);
        int s = rnd.uniform(-2, 4);
        if ((r + s) % 2)
            ++s;
        RAForm f;
        if (i % 2 == 0) {
            f = del(rnd.form(std::min(N, 10), r, s, 8));  // solvable by construction
        } else {
            // In P^{1-r}: no lower block, and no (0,n) terms at k = -r.
            f = RAForm(r + 1, s - 1, rnd.series(std::min(N, 10), 8, 1 - r, 3 - r));
        }
        const auto sol = solve_del_primitive(f, r, false);
        back.record(sol.ok() && same(del(sol.primitive), f), tag);
        if (i % 2 == 1)
            filt.record(pole_order(sol.primitive) >= -r, tag);
    }
    rep.checks.push_back(back.done());
    rep.checks.push_back(filt.done());

    {
        BiSeries lq(N);
        lq.add(1, 0, 1, PeriodScalar(1));
        BiSeries want(N);
        want.add(1, 0, 0, PeriodScalar(Rational(1, 2)));
        want.add(1, 0, -1, PeriodScalar(Rational(-1, 2)));
        want.add(1, 0, -2, PeriodScalar(Rational(1, 4)));
        rep.checks.push_back(
            exact("primitive of L q at r=2", solve_del_primitive(RAForm(3, -1, lq), 2).primitive, RAForm(2, 0, want)));
    }

    // L G4: the combinatorial primitive agrees with E_{2,0} off the kernel
    // positions (0,n) at k = -2; the dbar system supplies those, and modularity
    // fixes the one remaining constant.
    const RAForm E20 = E(2, 0, N);
    const RAForm prim = solve_del_primitive(L_shift(G(4, N), 1), 2).primitive;
    {
        bool ok = true;
        const RAForm diff = prim - E20;
        for (const auto& [key, c] : diff.series.terms())
            ok = ok && key.m == 0 && key.k == -2;
        rep.checks.push_back(flag("L G4 primitive = E_{2,0} off kernel positions", ok));
    }
    rep.checks.push_back(exact("del(L G4 primitive) = L G4", del(prim), L_shift(G(4, N), 1)));
    const FamilySolution fam = solve_equivariant_system(eisenstein_system(2, N), "c");
    const SymbolFit fit =
        fit_symbol_by_modularity(fam.members.at({2, 0}), "c", {kZ0, cplx(0.1, 1.3), cplx(-0.2, 1.05)});
    const double z3 = zeta_value(3);
    rep.checks.push_back(numeric("modular constant = zeta(3)/4", std::abs(fit.value - z3 / 4), 1e-8,
                                 "fitted " + format_double(fit.value)));
    {
        Check c = flag("L G4 primitive completed = E_{w-r,r}", true);
        for (const auto& [rs, f] : fam.members) {
            const Check e = exact("", substitute(f, "c", PeriodScalar::zeta(3) * Rational(1, 4)), E(rs.first, rs.second, N));
            if (!e.passed) {
                c.passed = false;
                c.measured = 1;
                c.detail = "member (" + std::to_string(rs.first) + "," + std::to_string(rs.second) + "): " + e.detail;
            }
        }
        rep.checks.push_back(c);
    }
    rep.checks.push_back(expect_throw<ObstructionViolated>("L G2* has no primitive",
                                                          [&] { solve_del_primitive(L_shift(g2_star(N), 1), 0); }));
    const auto ld = solve_del_primitive(L_shift(named_form("delta", N), 1), 10, false);
    rep.checks.push_back(flag("L Delta: combinatorial primitive exists", ld.ok()));
    const double res_ld = modularity_residual(ld.primitive, kZ0);
    {
        Check c = numeric("L Delta primitive S-residual > 1e-2", 1e-2 / res_ld, 1.0,
                          "residual " + format_double(res_ld));
        c.measured = res_ld;
        c.threshold = 1e-2;
        c.passed = res_ld > 1e-2;
        rep.checks.push_back(c);
    }
    rep.checks.push_back(numeric("E_{2,0} S-residual", modularity_residual(E20, kZ0), 1e-8));
}

struct DoubleEis {
    DoubleEisensteinFamily f0, f1, f2;
    explicit DoubleEis(int N)
        : f0(build_double_eisenstein(1, 1, 0, N)), f1(build_double_eisenstein(1, 1, 1, N)),
          f2(build_double_eisenstein(1, 1, 2, N))
    {
    }
};

// Pins `sym` from target, then checks exact equality with the substitution.
Check matched(const std::string& id, const RAForm& sol, const RAForm& target, const std::string& sym,
              std::map<std::string, PeriodScalar>& values)
{
    if (!values.count(sym)) {
        const auto m = match_constants({sol}, {target}, {sym});
        if (m.count(sym))
            values.emplace(sym, m.at(sym));
    }
    RAForm s = sol;
    if (values.count(sym))
        s = substitute(sol, sym, values.at(sym));
    Check c = exact(id, s, target);
    if (values.count(sym))
        c.detail += (c.detail.empty() ? "" : "; ") + sym + " = " + to_string(values.at(sym));
    return c;
}

void suite_double_eis(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 12);
    const DoubleEis d(N);
    auto e = [N](int r, int s) { return E(r, s, N); };
    std::map<std::string, PeriodScalar> values;
    const auto& F0 = d.f0.members;
    const std::string c0 = "c_{1,1,0}";
    rep.checks.push_back(matched("F0_{0,4} = 1/2 E02^2", F0.at({0, 4}), times(Rational(1, 2), e(0, 2) * e(0, 2)), c0, values));
    rep.checks.push_back(matched("F0_{1,3} = E02 E11", F0.at({1, 3}), e(0, 2) * e(1, 1), c0, values));
    rep.checks.push_back(
        matched("F0_{2,2} = E20 E02 + 1/2 E11^2", F0.at({2, 2}), e(2, 0) * e(0, 2) + times(Rational(1, 2), e(1, 1) * e(1, 1)), c0, values));
    rep.checks.push_back(matched("F0_{3,1} = E20 E11", F0.at({3, 1}), e(2, 0) * e(1, 1), c0, values));
    rep.checks.push_back(matched("F0_{4,0} = 1/2 E20^2", F0.at({4, 0}), times(Rational(1, 2), e(2, 0) * e(2, 0)), c0, values));
    rep.checks.push_back(matched("F2_{0,0} = L^2 (E20 E02 - 1/4 E11^2)", d.f2.members.at({0, 0}),
                                 L_shift(e(2, 0) * e(0, 2) - times(Rational(1, 4), e(1, 1) * e(1, 1)), 2), "c_{1,1,2}",
                                 values));
    const auto& F1 = d.f1.members;
    const RAForm G4 = G(4, N), G4b = Gbar(4, N);
    rep.checks.push_back(exact("del F1_{2,0} = 2 L^2 G4 E11", del(F1.at({2, 0})), times(2, L_shift(G4 * e(1, 1), 2))));
    rep.checks.push_back(exact("dbar F1_{0,2} = 2 L^2 G4bar E11", dbar(F1.at({0, 2})), times(2, L_shift(G4b * e(1, 1), 2))));
    for (int k = 0; k <= 2; ++k) {
        const auto bad = check_equivariant_system(double_eisenstein_system(1, 1, k, N),
                                                  k == 0 ? d.f0.members : k == 1 ? d.f1.members : d.f2.members);
        rep.checks.push_back(flag("F" + std::to_string(k) + " satisfies both systems", bad.empty(),
                                  bad.empty() ? "" : bad.front()));
    }
    {
        std::string names;
        for (const auto* f : {&d.f0, &d.f1, &d.f2})
            for (const auto& c : f->undetermined_constants)
                names += (names.empty() ? "" : ", ") + c;
        rep.checks.push_back(flag("one free constant per family", d.f0.undetermined_constants.size() == 1 &&
                                                                      d.f1.undetermined_constants.size() == 1 &&
                                                                      d.f2.undetermined_constants.size() == 1,
                                  names));
    }
    rep.checks.push_back(expect_throw<CuspCorrectionRequired>("(2,3,0) needs a cusp correction",
                                                             [&] { build_double_eisenstein(2, 3, 0, N); }));
}

void suite_laplace_table(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 12);
    const DoubleEis d(N);
    auto e = [N](int r, int s) { return E(r, s, N); };
    const RAForm G4 = G(4, N), G4b = Gbar(4, N);
    const auto& F1 = d.f1.members;
    rep.checks.push_back(exact("(Delta+2) F1_{0,2} = -4 L^2 G4bar E20", shift_eig(F1.at({0, 2}), 2),
                               times(-4, L_shift(G4b * e(2, 0), 2))));
    rep.checks.push_back(exact("(Delta+2) F1_{1,1} = -4 L^3 G4 G4bar", shift_eig(F1.at({1, 1}), 2),
                               times(-4, L_shift(G4 * G4b, 3))));
    rep.checks.push_back(exact("(Delta+2) F1_{2,0} = -4 L^2 G4 E02", shift_eig(F1.at({2, 0}), 2),
                               times(-4, L_shift(G4 * e(0, 2), 2))));
    rep.checks.push_back(
        exact("Delta F2_{0,0} = -L^4 G4 G4bar", laplace(d.f2.members.at({0, 0})), times(-1, L_shift(G4 * G4b, 4))));
    rep.checks.push_back(exact("(Delta+4) F0_{2,2} = -L^2 G4 G4bar", shift_eig(d.f0.members.at({2, 2}), 4),
                               times(-1, L_shift(G4 * G4b, 2))));
    rep.checks.push_back(
        exact("(Delta+2) E11^2 = -8 E02 E20", shift_eig(e(1, 1) * e(1, 1), 2), times(-8, e(0, 2) * e(2, 0))));
    rep.checks.push_back(exact("Delta(E20 E02) = -E11^2 - L^2 G4 G4bar", laplace(e(2, 0) * e(0, 2)),
                               times(-1, e(1, 1) * e(1, 1)) - L_shift(G4 * G4b, 2)));
    const RAForm C = L_shift(F1.at({1, 1}), 1) - times(4, L_shift(e(2, 0) * e(0, 2), 2));
    Check c = exact("(Delta+2)(L F1_{1,1} - 4 L^2 E20 E02) = 4 L^2 E11^2", shift_eig(C, 2),
                    times(4, L_shift(e(1, 1) * e(1, 1), 2)));
    c.detail += (c.detail.empty() ? "" : "; ") + std::string("constants tracked: c_{1,1,1}");
    rep.checks.push_back(c);
}

void suite_zagier(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 24);
    const int M = pick(o.cutoff, 50);
    const double tol = pick(o.tolerance, 5e-3);
    const GraphSpec g = graph_c111();
    const RAForm model = times(Rational(2, 3), L_shift(E(2, 2, N), 2));
    const double z3 = zeta_value(3);
    std::vector<std::pair<cplx, double>> samples;
    for (cplx z : {cplx(0.0, 1.0), kZ0, cplx(0.1, 1.3)}) {
        const LatticeResult lr = graph_sum(g, z, M, o.jobs);
        const double exact_value = eval_series(model, z).real() + z3;
        samples.push_back({z, lr.value});
        if (z != cplx(0.1, 1.3))
            rep.checks.push_back(numeric("C111(" + point_label(z) + ")",
                                         std::abs(lr.value - exact_value) / std::abs(lr.value), tol,
                                         "lattice " + format_double(lr.value) + " +- " +
                                             format_double(lr.error_estimate) + ", closed form " +
                                             format_double(exact_value)));
    }
    const AffineFit fit = fit_affine(samples, {L_shift(E(2, 2, N), 2)});
    rep.checks.push_back(numeric("fit coefficient of L^2 E22 = 2/3", std::abs(fit.coefficients[0] - 2.0 / 3.0),
                                 10 * tol, "fitted " + format_double(fit.coefficients[0])));
    rep.checks.push_back(numeric("fit constant = zeta(3)", std::abs(fit.constant - z3) / z3, 10 * tol,
                                 "fitted " + format_double(fit.constant)));
    // Edge renumbering and reorientation; cheap cutoff.
    const int m = std::min(M, 16);
    const double base = graph_sum(g, kZ0, m, o.jobs).value;
    GraphSpec flipped = g;
    std::swap(flipped.edges[0].tail, flipped.edges[0].head);
    GraphSpec c211 = graph_c211(), c211p = c211;
    std::swap(c211p.edges[0], c211p.edges[3]);
    std::swap(c211p.edges[1].tail, c211p.edges[1].head);
    rep.checks.push_back(numeric("orientation flip", std::abs(graph_sum(flipped, kZ0, m, o.jobs).value - base) / base, 1e-12));
    const double v211 = graph_sum(c211, kZ0, m, o.jobs).value;
    rep.checks.push_back(flag("edge renumbering bit-identical", graph_sum(c211p, kZ0, m, o.jobs).value == v211));
    rep.checks.push_back(flag("--jobs independence bit-identical", graph_sum(c211, kZ0, m, 3).value == v211));
}

void suite_c211(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 24);
    const int M = pick(o.cutoff, 50);
    const std::vector<cplx> pts{kZ0, {0.1, 1.3}, {-0.2, 1.05}, {0.45, 0.95}, {0.0, 1.6}};
    const auto fam = build_double_eisenstein(1, 1, 1, N);
    const RAForm F11 = fam.members.at({1, 1});
    const SymbolFit cf = fit_symbol_by_modularity(F11, "c_{1,1,1}", pts);
    rep.checks.push_back(numeric("F1_{1,1} modular after fixing c_{1,1,1}", cf.max_residual, 1e-10,
                                 "c_{1,1,1} = " + format_double(cf.value)));
    EvalConfig cfg;
    cfg.symbols["c_{1,1,1}"] = cf.value;
    const std::vector<RAForm> model{L_shift(F11, 1) - times(4, L_shift(E(2, 0, N) * E(0, 2, N), 2)),
                                    L_shift(E(3, 3, N), 3)};
    std::vector<std::pair<cplx, double>> samples;
    for (cplx z : pts)
        samples.push_back({z, graph_sum(graph_c211(), z, M, o.jobs).value});
    const AffineFit fit = fit_affine(samples, model, cfg);
    rep.checks.push_back(numeric("coefficient 1 = 4", std::abs(fit.coefficients[0] - 4.0), 0.05,
                                 "fitted " + format_double(fit.coefficients[0])));
    rep.checks.push_back(numeric("coefficient 2 = 1/25", std::abs(fit.coefficients[1] - 0.04), 0.002,
                                 "fitted " + format_double(fit.coefficients[1])));
    // Constant implied by each point with the fitted coefficients.
    double mean = 0.0, var = 0.0;
    std::vector<double> consts;
    for (std::size_t i = 0; i < samples.size(); ++i)
        consts.push_back(fit.constant + fit.residuals[i]);
    for (double c : consts)
        mean += c / consts.size();
    for (double c : consts)
        var += (c - mean) * (c - mean) / (consts.size() - 1);
    rep.checks.push_back(numeric("residual constant std dev", std::sqrt(var), 1e-2,
                                 "mean constant " + format_double(mean)));
}

void suite_petersson_orth(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 24);
    const double tol = pick(o.tolerance, 1e-4);
    const QuadratureGrid grid{64, 64, 10.0};
    const RAForm D = named_form("delta", N);
    const PeterssonResult dd = petersson(D, D, 12, grid, {}, o.jobs);
    const cplx oracle = petersson_adaptive(D, D, 12, grid.y_max, 1e-10);
    rep.checks.push_back(numeric("<Delta,Delta> vs adaptive oracle", std::abs(dd.value - oracle) / std::abs(oracle), 1e-6,
                                 "<Delta,Delta> = " + format_double(dd.value.real())));
    // del(L G4 G8) has weights (12,-2) and cannot pair with Delta.
    rep.checks.push_back(expect_throw<DegreeMismatch>("<del(L G4 G8), Delta> is not defined", [&] {
        petersson(del(L_shift(G(4, N) * G(8, N), 1)), D, 12, grid);
    }));
    // F = L G4 G8 E_{0,2} lies in M_{11,1}, so del F lies in M_{12,0}.
    const RAForm F = L_shift(G(4, N) * G(8, N) * E(0, 2, N), 1);
    const PeterssonResult orth = petersson(del(F), D, 12, grid, {}, o.jobs);
    rep.checks.push_back(numeric("<del(L G4 G8 E02), Delta> / scale", std::abs(orth.value) / orth.abs_integral, tol,
                                 "value " + format_double(std::abs(orth.value)) + ", scale " +
                                     format_double(orth.abs_integral)));
    const PeterssonResult ctrl = petersson(G(10, N) * E(2, 0, N), D, 12, grid, {}, o.jobs);
    rep.checks.push_back(numeric("control <G10 E20, Delta> / scale is not small",
                                 tol / (std::abs(ctrl.value) / ctrl.abs_integral), 1.0,
                                 "ratio " + format_double(std::abs(ctrl.value) / ctrl.abs_integral)));
    for (int m = 1; m <= 3; ++m) {
        const PeterssonResult pm = petersson(D, L_shift(D, m), 12 - m, grid, {}, o.jobs);
        const cplx want = std::pow(-2.0 * M_PI, m) * dd.value;
        rep.checks.push_back(numeric("<Delta, L^" + std::to_string(m) + " Delta> = (-2 pi)^m <Delta,Delta>",
                                     std::abs(pm.value - want) / std::abs(want), 1e-8));
    }
    const RAForm Db = conjugate(D);
    const PeterssonResult bb = petersson(Db, Db, 12, grid, {}, o.jobs);
    rep.checks.push_back(numeric("<conj f, conj g> = conj <f,g>", std::abs(bb.value - std::conj(dd.value)) / std::abs(dd.value),
                                 1e-8));
    rep.checks.push_back(flag("<Delta,Delta> > 0", dd.value.real() > 0));
}

void suite_orthogonality(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 24);
    const double tol = pick(o.tolerance, 1e-3);
    const QuadratureGrid grid{64, 64, 10.0};
    const RAForm D = named_form("delta", N);
    const double dd = petersson(D, D, 12, grid, {}, o.jobs).value.real();
    std::map<std::pair<int, int>, double> alpha;
    std::string detail;
    double amax = 0.0;
    for (auto [a2, b2] : std::vector<std::pair<int, int>>{{2, 8}, {8, 2}, {4, 6}, {6, 4}}) {
        const cplx v = petersson(G(a2 + 2, N) * E(b2, 0, N), D, 12, grid, {}, o.jobs).value / dd;
        alpha[{a2, b2}] = v.real();
        amax = std::max(amax, std::abs(v));
        detail += "alpha^{" + std::to_string(a2) + "," + std::to_string(b2) + "} = " + format_double(v.real()) +
                  (std::abs(v.imag()) > 1e-12 * std::abs(v) ? " + " + format_double(v.imag()) + "i" : "") + "; ";
    }
    const double comb = 9 * (alpha[{2, 8}] - alpha[{8, 2}]) + 14 * (alpha[{4, 6}] - alpha[{6, 4}]);
    rep.checks.push_back(numeric("9(a28 - a82) + 14(a46 - a64)", std::abs(comb) / amax, tol, detail));
}

void suite_lattice_eisenstein(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 24);
    const int M = pick(o.cutoff, 4000);
    const double tol = pick(o.tolerance, 1e-5);
    for (auto [r, s] : std::vector<std::pair<int, int>>{{1, 1}, {2, 0}, {2, 2}, {3, 1}}) {
        const LatticeResult lr = eisenstein_lattice(r, s, kZ0, M, o.jobs);
        const cplx lat(lr.value, lr.imag_value);
        const cplx ser = eval_series(E(r, s, N), kZ0);
        rep.checks.push_back(numeric("E_{" + std::to_string(r) + "," + std::to_string(s) + "} lattice vs series",
                                     std::abs(lat - ser) / std::abs(ser), tol,
                                     "lattice " + format_double(lat.real()) + (lat.imag() != 0 ? " + " + format_double(lat.imag()) + "i" : "") +
                                         ", series " + format_double(ser.real())));
    }
    const int m = std::min(M, 400);
    const LatticeResult a = eisenstein_lattice(2, 0, kZ0, m, o.jobs), b = eisenstein_lattice(0, 2, kZ0, m, o.jobs);
    rep.checks.push_back(numeric("E_{2,0} = conj E_{0,2} (lattice)",
                                 std::abs(cplx(a.value, a.imag_value) - std::conj(cplx(b.value, b.imag_value))),
                                 1e-12 + a.error_estimate));
    const LatticeResult t = eisenstein_lattice(1, 1, kZ0 + 1.0, m, o.jobs), u = eisenstein_lattice(1, 1, kZ0, m, o.jobs);
    rep.checks.push_back(numeric("T-invariance (lattice)", std::abs(t.value - u.value), 3 * (t.error_estimate + u.error_estimate)));
}

void suite_equivariant(VerifyReport& rep, const VerifyOptions& o)
{
    const int N = pick(o.order, 6);
    for (int w : {2, 4}) {
        const auto fam = eisenstein_family(w, N).members;
        const FramePoly xy = frame_change(section_from_family(fam, N), Frame::XY);
        rep.checks.push_back(flag("w=" + std::to_string(w) + " frame round trip",
                                  frame_change(frame_change(xy, Frame::Modular), Frame::XY) == xy));
        std::map<std::pair<int, int>, RAForm> top, bottom;
        for (int r = 0; r <= w; ++r) {
            top.emplace(std::make_pair(r, w - r), RAForm(r, w - r, BiSeries(N)));
            bottom.emplace(std::make_pair(r, w - r), RAForm(r, w - r, BiSeries(N)));
        }
        top.at({w, 0}).series = G(w + 2, N).series;
        bottom.at({0, w}).series = -Gbar(w + 2, N).series;
        rep.checks.push_back(flag("w=" + std::to_string(w) + " dz section = G (X - zY)^w",
                                  frame_is_zero(frame_sub(frame_dz(xy), frame_change(section_from_family(top, N), Frame::XY)))));
        rep.checks.push_back(flag("w=" + std::to_string(w) + " dzbar section = -Gbar (X - zbar Y)^w",
                                  frame_is_zero(frame_sub(frame_dzbar(xy),
                                                          frame_change(section_from_family(bottom, N), Frame::XY)))));
    }
    // delta^k((X - zY)^{2m} (x) A)_{r,s} = L^k C(2m,k) C(s+k,k) A_{r-2m+k,s+k}
    Property closed{"delta^k closed form"};
    for (int m = 1; m <= 3; ++m)
        for (int k = 0; k <= 4; ++k) {
            std::map<std::pair<int, int>, RAForm> P{{{2 * m, 0}, RAForm(2 * m, 0, one(N).series)}};
            const auto A = eisenstein_family(4, N).members;
            FramePoly F = frame_change(delta_proj(k, section_from_family(P, N), section_from_family(A, N)), Frame::Modular);
            F.ipi_power += k;
            bool ok = true;
            if (k > 2 * m) {
                ok = frame_is_zero(F);
            } else {
                for (const auto& [rs, f] : family_from_section(F)) {
                    const int ra = rs.first - 2 * m + k, sa = rs.second + k;
                    BiSeries want(N);
                    if (ra >= 0 && sa >= 0 && ra + sa == 4)
                        want = L_shift(A.at({ra, sa}), k).series *
                               Rational(binomial(2 * m, k) * binomial(rs.second + k, k));
                    ok = ok && f.series == want;
                }
            }
            closed.record(ok, "m=" + std::to_string(m) + " k=" + std::to_string(k));
        }
    rep.checks.push_back(closed.done());
}

using SuiteFn = void (*)(VerifyReport&, const VerifyOptions&);

const std::map<std::string, SuiteFn>& registry()
{
    static const std::map<std::string, SuiteFn> r{
        {"sl2", suite_sl2},
        {"laplace-ops", suite_laplace_ops},
        {"ramanujan", suite_ramanujan},
        {"eisenstein-system", suite_eisenstein_system},
        {"primitive-solver", suite_primitive_solver},
        {"double-eis", suite_double_eis},
        {"laplace-table", suite_laplace_table},
        {"zagier", suite_zagier},
        {"c211", suite_c211},
        {"petersson-orth", suite_petersson_orth},
        {"orthogonality-9-14", suite_orthogonality},
        {"lattice-eisenstein", suite_lattice_eisenstein},
        {"equivariant", suite_equivariant},
    };
    return r;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : registry())
            n.push_back(k);
        return n;
    }();
    return names;
}

VerifyReport run_suite(const std::string& name, const VerifyOptions& opts)
{
    auto it = registry().find(name);
    if (it == registry().end())
        throw InputError("unknown suite '" + name + "'");
    VerifyReport rep;
    rep.suite = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        it->second(rep, opts);
    } catch (const std::exception& e) {
        rep.checks.push_back(flag("suite completed", false, e.what()));
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace raqmod
