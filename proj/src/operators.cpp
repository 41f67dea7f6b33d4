#include "raqmod/operators.hpp"

namespace raqmod {

RAForm del(const RAForm& f)
{
    const int r = f.r;
    BiSeries out = f.series.map_terms([r](const Key& t, const PeriodScalar& c, BiSeries& acc) {
        acc.add_scaled(t.m, t.n, t.k + 1, c, Rational(2 * t.m));
        acc.add_scaled(t.m, t.n, t.k, c, Rational(r + t.k));
    });
    return RAForm(f.r + 1, f.s - 1, std::move(out));
}

RAForm dbar(const RAForm& f)
{
    const int s = f.s;
    BiSeries out = f.series.map_terms([s](const Key& t, const PeriodScalar& c, BiSeries& acc) {
        acc.add_scaled(t.m, t.n, t.k + 1, c, Rational(2 * t.n));
        acc.add_scaled(t.m, t.n, t.k, c, Rational(s + t.k));
    });
    return RAForm(f.r - 1, f.s + 1, std::move(out));
}

RAForm laplace(const RAForm& f)
{
    const int r = f.r, s = f.s;
    BiSeries out = f.series.map_terms([r, s](const Key& t, const PeriodScalar& c, BiSeries& acc) {
        const long m = t.m, n = t.n, k = t.k;
        acc.add_scaled(t.m, t.n, t.k + 2, c, Rational(-4 * m * n));
        acc.add_scaled(t.m, t.n, t.k + 1, c, Rational(-2 * (k * n + k * m + r * n + s * m)));
        acc.add_scaled(t.m, t.n, t.k, c, Rational(-k * (k + r + s - 1)));
    });
    return RAForm(f.r, f.s, std::move(out));
}

RAForm h_op(const RAForm& f) { return scale(f, Rational(f.r - f.s)); }

BiSeries dz(const BiSeries& f)
{
    return f.map_terms([](const Key& t, const PeriodScalar& c, BiSeries& acc) {
        acc.add_scaled(t.m, t.n, t.k - 1, c, Rational(t.k));
        acc.add_scaled(t.m, t.n, t.k, c, Rational(2 * t.m));
    });
}

BiSeries dzbar(const BiSeries& f)
{
    return f.map_terms([](const Key& t, const PeriodScalar& c, BiSeries& acc) {
        acc.add_scaled(t.m, t.n, t.k - 1, c, Rational(-t.k));
        acc.add_scaled(t.m, t.n, t.k, c, Rational(-2 * t.n));
    });
}

RAForm rc_bracket1(const RAForm& f, const RAForm& g)
{
    BiSeries out = dz(f.series) * g.series * Rational(g.r) - f.series * dz(g.series) * Rational(f.r);
    return RAForm(f.r + g.r + 2, f.s + g.s, std::move(out));
}

RAForm rc_bracket2(const RAForm& f, const RAForm& g)
{
    const Rational r1 = f.r, r2 = g.r;
    const BiSeries df = dz(f.series), dg = dz(g.series);
    BiSeries out = dz(df) * g.series * (r2 * (r2 + 1) / 2);
    out -= df * dg * ((r1 + 1) * (r2 + 1));
    out += f.series * dz(dg) * (r1 * (r1 + 1) / 2);
    return RAForm(f.r + g.r + 4, f.s + g.s, std::move(out));
}

RAForm sym_bracket2(const RAForm& f, const RAForm& g)
{
    const Rational r1 = f.r, s1 = f.s, r2 = g.r, s2 = g.s;
    BiSeries out = dz(f.series) * dzbar(g.series) * (s1 * r2);
    out += dzbar(f.series) * dz(g.series) * (s2 * r1);
    out -= f.series * dz(dzbar(g.series)) * (r1 * s1);
    out -= g.series * dz(dzbar(f.series)) * (r2 * s2);
    return RAForm(f.r + g.r + 2, f.s + g.s + 2, std::move(out));
}

std::pair<RAForm, RAForm> d_mixed(const RAForm& f)
{
    RAForm hol = L_shift(scale(del(f), Rational(f.s)), -1);
    RAForm anti = L_shift(scale(dbar(f), Rational(-f.r)), -1);
    return {hol, anti};
}

OperatorReport report(const std::string& op, const RAForm& in, const RAForm& out)
{
    return OperatorReport{{in.r, in.s}, {out.r, out.s}, op};
}

} // namespace raqmod
