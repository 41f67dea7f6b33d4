#include "raqmod/equivariant.hpp"
#include "raqmod/errors.hpp"
#include "raqmod/operators.hpp"

#include <algorithm>

namespace raqmod {

namespace {

void zpoly_accumulate(ZPoly& acc, int j, const BiSeries& c)
{
    if (c.is_zero())
        return;
    auto it = acc.find(j);
    if (it == acc.end()) {
        acc.emplace(j, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        acc.erase(it);
}

using Coeffs = std::map<std::pair<int, int>, ZPoly>;

void coeffs_accumulate(Coeffs& acc, std::pair<int, int> key, const ZPoly& z)
{
    ZPoly& slot = acc[key];
    slot = zpoly_add(slot, z);
    if (slot.empty())
        acc.erase(key);
}

// c * wbar^j * L^l as a ZPoly.
ZPoly zpoly_monomial(int j, int l, const Rational& c, int order)
{
    ZPoly z;
    if (c != 0)
        z.emplace(j, BiSeries::monomial(0, 0, l, PeriodScalar(c), order));
    return z;
}

Rational falling(int a, int j)
{
    Rational out = 1;
    for (int t = 0; t < j; ++t)
        out *= a - t;
    return out;
}

} // namespace

ZPoly zpoly_add(const ZPoly& a, const ZPoly& b)
{
    ZPoly out = a;
    for (const auto& [j, c] : b)
        zpoly_accumulate(out, j, c);
    return out;
}

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b)
{
    ZPoly out;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b)
            zpoly_accumulate(out, i + j, x * y);
    return out;
}

ZPoly zpoly_scale(const ZPoly& a, const Rational& q)
{
    ZPoly out;
    if (q == 0)
        return out;
    for (const auto& [j, c] : a)
        out.emplace(j, c * q);
    return out;
}

bool zpoly_is_zero(const ZPoly& a)
{
    return std::all_of(a.begin(), a.end(), [](const auto& e) { return e.second.is_zero(); });
}

ZPoly zpoly_dz(const ZPoly& a)
{
    ZPoly out;
    for (const auto& [j, c] : a)
        zpoly_accumulate(out, j, dz(c));
    return out;
}

ZPoly zpoly_dzbar(const ZPoly& a)
{
    ZPoly out;
    for (const auto& [j, c] : a) {
        zpoly_accumulate(out, j, dzbar(c));
        if (j > 0)
            zpoly_accumulate(out, j - 1, c * Rational(j));
    }
    return out;
}

FramePoly frame_change(const FramePoly& p, Frame target)
{
    if (p.frame == target)
        return p;
    FramePoly out;
    out.n = p.n;
    out.frame = target;
    out.ipi_power = p.ipi_power;
    out.order = p.order;
    const int N = p.order;
    for (const auto& [key, z] : p.coeffs) {
        if (p.frame == Frame::Modular) {
            // (X - (wbar + L) Yh)^r (X - wbar Yh)^s
            const int r = key.first, s = key.second;
            for (int a = 0; a <= r; ++a)
                for (int b = 0; b <= a; ++b)
                    for (int c = 0; c <= s; ++c) {
                        Rational q(binomial(r, a) * binomial(a, b) * binomial(s, c));
                        if ((a + c) % 2)
                            q = -q;
                        coeffs_accumulate(out.coeffs, {r + s - a - c, a + c},
                                          zpoly_mul(zpoly_monomial(b + c, a - b, q, N), z));
                    }
        } else {
            // X^i Yh^j = (w U - wbar V)^i (U - V)^j / L^{i+j}, U = X - zbar Y, V = X - zY.
            const int i = key.first, j = key.second;
            for (int a = 0; a <= i; ++a)
                for (int b = 0; b <= a; ++b)
                    for (int c = 0; c <= j; ++c) {
                        Rational q(binomial(i, a) * binomial(a, b) * binomial(j, c));
                        if ((i - a + j - c) % 2)
                            q = -q;
                        coeffs_accumulate(out.coeffs, {i - a + j - c, a + c},
                                          zpoly_mul(zpoly_monomial(b + i - a, a - b - i - j, q, N), z));
                    }
        }
    }
    return out;
}

FramePoly delta_proj(int k, const FramePoly& p0, const FramePoly& q0, bool normalize)
{
    if (k < 0)
        throw DomainError("delta_proj: k must be >= 0");
    const FramePoly p = frame_change(p0, Frame::XY);
    const FramePoly q = frame_change(q0, Frame::XY);
    FramePoly out;
    out.frame = Frame::XY;
    out.order = std::min(p.order, q.order);
    out.ipi_power = p.ipi_power + q.ipi_power - k;
    out.n = p.n + q.n - k;
    if (k > 2 * p.n || k > 2 * q.n) {
        out.n = std::max(out.n, 0);
        return out;
    }
    Rational norm = 1;
    if (normalize)
        norm = Rational(1) / Rational(factorial(k) * factorial(k));
    for (const auto& [kp, zp] : p.coeffs)
        for (const auto& [kq, zq] : q.coeffs) {
            const auto [a1, b1] = kp;
            const auto [a2, b2] = kq;
            for (int j = 0; j <= k; ++j) {
                // d_X^j d_Yh^{k-j} on p, d_Yh^j d_X^{k-j} on q.
                Rational c = norm * Rational(binomial(k, j)) * falling(a1, j) * falling(b1, k - j) * falling(b2, j) *
                             falling(a2, k - j);
                if (c == 0)
                    continue;
                if ((k - j) % 2)
                    c = -c;
                coeffs_accumulate(out.coeffs, {a1 - j + a2 - (k - j), b1 - (k - j) + b2 - j},
                                  zpoly_scale(zpoly_mul(zp, zq), c));
            }
        }
    return out;
}

FramePoly section_from_family(const std::map<std::pair<int, int>, RAForm>& family, int order)
{
    FramePoly out;
    out.frame = Frame::Modular;
    out.order = order;
    int W = -1;
    for (const auto& [rs, f] : family) {
        const int w = rs.first + rs.second;
        if (rs.first < 0 || rs.second < 0 || w % 2 != 0 || (W >= 0 && w != W))
            throw WeightError("section_from_family: members must share an even total weight");
        if (f.r != rs.first || f.s != rs.second)
            throw WeightError("section_from_family: member weights disagree with its index");
        W = w;
        if (!f.series.is_zero())
            out.coeffs[rs].emplace(0, truncate(f, order).series);
    }
    out.n = W < 0 ? 0 : W / 2;
    return out;
}

std::map<std::pair<int, int>, RAForm> family_from_section(const FramePoly& p0)
{
    const FramePoly p = frame_change(p0, Frame::Modular);
    if (p.ipi_power != 0)
        throw DomainError("family_from_section: ipi_power must be 0");
    std::map<std::pair<int, int>, RAForm> out;
    for (int r = 0; r <= 2 * p.n; ++r)
        out.emplace(std::make_pair(r, 2 * p.n - r), RAForm(r, 2 * p.n - r, BiSeries(p.order)));
    for (const auto& [rs, z] : p.coeffs) {
        for (const auto& [j, c] : z) {
            if (j != 0)
                throw DomainError("family_from_section: component depends on zbar explicitly");
            out.at(rs).series = c;
        }
    }
    return out;
}

static FramePoly map_coeffs(const FramePoly& p, ZPoly (*f)(const ZPoly&))
{
    if (p.frame != Frame::XY)
        throw DomainError("z-derivatives act componentwise only in the XY frame");
    FramePoly out = p;
    out.coeffs.clear();
    for (const auto& [key, z] : p.coeffs) {
        ZPoly d = f(z);
        if (!d.empty())
            out.coeffs.emplace(key, std::move(d));
    }
    return out;
}

FramePoly frame_dz(const FramePoly& p) { return map_coeffs(p, zpoly_dz); }
FramePoly frame_dzbar(const FramePoly& p) { return map_coeffs(p, zpoly_dzbar); }

static void check_compatible(const FramePoly& a, const FramePoly& b)
{
    if (a.frame != b.frame || a.ipi_power != b.ipi_power)
        throw DomainError("frame polynomials differ in frame or ipi_power");
    if (a.n != b.n && !a.coeffs.empty() && !b.coeffs.empty())
        throw WeightError("frame polynomials differ in degree");
}

FramePoly frame_add(const FramePoly& a, const FramePoly& b)
{
    check_compatible(a, b);
    FramePoly out = a;
    out.order = std::min(a.order, b.order);
    if (a.coeffs.empty())
        out.n = b.n;
    for (const auto& [key, z] : b.coeffs)
        coeffs_accumulate(out.coeffs, key, z);
    return out;
}

FramePoly frame_sub(const FramePoly& a, const FramePoly& b)
{
    FramePoly nb = b;
    for (auto& [key, z] : nb.coeffs)
        z = zpoly_scale(z, Rational(-1));
    return frame_add(a, nb);
}

bool frame_is_zero(const FramePoly& p)
{
    return std::all_of(p.coeffs.begin(), p.coeffs.end(), [](const auto& e) { return zpoly_is_zero(e.second); });
}

json frame_to_json(const FramePoly& p)
{
    json terms = json::array();
    for (const auto& [key, z] : p.coeffs)
        for (const auto& [j, c] : z)
            terms.push_back(json{{"a", key.first},
                                 {"b", key.second},
                                 {"zbar_power", j},
                                 {"series", series_to_json(RAForm(0, 0, c))["terms"]}});
    return json{{"n", p.n},
                {"frame", p.frame == Frame::XY ? "XY" : "modular"},
                {"ipi_power", p.ipi_power},
                {"order", p.order},
                {"terms", terms}};
}

} // namespace raqmod
