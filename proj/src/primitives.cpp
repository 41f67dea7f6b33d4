#include "raqmod/primitives.hpp"
#include "raqmod/errors.hpp"
#include "raqmod/forms.hpp"
#include "raqmod/operators.hpp"

#include <algorithm>
#include <sstream>

namespace raqmod {

namespace {

std::string slot_name(int m, int n, int k)
{
    std::ostringstream os;
    os << "(" << m << "," << n << ",k=" << k << ")";
    return os.str();
}

// Solves one (m,n) slot; `a` maps k -> a^{(k)}.
void solve_slot(int m, int n, int r, const std::map<int, PeriodScalar>& a, BiSeries& out,
                std::vector<std::string>& obstructions)
{
    if (a.empty())
        return;
    if (m == 0) {
        for (const auto& [k, c] : a) {
            if (r + k == 0) {
                obstructions.push_back("a" + slot_name(0, n, k) + " = " + to_string(c));
                continue;
            }
            out.add_scaled(0, n, k, c, ratio(1, r + k));
        }
        return;
    }
    auto coef = [&a](int k) {
        auto it = a.find(k);
        return it == a.end() ? PeriodScalar() : it->second;
    };
    const Rational inv2m(1, 2 * m);
    const int K = a.rbegin()->first;
    const int kmin = a.begin()->first;
    // Upper block: equations k = K .. -r+1 determine b^{(K-1)} .. b^{(-r)}.
    PeriodScalar above;  // b^{(k)}
    for (int k = K; k >= -r + 1; --k) {
        PeriodScalar b = coef(k);
        b.add_scaled(above, Rational(-(r + k)));
        b *= inv2m;
        out.add(m, n, k - 1, b);
        above = std::move(b);
    }
    if (kmin > -r)
        return;
    // Lower block: equations k = kmin .. -r-1, bottom-up.
    PeriodScalar below;  // b^{(k-1)}
    for (int k = kmin; k <= -r - 1; ++k) {
        PeriodScalar b = coef(k);
        b.add_scaled(below, Rational(-2 * m));
        b *= ratio(1, r + k);
        out.add(m, n, k, b);
        below = std::move(b);
    }
    // Closing equation at k = -r: a^{(-r)} = 2m b^{(-r-1)}.
    PeriodScalar gap = coef(-r);
    gap.add_scaled(below, Rational(-2 * m));
    if (!gap.is_zero())
        obstructions.push_back("lower block at " + slot_name(m, n, -r) + " leaves " + to_string(gap));
}

} // namespace

PrimitiveSolution solve_del_primitive(const RAForm& f, int target_r, bool throw_on_obstruction)
{
    if (f.r != target_r + 1)
        throw WeightError("solve_del_primitive: input weight r = " + std::to_string(f.r) +
                          " does not match target_r + 1 = " + std::to_string(target_r + 1));
    const int r = target_r;
    const int N = f.order();
    PrimitiveSolution sol;
    BiSeries out(N);
    const auto& terms = f.series.terms();
    for (auto it = terms.begin(); it != terms.end();) {
        const int m = it->first.m, n = it->first.n;
        std::map<int, PeriodScalar> a;
        for (; it != terms.end() && it->first.m == m && it->first.n == n; ++it)
            a.emplace(it->first.k, it->second);
        solve_slot(m, n, r, a, out, sol.obstruction_report);
    }
    for (int n = 0; n <= N; ++n)
        sol.free_parameters.push_back("b" + slot_name(0, n, -r));
    sol.primitive = RAForm(r, f.s + 1, std::move(out));
    if (throw_on_obstruction && !sol.ok()) {
        std::string msg = "no combinatorial primitive:";
        for (const auto& o : sol.obstruction_report)
            msg += " " + o + ";";
        throw ObstructionViolated(msg);
    }
    return sol;
}

// ------------------------------------------------------ equivariant systems

static RAForm rhs_or_zero(const std::map<int, RAForm>& m, int key, int r, int s, int order)
{
    auto it = m.find(key);
    if (it == m.end())
        return RAForm(r, s, BiSeries(order));
    if (it->second.r != r || it->second.s != s)
        throw WeightError("equivariant system: right-hand side has weights (" + std::to_string(it->second.r) + "," +
                          std::to_string(it->second.s) + "), expected (" + std::to_string(r) + "," +
                          std::to_string(s) + ")");
    return truncate(it->second, order);
}

std::vector<std::string> check_equivariant_system(const EquivariantSystem& sys, const Family& members)
{
    const int W = sys.W;
    std::vector<std::string> bad;
    auto member = [&](int r, int s) -> const RAForm& {
        auto it = members.find({r, s});
        if (it == members.end())
            throw InternalInconsistency("family lacks member (" + std::to_string(r) + "," + std::to_string(s) + ")");
        return it->second;
    };
    for (int s = 0; s <= W; ++s) {
        const int r = W - s;
        RAForm lhs = del(member(r, s));
        if (s >= 1)
            lhs = lhs - scale(member(r + 1, s - 1), Rational(r + 1));
        RAForm diff = lhs - rhs_or_zero(sys.hol, s, r + 1, s - 1, sys.order);
        if (!diff.series.is_zero())
            bad.push_back("del system at (" + std::to_string(r) + "," + std::to_string(s) + "): " +
                          std::to_string(diff.series.size()) + " nonzero terms");
    }
    for (int r = 0; r <= W; ++r) {
        const int s = W - r;
        RAForm lhs = dbar(member(r, s));
        if (r >= 1)
            lhs = lhs - scale(member(r - 1, s + 1), Rational(s + 1));
        RAForm diff = lhs - rhs_or_zero(sys.anti, r, r - 1, s + 1, sys.order);
        if (!diff.series.is_zero())
            bad.push_back("dbar system at (" + std::to_string(r) + "," + std::to_string(s) + "): " +
                          std::to_string(diff.series.size()) + " nonzero terms");
    }
    return bad;
}

FamilySolution solve_equivariant_system(const EquivariantSystem& sys, const std::string& constant_name)
{
    const int W = sys.W, N = sys.order;
    if (W < 0 || W % 2 != 0)
        throw DomainError("equivariant system needs even W >= 0");
    auto kappa = [](int n) { return "__kappa_" + std::to_string(n); };

    RAForm top = solve_del_primitive(rhs_or_zero(sys.hol, 0, W + 1, -1, N), W).primitive;
    for (int n = 0; n <= N; ++n)
        top.series.add(0, n, -W, PeriodScalar::symbol(kappa(n)));

    Family fam;
    fam.emplace(std::make_pair(W, 0), top);
    for (int r = W; r >= 1; --r) {
        const int s = W - r;
        RAForm next = dbar(fam.at({r, s})) - rhs_or_zero(sys.anti, r, r - 1, s + 1, N);
        fam.emplace(std::make_pair(r - 1, s + 1), scale(next, ratio(1, s + 1)));
    }
    RAForm closing = dbar(fam.at({0, W})) - rhs_or_zero(sys.anti, 0, -1, W + 1, N);

    // dbar F_{0,W} = anti[0] on each slot (0,n) is affine in kappa_n alone.
    std::map<std::string, PeriodScalar> values;
    std::vector<std::string> free;
    for (int n = 0; n <= N; ++n) {
        const std::string name = kappa(n);
        bool fixed = false;
        for (const auto& [key, c] : closing.series.terms()) {
            if (key.m != 0 || key.n != n)
                continue;
            const PeriodScalar lin = c.linear_coefficient(name);
            if (lin.is_zero())
                continue;
            if (!lin.is_rational())
                throw InternalInconsistency("kappa coefficient is not rational");
            PeriodScalar v = -c.without(name);
            v *= Rational(1) / lin.rational_part();
            values.emplace(name, v);
            fixed = true;
            break;
        }
        if (!fixed)
            free.push_back(name);
    }
    FamilySolution out;
    for (const auto& name : free) {
        const std::string n = name.substr(std::string("__kappa_").size());
        const std::string pretty = n == "0" ? constant_name : constant_name + "_" + n;
        values.emplace(name, PeriodScalar::symbol(pretty));
        out.constants.push_back(pretty);
    }
    for (auto& [rs, f] : fam) {
        RAForm g = f;
        for (const auto& [name, v] : values)
            g = substitute(g, name, v);
        out.members.emplace(rs, std::move(g));
    }
    const auto bad = check_equivariant_system(sys, out.members);
    if (!bad.empty()) {
        std::string msg = "equivariant system is inconsistent:";
        for (const auto& b : bad)
            msg += " " + b + ";";
        throw ObstructionViolated(msg);
    }
    return out;
}

EquivariantSystem eisenstein_system(int w, int order)
{
    if (w <= 0 || w % 2 != 0)
        throw DomainError("eisenstein_system: w must be even and > 0");
    EquivariantSystem sys;
    sys.W = w;
    sys.order = order;
    RAForm lg = L_shift(eisenstein_G(w + 2, order), 1);
    sys.hol.emplace(0, lg);
    sys.anti.emplace(0, conjugate(lg));
    return sys;
}

EquivariantSystem double_eisenstein_system(int a, int b, int k, int order)
{
    if (a < 1 || b < 1 || k < 0 || k > 2 * std::min(a, b))
        throw DomainError("double Eisenstein: need a,b >= 1 and 0 <= k <= min(2a,2b)");
    EquivariantSystem sys;
    sys.W = 2 * (a + b - k);
    sys.order = order;
    const RAForm ga = L_shift(eisenstein_G(2 * a + 2, order), k + 1);
    const RAForm gb = conjugate(L_shift(eisenstein_G(2 * b + 2, order), k + 1));
    for (int s = 0; s <= sys.W; ++s) {
        const int p = 2 * b - k - s, q = k + s;
        if (p < 0)
            continue;
        const Rational c = Rational(binomial(2 * a, k) * binomial(k + s, k));
        sys.hol.emplace(s, scale(ga * real_eisenstein(p, q, order), c));
    }
    for (int r = 0; r <= sys.W; ++r) {
        const int p = k + r, q = 2 * a - k - r;
        if (q < 0)
            continue;
        const Rational c = Rational(binomial(2 * b, k) * binomial(k + r, k));
        sys.anti.emplace(r, scale(gb * real_eisenstein(p, q, order), c));
    }
    return sys;
}

DoubleEisensteinFamily build_double_eisenstein(int a, int b, int k, int order)
{
    if (2 * a + 2 * b - 2 * k + 2 >= 12)
        throw CuspCorrectionRequired("double Eisenstein (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                     std::to_string(k) + ") has total weight " +
                                     std::to_string(2 * a + 2 * b - 2 * k + 2) + " >= 12");
    const EquivariantSystem sys = double_eisenstein_system(a, b, k, order);
    const std::string name =
        "c_{" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(k) + "}";
    FamilySolution sol = solve_equivariant_system(sys, name);
    DoubleEisensteinFamily fam;
    fam.a = a;
    fam.b = b;
    fam.k = k;
    fam.w = a + b - k;
    fam.members = std::move(sol.members);
    fam.undetermined_constants = std::move(sol.constants);
    return fam;
}

std::map<std::string, PeriodScalar> match_constants(const std::vector<RAForm>& solution,
                                                    const std::vector<RAForm>& target,
                                                    const std::vector<std::string>& symbols)
{
    if (solution.size() != target.size())
        throw DomainError("match_constants: length mismatch");
    std::vector<BiSeries> diff;
    for (std::size_t i = 0; i < solution.size(); ++i)
        diff.push_back((solution[i] - target[i]).series);
    std::map<std::string, PeriodScalar> values;
    for (const auto& sym : symbols) {
        bool found = false;
        for (const auto& d : diff) {
            for (const auto& [key, c] : d.terms()) {
                const PeriodScalar lin = c.linear_coefficient(sym);
                if (lin.is_zero() || !lin.is_rational())
                    continue;
                PeriodScalar v = -c.without(sym);
                v *= Rational(1) / lin.rational_part();
                values.emplace(sym, v);
                found = true;
                break;
            }
            if (found)
                break;
        }
        if (!found)
            continue;
        for (auto& d : diff)
            d = d.substitute(sym, values.at(sym));
    }
    return values;
}

} // namespace raqmod
