#include "raqmod/forms.hpp"
#include "raqmod/errors.hpp"
#include "raqmod/json_io.hpp"
#include "raqmod/operators.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>

namespace raqmod {

RAForm eisenstein_G(int k, int order)
{
    if (k < 2 || k % 2 != 0)
        throw DomainError("eisenstein_G: k must be even and >= 2, got " + std::to_string(k));
    BiSeries s(order);
    s.add(0, 0, 0, PeriodScalar(Rational(-bernoulli(k) / (2 * k))));
    for (int n = 1; n <= order; ++n)
        s.add(n, 0, 0, PeriodScalar(Rational(divisor_sum(k - 1, n))));
    return RAForm(k, 0, std::move(s));
}

RAForm g2_star(int order)
{
    RAForm g = eisenstein_G(2, order);
    g.series.add(0, 0, -1, PeriodScalar(Rational(-1, 4)));
    return g;
}

RAForm frak_m(int order) { return scale(L_shift(g2_star(order), 1), Rational(4)); }

RAForm delta_cusp(int order)
{
    RAForm e4 = scale(eisenstein_G(4, order), Rational(240));
    RAForm e6 = scale(eisenstein_G(6, order), Rational(-504));
    return scale(e4 * e4 * e4 - e6 * e6, Rational(1, 1728));
}

static bool is_holomorphic(const RAForm& f)
{
    for (const auto& [key, c] : f.series.terms())
        if (key.n != 0 || key.k != 0)
            return false;
    return f.s == 0;
}

RAForm serre_theta(const RAForm& f)
{
    if (!is_holomorphic(f))
        throw DomainError("serre_theta: input must be holomorphic with weights (n,0)");
    RAForm num = del(f) + scale(f * frak_m(f.order()), Rational(f.r));
    for (const auto& [key, c] : num.series.terms())
        if (key.k != 1)
            throw InternalInconsistency("serre_theta: numerator not divisible by L");
    RAForm t = scale(L_shift(num, -1), Rational(1, 2));
    return RAForm(f.r + 2, 0, t.series);
}

RAForm real_eisenstein_constant(int r, int s, int order)
{
    const int w = r + s;
    if (r < 0 || s < 0 || w <= 0 || w % 2 != 0)
        throw DomainError("real_eisenstein: need r,s >= 0 and r+s even > 0");
    BiSeries c(order);
    c.add(0, 0, 1, PeriodScalar(Rational(-bernoulli(w + 2) / (2 * (w + 1) * (w + 2)))));
    Rational z = Rational(factorial(w) * binomial(w, r)) / Rational(Integer(2) * (Integer(1) << w));
    if (s % 2 != 0)
        z = -z;
    c.add(0, 0, -w, PeriodScalar(Monomial::zeta(w + 1), z));
    return RAForm(r, s, std::move(c));
}

// R_{a,b} with 2w := a + b: (-1)^a C(a+b, a) sum_{k=b}^{a+b} C(a, k-b) g^{(k)}(q) / L^k,
// g^{(k)} = (-1)^k k! sum_n sigma_{a+b+1}(n) / (2n)^{k+1} q^n.
static BiSeries R_series(int a, int b, int order)
{
    const int W = a + b;
    BiSeries out(order);
    std::vector<Integer> sig(order + 1);
    for (int n = 1; n <= order; ++n)
        sig[n] = divisor_sum(W + 1, n);
    const Rational pref = Rational(binomial(W, a)) * (a % 2 ? -1 : 1);
    for (int k = b; k <= W; ++k) {
        const Rational ck = pref * Rational(binomial(a, k - b)) * Rational(factorial(k)) * (k % 2 ? -1 : 1);
        for (int n = 1; n <= order; ++n) {
            Integer den = 1;
            mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(2 * n), static_cast<unsigned long>(k + 1));
            Rational c = ck * Rational(sig[n]) / Rational(den);
            c.canonicalize();
            out.add(n, 0, -k, PeriodScalar(c));
        }
    }
    return out;
}

RAForm real_eisenstein(int r, int s, int order)
{
    RAForm e = real_eisenstein_constant(r, s, order);
    e.series += R_series(r, s, order);
    e.series += R_series(s, r, order).conjugate();
    return e;
}

EisensteinFamily eisenstein_family(int w, int order)
{
    EisensteinFamily fam;
    fam.w = w;
    for (int r = 0; r <= w; ++r)
        fam.members.emplace(std::make_pair(r, w - r), real_eisenstein(r, w - r, order));
    return fam;
}

CocyclePoly eis_cocycle(int k, char gamma)
{
    if (k < 2)
        throw DomainError("eis_cocycle: need 2k >= 4");
    CocyclePoly p;
    p.weight = 2 * k;
    p.gamma = gamma;
    const Rational pref = Rational(factorial(2 * k - 2)) / 2;
    auto bf = [](int j) -> Rational { return bernoulli(j) / Rational(factorial(j)); };
    if (gamma == 'S') {
        for (int i = 1; i <= k - 1; ++i) {
            Rational c = pref * bf(2 * i) * bf(2 * k - 2 * i);
            if (c != 0)
                p.coeffs[{2 * i - 1, 2 * k - 2 * i - 1}] += c;
        }
    } else if (gamma == 'T') {
        // ((X+Y)^{2k-1} - X^{2k-1}) / Y = sum_{j>=1} C(2k-1, j) X^{2k-1-j} Y^{j-1}
        const Rational c = pref * bf(2 * k);
        for (int j = 1; j <= 2 * k - 1; ++j)
            p.coeffs[{2 * k - 1 - j, j - 1}] += c * Rational(binomial(2 * k - 1, j));
    } else {
        throw DomainError("eis_cocycle: gamma must be S or T");
    }
    return p;
}

// ----------------------------------------------------------------- cache

static RAForm build_named(const std::string& name, int order)
{
    if (name == "G2star")
        return g2_star(order);
    if (name == "m")
        return frak_m(order);
    if (name == "delta")
        return delta_cusp(order);
    if (name.size() > 2 && name.rfind("E:", 0) == 0) {
        const auto comma = name.find(',');
        if (comma == std::string::npos)
            throw InputError("form name E:r,s expected, got " + name);
        try {
            return real_eisenstein(std::stoi(name.substr(2, comma - 2)), std::stoi(name.substr(comma + 1)), order);
        } catch (const std::invalid_argument&) {
            throw InputError("form name E:r,s expected, got " + name);
        }
    }
    if (name.size() > 1 && name[0] == 'G') {
        try {
            return eisenstein_G(std::stoi(name.substr(1)), order);
        } catch (const std::invalid_argument&) {
        }
    }
    throw InputError("unknown form '" + name + "'");
}

RAForm named_form(const std::string& name, int order)
{
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, RAForm> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({name, order});
        if (it != memo.end())
            return it->second;
    }
    std::filesystem::path file;
    if (const char* dir = std::getenv("RAQMOD_CACHE_DIR"); dir && *dir) {
        std::string stem = name;
        for (char& c : stem)
            if (c == ':' || c == ',')
                c = '_';
        file = std::filesystem::path(dir) / (stem + "_N" + std::to_string(order) + ".json");
    }
    RAForm f;
    bool loaded = false;
    if (!file.empty() && std::filesystem::exists(file)) {
        try {
            f = read_series_file(file.string());
            loaded = f.order() == order;
        } catch (const std::exception&) {
            loaded = false;  // stale or corrupt entry: rebuild
        }
    }
    if (!loaded) {
        f = build_named(name, order);
        if (!file.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(file.parent_path(), ec);
            const auto tmp = file.string() + ".tmp";
            {
                std::ofstream os(tmp);
                os << series_to_json(f).dump(1) << "\n";
            }
            std::filesystem::rename(tmp, file, ec);
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    return memo.emplace(std::make_pair(name, order), f).first->second;
}

} // namespace raqmod
