#include "raqmod/scalar.hpp"
#include "raqmod/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace raqmod {

Rational bernoulli(int n)
{
    if (n < 0)
        throw DomainError("bernoulli: n must be >= 0, got " + std::to_string(n));
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    while (static_cast<int>(cache.size()) <= n) {
        const long m = static_cast<long>(cache.size());
        Rational acc(0);
        for (long j = 0; j < m; ++j)
            acc += Rational(binomial(m + 1, j)) * cache[j];
        Rational b = -acc / Rational(m + 1);
        b.canonicalize();
        cache.push_back(b);
    }
    return cache[n];
}

Integer divisor_sum(int k, long n)
{
    if (n <= 0 || k < 0)
        throw DomainError("divisor_sum: need k >= 0 and n >= 1");
    Integer acc = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        Integer t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
        acc += t;
        const long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
            acc += t;
        }
    }
    return acc;
}

Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer factorial(long n)
{
    if (n < 0)
        throw DomainError("factorial of negative number");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Rational ratio(long p, long q)
{
    if (q == 0)
        throw DomainError("ratio: zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& s)
{
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw InputError("malformed rational '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- Monomial

int Monomial::symbol_count(const std::string& name) const
{
    return static_cast<int>(std::count(symbols.begin(), symbols.end(), name));
}

Monomial Monomial::operator*(const Monomial& o) const
{
    Monomial r;
    r.zetas.reserve(zetas.size() + o.zetas.size());
    std::merge(zetas.begin(), zetas.end(), o.zetas.begin(), o.zetas.end(), std::back_inserter(r.zetas));
    r.symbols.reserve(symbols.size() + o.symbols.size());
    std::merge(symbols.begin(), symbols.end(), o.symbols.begin(), o.symbols.end(),
               std::back_inserter(r.symbols));
    return r;
}

Monomial Monomial::zeta(int n)
{
    if (n < 3 || n % 2 == 0)
        throw DomainError("zeta symbol needs odd n >= 3, got " + std::to_string(n));
    Monomial m;
    m.zetas.push_back(n);
    return m;
}

Monomial Monomial::symbol(const std::string& name)
{
    if (name.empty())
        throw DomainError("empty symbol name");
    Monomial m;
    m.symbols.push_back(name);
    return m;
}

std::string to_string(const Monomial& m)
{
    std::string out;
    for (int z : m.zetas) {
        if (!out.empty())
            out += "*";
        out += "z" + std::to_string(z);
    }
    for (const auto& s : m.symbols) {
        if (!out.empty())
            out += "*";
        out += s;
    }
    return out.empty() ? "1" : out;
}

// ------------------------------------------------------------ PeriodScalar

PeriodScalar::PeriodScalar(long v)
{
    if (v != 0)
        terms_.emplace(Monomial{}, Rational(v));
}

PeriodScalar::PeriodScalar(const Rational& q)
{
    if (q != 0)
        terms_.emplace(Monomial{}, q);
}

PeriodScalar::PeriodScalar(const Monomial& m, const Rational& q)
{
    if (q != 0)
        terms_.emplace(m, q);
}

PeriodScalar PeriodScalar::zeta(int n) { return PeriodScalar(Monomial::zeta(n), Rational(1)); }

PeriodScalar PeriodScalar::symbol(const std::string& name)
{
    return PeriodScalar(Monomial::symbol(name), Rational(1));
}

bool PeriodScalar::is_rational() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational PeriodScalar::rational_part() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

bool PeriodScalar::has_symbols() const
{
    for (const auto& [m, q] : terms_)
        if (!m.symbols.empty())
            return true;
    return false;
}

std::vector<std::string> PeriodScalar::symbols() const
{
    std::vector<std::string> out;
    for (const auto& [m, q] : terms_)
        out.insert(out.end(), m.symbols.begin(), m.symbols.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PeriodScalar PeriodScalar::linear_coefficient(const std::string& name) const
{
    PeriodScalar r;
    for (const auto& [m, q] : terms_) {
        if (m.symbol_count(name) != 1)
            continue;
        Monomial rest = m;
        rest.symbols.erase(std::find(rest.symbols.begin(), rest.symbols.end(), name));
        r.add_term(rest, q);
    }
    return r;
}

PeriodScalar PeriodScalar::without(const std::string& name) const
{
    PeriodScalar r;
    for (const auto& [m, q] : terms_)
        if (m.symbol_count(name) == 0)
            r.terms_.emplace(m, q);
    return r;
}

PeriodScalar PeriodScalar::substitute(const std::string& name, const PeriodScalar& value) const
{
    PeriodScalar r;
    for (const auto& [m, q] : terms_) {
        const int c = m.symbol_count(name);
        if (c == 0) {
            r.add_term(m, q);
            continue;
        }
        Monomial rest = m;
        rest.symbols.erase(std::remove(rest.symbols.begin(), rest.symbols.end(), name), rest.symbols.end());
        PeriodScalar t(rest, q);
        for (int i = 0; i < c; ++i)
            t = t * value;
        r += t;
    }
    return r;
}

PeriodScalar PeriodScalar::rename(const std::string& from, const std::string& to) const
{
    return substitute(from, symbol(to));
}

void PeriodScalar::add_term(const Monomial& m, const Rational& q)
{
    if (q == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, q);
    if (!inserted) {
        it->second += q;
        if (it->second == 0)
            terms_.erase(it);
    }
}

PeriodScalar& PeriodScalar::operator+=(const PeriodScalar& o)
{
    for (const auto& [m, q] : o.terms_)
        add_term(m, q);
    return *this;
}

PeriodScalar& PeriodScalar::operator-=(const PeriodScalar& o)
{
    for (const auto& [m, q] : o.terms_)
        add_term(m, -q);
    return *this;
}

PeriodScalar& PeriodScalar::operator*=(const Rational& q)
{
    if (q == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_)
        c *= q;
    return *this;
}

PeriodScalar PeriodScalar::operator-() const
{
    PeriodScalar r = *this;
    for (auto& [m, c] : r.terms_)
        c = -c;
    return r;
}

void PeriodScalar::add_product(const PeriodScalar& a, const PeriodScalar& b)
{
    for (const auto& [ma, qa] : a.terms_) {
        for (const auto& [mb, qb] : b.terms_) {
            if (ma.is_unit())
                add_term(mb, qa * qb);
            else if (mb.is_unit())
                add_term(ma, qa * qb);
            else
                add_term(ma * mb, qa * qb);
        }
    }
}

void PeriodScalar::add_scaled(const PeriodScalar& a, const Rational& q)
{
    if (q == 0)
        return;
    for (const auto& [m, c] : a.terms_)
        add_term(m, c * q);
}

PeriodScalar operator*(const PeriodScalar& a, const PeriodScalar& b)
{
    PeriodScalar r;
    r.add_product(a, b);
    return r;
}

std::string to_string(const PeriodScalar& s)
{
    if (s.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, q] : s.terms()) {
        if (!first)
            os << " + ";
        first = false;
        os << q.get_str();
        if (!m.is_unit())
            os << "*" << to_string(m);
    }
    return os.str();
}

// ---------------------------------------------------------------- numerics

double zeta_value(int s, double target_abs_error)
{
    if (s < 2)
        throw DomainError("zeta_value needs s >= 2");
    // Euler-Maclaurin at cut N with p correction terms; the first omitted
    // term bounds the remainder (terms alternate and decrease for N >= s).
    const int p = 6;
    for (int N = 16;; N *= 2) {
        long double sum = 0;
        for (int j = N - 1; j >= 1; --j)
            sum += std::pow(static_cast<long double>(j), -s);
        const long double n = N;
        sum += std::pow(n, 1.0L - s) / (s - 1) + std::pow(n, -static_cast<long double>(s)) / 2;
        long double rising = s;  // s(s+1)...(s+2i-2)
        long double fact = 2;    // (2i)!
        long double last = 0;
        for (int i = 1; i <= p + 1; ++i) {
            const long double term =
                bernoulli(2 * i).get_d() / fact * rising * std::pow(n, -static_cast<long double>(s + 2 * i - 1));
            if (i <= p)
                sum += term;
            else
                last = std::fabs(term);
            rising *= static_cast<long double>(s + 2 * i - 1) * (s + 2 * i);
            fact *= static_cast<long double>(2 * i + 1) * (2 * i + 2);
        }
        if (last < target_abs_error || N > (1 << 20))
            return static_cast<double>(sum);
    }
}

double numeric_value(const PeriodScalar& s, double target_abs_error, const SymbolValues& symbols)
{
    if (!(target_abs_error > 0))
        throw DomainError("numeric_value: target_abs_error must be positive");
    double total_weight = 0;
    for (const auto& [m, q] : s.terms())
        total_weight += std::fabs(q.get_d()) * (1 + m.zetas.size());
    const double per_zeta = std::max(1e-17, target_abs_error / (4 * std::max(1.0, total_weight)));
    std::map<int, double> zcache;
    long double acc = 0;
    for (const auto& [m, q] : s.terms()) {
        long double v = q.get_d();
        for (int z : m.zetas) {
            auto it = zcache.find(z);
            if (it == zcache.end())
                it = zcache.emplace(z, zeta_value(z, per_zeta)).first;
            v *= it->second;
        }
        for (const auto& name : m.symbols) {
            auto it = symbols.find(name);
            if (it == symbols.end())
                throw DomainError("no numeric value for symbol '" + name + "'");
            v *= it->second;
        }
        acc += v;
    }
    return static_cast<double>(acc);
}

} // namespace raqmod
