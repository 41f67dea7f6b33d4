#include "raqmod/series.hpp"
#include "raqmod/errors.hpp"

#include <algorithm>
#include <vector>

namespace raqmod {

BiSeries BiSeries::constant(const PeriodScalar& c, int order)
{
    BiSeries s(order);
    s.add(0, 0, 0, c);
    return s;
}

BiSeries BiSeries::monomial(int m, int n, int k, const PeriodScalar& c, int order)
{
    BiSeries s(order);
    s.add(m, n, k, c);
    return s;
}

PeriodScalar BiSeries::coeff(int m, int n, int k) const
{
    auto it = terms_.find(Key{m, n, k});
    return it == terms_.end() ? PeriodScalar() : it->second;
}

void BiSeries::set(int m, int n, int k, const PeriodScalar& c)
{
    if (m < 0 || n < 0)
        throw DomainError("negative q-exponent");
    if (m > order_ || n > order_)
        return;
    if (c.is_zero())
        terms_.erase(Key{m, n, k});
    else
        terms_[Key{m, n, k}] = c;
}

void BiSeries::add(int m, int n, int k, const PeriodScalar& c)
{
    if (m < 0 || n < 0)
        throw DomainError("negative q-exponent");
    if (m > order_ || n > order_ || c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(Key{m, n, k}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void BiSeries::add_scaled(int m, int n, int k, const PeriodScalar& c, const Rational& q)
{
    if (m > order_ || n > order_ || q == 0 || c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(Key{m, n, k});
    it->second.add_scaled(c, q);
    if (it->second.is_zero())
        terms_.erase(it);
}

int BiSeries::min_k() const
{
    int r = INT_MAX;
    for (const auto& [key, c] : terms_)
        r = std::min(r, key.k);
    return r;
}

int BiSeries::max_k() const
{
    int r = INT_MIN;
    for (const auto& [key, c] : terms_)
        r = std::max(r, key.k);
    return r;
}

BiSeries BiSeries::truncated(int order) const
{
    BiSeries r(std::min(order, order_));
    for (const auto& [key, c] : terms_)
        if (key.m <= r.order_ && key.n <= r.order_)
            r.terms_.emplace_hint(r.terms_.end(), key, c);
    return r;
}

BiSeries BiSeries::map_terms(const std::function<void(const Key&, const PeriodScalar&, BiSeries&)>& f) const
{
    BiSeries r(order_);
    for (const auto& [key, c] : terms_)
        f(key, c, r);
    return r;
}

BiSeries& BiSeries::operator+=(const BiSeries& o)
{
    if (o.order_ < order_)
        *this = truncated(o.order_);
    for (const auto& [key, c] : o.terms_)
        add(key.m, key.n, key.k, c);
    return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& o)
{
    if (o.order_ < order_)
        *this = truncated(o.order_);
    for (const auto& [key, c] : o.terms_)
        add(key.m, key.n, key.k, -c);
    return *this;
}

BiSeries& BiSeries::operator*=(const Rational& q)
{
    if (q == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, c] : terms_)
        c *= q;
    return *this;
}

BiSeries BiSeries::operator-() const
{
    BiSeries r = *this;
    for (auto& [key, c] : r.terms_)
        c = -c;
    return r;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b)
{
    const int N = std::min(a.order_, b.order_);
    BiSeries r(N);
    if (a.terms_.empty() || b.terms_.empty())
        return r;
    struct T {
        Key key;
        const PeriodScalar* c;
    };
    std::vector<T> bv;
    bv.reserve(b.terms_.size());
    for (const auto& [key, c] : b.terms_)
        if (key.m <= N && key.n <= N)
            bv.push_back({key, &c});
    // bv is sorted by m (map order), so the inner loop can stop early.
    for (const auto& [ka, ca] : a.terms_) {
        if (ka.m > N || ka.n > N)
            continue;
        for (const auto& t : bv) {
            if (ka.m + t.key.m > N)
                break;
            if (ka.n + t.key.n > N)
                continue;
            auto [it, inserted] = r.terms_.try_emplace(Key{ka.m + t.key.m, ka.n + t.key.n, ka.k + t.key.k});
            it->second.add_product(ca, *t.c);
        }
    }
    std::erase_if(r.terms_, [](const auto& kv) { return kv.second.is_zero(); });
    return r;
}

BiSeries BiSeries::L_shift(int j) const
{
    BiSeries r(order_);
    for (const auto& [key, c] : terms_)
        r.terms_.emplace(Key{key.m, key.n, key.k + j}, c);
    return r;
}

BiSeries BiSeries::scaled(const PeriodScalar& c) const
{
    BiSeries r(order_);
    for (const auto& [key, v] : terms_)
        r.add(key.m, key.n, key.k, v * c);
    return r;
}

BiSeries BiSeries::conjugate() const
{
    BiSeries r(order_);
    for (const auto& [key, c] : terms_)
        r.terms_.emplace(Key{key.n, key.m, key.k}, c);
    return r;
}

BiSeries BiSeries::substitute(const std::string& name, const PeriodScalar& value) const
{
    BiSeries r(order_);
    for (const auto& [key, c] : terms_)
        r.add(key.m, key.n, key.k, c.substitute(name, value));
    return r;
}

std::vector<std::string> BiSeries::symbols() const
{
    std::vector<std::string> out;
    for (const auto& [key, c] : terms_) {
        if (!c.has_symbols())
            continue;
        auto s = c.symbols();
        out.insert(out.end(), s.begin(), s.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ------------------------------------------------------------------ RAForm

RAForm one(int order) { return RAForm(0, 0, BiSeries::constant(PeriodScalar(1), order)); }

RAForm L_form(int order) { return RAForm(-1, -1, BiSeries::monomial(0, 0, 1, PeriodScalar(1), order)); }

static void check_same_weights(const RAForm& f, const RAForm& g, const char* op)
{
    if (f.r != g.r || f.s != g.s)
        throw WeightError(std::string(op) + ": weights (" + std::to_string(f.r) + "," + std::to_string(f.s) +
                          ") vs (" + std::to_string(g.r) + "," + std::to_string(g.s) + ")");
}

RAForm add(const RAForm& f, const RAForm& g)
{
    check_same_weights(f, g, "add");
    return RAForm(f.r, f.s, f.series + g.series);
}

RAForm sub(const RAForm& f, const RAForm& g)
{
    check_same_weights(f, g, "sub");
    return RAForm(f.r, f.s, f.series - g.series);
}

RAForm mul(const RAForm& f, const RAForm& g) { return RAForm(f.r + g.r, f.s + g.s, f.series * g.series); }

RAForm scale(const RAForm& f, const Rational& q) { return RAForm(f.r, f.s, f.series * q); }

RAForm scale(const RAForm& f, const PeriodScalar& c) { return RAForm(f.r, f.s, f.series.scaled(c)); }

RAForm neg(const RAForm& f) { return RAForm(f.r, f.s, -f.series); }

RAForm L_shift(const RAForm& f, int j) { return RAForm(f.r - j, f.s - j, f.series.L_shift(j)); }

RAForm conjugate(const RAForm& f) { return RAForm(f.s, f.r, f.series.conjugate()); }

RAForm truncate(const RAForm& f, int order) { return RAForm(f.r, f.s, f.series.truncated(order)); }

RAForm substitute(const RAForm& f, const std::string& name, const PeriodScalar& value)
{
    return RAForm(f.r, f.s, f.series.substitute(name, value));
}

RAForm operator+(const RAForm& f, const RAForm& g) { return add(f, g); }
RAForm operator-(const RAForm& f, const RAForm& g) { return sub(f, g); }
RAForm operator*(const RAForm& f, const RAForm& g) { return mul(f, g); }
RAForm operator*(const Rational& q, const RAForm& f) { return scale(f, q); }

std::map<int, PeriodScalar> constant_part(const RAForm& f)
{
    std::map<int, PeriodScalar> out;
    for (const auto& [key, c] : f.series.terms())
        if (key.m == 0 && key.n == 0)
            out.emplace(key.k, c);
    return out;
}

int pole_order(const RAForm& f) { return f.series.min_k(); }

bool in_filtration(const RAForm& f, int p) { return pole_order(f) >= p; }

int h_degree(const RAForm& f) { return f.r - f.s; }

} // namespace raqmod
