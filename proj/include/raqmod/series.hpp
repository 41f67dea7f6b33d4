#pragma once

#include "raqmod/scalar.hpp"

#include <climits>
#include <compare>
#include <functional>
#include <map>

namespace raqmod {

// Exponents of L^k q^m qbar^n; ordered lexicographically by (m, n, k).
struct Key {
    int m = 0;
    int n = 0;
    int k = 0;
    auto operator<=>(const Key&) const = default;
};

// Truncated expansion sum a^{(k)}_{m,n} L^k q^m qbar^n, trusted modulo
// q^{N+1} and qbar^{N+1}.  Invariants: 0 <= m,n <= N for every stored
// key, no stored zero coefficient.
class BiSeries {
public:
    using Terms = std::map<Key, PeriodScalar>;

    explicit BiSeries(int order = 0) : order_(order) {}

    static BiSeries constant(const PeriodScalar& c, int order);
    static BiSeries monomial(int m, int n, int k, const PeriodScalar& c, int order);

    int order() const { return order_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    PeriodScalar coeff(int m, int n, int k) const;
    void set(int m, int n, int k, const PeriodScalar& c);
    // Accumulates; silently drops keys outside the truncation box.
    void add(int m, int n, int k, const PeriodScalar& c);
    void add_scaled(int m, int n, int k, const PeriodScalar& c, const Rational& q);

    // Smallest / largest L-exponent present; INT_MAX / INT_MIN when zero.
    int min_k() const;
    int max_k() const;

    BiSeries truncated(int order) const;
    // Termwise map L^k q^m qbar^n -> sum_j c_j L^{k+j} (coefficients c_j rational).
    BiSeries map_terms(const std::function<void(const Key&, const PeriodScalar&, BiSeries&)>& f) const;

    BiSeries& operator+=(const BiSeries& o);
    BiSeries& operator-=(const BiSeries& o);
    BiSeries& operator*=(const Rational& q);
    BiSeries operator-() const;
    bool operator==(const BiSeries& o) const { return order_ == o.order_ && terms_ == o.terms_; }

    friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
    friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
    friend BiSeries operator*(BiSeries a, const Rational& q) { return a *= q; }
    friend BiSeries operator*(const Rational& q, BiSeries a) { return a *= q; }
    friend BiSeries operator*(const BiSeries& a, const BiSeries& b);

    BiSeries L_shift(int j) const;
    BiSeries scaled(const PeriodScalar& c) const;
    BiSeries conjugate() const;
    BiSeries substitute(const std::string& name, const PeriodScalar& value) const;
    std::vector<std::string> symbols() const;

private:
    int order_;
    Terms terms_;
};

// Element of M_{r,s}: a series with weights as metadata.
struct RAForm {
    int r = 0;
    int s = 0;
    BiSeries series;

    RAForm() = default;
    RAForm(int r_, int s_, BiSeries f) : r(r_), s(s_), series(std::move(f)) {}

    int order() const { return series.order(); }
    bool operator==(const RAForm& o) const = default;
};

RAForm one(int order);
RAForm L_form(int order);  // L with weights (-1,-1)

RAForm add(const RAForm& f, const RAForm& g);
RAForm sub(const RAForm& f, const RAForm& g);
RAForm mul(const RAForm& f, const RAForm& g);
RAForm scale(const RAForm& f, const Rational& q);
RAForm scale(const RAForm& f, const PeriodScalar& c);
RAForm neg(const RAForm& f);
RAForm L_shift(const RAForm& f, int j);
RAForm conjugate(const RAForm& f);
RAForm truncate(const RAForm& f, int order);
RAForm substitute(const RAForm& f, const std::string& name, const PeriodScalar& value);

RAForm operator+(const RAForm& f, const RAForm& g);
RAForm operator-(const RAForm& f, const RAForm& g);
RAForm operator*(const RAForm& f, const RAForm& g);
RAForm operator*(const Rational& q, const RAForm& f);

// {k -> a^{(k)}_{0,0}}
std::map<int, PeriodScalar> constant_part(const RAForm& f);

constexpr int kNoPole = INT_MAX;  // pole_order of the zero series
int pole_order(const RAForm& f);
bool in_filtration(const RAForm& f, int p);

// r - s
int h_degree(const RAForm& f);

} // namespace raqmod
