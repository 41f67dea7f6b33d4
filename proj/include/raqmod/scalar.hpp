#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace raqmod {

using Rational = mpq_class;
using Integer = mpz_class;

// B_n with B_1 = -1/2 (so the constant term of G_k is -B_k/2k).
// Only even n >= 0 are accepted.
Rational bernoulli(int n);

// sigma_k(n) = sum of d^k over divisors d of n.
Integer divisor_sum(int k, long n);

Integer binomial(long n, long k);
Integer factorial(long n);

// p/q in lowest terms with a positive denominator; q != 0.
Rational ratio(long p, long q);
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

// Monomial in the free generators zeta(3), zeta(5), ... and named
// constants of integration.  Both lists are kept sorted; the empty
// monomial is the unit.
struct Monomial {
    std::vector<int> zetas;            // odd, >= 3, with multiplicity
    std::vector<std::string> symbols;  // with multiplicity

    bool is_unit() const { return zetas.empty() && symbols.empty(); }
    int symbol_count(const std::string& name) const;
    Monomial operator*(const Monomial& o) const;
    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

    static Monomial zeta(int n);
    static Monomial symbol(const std::string& name);
};

std::string to_string(const Monomial& m);

// Sparse Q-linear combination of monomials.  No stored zero coefficients.
class PeriodScalar {
public:
    using Terms = std::map<Monomial, Rational>;

    PeriodScalar() = default;
    PeriodScalar(long v);
    PeriodScalar(const Rational& q);
    PeriodScalar(const Monomial& m, const Rational& q);

    static PeriodScalar zeta(int n);
    static PeriodScalar symbol(const std::string& name);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    // Coefficient of the unit monomial.
    Rational rational_part() const;
    bool has_symbols() const;
    std::vector<std::string> symbols() const;

    // Part of degree exactly one in `name`, with that factor removed.
    PeriodScalar linear_coefficient(const std::string& name) const;
    // Part free of `name`.
    PeriodScalar without(const std::string& name) const;
    PeriodScalar substitute(const std::string& name, const PeriodScalar& value) const;
    PeriodScalar rename(const std::string& from, const std::string& to) const;

    PeriodScalar& operator+=(const PeriodScalar& o);
    PeriodScalar& operator-=(const PeriodScalar& o);
    PeriodScalar& operator*=(const Rational& q);
    PeriodScalar operator-() const;
    // this += a * b, without temporaries for the common rational case.
    void add_product(const PeriodScalar& a, const PeriodScalar& b);
    void add_scaled(const PeriodScalar& a, const Rational& q);

    friend PeriodScalar operator+(PeriodScalar a, const PeriodScalar& b) { return a += b; }
    friend PeriodScalar operator-(PeriodScalar a, const PeriodScalar& b) { return a -= b; }
    friend PeriodScalar operator*(const PeriodScalar& a, const PeriodScalar& b);
    friend PeriodScalar operator*(PeriodScalar a, const Rational& q) { return a *= q; }
    friend PeriodScalar operator*(const Rational& q, PeriodScalar a) { return a *= q; }
    bool operator==(const PeriodScalar& o) const { return terms_ == o.terms_; }

private:
    void add_term(const Monomial& m, const Rational& q);
    Terms terms_;
};

std::string to_string(const PeriodScalar& s);

// zeta(s) for odd s >= 3 by direct summation with an Euler-Maclaurin tail;
// the returned value is within `target_abs_error` (down to ~1e-16).
double zeta_value(int s, double target_abs_error = 1e-15);

// Numeric values of named constants.  Missing names raise DomainError.
using SymbolValues = std::map<std::string, double>;

double numeric_value(const PeriodScalar& s, double target_abs_error = 1e-12,
                     const SymbolValues& symbols = {});

} // namespace raqmod
