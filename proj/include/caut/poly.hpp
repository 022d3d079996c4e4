#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "caut/errors.hpp"

namespace caut {

using Int = mpz_class;
using Expvec = std::vector<int>;

// Graded lexicographic term order: total degree first, then lex on exponents.
// One global order so that equal values serialize identically everywhere.
struct GrlexLess {
    bool operator()(const Expvec& a, const Expvec& b) const;
};

// Multivariate polynomial over arbitrary-precision integers in variables
// x1..xn (the variable universe is fixed by `nvars`). Terms are kept in
// canonical grlex order and never store a zero coefficient; the zero
// polynomial is the empty map.
class IntPoly {
public:
    IntPoly() : nvars_(0) {}
    explicit IntPoly(int nvars) : nvars_(nvars) {}

    static IntPoly zero(int nvars) { return IntPoly(nvars); }
    static IntPoly constant(int nvars, const Int& c);
    static IntPoly variable(int nvars, int i); // x_{i+1}, 0-based index
    static IntPoly monomial(int nvars, const Expvec& e, const Int& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    int term_count() const { return static_cast<int>(terms_.size()); }
    int total_degree() const;
    int degree_in(int var) const;

    const std::map<Expvec, Int, GrlexLess>& terms() const { return terms_; }
    const Int& coeff(const Expvec& e) const; // zero if absent
    const Int& leading_coeff() const;        // grlex-leading term
    const Expvec& leading_exp() const;

    void add_term(const Expvec& e, const Int& c); // folds in, drops zeros

    IntPoly operator-() const;
    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    bool operator==(const IntPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    IntPoly pow(int k) const;

    // Integer content (gcd of coefficients, nonnegative) and the per-variable
    // minimum exponent vector (the largest monomial dividing the polynomial).
    Int content() const;
    Expvec monomial_content() const;
    IntPoly divide_by_int(const Int& c) const;       // exact, throws otherwise
    IntPoly divide_by_monomial(const Expvec& e) const;

    // Exact division; throws error if o does not divide this.
    IntPoly divided_by(const IntPoly& o) const;
    bool divisible_by(const IntPoly& o) const;

    std::string to_string() const;

private:
    int nvars_;
    std::map<Expvec, Int, GrlexLess> terms_;
    void check_compat(const IntPoly& o) const;
};

// Multivariate gcd: monomial/content stripping, recursive content and
// primitive part with a subresultant PRS in the top active variable.
// Result has positive leading coefficient; gcd(0,0) = 0.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// Reduced rational function num/den: den != 0, gcd(num,den) = 1 including
// integer content, and the grlex-leading coefficient of den is positive.
// Equality of values is equality of the canonical representation.
class RationalFn {
public:
    RationalFn() = default;
    static RationalFn make(const IntPoly& num, const IntPoly& den);
    static RationalFn from_poly(const IntPoly& p);
    static RationalFn variable(int nvars, int i);
    static RationalFn constant(int nvars, const Int& c);

    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }
    int nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }

    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator-(const RationalFn& o) const;
    RationalFn operator*(const RationalFn& o) const;
    RationalFn operator/(const RationalFn& o) const;
    bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RationalFn& o) const { return !(*this == o); }
    bool operator<(const RationalFn& o) const; // canonical order for sorting clusters

    std::string to_string() const;

private:
    IntPoly num_, den_;
};

// Laurent form numerator / (x1^e1 * ... * xn^en); the numerator is not
// divisible by any variable with a positive denominator exponent.
struct LaurentForm {
    IntPoly numerator;
    Expvec denominator_exponents;
};

// Witness for the Laurent phenomenon: succeeds iff the reduced denominator is
// a monomial with coefficient one; otherwise throws not_laurent_error.
LaurentForm as_laurent(const RationalFn& f);
bool is_laurent(const RationalFn& f);
bool is_positive_laurent(const RationalFn& f);

// Field-map application: replaces x_i by assignment[i] in num and den and
// reduces. The assignment must cover the whole variable universe of f.
RationalFn substitute(const RationalFn& f, const std::vector<RationalFn>& assignment);

// Parsers for the canonical text format (the inverse of to_string).
IntPoly parse_poly(const std::string& s, int nvars);
RationalFn parse_ratfn(const std::string& s, int nvars);

} // namespace caut
