#pragma once

#include "flagflow/rational.hpp"
#include "flagflow/upoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace flagflow {

enum class Var { X, Y };

/// Sparse bivariate polynomial with exact rational coefficients. Terms are
/// keyed by the exponent pair (i, j) of x^i y^j; zero coefficients are never
/// stored, so structural equality is polynomial equality.
class Poly2 {
public:
    using Exponent = std::pair<unsigned, unsigned>;
    using Terms = std::map<Exponent, Rational>;

    Poly2() = default;
    Poly2(const Rational& c); // NOLINT(google-explicit-constructor)

    static Poly2 monomial(const Rational& c, unsigned i, unsigned j);
    static Poly2 x() { return monomial(1, 1, 0); }
    static Poly2 y() { return monomial(1, 0, 1); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous() const;
    Rational coeff(unsigned i, unsigned j) const;
    /// Sum of the terms of total degree exactly `d`.
    Poly2 homogeneous_part(unsigned d) const;

    Rational eval(const Rational& x, const Rational& y) const;
    /// Horner in y within each x-row, then Horner in x.
    double eval(double x, double y) const;

    Poly2 diff(Var v) const;
    /// p(u, v), expanded exactly.
    Poly2 substitute(const Poly2& u, const Poly2& v) const;
    /// Exact quotient by the variable when every term contains it.
    std::optional<Poly2> divide_by(Var v) const;
    /// p(x, 0) as a univariate polynomial in x (or p(0, y) in y).
    UPoly restrict_other_to_zero(Var keep) const;

    Poly2 operator-() const;
    Poly2& operator+=(const Poly2& o);
    Poly2& operator-=(const Poly2& o);
    Poly2& operator*=(const Poly2& o);
    Poly2& operator*=(const Rational& s);

    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(Poly2 a, const Poly2& b) { return a *= b; }
    friend Poly2 operator*(Poly2 a, const Rational& s) { return a *= s; }
    friend Poly2 operator*(const Rational& s, Poly2 a) { return a *= s; }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

    /// Human-readable form, highest degree first, e.g. "(5/14)*x^2 + (2/7)*y^2".
    std::string str(const std::string& xname = "x", const std::string& yname = "y") const;

private:
    void add_term(const Exponent& e, const Rational& c);

    Terms terms_;
};

Poly2 pow(const Poly2& p, unsigned exponent);

} // namespace flagflow
