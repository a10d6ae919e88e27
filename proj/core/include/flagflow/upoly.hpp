#pragma once

#include "flagflow/rational.hpp"

#include <string>
#include <vector>

namespace flagflow {

/// Dense univariate polynomial over the rationals, coefficients in ascending
/// powers. Trailing zeros are trimmed.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& leading() const { return c_.back(); }

    Rational eval(const Rational& t) const;
    double eval(double t) const;
    UPoly derivative() const;
    UPoly monic() const;

    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rational> c_;
};

struct DivMod {
    UPoly quotient;
    UPoly remainder;
};

DivMod divmod(const UPoly& a, const UPoly& b);
UPoly gcd(const UPoly& a, const UPoly& b);
/// p / gcd(p, p'): same distinct roots, all simple.
UPoly square_free(const UPoly& p);
/// Sturm chain p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i).
std::vector<UPoly> sturm_chain(const UPoly& p);
/// Sign variations of the chain at t (zeros skipped).
int sign_variations(const std::vector<UPoly>& chain, const Rational& t);

struct RealRoot {
    Rational lo;   ///< isolating interval, lo <= root <= hi
    Rational hi;
    bool exact;    ///< lo == hi is the exact root
    double value;
};

/// All distinct real roots in the closed interval [lo, hi], ascending. Roots
/// are isolated with Sturm chains over exact rationals, then bisected until
/// the interval is narrower than `width`. Rational midpoints that hit a root
/// exactly are reported as exact.
std::vector<RealRoot> real_roots(const UPoly& p, const Rational& lo, const Rational& hi,
                                 const Rational& width);

/// Cauchy bound: every real root r satisfies |r| <= bound.
Rational root_bound(const UPoly& p);

} // namespace flagflow
