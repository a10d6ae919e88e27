#pragma once

#include "flagflow/flagflow.hpp"

#include <cmath>
#include <random>

namespace testing_support {

using flagflow::Poly2;
using flagflow::Rational;

inline Rational q(long num, long den = 1) { return Rational(num, den); }

/// Small random rational num/den with |num| <= 9, 1 <= den <= 6.
inline Rational random_rational(std::mt19937_64& rng, bool positive = false)
{
    std::uniform_int_distribution<long> num(positive ? 1 : -9, 9);
    std::uniform_int_distribution<long> den(1, 6);
    return Rational(num(rng), den(rng));
}

/// Random polynomial of total degree <= `max_degree` with about half the
/// monomials present.
inline Poly2 random_poly(std::mt19937_64& rng, unsigned max_degree = 3)
{
    std::bernoulli_distribution keep(0.5);
    Poly2 p;
    for (unsigned i = 0; i <= max_degree; ++i) {
        for (unsigned j = 0; i + j <= max_degree; ++j) {
            if (keep(rng)) {
                p += Poly2::monomial(random_rational(rng), i, j);
            }
        }
    }
    return p;
}

/// Halton-type radical inverse, used for quasi-random seeds.
inline double radical_inverse(unsigned index, unsigned base)
{
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

} // namespace testing_support
