#include "doctest.h"
#include "support.hpp"

#include <sstream>

using namespace flagflow;
using testing_support::q;

namespace {
const Poly2 X = Poly2::x();
const Poly2 Y = Poly2::y();
} // namespace

TEST_SUITE("rational")
{
    TEST_CASE("values are kept in lowest terms with a positive denominator")
    {
        const Rational r(6, -4);
        CHECK(r.numerator() == -3);
        CHECK(r.denominator() == 2);
        CHECK(r == q(-3, 2));
        CHECK(Rational(0, -7).denominator() == 1);
    }

    TEST_CASE("from_double is exact")
    {
        CHECK(Rational::from_double(0.5) == q(1, 2));
        CHECK(Rational::from_double(-3.0) == q(-3));
        const Rational tenth = Rational::from_double(0.1);
        CHECK(tenth != q(1, 10));
        CHECK(tenth.to_double() == 0.1);
        CHECK_THROWS_AS(Rational::from_double(std::nan("")), DomainError);
    }

    TEST_CASE("parse and print")
    {
        CHECK(Rational::parse("-5/14") == q(-5, 14));
        CHECK(Rational::parse("7") == q(7));
        CHECK(q(10, 4).str() == "5/2");
        CHECK_THROWS_AS(Rational::parse("1/0"), ParameterError);
        CHECK_THROWS_AS(Rational::parse("abc"), ParameterError);
    }

    TEST_CASE("division by zero")
    {
        CHECK_THROWS_AS(q(1) / q(0), DomainError);
        CHECK_THROWS_AS(Rational(1, 0), ParameterError);
    }

    TEST_CASE("ordering and pow")
    {
        CHECK(q(1, 3) < q(1, 2));
        CHECK(q(-1, 2) < q(0));
        CHECK(pow(q(2, 3), 3) == q(8, 27));
        CHECK(pow(q(5), 0) == q(1));
        CHECK(abs(q(-2, 7)) == q(2, 7));
    }
}

TEST_SUITE("poly2")
{
    TEST_CASE("evaluation examples")
    {
        const Poly2 p = X * X + Y;
        CHECK(p.eval(q(2), q(3)) == q(7));
        CHECK(p.eval(2.0, 3.0) == 7.0);
        CHECK(Poly2().eval(q(5, 3), q(-2)) == q(0));
        CHECK(Poly2().eval(1.5, 2.5) == 0.0);
        const Poly2 e6 = q(5, 14) * X * X + q(2, 7) * Y * Y;
        CHECK(e6.eval(q(1), q(1)) == q(9, 14));
    }

    TEST_CASE("arithmetic examples")
    {
        CHECK((X + (-X)).is_zero());
        CHECK((X + Y) * (X - Y) == X * X - Y * Y);
        CHECK((q(2) * X) * q(1, 2) == X);
    }

    TEST_CASE("zero polynomial and degree")
    {
        CHECK(Poly2().degree() == -1);
        CHECK(Poly2(q(3)).degree() == 0);
        CHECK((X * X * Y + Y).degree() == 3);
        CHECK((X * Y + Y * Y).is_homogeneous());
        CHECK_FALSE((X * Y + Y).is_homogeneous());
        // No stored zeros after cancellation.
        const Poly2 p = X * X + Y - X * X;
        CHECK(p.terms().size() == 1);
    }

    TEST_CASE("differentiation examples")
    {
        CHECK((X * X * Y).diff(Var::X) == q(2) * X * Y);
        CHECK((X * X).diff(Var::Y).is_zero());
        const Poly2 u1 = q(-3, 7) * X + X * X - q(2, 7) * X * X * X;
        CHECK(u1.diff(Var::X) == Poly2(q(-3, 7)) + q(2) * X - q(6, 7) * X * X);
    }

    TEST_CASE("substitution examples")
    {
        CHECK((X + Y).substitute(X, Y) == X + Y);
        CHECK((X * X).substitute(Y, X * q(9) + Y) == Y * Y);
        CHECK((X * Y).substitute(Poly2(q(1)), X) == X);
    }

    TEST_CASE("homogeneous parts, coefficients and restriction")
    {
        const Poly2 p = q(3) * X * X * Y + q(-2) * X + q(5);
        CHECK(p.homogeneous_part(3) == q(3) * X * X * Y);
        CHECK(p.homogeneous_part(2).is_zero());
        CHECK(p.coeff(1, 0) == q(-2));
        CHECK(p.coeff(4, 4) == q(0));
        const UPoly r = p.restrict_other_to_zero(Var::X);
        CHECK(r == UPoly({q(5), q(-2)}));
        const auto quotient = (X * Y + Y * Y * q(2)).divide_by(Var::Y);
        REQUIRE(quotient.has_value());
        CHECK(*quotient == X + q(2) * Y);
        CHECK_FALSE((X * Y + X).divide_by(Var::Y).has_value());
    }

    TEST_CASE("printing")
    {
        CHECK((q(5, 14) * X * X + q(2, 7) * Y * Y).str() == "(5/14)*x^2 + (2/7)*y^2");
        CHECK((q(-1, 14) * X * Y + Y * Y).str() == "-(1/14)*x*y + y^2");
        CHECK(Poly2().str() == "0");
    }

    TEST_CASE("ring axioms on random triples")
    {
        std::mt19937_64 rng(12345);
        for (int trial = 0; trial < 60; ++trial) {
            const Poly2 a = testing_support::random_poly(rng);
            const Poly2 b = testing_support::random_poly(rng);
            const Poly2 c = testing_support::random_poly(rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a - a).is_zero());
        }
    }

    TEST_CASE("product rule")
    {
        std::mt19937_64 rng(777);
        for (int trial = 0; trial < 60; ++trial) {
            const Poly2 a = testing_support::random_poly(rng);
            const Poly2 b = testing_support::random_poly(rng);
            for (Var v : {Var::X, Var::Y}) {
                CHECK((a * b).diff(v) == a.diff(v) * b + a * b.diff(v));
            }
        }
    }

    TEST_CASE("substitution agrees with evaluation at rational points")
    {
        std::mt19937_64 rng(2024);
        for (int trial = 0; trial < 40; ++trial) {
            const Poly2 p = testing_support::random_poly(rng);
            const Poly2 u = testing_support::random_poly(rng, 2);
            const Poly2 v = testing_support::random_poly(rng, 2);
            const Rational px = testing_support::random_rational(rng);
            const Rational py = testing_support::random_rational(rng);
            CHECK(p.substitute(u, v).eval(px, py) == p.eval(u.eval(px, py), v.eval(px, py)));
        }
    }

    TEST_CASE("floating evaluation tracks exact evaluation")
    {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 40; ++trial) {
            const Poly2 p = testing_support::random_poly(rng, 4);
            const Rational px = testing_support::random_rational(rng);
            const Rational py = testing_support::random_rational(rng);
            const double exact = p.eval(px, py).to_double();
            CHECK(p.eval(px.to_double(), py.to_double()) == doctest::Approx(exact).epsilon(1e-12));
        }
    }

    TEST_CASE("pow")
    {
        CHECK(pow(X + Y, 2) == X * X + q(2) * X * Y + Y * Y);
        CHECK(pow(X, 0) == Poly2(q(1)));
    }
}

TEST_SUITE("upoly")
{
    TEST_CASE("trimming, evaluation and derivative")
    {
        const UPoly p({q(1), q(0), q(3), q(0)});
        CHECK(p.degree() == 2);
        CHECK(p.eval(q(2)) == q(13));
        CHECK(p.derivative() == UPoly({q(0), q(6)}));
        CHECK(UPoly().degree() == -1);
    }

    TEST_CASE("division and gcd")
    {
        const UPoly a({q(-1), q(0), q(1)}); // t^2 - 1
        const UPoly b({q(-1), q(1)});       // t - 1
        const DivMod d = divmod(a, b);
        CHECK(d.quotient == UPoly({q(1), q(1)}));
        CHECK(d.remainder.is_zero());
        CHECK(gcd(a, UPoly({q(2), q(2)})) == UPoly({q(1), q(1)}));
        const UPoly sq = a * a;
        CHECK(square_free(sq) == a);
    }

    TEST_CASE("roots are bracketed within the requested width")
    {
        // -(2/7) t^3 + t^2 - (3/7) t: roots 0, 1/2, 3.
        const UPoly p({q(0), q(-3, 7), q(1), q(-2, 7)});
        const auto roots = real_roots(p, q(0), root_bound(p), q(1, 100000000));
        REQUIRE(roots.size() == 3);
        CHECK(roots[0].exact);
        CHECK(roots[0].lo == q(0));
        CHECK(std::abs(roots[1].value - 0.5) <= 1e-8);
        CHECK(std::abs(roots[2].value - 3.0) <= 1e-8);
        for (const auto& r : roots) {
            CHECK(r.lo <= r.hi);
            CHECK(r.hi - r.lo <= q(1, 100000000));
            CHECK((r.exact || p.eval(r.lo).sign() * p.eval(r.hi).sign() <= 0));
        }
    }

    TEST_CASE("irrational and repeated roots")
    {
        const UPoly p({q(-2), q(0), q(1)});
        const auto roots = real_roots(p, q(-10), q(10), Rational::from_double(1e-14));
        REQUIRE(roots.size() == 2);
        CHECK(std::abs(roots[1].value - std::sqrt(2.0)) < 1e-14);
        CHECK(std::abs(roots[0].value + std::sqrt(2.0)) < 1e-14);
        const auto twice = real_roots(p * p, q(0), q(10), Rational::from_double(1e-14));
        CHECK(twice.size() == 1);
        // No roots in the interval.
        CHECK(real_roots(UPoly({q(1), q(0), q(1)}), q(-5), q(5), q(1, 1000)).empty());
    }

    TEST_CASE("sturm chain counts roots")
    {
        const UPoly p = UPoly({q(-1), q(1)}) * UPoly({q(-2), q(1)}) * UPoly({q(-3), q(1)});
        const auto chain = sturm_chain(p);
        CHECK(sign_variations(chain, q(0)) - sign_variations(chain, q(4)) == 3);
        CHECK(sign_variations(chain, q(3, 2)) - sign_variations(chain, q(5, 2)) == 1);
    }

    TEST_CASE("zero polynomial has no isolatable roots")
    {
        CHECK_THROWS_AS(real_roots(UPoly(), q(0), q(1), q(1, 10)), RootFindingError);
    }
}
