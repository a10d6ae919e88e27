#include "flagflow/rational.hpp"

#include "flagflow/errors.hpp"

#include <cmath>

namespace flagflow {

Rational::Rational(long num, long den)
{
    if (den == 0) {
        throw ParameterError("rational with zero denominator");
    }
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q))
{
    q_.canonicalize();
}

Rational Rational::from_double(double value)
{
    if (!std::isfinite(value)) {
        throw DomainError("cannot convert a non-finite double to a rational");
    }
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), value);
    return Rational(std::move(q));
}

Rational Rational::parse(const std::string& text)
{
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
        throw ParameterError("not a rational number: '" + text + "'");
    }
    return Rational(std::move(q));
}

Rational& Rational::operator+=(const Rational& o)
{
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) {
        throw DomainError("rational division by zero");
    }
    q_ /= o.q_;
    return *this;
}

Rational abs(const Rational& r)
{
    return r.sign() < 0 ? -r : r;
}

Rational pow(const Rational& base, unsigned exponent)
{
    Rational out(1);
    Rational b = base;
    while (exponent != 0) {
        if (exponent & 1U) {
            out *= b;
        }
        b *= b;
        exponent >>= 1U;
    }
    return out;
}

} // namespace flagflow
