#include "flagflow/poly2.hpp"

#include <algorithm>
#include <vector>

namespace flagflow {

Poly2::Poly2(const Rational& c)
{
    add_term({0, 0}, c);
}

Poly2 Poly2::monomial(const Rational& c, unsigned i, unsigned j)
{
    Poly2 p;
    p.add_term({i, j}, c);
    return p;
}

void Poly2::add_term(const Exponent& e, const Rational& c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

int Poly2::degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) {
        d = std::max(d, static_cast<int>(e.first + e.second));
    }
    return d;
}

bool Poly2::is_homogeneous() const
{
    const int d = degree();
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) {
        return static_cast<int>(t.first.first + t.first.second) == d;
    });
}

Rational Poly2::coeff(unsigned i, unsigned j) const
{
    const auto it = terms_.find({i, j});
    return it == terms_.end() ? Rational(0) : it->second;
}

Poly2 Poly2::homogeneous_part(unsigned d) const
{
    Poly2 out;
    for (const auto& [e, c] : terms_) {
        if (e.first + e.second == d) {
            out.terms_.emplace(e, c);
        }
    }
    return out;
}

Rational Poly2::eval(const Rational& x, const Rational& y) const
{
    Rational sum;
    for (const auto& [e, c] : terms_) {
        sum += c * pow(x, e.first) * pow(y, e.second);
    }
    return sum;
}

double Poly2::eval(double x, double y) const
{
    if (terms_.empty()) {
        return 0.0;
    }
    unsigned max_i = 0;
    unsigned max_j = 0;
    for (const auto& [e, c] : terms_) {
        max_i = std::max(max_i, e.first);
        max_j = std::max(max_j, e.second);
    }
    std::vector<std::vector<double>> rows(max_i + 1, std::vector<double>(max_j + 1, 0.0));
    for (const auto& [e, c] : terms_) {
        rows[e.first][e.second] = c.to_double();
    }
    double acc = 0.0;
    for (unsigned i = max_i + 1; i-- > 0;) {
        double row = 0.0;
        for (unsigned j = max_j + 1; j-- > 0;) {
            row = row * y + rows[i][j];
        }
        acc = acc * x + row;
    }
    return acc;
}

Poly2 Poly2::diff(Var v) const
{
    Poly2 out;
    for (const auto& [e, c] : terms_) {
        const unsigned power = v == Var::X ? e.first : e.second;
        if (power == 0) {
            continue;
        }
        const Exponent ne = v == Var::X ? Exponent{e.first - 1, e.second}
                                        : Exponent{e.first, e.second - 1};
        out.add_term(ne, c * Rational(static_cast<long>(power)));
    }
    return out;
}

Poly2 Poly2::substitute(const Poly2& u, const Poly2& v) const
{
    Poly2 out;
    for (const auto& [e, c] : terms_) {
        out += c * pow(u, e.first) * pow(v, e.second);
    }
    return out;
}

std::optional<Poly2> Poly2::divide_by(Var v) const
{
    Poly2 out;
    for (const auto& [e, c] : terms_) {
        const unsigned power = v == Var::X ? e.first : e.second;
        if (power == 0) {
            return std::nullopt;
        }
        out.terms_.emplace(v == Var::X ? Exponent{e.first - 1, e.second}
                                       : Exponent{e.first, e.second - 1},
                           c);
    }
    return out;
}

UPoly Poly2::restrict_other_to_zero(Var keep) const
{
    std::vector<Rational> coeffs;
    for (const auto& [e, c] : terms_) {
        const unsigned other = keep == Var::X ? e.second : e.first;
        if (other != 0) {
            continue;
        }
        const unsigned power = keep == Var::X ? e.first : e.second;
        if (coeffs.size() <= power) {
            coeffs.resize(power + 1);
        }
        coeffs[power] += c;
    }
    return UPoly(std::move(coeffs));
}

Poly2 Poly2::operator-() const
{
    Poly2 out = *this;
    for (auto& [e, c] : out.terms_) {
        c = -c;
    }
    return out;
}

Poly2& Poly2::operator+=(const Poly2& o)
{
    for (const auto& [e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

Poly2& Poly2::operator-=(const Poly2& o)
{
    for (const auto& [e, c] : o.terms_) {
        add_term(e, -c);
    }
    return *this;
}

Poly2& Poly2::operator*=(const Poly2& o)
{
    Poly2 out;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            out.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
        }
    }
    terms_ = std::move(out.terms_);
    return *this;
}

Poly2& Poly2::operator*=(const Rational& s)
{
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) {
        c *= s;
    }
    return *this;
}

namespace {

std::string power_str(const std::string& name, unsigned p)
{
    if (p == 1) {
        return name;
    }
    return name + "^" + std::to_string(p);
}

} // namespace

std::string Poly2::str(const std::string& xname, const std::string& yname) const
{
    if (terms_.empty()) {
        return "0";
    }
    std::vector<std::pair<Exponent, Rational>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        const unsigned da = a.first.first + a.first.second;
        const unsigned db = b.first.first + b.first.second;
        if (da != db) {
            return da > db;
        }
        return a.first.first > b.first.first;
    });

    std::string out;
    bool first = true;
    for (const auto& [e, c] : ordered) {
        const bool negative = c.sign() < 0;
        const Rational mag = abs(c);
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;

        std::string monomial;
        if (e.first > 0) {
            monomial += power_str(xname, e.first);
        }
        if (e.second > 0) {
            monomial += (monomial.empty() ? "" : "*") + power_str(yname, e.second);
        }
        if (monomial.empty()) {
            out += mag.str();
        } else if (mag == Rational(1)) {
            out += monomial;
        } else if (mag.is_integer()) {
            out += mag.str() + "*" + monomial;
        } else {
            out += "(" + mag.str() + ")*" + monomial;
        }
    }
    return out;
}

Poly2 pow(const Poly2& p, unsigned exponent)
{
    Poly2 out(1);
    Poly2 b = p;
    while (exponent != 0) {
        if (exponent & 1U) {
            out *= b;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            b *= b;
        }
    }
    return out;
}

} // namespace flagflow
