#include "flagflow/upoly.hpp"

#include "flagflow/errors.hpp"

#include <algorithm>

namespace flagflow {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    trim();
}

void UPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero()) {
        c_.pop_back();
    }
}

Rational UPoly::eval(const Rational& t) const
{
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

double UPoly::eval(double t) const
{
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * t + it->to_double();
    }
    return acc;
}

UPoly UPoly::derivative() const
{
    if (c_.size() <= 1) {
        return {};
    }
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        d[i - 1] = c_[i] * Rational(static_cast<long>(i));
    }
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const
{
    if (c_.empty()) {
        return {};
    }
    std::vector<Rational> out = c_;
    const Rational lead = c_.back();
    for (auto& c : out) {
        c /= lead;
    }
    return UPoly(std::move(out));
}

UPoly operator-(const UPoly& a, const UPoly& b)
{
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a.coeff(i) - b.coeff(i);
    }
    return UPoly(std::move(out));
}

UPoly operator*(const UPoly& a, const UPoly& b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            out[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return UPoly(std::move(out));
}

std::string UPoly::str(const std::string& var) const
{
    if (c_.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) {
            continue;
        }
        if (!out.empty()) {
            out += c_[i].sign() < 0 ? " - " : " + ";
        } else if (c_[i].sign() < 0) {
            out += "-";
        }
        out += "(" + abs(c_[i]).str() + ")";
        if (i > 0) {
            out += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
        }
    }
    return out;
}

DivMod divmod(const UPoly& a, const UPoly& b)
{
    if (b.is_zero()) {
        throw DomainError("polynomial division by zero");
    }
    std::vector<Rational> rem = a.coeffs();
    const int db = b.degree();
    const int da = a.degree();
    if (da < db) {
        return {UPoly{}, a};
    }
    std::vector<Rational> quo(static_cast<std::size_t>(da - db + 1));
    for (int k = da - db; k >= 0; --k) {
        const Rational factor = rem[static_cast<std::size_t>(k + db)] / b.leading();
        quo[static_cast<std::size_t>(k)] = factor;
        if (factor.is_zero()) {
            continue;
        }
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(k + j)] -= factor * b.coeff(static_cast<std::size_t>(j));
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b)
{
    UPoly r0 = a;
    UPoly r1 = b;
    while (!r1.is_zero()) {
        UPoly r2 = divmod(r0, r1).remainder;
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0.monic();
}

UPoly square_free(const UPoly& p)
{
    if (p.degree() <= 0) {
        return p;
    }
    const UPoly g = gcd(p, p.derivative());
    return divmod(p, g).quotient;
}

std::vector<UPoly> sturm_chain(const UPoly& p)
{
    std::vector<UPoly> chain;
    if (p.is_zero()) {
        return chain;
    }
    chain.push_back(p);
    UPoly next = p.derivative();
    while (!next.is_zero()) {
        chain.push_back(next);
        const auto n = chain.size();
        next = UPoly{} - divmod(chain[n - 2], chain[n - 1]).remainder;
    }
    return chain;
}

int sign_variations(const std::vector<UPoly>& chain, const Rational& t)
{
    int variations = 0;
    int last = 0;
    for (const auto& p : chain) {
        const int s = p.eval(t).sign();
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++variations;
        }
        last = s;
    }
    return variations;
}

Rational root_bound(const UPoly& p)
{
    if (p.degree() < 1) {
        return Rational(0);
    }
    Rational maxratio;
    for (int i = 0; i < p.degree(); ++i) {
        const Rational r = abs(p.coeff(static_cast<std::size_t>(i)) / p.leading());
        if (r > maxratio) {
            maxratio = r;
        }
    }
    return Rational(1) + maxratio;
}

namespace {

constexpr int kMaxBisections = 4000;

UPoly linear_factor(const Rational& root)
{
    return UPoly({-root, Rational(1)});
}

RealRoot exact_root(const Rational& r)
{
    return {r, r, true, r.to_double()};
}

RealRoot refine(const UPoly& q, Rational a, Rational b, const Rational& width)
{
    int sa = q.eval(a).sign();
    for (int it = 0; b - a > width; ++it) {
        if (it > kMaxBisections) {
            throw RootFindingError("bisection did not converge");
        }
        Rational m = (a + b) / Rational(2);
        const int sm = q.eval(m).sign();
        if (sm == 0) {
            return exact_root(m);
        }
        if (sm == sa) {
            a = std::move(m);
        } else {
            b = std::move(m);
        }
        sa = q.eval(a).sign();
    }
    const Rational mid = (a + b) / Rational(2);
    return {a, b, false, mid.to_double()};
}

} // namespace

std::vector<RealRoot> real_roots(const UPoly& p, const Rational& lo, const Rational& hi,
                                 const Rational& width)
{
    if (p.is_zero()) {
        throw RootFindingError("zero polynomial has no isolated roots");
    }
    if (hi < lo) {
        throw ParameterError("root interval has lo > hi");
    }
    std::vector<RealRoot> roots;
    UPoly q = square_free(p);

    for (const Rational* end : {&lo, &hi}) {
        if (q.degree() >= 1 && q.eval(*end).is_zero()) {
            roots.push_back(exact_root(*end));
            q = divmod(q, linear_factor(*end)).quotient;
        }
    }

    bool restart = true;
    while (restart && q.degree() >= 1 && lo < hi) {
        restart = false;
        const auto chain = sturm_chain(q);
        std::vector<std::pair<Rational, Rational>> work{{lo, hi}};
        std::vector<RealRoot> found;
        int guard = 0;
        while (!work.empty()) {
            if (++guard > kMaxBisections) {
                throw RootFindingError("root isolation did not converge");
            }
            auto [a, b] = work.back();
            work.pop_back();
            const int count = sign_variations(chain, a) - sign_variations(chain, b);
            if (count == 0) {
                continue;
            }
            if (count == 1) {
                found.push_back(refine(q, a, b, width));
                continue;
            }
            Rational m = (a + b) / Rational(2);
            if (q.eval(m).is_zero()) {
                roots.push_back(exact_root(m));
                q = divmod(q, linear_factor(m)).quotient;
                restart = true;
                break;
            }
            work.emplace_back(m, b);
            work.emplace_back(a, m);
        }
        if (!restart) {
            roots.insert(roots.end(), found.begin(), found.end());
        }
    }

    std::sort(roots.begin(), roots.end(),
              [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
    return roots;
}

} // namespace flagflow
