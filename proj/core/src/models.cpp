#include "flagflow/models.hpp"

#include "flagflow/errors.hpp"

#include <cmath>

namespace flagflow {

std::string_view family_name(Family f)
{
    return f == Family::TypeI ? "I" : "II";
}

Family parse_family(std::string_view text)
{
    if (text == "I" || text == "1" || text == "TypeI") {
        return Family::TypeI;
    }
    if (text == "II" || text == "2" || text == "TypeII") {
        return Family::TypeII;
    }
    throw ParameterError("unknown family '" + std::string(text) + "' (expected I or II)");
}

FlagModel make_model(Family family, int m, int k, bool strict)
{
    if (m < 1) {
        throw ParameterError("parameter m>=1 required");
    }
    if (k < 0) {
        throw ParameterError("parameter k>=0 required");
    }
    FlagModel model{family, m, k, m + k, strict, {}};

    std::vector<std::string> violations;
    if (family == Family::TypeI) {
        if (m <= 1) {
            violations.emplace_back("parameter m>1 required");
        }
        if (k == 1) {
            violations.emplace_back("parameter k!=1 required");
        }
    } else if (k < 3) {
        violations.emplace_back("parameter k>=3 required");
    }

    if (strict && !violations.empty()) {
        throw ParameterError(violations.front() + " (strict mode)");
    }
    for (auto& v : violations) {
        model.warnings.push_back(v + "; results are outside the analyzed range");
    }
    return model;
}

Metric make_metric(double lambda1, double lambda2)
{
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0) || !std::isfinite(lambda1) || !std::isfinite(lambda2)) {
        throw DomainError("metric components must be positive and finite");
    }
    return {lambda1, lambda2};
}

ExactMetric make_metric(const Rational& lambda1, const Rational& lambda2)
{
    if (lambda1.sign() <= 0 || lambda2.sign() <= 0) {
        throw DomainError("metric components must be positive");
    }
    return {lambda1, lambda2};
}

RawCoefficients raw_coefficients(const FlagModel& model)
{
    const long m = model.m;
    const long k = model.k;
    const long n = model.n;
    if (model.family == Family::TypeI) {
        return {Rational(2 * (m - 1), 2 * n - 1), Rational(1 + 2 * k, 2 * (2 * n - 1)),
                Rational(n + k, 2 * n - 1), Rational(m - 1, 2 * (2 * n - 1))};
    }
    return {Rational(2 + 2 * m, 2 * n + 2), Rational(2 * k, 4 * n + 4),
            Rational(4 * m + 4 * k + 3, 4 * n + 4), Rational(4 * m + 2, 16 * n + 16)};
}

namespace {

template <class T>
T as(const Rational& r);

template <>
double as<double>(const Rational& r)
{
    return r.to_double();
}

template <>
Rational as<Rational>(const Rational& r)
{
    return r;
}

// Ricci components; raw_rhs is their negation.
template <class T>
BasicRicci<T> ricci_impl(const FlagModel& model, const T& l1, const T& l2)
{
    const RawCoefficients rc = raw_coefficients(model);
    const T a = as<T>(rc.a);
    const T b = as<T>(rc.b);
    const T c = as<T>(rc.c);
    const T e = as<T>(rc.e);
    const T ratio2 = (l1 * l1) / (l2 * l2);
    if (model.family == Family::TypeI) {
        const T diff = l1 - l2;
        return {T(0) - a - b * ratio2, T(0) - c - e * ((l2 * l2 - diff * diff) / (l1 * l2))};
    }
    return {T(0) - a - b * ratio2, T(0) - c + e * (l1 / l2)};
}

template <class T>
std::array<T, 2> raw_impl(const FlagModel& model, const T& x, const T& y)
{
    const RawCoefficients rc = raw_coefficients(model);
    const T a = as<T>(rc.a);
    const T b = as<T>(rc.b);
    const T c = as<T>(rc.c);
    const T e = as<T>(rc.e);
    const T ratio2 = (x * x) / (y * y);
    if (model.family == Family::TypeI) {
        const T diff = x - y;
        return {a + b * ratio2, c + e * ((y * y - diff * diff) / (x * y))};
    }
    return {a + b * ratio2, c - e * (x / y)};
}

} // namespace

RicciComponents ricci_components(const FlagModel& model, const Metric& g)
{
    const Metric v = make_metric(g.lambda1, g.lambda2);
    return ricci_impl<double>(model, v.lambda1, v.lambda2);
}

ExactRicciComponents ricci_components(const FlagModel& model, const ExactMetric& g)
{
    const ExactMetric v = make_metric(g.lambda1, g.lambda2);
    return ricci_impl<Rational>(model, v.lambda1, v.lambda2);
}

std::array<double, 2> raw_rhs(const FlagModel& model, double x, double y)
{
    if (!(x > 0.0) || !(y > 0.0)) {
        throw DomainError("raw system requires x > 0 and y > 0");
    }
    return raw_impl<double>(model, x, y);
}

std::array<Rational, 2> raw_rhs(const FlagModel& model, const Rational& x, const Rational& y)
{
    if (x.sign() <= 0 || y.sign() <= 0) {
        throw DomainError("raw system requires x > 0 and y > 0");
    }
    return raw_impl<Rational>(model, x, y);
}

VectorField polynomial_field(const FlagModel& model)
{
    const long m = model.m;
    const long k = model.k;
    const long n = model.n;
    if (model.family == Family::TypeI) {
        return {Poly2::monomial(Rational(2 + 4 * k, 8 * n - 4), 2, 0) +
                    Poly2::monomial(Rational(2 * m - 2, 2 * n - 1), 0, 2),
                Poly2::monomial(Rational(2 - 2 * m, 8 * n - 4), 1, 1) +
                    Poly2::monomial(Rational(n + k + m - 1, 2 * n - 1), 0, 2)};
    }
    return {Poly2::monomial(Rational(2 * k, 4 * n + 4), 2, 0) +
                Poly2::monomial(Rational(2 + 2 * m, 2 * n + 2), 0, 2),
            Poly2::monomial(-Rational(4 * m + 2, 16 * n + 16), 1, 1) +
                Poly2::monomial(Rational(4 * m + 4 * k + 3, 4 * n + 4), 0, 2)};
}

double einstein_defect(const FlagModel& model, const Metric& g)
{
    const auto r = ricci_components(model, g);
    return r.r1 * g.lambda2 - r.r2 * g.lambda1;
}

Rational einstein_defect(const FlagModel& model, const ExactMetric& g)
{
    const auto r = ricci_components(model, g);
    return r.r1 * g.lambda2 - r.r2 * g.lambda1;
}

FibrationInfo fibration_info(const FlagModel& model)
{
    const int m = model.m;
    const int k = model.k;
    const int n = model.n;
    const auto s = [](int v) { return std::to_string(v); };
    if (model.family == Family::TypeI) {
        return {2 * m * (2 * k + 1), m * (m - 1), "SO(" + s(2 * m) + ")/U(" + s(m) + ")",
                "SO(" + s(2 * n + 1) + ")/(SO(" + s(2 * m) + ")xSO(" + s(2 * k + 1) + "))",
                "SO(" + s(2 * n + 1) + ")/(U(" + s(m) + ")xSO(" + s(2 * k + 1) + "))"};
    }
    return {4 * m * k, m * (m + 1), "Sp(" + s(m) + ")/U(" + s(m) + ")",
            "Sp(" + s(n) + ")/(Sp(" + s(m) + ")xSp(" + s(k) + "))",
            "Sp(" + s(n) + ")/(U(" + s(m) + ")xSp(" + s(k) + "))"};
}

Rational gamma1_slope(const FlagModel& model)
{
    if (model.family == Family::TypeI) {
        return Rational(2L * (model.m - 1), model.m + 2L * model.k);
    }
    return Rational(4L * (model.m + 1), 4L * model.k + 2L * model.m + 1);
}

Rational gamma2_slope(const FlagModel& /*model*/)
{
    return Rational(2);
}

std::array<std::string, 2> raw_system_str(const FlagModel& model)
{
    const RawCoefficients rc = raw_coefficients(model);
    const auto paren = [](const Rational& r) { return "(" + r.str() + ")"; };
    if (model.family == Family::TypeI) {
        return {"x' = " + paren(rc.a) + " + " + paren(rc.b) + "*x^2/y^2",
                "y' = " + paren(rc.c) + " + " + paren(rc.e) + "*(y^2 - (x - y)^2)/(x*y)"};
    }
    return {"x' = " + paren(rc.a) + " + " + paren(rc.b) + "*x^2/y^2",
            "y' = " + paren(rc.c) + " - " + paren(rc.e) + "*x/y"};
}

} // namespace flagflow
