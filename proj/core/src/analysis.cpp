#include "flagflow/analysis.hpp"

#include "flagflow/errors.hpp"
#include "flagflow/upoly.hpp"

#include <algorithm>
#include <cmath>

namespace flagflow {

std::string_view stability_name(Stability s)
{
    switch (s) {
    case Stability::StableNode: return "stable_node";
    case Stability::UnstableNode: return "unstable_node";
    case Stability::Saddle: return "saddle";
    case Stability::StableFocus: return "stable_focus";
    case Stability::UnstableFocus: return "unstable_focus";
    case Stability::LinearCenter: return "linear_center";
    case Stability::Degenerate: return "degenerate";
    }
    return "?";
}

bool is_attracting(Stability s)
{
    return s == Stability::StableNode || s == Stability::StableFocus;
}

Matrix2 jacobian(const VectorField& vf, double z1, double z2)
{
    return {{{vf.p1.diff(Var::X).eval(z1, z2), vf.p1.diff(Var::Y).eval(z1, z2)},
             {vf.p2.diff(Var::X).eval(z1, z2), vf.p2.diff(Var::Y).eval(z1, z2)}}};
}

EigenPair eigenvalues(const Matrix2& j)
{
    if (j[0][1] == 0.0 || j[1][0] == 0.0) {
        return {std::complex<double>(j[0][0]), std::complex<double>(j[1][1])};
    }
    const double tr = j[0][0] + j[1][1];
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    const double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0) {
        // Avoid cancellation: the larger-magnitude root first, the other via det.
        const double s = std::sqrt(disc);
        const double q = -0.5 * (-tr + std::copysign(s, -tr));
        double l1 = q;
        double l2 = q != 0.0 ? det / q : 0.0;
        if (l1 < l2) {
            std::swap(l1, l2);
        }
        return {std::complex<double>(l1), std::complex<double>(l2)};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {std::complex<double>(0.5 * tr, im), std::complex<double>(0.5 * tr, -im)};
}

std::array<double, 2> eigenvector(const Matrix2& j, double lambda)
{
    // Rows of (J - lambda I) are orthogonal to the eigenvector; use the larger row.
    const double a = j[0][0] - lambda;
    const double b = j[0][1];
    const double c = j[1][0];
    const double d = j[1][1] - lambda;
    std::array<double, 2> v;
    if (std::hypot(a, b) >= std::hypot(c, d)) {
        v = {-b, a};
    } else {
        v = {-d, c};
    }
    const double norm = std::hypot(v[0], v[1]);
    if (norm == 0.0) {
        return {1.0, 0.0};
    }
    return {v[0] / norm, v[1] / norm};
}

Stability classify(const EigenPair& eig)
{
    if (std::abs(eig[0]) < kDegenerateEigenTol || std::abs(eig[1]) < kDegenerateEigenTol) {
        return Stability::Degenerate;
    }
    if (eig[0].imag() != 0.0) {
        const double re = eig[0].real();
        if (re < -kDegenerateEigenTol) {
            return Stability::StableFocus;
        }
        if (re > kDegenerateEigenTol) {
            return Stability::UnstableFocus;
        }
        return Stability::LinearCenter;
    }
    const double l1 = eig[0].real();
    const double l2 = eig[1].real();
    if (l1 < 0.0 && l2 < 0.0) {
        return Stability::StableNode;
    }
    if (l1 > 0.0 && l2 > 0.0) {
        return Stability::UnstableNode;
    }
    return Stability::Saddle;
}

Linearization classify_equilibrium(const VectorField& vf_chart, double z1, double z2)
{
    const auto [f1, f2] = vf_chart(z1, z2);
    if (std::hypot(f1, f2) > 1e-8) {
        throw NotAnEquilibriumError("field does not vanish at (" + std::to_string(z1) + ", " +
                                    std::to_string(z2) + ")");
    }
    const EigenPair eig = eigenvalues(jacobian(vf_chart, z1, z2));
    return {eig, classify(eig)};
}

double Equilibrium::angle() const
{
    return std::atan2(disc.v, disc.u);
}

namespace {

constexpr double kDedupTol = 1e-9;

Equilibrium make_equilibrium(const VectorField& chart_field, ChartId chart, double z1, double z2)
{
    Equilibrium eq;
    eq.chart = chart;
    eq.z1 = z1;
    eq.z2 = z2;
    eq.sphere = chart_to_sphere({chart, z1, z2});
    eq.disc = disc_projection(eq.sphere);
    const Linearization lin = classify_equilibrium(chart_field, z1, z2);
    eq.eigenvalues = lin.eigenvalues;
    eq.classification = lin.classification;
    return eq;
}

const Rational& root_width()
{
    static const Rational w(1, 100000000000000L); // 1e-14
    return w;
}

} // namespace

std::vector<Equilibrium> infinity_equilibria(const VectorField& vf)
{
    if (vf.degree() < 1) {
        throw ParameterError("infinity equilibria need a field of degree >= 1");
    }
    const VectorField u1 = compactified_field(vf, ChartId::U1);
    const UPoly on_equator = u1.p1.restrict_other_to_zero(Var::X);
    if (on_equator.is_zero()) {
        throw RootFindingError("the whole equator consists of equilibria");
    }

    std::vector<Equilibrium> out;
    Rational bound = root_bound(on_equator);
    if (bound.sign() <= 0) {
        bound = Rational(1);
    }
    for (const RealRoot& r : real_roots(on_equator, Rational(0), bound, root_width())) {
        out.push_back(make_equilibrium(u1, ChartId::U1, r.value, 0.0));
    }

    const VectorField u2 = compactified_field(vf, ChartId::U2);
    if (u2.p1.coeff(0, 0).is_zero() && u2.p2.coeff(0, 0).is_zero()) {
        Equilibrium eq = make_equilibrium(u2, ChartId::U2, 0.0, 0.0);
        const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Equilibrium& e) {
            return sphere_distance(e.sphere, eq.sphere) < kDedupTol;
        });
        if (!duplicate) {
            out.push_back(std::move(eq));
        }
    }

    std::stable_sort(out.begin(), out.end(),
                     [](const Equilibrium& a, const Equilibrium& b) { return a.angle() > b.angle(); });
    return out;
}

Equilibrium origin_equilibrium(const VectorField& vf)
{
    Equilibrium eq = make_equilibrium(vf, ChartId::U3, 0.0, 0.0);
    eq.name = "origin";
    return eq;
}

std::optional<double> RayDirection::slope() const
{
    if (b == 0.0) {
        return std::nullopt;
    }
    return a / b;
}

std::vector<RayDirection> invariant_rays(const VectorField& vf)
{
    if (!vf.p1.is_homogeneous() || !vf.p2.is_homogeneous() ||
        (!vf.p1.is_zero() && !vf.p2.is_zero() && vf.p1.degree() != vf.p2.degree())) {
        throw ParameterError("invariant rays need a homogeneous field");
    }
    const Poly2 w = Poly2::x() * vf.p2 - Poly2::y() * vf.p1;
    if (w.is_zero()) {
        throw RootFindingError("every ray is invariant (radial field)");
    }
    const auto top = static_cast<unsigned>(w.degree());

    std::vector<RayDirection> rays;
    if (w.coeff(0, top).is_zero()) {
        rays.push_back({0.0, 1.0});
    }

    // Interior directions (r, 1) with r = x/y > 0.
    std::vector<Rational> coeffs(top + 1);
    for (const auto& [e, c] : w.terms()) {
        coeffs[e.first] += c;
    }
    const UPoly along(std::move(coeffs));
    if (along.degree() >= 1) {
        const Rational bound = root_bound(along);
        for (const RealRoot& r : real_roots(along, Rational(0), bound, root_width())) {
            if (r.exact && r.lo.is_zero()) {
                continue;
            }
            const double norm = std::hypot(r.value, 1.0);
            rays.push_back({r.value / norm, 1.0 / norm});
        }
    }

    if (w.coeff(top, 0).is_zero()) {
        rays.push_back({1.0, 0.0});
    }
    return rays;
}

std::array<SpherePoint, 3> closed_form_equilibria(const FlagModel& model)
{
    const double m = model.m;
    const double k = model.k;
    SpherePoint p1;
    if (model.family == Family::TypeI) {
        const double root = std::sqrt(5 * m * m - 8 * m + 4 * m * k + 4 * k * k + 4);
        p1 = {2 * (m - 1) / root, (m + 2 * k) / root, 0.0};
    } else {
        const double rho = std::sqrt(20 * m * m + 36 * m + 16 * k * k + 16 * m * k + 8 * k + 17);
        p1 = {4 * (m + 1) / rho, (4 * k + 2 * m + 1) / rho, 0.0};
    }
    const double s5 = std::sqrt(5.0);
    return {p1, SpherePoint{2.0 / s5, 1.0 / s5, 0.0}, SpherePoint{1.0, 0.0, 0.0}};
}

NamedEquilibria named_equilibria(const FlagModel& model)
{
    const auto found = infinity_equilibria(polynomial_field(model));
    const auto closed = closed_form_equilibria(model);
    static constexpr std::array<const char*, 3> names{"p1", "p2", "p3"};

    std::array<Equilibrium, 3> matched;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto it = std::find_if(found.begin(), found.end(), [&](const Equilibrium& e) {
            return sphere_distance(e.sphere, closed[i]) <= 1e-10;
        });
        if (it == found.end()) {
            throw ConsistencyError(std::string("closed form for ") + names[i] +
                                   " does not match any computed equilibrium at infinity");
        }
        matched[i] = *it;
        matched[i].name = names[i];
    }
    return {matched[0], matched[1], matched[2]};
}

DiscPoint ray_disc_image(const FlagModel& model, Ray ray, double t)
{
    switch (ray) {
    case Ray::Gamma1: {
        const double m = model.m;
        const double k = model.k;
        if (model.family == Family::TypeI) {
            const double mk = m + 2 * k;
            const double rho = std::sqrt((m * m + 4 * m * k + 4 * k * k + 5 * t * t * m * m -
                                          8 * t * t * m + 4 * t * t + 4 * t * t * m * k +
                                          4 * t * t * k * k) /
                                         (mk * mk));
            return {2 * (m - 1) * t / (rho * mk), t / rho};
        }
        const double s = (4 * k + 2 * m + 1) / (4 * (m + 1));
        const double delta = std::sqrt(1 + t * t + s * s * t * t);
        return {t / delta, s * t / delta};
    }
    case Ray::Gamma2: {
        const double root = std::sqrt(5 * t * t + 1);
        return {2 * t / root, t / root};
    }
    case Ray::Gamma3:
        return {t / std::sqrt(1 + t * t), 0.0};
    }
    return {};
}

} // namespace flagflow
