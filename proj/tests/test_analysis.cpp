#include "doctest.h"
#include "support.hpp"

using namespace flagflow;
using testing_support::q;

namespace {

const Poly2 X = Poly2::x();
const Poly2 Y = Poly2::y();

std::vector<FlagModel> strict_models(int max_n)
{
    std::vector<FlagModel> out;
    for (int m = 1; m <= max_n; ++m) {
        for (int k = 0; m + k <= max_n; ++k) {
            if (m > 1 && k != 1) {
                out.push_back(make_model(Family::TypeI, m, k));
            }
            if (k >= 3) {
                out.push_back(make_model(Family::TypeII, m, k));
            }
        }
    }
    return out;
}

void check_eigen(const EigenPair& e, double a, double b)
{
    CHECK(std::abs(e[0].real() - a) <= 1e-12);
    CHECK(std::abs(e[1].real() - b) <= 1e-12);
    CHECK(e[0].imag() == 0.0);
    CHECK(e[1].imag() == 0.0);
}

} // namespace

TEST_SUITE("analysis")
{
    TEST_CASE("infinity equilibria, type I m=2 k=2")
    {
        const auto eqs = infinity_equilibria(polynomial_field(make_model(Family::TypeI, 2, 2)));
        REQUIRE(eqs.size() == 3);
        CHECK(eqs[0].chart == ChartId::U1);
        CHECK(std::abs(eqs[0].z1 - 3.0) <= 1e-13);
        CHECK(std::abs(eqs[1].z1 - 0.5) <= 1e-13);
        CHECK(eqs[2].z1 == 0.0);
        for (const auto& e : eqs) {
            CHECK(e.chart != ChartId::U2);
            CHECK(e.z2 == 0.0);
        }
    }

    TEST_CASE("type I p1 closed form")
    {
        for (const auto& [m, k] : std::vector<std::pair<int, int>>{{2, 2}, {3, 0}, {4, 3}, {7, 2}}) {
            const FlagModel md = make_model(Family::TypeI, m, k);
            const double root = std::sqrt(5.0 * m * m - 8.0 * m + 4.0 * m * k + 4.0 * k * k + 4.0);
            const auto eqs = infinity_equilibria(polynomial_field(md));
            REQUIRE(eqs.size() == 3);
            CHECK(std::abs(eqs[0].sphere.y1 - 2.0 * (m - 1) / root) <= 1e-12);
            CHECK(std::abs(eqs[0].sphere.y2 - (m + 2.0 * k) / root) <= 1e-12);
            CHECK(std::abs(eqs[0].sphere.y3) <= 1e-12);
        }
    }

    TEST_CASE("type II m=1 k=3 disc points")
    {
        const NamedEquilibria n = named_equilibria(make_model(Family::TypeII, 1, 3));
        CHECK(std::abs(n.p1.disc.u - 8.0 / 17) <= 1e-12);
        CHECK(std::abs(n.p1.disc.v - 15.0 / 17) <= 1e-12);
        CHECK(std::abs(n.p2.disc.u - 2 / std::sqrt(5.0)) <= 1e-12);
        CHECK(std::abs(n.p2.disc.v - 1 / std::sqrt(5.0)) <= 1e-12);
        CHECK(n.p3.disc.u == 1.0);
        CHECK(n.p3.disc.v == 0.0);
        CHECK(n.p1.classification == Stability::StableNode);
    }

    TEST_CASE("linearization examples, type I m=2 k=2")
    {
        const VectorField u1 = compactified_field(polynomial_field(make_model(Family::TypeI, 2, 2)), ChartId::U1);
        const Linearization p2 = classify_equilibrium(u1, 0.5, 0.0);
        check_eigen(p2.eigenvalues, 5.0 / 14, -3.0 / 7);
        CHECK(p2.classification == Stability::Saddle);
        const Linearization p1 = classify_equilibrium(u1, 3.0, 0.0);
        check_eigen(p1.eigenvalues, -15.0 / 7, -41.0 / 14);
        CHECK(p1.classification == Stability::StableNode);
        const Linearization p3 = classify_equilibrium(u1, 0.0, 0.0);
        check_eigen(p3.eigenvalues, -3.0 / 7, -5.0 / 14);
        CHECK(p3.classification == Stability::StableNode);
        CHECK_THROWS_AS(classify_equilibrium(u1, 1.0, 0.0), NotAnEquilibriumError);
    }

    TEST_CASE("classification patterns")
    {
        using C = std::complex<double>;
        CHECK(classify({C(-1, 0), C(-2, 0)}) == Stability::StableNode);
        CHECK(classify({C(1, 0), C(2, 0)}) == Stability::UnstableNode);
        CHECK(classify({C(1, 0), C(-2, 0)}) == Stability::Saddle);
        CHECK(classify({C(-1, 2), C(-1, -2)}) == Stability::StableFocus);
        CHECK(classify({C(1, 2), C(1, -2)}) == Stability::UnstableFocus);
        CHECK(classify({C(0, 2), C(0, -2)}) == Stability::LinearCenter);
        CHECK(classify({C(1e-11, 0), C(-2, 0)}) == Stability::Degenerate);
        CHECK(stability_name(Stability::StableNode) == "stable_node");
        CHECK(stability_name(Stability::Saddle) == "saddle");
        const EigenPair rot = eigenvalues(Matrix2{{{0.0, -1.0}, {1.0, 0.0}}});
        CHECK(std::abs(std::abs(rot[0].imag()) - 1.0) <= 1e-15);
    }

    TEST_CASE("invariant rays examples")
    {
        const auto a = invariant_rays(polynomial_field(make_model(Family::TypeI, 2, 2)));
        REQUIRE(a.size() == 3);
        CHECK(std::abs(*a[0].slope() - 1.0 / 3) <= 1e-12);
        CHECK(std::abs(*a[1].slope() - 2.0) <= 1e-12);
        CHECK_FALSE(a[2].slope().has_value());
        const auto b = invariant_rays(polynomial_field(make_model(Family::TypeII, 1, 3)));
        REQUIRE(b.size() == 3);
        CHECK(std::abs(*b[0].slope() - 8.0 / 15) <= 1e-12);
        CHECK(std::abs(*b[1].slope() - 2.0) <= 1e-12);
        CHECK(b[2].b == 0.0);
        const auto c = invariant_rays(VectorField{X * X, Y * Y});
        REQUIRE(c.size() == 3);
        CHECK(c[0].a == 0.0);
        CHECK(c[0].b == 1.0);
        CHECK(std::abs(c[1].a - std::sqrt(0.5)) <= 1e-15);
        CHECK(std::abs(c[1].b - std::sqrt(0.5)) <= 1e-15);
        CHECK(c[2].a == 1.0);
        CHECK_THROWS_AS(invariant_rays(VectorField{X * X + Y, Y}), ParameterError);
    }

    TEST_CASE("named equilibria examples")
    {
        const NamedEquilibria n = named_equilibria(make_model(Family::TypeI, 2, 2));
        CHECK(n.p1.name == "p1");
        CHECK(std::abs(n.p1.disc.u - 0.316228) <= 1e-6);
        CHECK(std::abs(n.p1.disc.v - 0.948683) <= 1e-6);
        CHECK(n.p2.classification == Stability::Saddle);
        for (const FlagModel& md : {make_model(Family::TypeI, 3, 0), make_model(Family::TypeII, 5, 3)}) {
            const NamedEquilibria e = named_equilibria(md);
            CHECK(e.p3.disc.u == 1.0);
            CHECK(e.p3.disc.v == 0.0);
        }
        const auto all = n.all();
        CHECK(all[0].angle() > all[1].angle());
        CHECK(all[1].angle() > all[2].angle());
    }

    TEST_CASE("finite origin is degenerate")
    {
        const Equilibrium o = origin_equilibrium(polynomial_field(make_model(Family::TypeI, 2, 2)));
        CHECK(o.classification == Stability::Degenerate);
        CHECK(o.name == "origin");
    }

    TEST_CASE("ray endpoints match the equilibria")
    {
        for (const FlagModel& md : strict_models(9)) {
            const NamedEquilibria n = named_equilibria(md);
            const std::array<std::pair<Ray, const Equilibrium*>, 3> pairs{
                {{Ray::Gamma1, &n.p1}, {Ray::Gamma2, &n.p2}, {Ray::Gamma3, &n.p3}}};
            for (const auto& [ray, eq] : pairs) {
                const DiscPoint d = ray_disc_image(md, ray, 1e6);
                CHECK(disc_distance(d, eq->disc) <= 1e-10);
                // The ray images stay inside the disc and start at its center.
                const DiscPoint c = ray_disc_image(md, ray, 0.0);
                CHECK(std::hypot(c.u, c.v) == 0.0);
            }
            // gamma2 image formula.
            const DiscPoint g = ray_disc_image(md, Ray::Gamma2, 0.7);
            const DiscPoint ref = disc_projection(central_projection(1.4, 0.7));
            CHECK(disc_distance(g, ref) <= 1e-15);
            const DiscPoint g1 = ray_disc_image(md, Ray::Gamma1, 0.9);
            const double s = gamma1_slope(md).to_double();
            const DiscPoint ref1 = disc_projection(central_projection(s * 0.9, 0.9));
            const bool type_i = md.family == Family::TypeI;
            // Type I parametrizes by y = t, type II by x = t.
            const DiscPoint ref1b = disc_projection(central_projection(0.9, 0.9 / s));
            CHECK(disc_distance(g1, type_i ? ref1 : ref1b) <= 1e-14);
        }
    }

    TEST_CASE("strict sweep: three equilibria, two interior rays")
    {
        for (const FlagModel& md : strict_models(12)) {
            INFO("family ", family_name(md.family), " m=", md.m, " k=", md.k);
            const VectorField vf = polynomial_field(md);
            const auto eqs = infinity_equilibria(vf);
            REQUIRE(eqs.size() == 3);
            CHECK(eqs[0].classification == Stability::StableNode);
            CHECK(eqs[1].classification == Stability::Saddle);
            CHECK(eqs[2].classification == Stability::StableNode);
            for (const Equilibrium& e : eqs) {
                const SpherePoint& s = e.sphere;
                CHECK(std::abs(std::sqrt(s.y1 * s.y1 + s.y2 * s.y2 + s.y3 * s.y3) - 1.0) <= 1e-12);
                CHECK(std::abs(s.y3) <= 1e-12);
                CHECK(std::abs(std::hypot(e.disc.u, e.disc.v) - 1.0) <= 1e-12);
                const auto f = compactified_field(vf, e.chart)(e.z1, e.z2);
                CHECK(std::hypot(f[0], f[1]) <= 1e-10);
            }
            const auto rays = invariant_rays(vf);
            REQUIRE(rays.size() == 3);
            CHECK(rays[0].b > 0.0);
            CHECK(rays[1].b > 0.0);
            CHECK(rays[0].a > 0.0);
            CHECK(rays[2].b == 0.0);
            for (const RayDirection& r : rays) {
                CHECK(std::abs(std::hypot(r.a, r.b) - 1.0) <= 1e-15);
                const double residual = r.a * vf.p2.eval(r.a, r.b) - r.b * vf.p1.eval(r.a, r.b);
                CHECK(std::abs(residual) <= 1e-12);
            }
            CHECK_NOTHROW(named_equilibria(md));
        }
    }

    TEST_CASE("eigenvectors at the saddle")
    {
        for (const FlagModel& md : strict_models(8)) {
            const NamedEquilibria n = named_equilibria(md);
            const VectorField chart_field = compactified_field(polynomial_field(md), n.p2.chart);
            const Matrix2 j = jacobian(chart_field, n.p2.z1, n.p2.z2);
            const EigenPair e = eigenvalues(j);
            const double pos = std::max(e[0].real(), e[1].real());
            const double neg = std::min(e[0].real(), e[1].real());
            REQUIRE(pos > 0.0);
            REQUIRE(neg < 0.0);
            const auto vp = eigenvector(j, pos);
            const auto vn = eigenvector(j, neg);
            // Unstable direction along the equator (z2 = 0), stable one transverse to it.
            CHECK(std::abs(vp[1]) <= 1e-12);
            CHECK(std::abs(vn[1]) > 1e-3);
            // The stable direction is the gamma2 direction: z1 = y/x = 1/2 along it.
            CHECK(std::abs(n.p2.z1 - 0.5) <= 1e-12);
        }
    }
}
