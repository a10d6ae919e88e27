#include "flagflow/compactify.hpp"

#include "flagflow/errors.hpp"

#include <cmath>
#include <string>

namespace flagflow {

std::string_view chart_name(ChartId c)
{
    switch (c) {
    case ChartId::U1: return "U1";
    case ChartId::U2: return "U2";
    case ChartId::U3: return "U3";
    case ChartId::V1: return "V1";
    case ChartId::V2: return "V2";
    case ChartId::V3: return "V3";
    }
    return "?";
}

ChartId parse_chart(std::string_view text)
{
    for (ChartId c : {ChartId::U1, ChartId::U2, ChartId::U3, ChartId::V1, ChartId::V2, ChartId::V3}) {
        if (chart_name(c) == text) {
            return c;
        }
    }
    throw ParameterError("unknown chart '" + std::string(text) + "'");
}

SpherePoint central_projection(double x, double y)
{
    const double delta = std::sqrt(1.0 + x * x + y * y);
    return {x / delta, y / delta, 1.0 / delta};
}

DiscPoint disc_projection(const SpherePoint& s)
{
    if (s.y3 < -1e-12) {
        throw HemisphereError("disc projection is defined on the closed north hemisphere only");
    }
    return {s.y1, s.y2};
}

std::array<double, 2> disc_to_plane(const DiscPoint& d)
{
    const double r2 = d.u * d.u + d.v * d.v;
    if (!(r2 < 1.0)) {
        throw DomainError("disc point on or outside the equator has no finite preimage");
    }
    const double y3 = std::sqrt(1.0 - r2);
    return {d.u / y3, d.v / y3};
}

namespace {

int axis_of(ChartId c)
{
    switch (c) {
    case ChartId::U1:
    case ChartId::V1: return 0;
    case ChartId::U2:
    case ChartId::V2: return 1;
    default: return 2;
    }
}

bool is_negative_chart(ChartId c)
{
    return c == ChartId::V1 || c == ChartId::V2 || c == ChartId::V3;
}

} // namespace

ChartPoint chart_coords(const SpherePoint& s, ChartId chart)
{
    const std::array<double, 3> y{s.y1, s.y2, s.y3};
    const int i = axis_of(chart);
    const double yi = y[static_cast<std::size_t>(i)];
    const bool ok = is_negative_chart(chart) ? yi < -kChartDomainTol : yi > kChartDomainTol;
    if (!ok) {
        throw ChartDomainError("point is outside chart " + std::string(chart_name(chart)));
    }
    // (j, k) are the remaining indices in increasing order.
    const int j = i == 0 ? 1 : 0;
    const int k = i == 2 ? 1 : 2;
    return {chart, y[static_cast<std::size_t>(j)] / yi, y[static_cast<std::size_t>(k)] / yi};
}

SpherePoint chart_to_sphere(const ChartPoint& c)
{
    const double s = (is_negative_chart(c.chart) ? -1.0 : 1.0) /
                     std::sqrt(1.0 + c.z1 * c.z1 + c.z2 * c.z2);
    switch (axis_of(c.chart)) {
    case 0: return {s, c.z1 * s, c.z2 * s};
    case 1: return {c.z1 * s, s, c.z2 * s};
    default: return {c.z1 * s, c.z2 * s, s};
    }
}

ChartPoint chart_transition(const ChartPoint& c, ChartId target)
{
    if (c.chart == target) {
        return c;
    }
    return chart_coords(chart_to_sphere(c), target);
}

double sphere_distance(const SpherePoint& a, const SpherePoint& b)
{
    return std::hypot(a.y1 - b.y1, a.y2 - b.y2, a.y3 - b.y3);
}

double disc_distance(const DiscPoint& a, const DiscPoint& b)
{
    return std::hypot(a.u - b.u, a.v - b.v);
}

VectorField compactified_field(const VectorField& vf, ChartId chart)
{
    const int d = vf.degree();
    const int axis = axis_of(chart);
    if (axis == 2 || d < 0) {
        VectorField out = vf;
        if (is_negative_chart(chart) && d >= 0 && (d - 1) % 2 != 0) {
            out.p1 = -out.p1;
            out.p2 = -out.p2;
        }
        return out;
    }

    const Poly2 z1 = Poly2::x();
    const Poly2 z2 = Poly2::y();
    // Homogeneous piece of degree e contributes P_e(1, z1) z2^(d-e) in U1
    // (P_e(z1, 1) z2^(d-e) in U2) to z2^d P(., .).
    const auto lift = [&](const Poly2& p) {
        Poly2 out;
        for (int e = 0; e <= d; ++e) {
            const Poly2 part = p.homogeneous_part(static_cast<unsigned>(e));
            if (part.is_zero()) {
                continue;
            }
            const Poly2 restricted =
                axis == 0 ? part.substitute(Poly2(1), z1) : part.substitute(z1, Poly2(1));
            out += restricted * pow(z2, static_cast<unsigned>(d - e));
        }
        return out;
    };

    const Poly2 q1 = lift(vf.p1);
    const Poly2 q2 = lift(vf.p2);
    // U1: (-z1 Q1 + Q2, -z2 Q1); U2: (-z1 Q2 + Q1, -z2 Q2).
    const Poly2& lead = axis == 0 ? q1 : q2;
    const Poly2& other = axis == 0 ? q2 : q1;
    VectorField out{other - z1 * lead, -(z2 * lead)};
    if (is_negative_chart(chart) && (d - 1) % 2 != 0) {
        out.p1 = -out.p1;
        out.p2 = -out.p2;
    }
    return out;
}

} // namespace flagflow
