#pragma once

#include "flagflow/vector_field.hpp"

#include <array>
#include <string_view>

namespace flagflow {

/// Coordinate neighbourhoods of the Poincare sphere: U_i = {y_i > 0},
/// V_i = {y_i < 0}.
enum class ChartId { U1, U2, U3, V1, V2, V3 };

std::string_view chart_name(ChartId c);
ChartId parse_chart(std::string_view text);

struct SpherePoint {
    double y1 = 0.0;
    double y2 = 0.0;
    double y3 = 1.0;
};

/// Orthogonal projection of the closed north hemisphere; the unit circle is
/// the line at infinity.
struct DiscPoint {
    double u = 0.0;
    double v = 0.0;
};

struct ChartPoint {
    ChartId chart = ChartId::U3;
    double z1 = 0.0;
    double z2 = 0.0;
};

/// A point belongs to U_i when y_i exceeds this (V_i: below its negation).
inline constexpr double kChartDomainTol = 1e-9;

/// f+(x, y) = (x, y, 1) / sqrt(1 + x^2 + y^2).
SpherePoint central_projection(double x, double y);
/// (y1, y2); throws HemisphereError for y3 < -1e-12.
DiscPoint disc_projection(const SpherePoint& s);
/// Inverse of disc_projection o central_projection on the open disc.
std::array<double, 2> disc_to_plane(const DiscPoint& d);

ChartPoint chart_coords(const SpherePoint& s, ChartId chart);
SpherePoint chart_to_sphere(const ChartPoint& c);
ChartPoint chart_transition(const ChartPoint& c, ChartId target);

double sphere_distance(const SpherePoint& a, const SpherePoint& b);
double disc_distance(const DiscPoint& a, const DiscPoint& b);

/// Polynomial expression of the compactified field in a chart, with the
/// positive factor 1/Delta(z)^(d-1) dropped. In U1, with d = deg X:
///   z1' = z2^d (-z1 P1(1/z2, z1/z2) + P2(1/z2, z1/z2)),
///   z2' = z2^d (-z2 P1(1/z2, z1/z2)),
/// U2 swaps the roles of P1 and P2, U3 is X itself, and V_i is (-1)^(d-1)
/// times U_i.
VectorField compactified_field(const VectorField& vf, ChartId chart);

} // namespace flagflow
