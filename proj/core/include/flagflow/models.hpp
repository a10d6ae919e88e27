#pragma once

#include "flagflow/rational.hpp"
#include "flagflow/vector_field.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace flagflow {

/// TypeI: SO(2n+1)/(U(m) x SO(2k+1)); TypeII: Sp(n)/(U(m) x Sp(k)).
enum class Family { TypeI, TypeII };

std::string_view family_name(Family f);
Family parse_family(std::string_view text);

struct FlagModel {
    Family family = Family::TypeI;
    int m = 2;
    int k = 2;
    int n = 4;
    bool strict = true;
    /// Constraint violations accepted in non-strict mode.
    std::vector<std::string> warnings;
};

/// Validates (m, k). Always requires m >= 1 and k >= 0. Strict mode also
/// enforces m > 1, k != 1 for TypeI and k >= 3 for TypeII; non-strict mode
/// records the violation in `warnings` instead.
FlagModel make_model(Family family, int m, int k, bool strict = true);

/// Invariant metric: lambda1 scales the horizontal summand m1 (tangent to the
/// base of the fibration), lambda2 the vertical summand m2 (the fiber).
template <class T>
struct BasicMetric {
    T lambda1;
    T lambda2;
};
using Metric = BasicMetric<double>;
using ExactMetric = BasicMetric<Rational>;

Metric make_metric(double lambda1, double lambda2);
ExactMetric make_metric(const Rational& lambda1, const Rational& lambda2);

template <class T>
struct BasicRicci {
    T r1;
    T r2;
};
using RicciComponents = BasicRicci<double>;
using ExactRicciComponents = BasicRicci<Rational>;

RicciComponents ricci_components(const FlagModel& model, const Metric& g);
ExactRicciComponents ricci_components(const FlagModel& model, const ExactMetric& g);

/// Right-hand side of the unnormalized flow in (x, y) = (lambda1, lambda2),
/// exactly as the rational system is written. This is -Ric, i.e. the flow
/// dlambda_i/dt = -2 r_i run at half speed. Requires x > 0, y > 0.
std::array<double, 2> raw_rhs(const FlagModel& model, double x, double y);
std::array<Rational, 2> raw_rhs(const FlagModel& model, const Rational& x, const Rational& y);

/// y^2 times the raw system: a homogeneous quadratic field with the same
/// orbits in the open first quadrant.
VectorField polynomial_field(const FlagModel& model);

/// r1*lambda2 - r2*lambda1; zero exactly on Einstein rays.
double einstein_defect(const FlagModel& model, const Metric& g);
Rational einstein_defect(const FlagModel& model, const ExactMetric& g);

struct FibrationInfo {
    int dim_m1 = 0;
    int dim_m2 = 0;
    std::string fiber_label;
    std::string base_label;
    std::string total_label;
};

FibrationInfo fibration_info(const FlagModel& model);

/// Slopes x/y of the two invariant lines through the origin. gamma1 is the
/// non-Kaehler Einstein ray, gamma2 (x = 2y) the Kaehler-Einstein ray.
Rational gamma1_slope(const FlagModel& model);
Rational gamma2_slope(const FlagModel& model);

/// Coefficients of the raw system:
///   TypeI:  x' = a + b x^2/y^2,  y' = c + e (y^2 - (x-y)^2)/(x y)
///   TypeII: x' = a + b x^2/y^2,  y' = c - e x/y
struct RawCoefficients {
    Rational a;
    Rational b;
    Rational c;
    Rational e;
};

RawCoefficients raw_coefficients(const FlagModel& model);
std::array<std::string, 2> raw_system_str(const FlagModel& model);

} // namespace flagflow
