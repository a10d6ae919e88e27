#pragma once

#include "flagflow/compactify.hpp"
#include "flagflow/models.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flagflow {

enum class Stability {
    StableNode,
    UnstableNode,
    Saddle,
    StableFocus,
    UnstableFocus,
    LinearCenter,
    Degenerate,
};

/// snake_case name used in exports ("stable_node", ...).
std::string_view stability_name(Stability s);
bool is_attracting(Stability s);

using Matrix2 = std::array<std::array<double, 2>, 2>;
using EigenPair = std::array<std::complex<double>, 2>;

/// Eigenvalues with modulus below this are treated as zero.
inline constexpr double kDegenerateEigenTol = 1e-10;

/// Jacobian of a chart field from exact partial derivatives.
Matrix2 jacobian(const VectorField& vf, double z1, double z2);

/// Eigenvalues of a real 2x2 matrix. For a triangular matrix the diagonal
/// order is kept; otherwise a real pair is returned in descending order.
EigenPair eigenvalues(const Matrix2& j);

/// Unit eigenvector for a real eigenvalue.
std::array<double, 2> eigenvector(const Matrix2& j, double lambda);

Stability classify(const EigenPair& eig);

struct Linearization {
    EigenPair eigenvalues;
    Stability classification = Stability::Degenerate;
};

/// Linearizes `vf_chart` at an equilibrium. Throws NotAnEquilibriumError when
/// the field norm there exceeds 1e-8.
Linearization classify_equilibrium(const VectorField& vf_chart, double z1, double z2);

struct Equilibrium {
    std::string name;
    ChartId chart = ChartId::U1;
    double z1 = 0.0;
    double z2 = 0.0;
    SpherePoint sphere;
    DiscPoint disc;
    EigenPair eigenvalues;
    Stability classification = Stability::Degenerate;

    /// Polar angle on the disc.
    double angle() const;
};

/// Equilibria on the closed first-quadrant arc of the equator: real roots
/// z1 >= 0 of the U1 field restricted to z2 = 0, plus the U2 origin when
/// the field vanishes there. Ordered by disc angle, descending.
std::vector<Equilibrium> infinity_equilibria(const VectorField& vf);

/// The finite origin of a homogeneous field (reported, never a basin target).
Equilibrium origin_equilibrium(const VectorField& vf);

/// Unit direction (a, b) of an invariant ray through the origin.
struct RayDirection {
    double a = 1.0;
    double b = 0.0;

    /// x/y, empty for the x-axis ray.
    std::optional<double> slope() const;
};

/// Real root directions of W(a, b) = a P2(a, b) - b P1(a, b) in the closed
/// first quadrant, ordered from the y-axis to the x-axis. Requires a
/// homogeneous field.
std::vector<RayDirection> invariant_rays(const VectorField& vf);

struct NamedEquilibria {
    Equilibrium p1;
    Equilibrium p2;
    Equilibrium p3;

    /// p1, p2, p3 (descending disc angle).
    std::vector<Equilibrium> all() const { return {p1, p2, p3}; }
};

/// Closed-form sphere coordinates of p1, p2, p3.
std::array<SpherePoint, 3> closed_form_equilibria(const FlagModel& model);

/// Closed forms cross-checked against infinity_equilibria to 1e-10; throws
/// ConsistencyError on disagreement.
NamedEquilibria named_equilibria(const FlagModel& model);

enum class Ray { Gamma1, Gamma2, Gamma3 };

/// pi o f+ o gamma(t) for the invariant lines gamma1, gamma2 and the x-axis.
DiscPoint ray_disc_image(const FlagModel& model, Ray ray, double t);

} // namespace flagflow
