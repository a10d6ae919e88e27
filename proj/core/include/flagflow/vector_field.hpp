#pragma once

#include "flagflow/poly2.hpp"

#include <algorithm>
#include <array>

namespace flagflow {

/// Planar polynomial field (P1, P2).
struct VectorField {
    Poly2 p1;
    Poly2 p2;

    int degree() const { return std::max(p1.degree(), p2.degree()); }

    std::array<double, 2> operator()(double x, double y) const
    {
        return {p1.eval(x, y), p2.eval(x, y)};
    }

    friend bool operator==(const VectorField&, const VectorField&) = default;
};

} // namespace flagflow
