#pragma once

#include <flatfront/frame.hpp>

#include <array>

namespace flatfront {

/// Point of the open unit ball (Poincare model of hyperbolic space).
struct PoincarePoint
{
    std::array<Real, 3> y{};

    Real norm() const { return sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]); }
};

/// Stereographic projection of the forward hyperboloid sheet into the unit
/// ball from the base point o = E0: y = (x1, x2, x3) / (1 + x0).
/// Throws WrongSheet if x0 <= 0 and NotUnitTimelike if (X, X) differs from
/// -1 by more than tol relative to max(1, |X|^2).
PoincarePoint poincare_project(const HermitianMat& X, const Real& tol = default_tolerances().geo);

}  // namespace flatfront
