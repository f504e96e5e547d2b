#include <flatfront/poincare.hpp>

namespace flatfront {

PoincarePoint poincare_project(const HermitianMat& X, const Real& tol)
{
    if (!(X[0] > 0)) throw Error(ErrorKind::WrongSheet, "point is not on the forward sheet");
    const Real scale = std::max(Real(1), euclidean_dot(X, X));
    const Real defect = abs(minkowski(X, X) + 1) / scale;
    if (defect > tol) throw Error(ErrorKind::NotUnitTimelike, "point is not unit timelike", {}, to_double(defect));
    const Real den = 1 + X[0];
    return PoincarePoint{{X[1] / den, X[2] / den, X[3] / den}};
}

}  // namespace flatfront
