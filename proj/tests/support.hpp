#pragma once

#include <flatfront/core.hpp>

#include "oracles.hpp"

#include <complex>
#include <random>

namespace testing_support {

using flatfront::Complex;
using flatfront::Real;

inline Complex C(double re, double im = 0) { return flatfront::make_complex(re, im); }

inline oracle::LC lc(const Complex& z)
{
    return {static_cast<long double>(z.real()), static_cast<long double>(z.imag())};
}

inline Complex from_q(const oracle::QComplex& z)
{
    return Complex(Real(z.re), Real(z.im));
}

inline double gap(const Complex& a, const Complex& b) { return flatfront::to_double(abs(a - b)); }

inline Complex random_complex(std::mt19937& rng, double lo = -1, double hi = 1)
{
    std::uniform_real_distribution<double> u(lo, hi);
    const double re = u(rng);
    return C(re, u(rng));
}

}  // namespace testing_support
