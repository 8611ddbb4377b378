#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace affqh {

// Exact arithmetic everywhere: arbitrary-precision integers for polynomial
// coefficients and linear-system pivots, exact rationals for affine points.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

} // namespace affqh
