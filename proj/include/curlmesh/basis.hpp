//! \file basis.hpp
//  \brief shifted Legendre basis on the unit reference interval [-1/2,1/2]
//         plus small Gauss-Legendre quadrature rules.
//
// All zone-local polynomials in this project are expansions over
//   L0 = 1, L1 = x, L2 = x^2 - 1/12, L3 = x^3 - 3x/20,
//   L4 = x^4 - 3x^2/14 + 3/560,
// which are mutually orthogonal on [-1/2,1/2] and have zero mean for n>=1.

#ifndef CURLMESH_BASIS_HPP_
#define CURLMESH_BASIS_HPP_

#include <array>
#include <cstddef>

namespace curlmesh {

inline double leg(int n, double x) {
  switch (n) {
    case 0: return 1.0;
    case 1: return x;
    case 2: return x * x - 1.0 / 12.0;
    case 3: return x * (x * x - 3.0 / 20.0);
    case 4: return ((x * x - 3.0 / 14.0) * x * x) + 3.0 / 560.0;
    default: return 0.0;
  }
}

inline double dleg(int n, double x) {
  switch (n) {
    case 0: return 0.0;
    case 1: return 1.0;
    case 2: return 2.0 * x;
    case 3: return 3.0 * x * x - 3.0 / 20.0;
    case 4: return 4.0 * x * x * x - 3.0 * x / 7.0;
    default: return 0.0;
  }
}

//! antiderivative of leg(n,.) vanishing at 0; used for exact line means
inline double ileg(int n, double x) {
  const double x2 = x * x;
  switch (n) {
    case 0: return x;
    case 1: return 0.5 * x2;
    case 2: return x * (x2 / 3.0 - 1.0 / 12.0);
    case 3: return x2 * (x2 / 4.0 - 3.0 / 40.0);
    default: return 0.0;
  }
}

//! mean of leg(n,.) over [a,b] (a<b), exact
inline double leg_mean(int n, double a, double b) {
  return (ileg(n, b) - ileg(n, a)) / (b - a);
}

//! mean of L_n over the unit-width cell centered at integer offset p:
//!   L0->1, L1->p, L2->p^2, L3->p^3+p/10
inline double leg_cell_mean(int n, double p) {
  switch (n) {
    case 0: return 1.0;
    case 1: return p;
    case 2: return p * p;
    case 3: return p * (p * p + 0.1);
    default: return 0.0;
  }
}

//! Gauss-Legendre nodes/weights on [-1/2,1/2]; weights sum to 1
template <int N>
struct Gauss;

template <>
struct Gauss<1> {
  static constexpr std::array<double, 1> x{0.0};
  static constexpr std::array<double, 1> w{1.0};
};
template <>
struct Gauss<2> {
  static constexpr std::array<double, 2> x{-0.28867513459481287, 0.28867513459481287};
  static constexpr std::array<double, 2> w{0.5, 0.5};
};
template <>
struct Gauss<3> {
  static constexpr std::array<double, 3> x{-0.3872983346207417, 0.0, 0.3872983346207417};
  static constexpr std::array<double, 3> w{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
};
template <>
struct Gauss<4> {
  static constexpr std::array<double, 4> x{-0.43056815579702629, -0.16999052179242816,
                                           0.16999052179242816, 0.43056815579702629};
  static constexpr std::array<double, 4> w{0.17392742256872692, 0.32607257743127305,
                                           0.32607257743127305, 0.17392742256872692};
};
template <>
struct Gauss<5> {
  static constexpr std::array<double, 5> x{-0.45308992296933198, -0.26923465505284155, 0.0,
                                           0.26923465505284155, 0.45308992296933198};
  static constexpr std::array<double, 5> w{0.11846344252809454, 0.23931433524968324,
                                           0.28444444444444444, 0.23931433524968324,
                                           0.11846344252809454};
};

}  // namespace curlmesh

#endif  // CURLMESH_BASIS_HPP_
