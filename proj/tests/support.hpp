#pragma once

#include <random>

#include <algorithm>
#include <type_traits>

#include "hpc/fodc.hpp"

namespace hpc::testing {

inline HopfPiCoalgebra<Rational> kz2() { return group_algebra<Rational>(cyclic(2), FieldSpec::rationals()); }

// The following need an active ModulusScope for the prime in question.
inline HopfPiCoalgebra<Modp> f7z3() { return group_algebra<Modp>(cyclic(3), FieldSpec::prime(7)); }
inline HopfPiCoalgebra<Modp> f3z2() { return group_algebra<Modp>(cyclic(2), FieldSpec::prime(3)); }
inline HopfPiCoalgebra<Modp> sweedler(std::uint32_t p) { return sweedler_algebra<Modp>(FieldSpec::prime(p)); }

// F_p[Z/3] graded by Z/2, twisted by inversion on the odd component.
inline HopfPiCoalgebra<Modp> twisted_z3(std::uint32_t p) {
  auto base = group_algebra<Modp>(cyclic(3), FieldSpec::prime(p));
  Mat<Modp> inv = base.antipode(base.one());
  return twisted_family<Modp>(base, cyclic(2), {identity<Modp>(3), inv});
}

// Sweedler's algebra over F_p graded by Z/2, twisted by x ↦ −x on the odd component.
inline HopfPiCoalgebra<Modp> twisted_sweedler(std::uint32_t p) {
  auto base = sweedler(p);
  Mat<Modp> phi = identity<Modp>(4);
  phi(2, 2) = Modp(-1);
  phi(3, 3) = Modp(-1);
  return twisted_family<Modp>(base, cyclic(2), {identity<Modp>(4), phi});
}

template <class Scalar>
Mat<Scalar> random_matrix(std::mt19937& rng, Index rows, Index cols, int density_percent = 40) {
  std::uniform_int_distribution<int> coin(0, 99), value(-3, 3);
  Mat<Scalar> m = Mat<Scalar>::Zero(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      if (coin(rng) < density_percent) m(i, j) = Scalar(value(rng));
  return m;
}

}  // namespace hpc::testing

namespace hpc::testing {

// Runs fn(name, h) on every Hopf fixture; modular ones inside their ModulusScope.
template <class Fn>
void for_each_fixture(Fn&& fn) {
  {
    auto h = kz2();
    fn("k[Z2]", h);
    fn("k[Z2] constant over Z2", constant_family<Rational>(h, cyclic(2)));
  }
  {
    ModulusScope scope(7);
    auto h = f7z3();
    fn("F7[Z3]", h);
    fn("F7[Z3] constant over Z2", constant_family<Modp>(h, cyclic(2)));
    fn("F7[Z3] twisted over Z2", twisted_z3(7));
  }
  {
    ModulusScope scope(3);
    fn("F3[Z2]", f3z2());
    fn("Sweedler F3", sweedler(3));
    fn("Sweedler F3 twisted over Z2", twisted_sweedler(3));
  }
}

}  // namespace hpc::testing

namespace hpc::testing {

template <class H>
using scalar_of = typename std::decay_t<decltype(std::declval<H>().counit())>::Scalar;

// Right ideals to sweep over: the full enumeration on small prime fields,
// otherwise the extremes plus the ideals generated by single kernel vectors.
template <class Scalar>
std::vector<RightIdeal<Scalar>> candidate_ideals(const HopfPiCoalgebra<Scalar>& h) {
  if constexpr (std::is_same_v<Scalar, Modp>) {
    return enumerate_right_ideals(h);
  } else {
    const auto ker = counit_kernel(h);
    std::vector<RightIdeal<Scalar>> out{right_ideal(h, Subspace<Scalar>(ker.ambient_dim())), right_ideal(h, ker)};
    for (Index k = 0; k < ker.dim(); ++k) {
      auto r = right_ideal_from_generators<Scalar>(h, ker.basis_columns().col(k));
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
    return out;
  }
}

}  // namespace hpc::testing
