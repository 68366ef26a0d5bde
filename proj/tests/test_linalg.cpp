#include "doctest.h"
#include "support.hpp"

using namespace hpc;
using hpc::testing::random_matrix;

namespace {

// m(e⊗e)=e, m(e⊗u)=u, m(u⊗e)=u, m(u⊗u)=e in the basis e,u.
template <class Scalar>
Mat<Scalar> kz2_mult() {
  Mat<Scalar> m(2, 4);
  m << 1, 0, 0, 1,
       0, 1, 1, 0;
  return m;
}

template <class Scalar>
Vec<Scalar> vec(std::initializer_list<long long> xs) {
  Vec<Scalar> v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (auto x : xs) v(i++) = Scalar(x);
  return v;
}

// Number of v in F_p^n with m·v = 0, by enumeration.
Index brute_force_kernel_size(const Mat<Modp>& m) {
  const Index n = m.cols();
  const Index p = Modp::modulus();
  Index total = 1;
  for (Index i = 0; i < n; ++i) total *= p;
  Index count = 0;
  Vec<Modp> v(n);
  for (Index code = 0; code < total; ++code) {
    Index c = code;
    for (Index i = 0; i < n; ++i) {
      v(i) = Modp(c % p);
      c /= p;
    }
    if (is_zero(m * v)) ++count;
  }
  return count;
}

Index ipow(Index b, Index e) {
  Index r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("scalar parsing and printing") {
  CHECK(format_scalar(parse_scalar<Rational>("-6/4")) == "-3/2");
  CHECK(format_scalar(parse_scalar<Rational>("+5")) == "5");
  CHECK(parse_scalar<Rational>("3/7") == Rational(3, 7));
  CHECK_THROWS_AS(parse_scalar<Rational>("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar<Rational>("0.5"), Error);
  CHECK_THROWS_AS(parse_scalar<Rational>(""), Error);

  ModulusScope scope(7);
  CHECK(format_scalar(parse_scalar<Modp>("1/2")) == "4");
  CHECK(format_scalar(parse_scalar<Modp>("-1")) == "6");
  CHECK(parse_scalar<Modp>("100000000000000000000") == Modp(2));  // 10^20 ≡ 2 mod 7
  CHECK_THROWS_AS(parse_scalar<Modp>("3/7"), Error);
}

TEST_CASE("modular arithmetic") {
  ModulusScope scope(11);
  for (int a = 1; a < 11; ++a) CHECK(Modp(a) * Modp(a).inverse() == Modp(1));
  CHECK(Modp(-3) == Modp(8));
  CHECK(-Modp(0) == Modp(0));
  {
    ModulusScope inner(5);
    CHECK(Modp::modulus() == 5);
  }
  CHECK(Modp::modulus() == 11);
}

TEST_CASE_TEMPLATE("kernel examples", Scalar, Rational, Modp) {
  ModulusScope scope(3);
  CHECK(kernel<Scalar>(Mat<Scalar>::Zero(2, 3)) == Subspace<Scalar>::full(3));
  CHECK(kernel<Scalar>(identity<Scalar>(3)).dim() == 0);

  auto k = kernel<Scalar>(kz2_mult<Scalar>());
  Mat<Scalar> expected(2, 4);
  expected << 1, 0, 0, -1,
              0, 1, -1, 0;
  CHECK(k.basis() == expected);
  CHECK(is_zero(kz2_mult<Scalar>() * k.basis_columns()));
  CHECK(membership<Scalar>(vec<Scalar>({0, 1, -1, 0}), k));
  CHECK_FALSE(membership<Scalar>(vec<Scalar>({1, 0, 0, 1}), k));
}

TEST_CASE("kernel of the k[Z/2] multiplication agrees with enumeration over F_3") {
  ModulusScope scope(3);
  auto m = kz2_mult<Modp>();
  CHECK(ipow(3, kernel<Modp>(m).dim()) == brute_force_kernel_size(m));
}

TEST_CASE_TEMPLATE("quotient examples", Scalar, Rational, Modp) {
  ModulusScope scope(5);
  auto q0 = quotient<Scalar>(3, Subspace<Scalar>(3));
  CHECK(q0.projection == identity<Scalar>(3));
  CHECK(quotient<Scalar>(3, Subspace<Scalar>::full(3)).dim() == 0);

  auto a2 = kernel<Scalar>(kz2_mult<Scalar>());
  auto line = Subspace<Scalar>::span(vec<Scalar>({1, 0, 0, -1}));
  auto q = quotient<Scalar>(4, line);
  CHECK(q.dim() == 3);
  CHECK(rank<Scalar>(q.projection) == 3);
  // Inside A² (2-dim) the same line leaves a 1-dim quotient.
  auto coords = Subspace<Scalar>::span(a2.coordinate_map() * line.basis_columns());
  auto q2 = quotient<Scalar>(2, coords);
  CHECK(q2.dim() == 1);
  CHECK(rank<Scalar>(q2.projection) == 1);
  CHECK_THROWS_AS(quotient<Scalar>(5, line), Error);
}

TEST_CASE_TEMPLATE("tensor and flip", Scalar, Rational, Modp) {
  ModulusScope scope(7);
  CHECK(tensor(identity<Scalar>(2), identity<Scalar>(3)) == identity<Scalar>(6));
  Vec<Scalar> e = unit_vector<Scalar>(2, 0), u = unit_vector<Scalar>(2, 1);
  CHECK(Vec<Scalar>(flip<Scalar>(2, 2) * tensor(e, u)) == Vec<Scalar>(tensor(u, e)));
  // flip(2,3) maps A⊗B to B⊗A, index (i,j) -> j*2+i.
  Mat<Scalar> f = flip<Scalar>(2, 3);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 3; ++j) CHECK(f(j * 2 + i, i * 3 + j) == Scalar(1));
  CHECK_THROWS_AS(compose<Scalar>(identity<Scalar>(2), identity<Scalar>(3)), Error);
  CHECK_THROWS_AS(add<Scalar>(identity<Scalar>(2), identity<Scalar>(3)), Error);
}

TEST_CASE("leg permutations compose like the permutations themselves") {
  std::vector<Index> dims = {2, 3, 4};
  auto p = leg_permutation(dims, {2, 0, 1});
  // x⊗y⊗z with basis indices (1,2,3) goes to z⊗x⊗y at (3,1,2).
  CHECK(p[flat_index(dims, {1, 2, 3})] == flat_index({4, 2, 3}, {3, 1, 2}));
  auto back = leg_permutation({4, 2, 3}, {1, 2, 0});
  for (Index k = 0; k < 24; ++k) CHECK(back[p[k]] == k);
}

TEST_CASE_TEMPLATE("random properties", Scalar, Rational, Modp) {
  ModulusScope scope(5);
  std::mt19937 rng(20261017);
  for (int trial = 0; trial < 60; ++trial) {
    const Index rows = 1 + trial % 5, cols = 1 + (trial * 7) % 6;
    Mat<Scalar> m = random_matrix<Scalar>(rng, rows, cols);
    auto k = kernel<Scalar>(m);
    CHECK(rank<Scalar>(m) + k.dim() == cols);
    CHECK(is_zero(m * k.basis_columns()));

    // Canonicity: another spanning set of the same space gives the same basis.
    Mat<Scalar> mix = random_matrix<Scalar>(rng, 4, cols, 70);
    Mat<Scalar> spanning(k.dim() + 4, cols);
    spanning << k.basis(), random_matrix<Scalar>(rng, 4, k.dim(), 70) * k.basis();
    CHECK(Subspace<Scalar>::from_rows(spanning) == k);

    // Tensor identity.
    Mat<Scalar> a = random_matrix<Scalar>(rng, 2, 3), b = random_matrix<Scalar>(rng, 3, 2);
    Vec<Scalar> x = random_matrix<Scalar>(rng, 3, 1, 80), y = random_matrix<Scalar>(rng, 2, 1, 80);
    CHECK(Vec<Scalar>(tensor(a, b) * tensor(x, y)) == Vec<Scalar>(tensor(Vec<Scalar>(a * x), Vec<Scalar>(b * y))));

    // Quotient invariants.
    auto q = quotient<Scalar>(cols, k);
    CHECK(q.projection * q.section == identity<Scalar>(q.dim()));
    CHECK(is_zero(q.projection * k.basis_columns()));
    CHECK(rank<Scalar>(q.projection) == cols - k.dim());

    // Dimension formula for sums and intersections.
    auto s1 = Subspace<Scalar>::span(random_matrix<Scalar>(rng, 5, 2, 60));
    auto s2 = Subspace<Scalar>::span(random_matrix<Scalar>(rng, 5, 3, 60));
    auto meet = intersection(s1, s2);
    CHECK(sum(s1, s2).dim() + meet.dim() == s1.dim() + s2.dim());
    CHECK(s1.contains(meet));
    CHECK(s2.contains(meet));

    // Solutions of consistent systems satisfy them.
    Mat<Scalar> rhs = m * random_matrix<Scalar>(rng, cols, 2, 60);
    auto sol = solve<Scalar>(m, rhs);
    REQUIRE(sol);
    CHECK(m * *sol == rhs);
  }
}

TEST_CASE("rank agrees with enumeration over F_3") {
  ModulusScope scope(3);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Mat<Modp> m = random_matrix<Modp>(rng, 1 + trial % 4, 5);
    CHECK(ipow(3, 5 - rank<Modp>(m)) == brute_force_kernel_size(m));
  }
}

TEST_CASE("inverse and inconsistent systems") {
  Mat<Rational> a(2, 2);
  a << 2, 1, 1, 1;
  auto inv = inverse<Rational>(a);
  REQUIRE(inv);
  CHECK(a * *inv == identity<Rational>(2));
  Mat<Rational> sing(2, 2);
  sing << 1, 2, 2, 4;
  CHECK_FALSE(inverse<Rational>(sing));
  Mat<Rational> b(2, 1);
  b << 1, 0;
  CHECK_FALSE(solve<Rational>(sing, b));
}
