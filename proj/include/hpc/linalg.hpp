#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/KroneckerProduct>

#include "hpc/error.hpp"
#include "hpc/scalar.hpp"

namespace hpc {

using Index = Eigen::Index;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::DimensionMismatch, what);
}

inline std::string shape(Index r, Index c) { return std::to_string(r) + "x" + std::to_string(c); }

}  // namespace detail

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!(m(i, j) == S(0))) return false;
  return true;
}

template <class Scalar>
Vec<Scalar> unit_vector(Index n, Index i) {
  Vec<Scalar> v = Vec<Scalar>::Zero(n);
  v(i) = Scalar(1);
  return v;
}

template <class Scalar>
Mat<Scalar> identity(Index n) {
  return Mat<Scalar>::Identity(n, n);
}

// Kronecker product; (i,j) -> i*rows(b)+j on both sides.
template <class A, class B>
Mat<typename A::Scalar> tensor(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return Eigen::kroneckerProduct(a.derived().eval(), b.derived().eval()).eval();
}

template <class A, class B, class... Rest>
Mat<typename A::Scalar> tensor(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, const Rest&... rest) {
  return tensor(tensor(a, b), rest...);
}

template <class Scalar>
Mat<Scalar> compose(const Mat<Scalar>& outer, const Mat<Scalar>& inner) {
  detail::require(outer.cols() == inner.rows(),
                  "compose " + detail::shape(outer.rows(), outer.cols()) + " after " +
                      detail::shape(inner.rows(), inner.cols()));
  return outer * inner;
}

template <class Scalar>
Mat<Scalar> add(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  detail::require(a.rows() == b.rows() && a.cols() == b.cols(), "add " + detail::shape(a.rows(), a.cols()) +
                                                                     " and " + detail::shape(b.rows(), b.cols()));
  return a + b;
}

template <class Scalar>
Mat<Scalar> scale(const Scalar& s, const Mat<Scalar>& a) {
  return s * a;
}

// Position of leg multi-index `idx` in a tensor product of spaces of dimensions `dims`.
inline Index flat_index(const std::vector<Index>& dims, const std::vector<Index>& idx) {
  Index k = 0;
  for (std::size_t l = 0; l < dims.size(); ++l) k = k * dims[l] + idx[l];
  return k;
}

// Row permutation sending x_0⊗...⊗x_{k-1} to x_{order[0]}⊗...⊗x_{order[k-1]}.
inline std::vector<Index> leg_permutation(const std::vector<Index>& dims, const std::vector<int>& order) {
  const Index total = std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
  std::vector<Index> out_dims(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) out_dims[j] = dims[order[j]];
  std::vector<Index> dest(total), idx(dims.size(), 0), out_idx(dims.size());
  for (Index flat = 0; flat < total; ++flat) {
    for (std::size_t j = 0; j < order.size(); ++j) out_idx[j] = idx[order[j]];
    dest[flat] = flat_index(out_dims, out_idx);
    for (Index l = static_cast<Index>(dims.size()) - 1; l >= 0; --l) {
      if (++idx[l] < dims[l]) break;
      idx[l] = 0;
    }
  }
  return dest;
}

// Applies leg_permutation to the rows of m (the codomain legs).
template <class Derived>
Mat<typename Derived::Scalar> permute_legs(const Eigen::MatrixBase<Derived>& m, const std::vector<Index>& dims,
                                           const std::vector<int>& order) {
  auto dest = leg_permutation(dims, order);
  detail::require(static_cast<Index>(dest.size()) == m.rows(), "leg permutation does not match row count");
  Mat<typename Derived::Scalar> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) out.row(dest[i]) = m.row(i);
  return out;
}

template <class Scalar>
Mat<Scalar> flip(Index dim_a, Index dim_b) {
  return permute_legs(identity<Scalar>(dim_a * dim_b), {dim_a, dim_b}, {1, 0});
}

template <class Scalar>
struct Echelon {
  Mat<Scalar> rows;             // nonzero rows of the reduced row-echelon form
  std::vector<Index> pivots;    // pivot column of each row, increasing
};

template <class Scalar>
Echelon<Scalar> rref(Mat<Scalar> m) {
  const Index rows = m.rows(), cols = m.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = r;
    while (p < rows && m(p, c) == Scalar(0)) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Index tail = cols - c;
    if (!(m(r, c) == Scalar(1))) {
      Scalar inv = Scalar(1) / m(r, c);
      m.row(r).tail(tail) *= inv;
    }
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == Scalar(0)) continue;
      Scalar f = m(i, c);
      m.row(i).tail(tail) -= f * m.row(r).tail(tail);
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.topRows(r), std::move(pivots)};
}

template <class Scalar>
Index rank(const Mat<Scalar>& m) {
  return static_cast<Index>(rref(m).pivots.size());
}

// Subspace of Scalar^n stored as its canonical reduced row-echelon basis.
template <class Scalar>
class Subspace {
public:
  explicit Subspace(Index ambient = 0) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace from_rows(const Mat<Scalar>& rows) {
    Subspace s(rows.cols());
    auto e = rref(rows);
    s.basis_ = std::move(e.rows);
    s.pivots_ = std::move(e.pivots);
    return s;
  }
  static Subspace span(const Mat<Scalar>& columns) { return from_rows(columns.transpose()); }
  static Subspace full(Index n) { return from_rows(identity<Scalar>(n)); }

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  const Mat<Scalar>& basis() const { return basis_; }
  Mat<Scalar> basis_columns() const { return basis_.transpose(); }
  const std::vector<Index>& pivots() const { return pivots_; }

  Vec<Scalar> reduce(const Vec<Scalar>& v) const {
    detail::require(v.size() == ambient_, "vector of length " + std::to_string(v.size()) +
                                              " in ambient dimension " + std::to_string(ambient_));
    Vec<Scalar> w = v;
    for (Index k = 0; k < dim(); ++k) {
      Scalar c = w(pivots_[k]);
      if (!(c == Scalar(0))) w -= c * basis_.row(k).transpose();
    }
    return w;
  }
  bool contains(const Vec<Scalar>& v) const { return is_zero(reduce(v)); }
  bool contains(const Subspace& other) const {
    detail::require(other.ambient_ == ambient_, "subspaces in different ambient spaces");
    for (Index k = 0; k < other.dim(); ++k)
      if (!contains(Vec<Scalar>(other.basis_.row(k).transpose()))) return false;
    return true;
  }
  // Coordinates of v in the canonical basis; v must lie in the subspace.
  Vec<Scalar> coordinates(const Vec<Scalar>& v) const {
    Vec<Scalar> c(dim());
    for (Index k = 0; k < dim(); ++k) c(k) = v(pivots_[k]);
    return c;
  }
  // Matrix extracting coordinates (valid on members only).
  Mat<Scalar> coordinate_map() const {
    Mat<Scalar> c = Mat<Scalar>::Zero(dim(), ambient_);
    for (Index k = 0; k < dim(); ++k) c(k, pivots_[k]) = Scalar(1);
    return c;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
  }

private:
  Index ambient_;
  Mat<Scalar> basis_;
  std::vector<Index> pivots_;
};

template <class Scalar>
bool membership(const Vec<Scalar>& v, const Subspace<Scalar>& s) {
  return s.contains(v);
}

template <class Scalar>
Subspace<Scalar> kernel(const Mat<Scalar>& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (Index p : e.pivots) is_pivot[p] = true;
  Mat<Scalar> rows = Mat<Scalar>::Zero(m.cols() - static_cast<Index>(e.pivots.size()), m.cols());
  Index k = 0;
  for (Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    rows(k, f) = Scalar(1);
    for (Index r = 0; r < static_cast<Index>(e.pivots.size()); ++r) rows(k, e.pivots[r]) = -e.rows(r, f);
    ++k;
  }
  return Subspace<Scalar>::from_rows(rows);
}

// Column span of m.
template <class Scalar>
Subspace<Scalar> image(const Mat<Scalar>& m) {
  return Subspace<Scalar>::span(m);
}

template <class Scalar>
Subspace<Scalar> image(const Mat<Scalar>& m, const Subspace<Scalar>& s) {
  detail::require(m.cols() == s.ambient_dim(), "image of subspace under map of wrong shape");
  if (s.dim() == 0) return Subspace<Scalar>(m.rows());
  return Subspace<Scalar>::span(m * s.basis_columns());
}

template <class Scalar>
Subspace<Scalar> sum(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  detail::require(a.ambient_dim() == b.ambient_dim(), "sum of subspaces in different ambient spaces");
  Mat<Scalar> rows(a.dim() + b.dim(), a.ambient_dim());
  rows << a.basis(), b.basis();
  return Subspace<Scalar>::from_rows(rows);
}

template <class Scalar>
struct Quotient {
  Index ambient = 0;
  Subspace<Scalar> kernel;
  Mat<Scalar> projection;  // dim × ambient
  Mat<Scalar> section;     // ambient × dim

  Index dim() const { return projection.rows(); }
};

template <class Scalar>
Quotient<Scalar> quotient(Index ambient, const Subspace<Scalar>& kernel) {
  detail::require(kernel.ambient_dim() == ambient, "quotient of dimension " + std::to_string(ambient) +
                                                       " by subspace of ambient " +
                                                       std::to_string(kernel.ambient_dim()));
  std::vector<bool> is_pivot(ambient, false);
  for (Index p : kernel.pivots()) is_pivot[p] = true;
  Quotient<Scalar> q;
  q.ambient = ambient;
  q.kernel = kernel;
  const Index n = ambient - kernel.dim();
  q.projection = Mat<Scalar>::Zero(n, ambient);
  q.section = Mat<Scalar>::Zero(ambient, n);
  Index i = 0;
  for (Index f = 0; f < ambient; ++f) {
    if (is_pivot[f]) continue;
    q.projection(i, f) = Scalar(1);
    for (Index r = 0; r < kernel.dim(); ++r) q.projection(i, kernel.pivots()[r]) = -kernel.basis()(r, f);
    q.section(f, i) = Scalar(1);
    ++i;
  }
  return q;
}

// Preimage m^{-1}(s) of a subspace of the codomain.
template <class Scalar>
Subspace<Scalar> preimage(const Mat<Scalar>& m, const Subspace<Scalar>& s) {
  detail::require(m.rows() == s.ambient_dim(), "preimage under map of wrong shape");
  return kernel<Scalar>(quotient(s.ambient_dim(), s).projection * m);
}

template <class Scalar>
Subspace<Scalar> intersection(const Subspace<Scalar>& a, const Subspace<Scalar>& b) {
  detail::require(a.ambient_dim() == b.ambient_dim(), "intersection of subspaces in different ambient spaces");
  Mat<Scalar> inc = a.basis_columns();
  return image<Scalar>(inc, preimage<Scalar>(inc, b));
}

// Some X with a·X = b, or nothing when the system is inconsistent.
template <class Scalar>
std::optional<Mat<Scalar>> solve(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  detail::require(a.rows() == b.rows(), "solve with mismatched right-hand side");
  Mat<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  auto e = rref(aug);
  Mat<Scalar> x = Mat<Scalar>::Zero(a.cols(), b.cols());
  for (Index r = 0; r < static_cast<Index>(e.pivots.size()); ++r) {
    if (e.pivots[r] >= a.cols()) return std::nullopt;
    x.row(e.pivots[r]) = e.rows.row(r).tail(b.cols());
  }
  return x;
}

template <class Scalar>
std::optional<Mat<Scalar>> inverse(const Mat<Scalar>& a) {
  if (a.rows() != a.cols() || rank(a) != a.rows()) return std::nullopt;
  return solve<Scalar>(a, identity<Scalar>(a.rows()));
}

}  // namespace hpc
