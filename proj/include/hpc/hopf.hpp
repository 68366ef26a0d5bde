#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hpc/group.hpp"
#include "hpc/linalg.hpp"
#include "hpc/report.hpp"

namespace hpc {

// Raw structure constants of a π-coalgebra. Comultiplications are stored at
// index α·|π|+β with shape (n_α·n_β) × n_{αβ}.
template <class Scalar>
struct PiCoalgebraData {
  FiniteGroup group;
  FieldSpec field;
  std::vector<Index> dims;
  std::vector<Mat<Scalar>> comult;
  Mat<Scalar> counit;  // 1 × n_1
};

template <class Scalar>
struct HopfData : PiCoalgebraData<Scalar> {
  std::vector<Mat<Scalar>> mult;      // n_α × n_α²
  std::vector<Vec<Scalar>> unit;      // n_α
  std::vector<Mat<Scalar>> antipode;  // n_{α^{-1}} × n_α
  std::optional<std::vector<Mat<Scalar>>> psi;  // n_1 × n_α
};

template <class Scalar>
class PiCoalgebra {
public:
  explicit PiCoalgebra(PiCoalgebraData<Scalar> data) : d_(std::move(data)) { check_shapes(); }

  const FiniteGroup& group() const { return d_.group; }
  const FieldSpec& field() const { return d_.field; }
  Index dim(GroupElement a) const { return d_.dims[a.index()]; }
  const std::vector<Index>& dims() const { return d_.dims; }
  const Mat<Scalar>& comult(GroupElement a, GroupElement b) const {
    return d_.comult[a.index() * group().order() + b.index()];
  }
  const Mat<Scalar>& counit() const { return d_.counit; }

  GroupElement one() const { return group().identity(); }
  GroupElement mul(GroupElement a, GroupElement b) const { return group().mul(a, b); }
  GroupElement inv(GroupElement a) const { return group().inverse(a); }
  std::vector<GroupElement> elements() const { return group().elements(); }

  const PiCoalgebraData<Scalar>& coalgebra_data() const { return d_; }

private:
  void check_shapes() const {
    const int n = d_.group.order();
    detail::require(static_cast<int>(d_.dims.size()) == n, "one dimension per group element expected");
    detail::require(static_cast<int>(d_.comult.size()) == n * n, "one comultiplication per pair expected");
    for (auto a : d_.group.elements())
      for (auto b : d_.group.elements()) {
        const auto& m = comult(a, b);
        detail::require(m.rows() == dim(a) * dim(b) && m.cols() == dim(mul(a, b)),
                        "comultiplication (" + std::to_string(a.index()) + "," + std::to_string(b.index()) +
                            ") has shape " + detail::shape(m.rows(), m.cols()));
      }
    detail::require(d_.counit.rows() == 1 && d_.counit.cols() == dim(one()), "counit has wrong shape");
  }

  PiCoalgebraData<Scalar> d_;
};

template <class Scalar>
class HopfPiCoalgebra : public PiCoalgebra<Scalar> {
public:
  explicit HopfPiCoalgebra(HopfData<Scalar> data) : PiCoalgebra<Scalar>(data), d_(std::move(data)) { check_shapes(); }

  const Mat<Scalar>& mult(GroupElement a) const { return d_.mult[a.index()]; }
  const Vec<Scalar>& unit(GroupElement a) const { return d_.unit[a.index()]; }
  const Mat<Scalar>& antipode(GroupElement a) const { return d_.antipode[a.index()]; }
  bool has_psi() const { return d_.psi.has_value(); }
  const Mat<Scalar>& psi(GroupElement a) const {
    if (!d_.psi) throw Error(ErrorKind::MissingPsi, "structure has no psi maps");
    return (*d_.psi)[a.index()];
  }
  const HopfData<Scalar>& data() const { return d_; }
  const PiCoalgebra<Scalar>& coalgebra() const { return *this; }

private:
  void check_shapes() const {
    const auto n = static_cast<std::size_t>(this->group().order());
    detail::require(d_.mult.size() == n && d_.unit.size() == n && d_.antipode.size() == n,
                    "one multiplication, unit and antipode per group element expected");
    for (auto a : this->elements()) {
      const Index k = this->dim(a);
      detail::require(mult(a).rows() == k && mult(a).cols() == k * k, "multiplication has wrong shape");
      detail::require(unit(a).size() == k, "unit has wrong length");
      detail::require(antipode(a).rows() == this->dim(this->inv(a)) && antipode(a).cols() == k,
                      "antipode has wrong shape");
      if (d_.psi) {
        detail::require((*d_.psi).size() == n, "one psi map per group element expected");
        detail::require(psi(a).rows() == this->dim(this->one()) && psi(a).cols() == k, "psi has wrong shape");
      }
    }
  }

  HopfData<Scalar> d_;
};

// Multiplication of A_{a_1}⊗...⊗A_{a_k} as a map from its tensor square.
template <class Scalar>
Mat<Scalar> tensor_mult(const HopfPiCoalgebra<Scalar>& h, const std::vector<GroupElement>& legs) {
  std::vector<Index> dims;
  std::vector<int> order;
  const int k = static_cast<int>(legs.size());
  for (int pass = 0; pass < 2; ++pass)
    for (auto a : legs) dims.push_back(h.dim(a));
  for (int l = 0; l < k; ++l) {
    order.push_back(l);
    order.push_back(l + k);
  }
  Index total = 1;
  for (auto d : dims) total *= d;
  Mat<Scalar> m = h.mult(legs[0]);
  for (int l = 1; l < k; ++l) m = tensor(m, h.mult(legs[l]));
  return m * permute_legs(identity<Scalar>(total), dims, order);
}

// x ↦ a·x and x ↦ x·a on A_α.
template <class Scalar>
Mat<Scalar> left_mult(const HopfPiCoalgebra<Scalar>& h, GroupElement alpha, const Vec<Scalar>& a) {
  return h.mult(alpha) * tensor(a, identity<Scalar>(h.dim(alpha)));
}

template <class Scalar>
Mat<Scalar> right_mult(const HopfPiCoalgebra<Scalar>& h, GroupElement alpha, const Vec<Scalar>& a) {
  return h.mult(alpha) * tensor(identity<Scalar>(h.dim(alpha)), a);
}

// ε(·)1_α as a map A_1 → A_α.
template <class Scalar>
Mat<Scalar> counit_times_unit(const HopfPiCoalgebra<Scalar>& h, GroupElement alpha) {
  return h.unit(alpha) * h.counit();
}

// Iterated comultiplication A_{p_1⋯p_k} → A_{p_1}⊗...⊗A_{p_k}, peeling legs off the left.
template <class Scalar>
Mat<Scalar> iterated_comult(const PiCoalgebra<Scalar>& c, const std::vector<GroupElement>& path) {
  if (path.empty()) throw Error(ErrorKind::GradingMismatch, "empty comultiplication path");
  if (path.size() == 1) return identity<Scalar>(c.dim(path[0]));
  std::vector<GroupElement> rest(path.begin() + 1, path.end());
  GroupElement tail = rest[0];
  for (std::size_t i = 1; i < rest.size(); ++i) tail = c.mul(tail, rest[i]);
  return tensor(identity<Scalar>(c.dim(path[0])), iterated_comult(c, rest)) * c.comult(path[0], tail);
}

template <class Scalar>
GroupElement path_product(const PiCoalgebra<Scalar>& c, const std::vector<GroupElement>& path) {
  GroupElement g = c.one();
  for (auto a : path) g = c.mul(g, a);
  return g;
}

template <class Scalar>
Vec<Scalar> iterated_comult(const PiCoalgebra<Scalar>& c, const std::vector<GroupElement>& path,
                            GroupElement source_grading, const Vec<Scalar>& source) {
  if (path.empty() || path_product(c, path) != source_grading)
    throw Error(ErrorKind::GradingMismatch, "path product differs from the grading of the source");
  if (source.size() != c.dim(source_grading))
    throw Error(ErrorKind::GradingMismatch, "source vector has wrong length");
  return iterated_comult(c, path) * source;
}

// m∘(f⊗g)∘Δ_{α,β} for f: C_α → A, g: C_β → A, where A has multiplication `target_mult`.
template <class Scalar>
Mat<Scalar> convolution(const PiCoalgebra<Scalar>& c, GroupElement alpha, const Mat<Scalar>& f, GroupElement beta,
                        const Mat<Scalar>& g, const Mat<Scalar>& target_mult) {
  if (f.cols() != c.dim(alpha) || g.cols() != c.dim(beta))
    throw Error(ErrorKind::GradingMismatch, "convolution factors do not match their gradings");
  if (f.rows() != g.rows() || target_mult.rows() != f.rows() || target_mult.cols() != f.rows() * g.rows())
    throw Error(ErrorKind::GradingMismatch, "convolution factors do not land in the target algebra");
  return target_mult * tensor(f, g) * c.comult(alpha, beta);
}

// Scalar-valued convolution (target algebra k).
template <class Scalar>
RowVec<Scalar> convolution(const PiCoalgebra<Scalar>& c, GroupElement alpha, const RowVec<Scalar>& f,
                           GroupElement beta, const RowVec<Scalar>& g) {
  if (f.size() != c.dim(alpha) || g.size() != c.dim(beta))
    throw Error(ErrorKind::GradingMismatch, "convolution factors do not match their gradings");
  return tensor(f, g) * c.comult(alpha, beta);
}

// Linear functional on ⊕_α A_α, one row vector per component.
template <class Scalar>
struct GradedFunctional {
  std::vector<RowVec<Scalar>> components;

  const RowVec<Scalar>& operator[](GroupElement a) const { return components[a.index()]; }
  RowVec<Scalar>& operator[](GroupElement a) { return components[a.index()]; }
  friend bool operator==(const GradedFunctional& a, const GradedFunctional& b) {
    return a.components == b.components;
  }

  static GradedFunctional zero(const PiCoalgebra<Scalar>& c) {
    GradedFunctional f;
    for (auto a : c.elements()) f.components.push_back(RowVec<Scalar>::Zero(c.dim(a)));
    return f;
  }
};

// Product in the convolution algebra ⊕_α C*_α: (f*g)^γ = Σ_{αβ=γ} f^α*g^β.
template <class Scalar>
GradedFunctional<Scalar> convolution(const PiCoalgebra<Scalar>& c, const GradedFunctional<Scalar>& f,
                                     const GradedFunctional<Scalar>& g) {
  auto out = GradedFunctional<Scalar>::zero(c);
  for (auto a : c.elements())
    for (auto b : c.elements()) out[c.mul(a, b)] += convolution<Scalar>(c, a, f[a], b, g[b]);
  return out;
}

// b ↦ f*b = (id⊗f)Δ_{α,1}(b) and b ↦ b*f = (f⊗id)Δ_{1,α}(b) on A_α, for f on A_1.
template <class Scalar>
Mat<Scalar> functional_acting_left(const PiCoalgebra<Scalar>& c, GroupElement alpha, const RowVec<Scalar>& f) {
  return tensor(identity<Scalar>(c.dim(alpha)), Mat<Scalar>(f)) * c.comult(alpha, c.one());
}

template <class Scalar>
Mat<Scalar> functional_acting_right(const PiCoalgebra<Scalar>& c, GroupElement alpha, const RowVec<Scalar>& f) {
  return tensor(Mat<Scalar>(f), identity<Scalar>(c.dim(alpha))) * c.comult(c.one(), alpha);
}

template <class Scalar>
VerificationReport verify_pi_coalgebra(const PiCoalgebra<Scalar>& c) {
  VerificationReport report;
  const auto els = c.elements();
  for (auto a : els)
    for (auto b : els)
      for (auto g : els) {
        Mat<Scalar> lhs = tensor(c.comult(a, b), identity<Scalar>(c.dim(g))) * c.comult(c.mul(a, b), g);
        Mat<Scalar> rhs = tensor(identity<Scalar>(c.dim(a)), c.comult(b, g)) * c.comult(a, c.mul(b, g));
        compare_maps(report, "coassociativity", {a.index(), b.index(), g.index()}, lhs, rhs);
      }
  const auto one = c.one();
  for (auto a : els) {
    const Index n = c.dim(a);
    compare_maps(report, "counit", {a.index()}, Mat<Scalar>(tensor(identity<Scalar>(n), c.counit()) * c.comult(a, one)),
                 identity<Scalar>(n));
    compare_maps(report, "counit", {a.index()}, Mat<Scalar>(tensor(c.counit(), identity<Scalar>(n)) * c.comult(one, a)),
                 identity<Scalar>(n));
  }
  return report;
}

template <class Scalar>
VerificationReport verify_hopf(const HopfPiCoalgebra<Scalar>& h) {
  VerificationReport report = verify_pi_coalgebra(h.coalgebra());
  const auto els = h.elements();
  const auto one = h.one();

  for (auto a : els) {
    const Index n = h.dim(a);
    const auto I = identity<Scalar>(n);
    const Mat<Scalar>& m = h.mult(a);
    compare_maps(report, "associativity", {a.index()}, Mat<Scalar>(m * tensor(m, I)), Mat<Scalar>(m * tensor(I, m)),
                 {n, n, n});
    compare_maps(report, "unit", {a.index()}, Mat<Scalar>(m * tensor(h.unit(a), I)), I);
    compare_maps(report, "unit", {a.index()}, Mat<Scalar>(m * tensor(I, h.unit(a))), I);
  }

  for (auto a : els)
    for (auto b : els) {
      const auto ab = h.mul(a, b);
      const Mat<Scalar>& delta = h.comult(a, b);
      compare_maps(report, "comultiplication multiplicative", {a.index(), b.index()}, Mat<Scalar>(delta * h.mult(ab)),
                   Mat<Scalar>(tensor_mult(h, {a, b}) * tensor(delta, delta)), {h.dim(ab), h.dim(ab)});
      compare_maps(report, "comultiplication unital", {a.index(), b.index()}, Mat<Scalar>(delta * h.unit(ab)),
                   Mat<Scalar>(tensor(h.unit(a), h.unit(b))));
    }
  compare_maps(report, "counit multiplicative", {one.index()}, Mat<Scalar>(h.counit() * h.mult(one)),
               tensor(h.counit(), h.counit()), {h.dim(one), h.dim(one)});
  compare_maps(report, "counit unital", {one.index()}, Mat<Scalar>(h.counit() * h.unit(one)),
               Mat<Scalar>(identity<Scalar>(1)));

  for (auto a : els) {
    const auto ai = h.inv(a);
    const Mat<Scalar> expected = counit_times_unit(h, a);
    const Mat<Scalar> left =
        h.mult(a) * tensor(h.antipode(ai), identity<Scalar>(h.dim(a))) * h.comult(ai, a);
    const Mat<Scalar> right =
        h.mult(a) * tensor(identity<Scalar>(h.dim(a)), h.antipode(ai)) * h.comult(a, ai);
    compare_maps(report, "antipode axiom", {a.index()}, left, expected);
    compare_maps(report, "antipode axiom", {a.index()}, right, expected);
    if (inverse(h.antipode(a)))
      report.pass("antipode invertible");
    else
      report.fail("antipode invertible", {a.index()}, "antipode matrix is singular");
  }

  for (auto a : els)
    for (auto b : els) {
      const auto ai = h.inv(a), bi = h.inv(b);
      const Mat<Scalar> lhs = h.comult(bi, ai) * h.antipode(h.mul(a, b));
      const Mat<Scalar> rhs = flip<Scalar>(h.dim(ai), h.dim(bi)) * tensor(h.antipode(a), h.antipode(b)) * h.comult(a, b);
      compare_maps(report, "antipode anti-comultiplicative", {a.index(), b.index()}, lhs, rhs);
    }
  compare_maps(report, "counit of antipode", {one.index()}, Mat<Scalar>(h.counit() * h.antipode(one)), h.counit());
  for (auto a : els) {
    const auto ai = h.inv(a);
    const Index n = h.dim(a);
    const Mat<Scalar>& s = h.antipode(a);
    compare_maps(report, "antipode anti-multiplicative", {a.index()}, Mat<Scalar>(s * h.mult(a)),
                 Mat<Scalar>(h.mult(ai) * tensor(s, s) * flip<Scalar>(n, n)), {n, n});
    compare_maps(report, "antipode unital", {a.index()}, Mat<Scalar>(s * h.unit(a)), Mat<Scalar>(h.unit(ai)));
  }

  if (h.has_psi())
    for (auto a : els) {
      const Mat<Scalar>& p = h.psi(a);
      compare_maps(report, "psi multiplicative", {a.index()}, Mat<Scalar>(p * h.mult(a)),
                   Mat<Scalar>(h.mult(one) * tensor(p, p)), {h.dim(a), h.dim(a)});
      compare_maps(report, "psi unital", {a.index()}, Mat<Scalar>(p * h.unit(a)), Mat<Scalar>(h.unit(one)));
    }
  return report;
}

// k[G] over the trivial grading group.
template <class Scalar>
HopfPiCoalgebra<Scalar> group_algebra(const FiniteGroup& g, const FieldSpec& field) {
  const Index n = g.order();
  HopfData<Scalar> d;
  d.group = FiniteGroup::trivial();
  d.field = field;
  d.dims = {n};
  Mat<Scalar> m = Mat<Scalar>::Zero(n, n * n), delta = Mat<Scalar>::Zero(n * n, n), s = Mat<Scalar>::Zero(n, n);
  for (auto a : g.elements()) {
    const Index i = a.index();
    for (auto b : g.elements()) m(g.mul(a, b).index(), i * n + b.index()) = Scalar(1);
    delta(i * n + i, i) = Scalar(1);
    s(g.inverse(a).index(), i) = Scalar(1);
  }
  d.comult = {delta};
  d.counit = Mat<Scalar>::Ones(1, n);
  d.mult = {m};
  d.unit = {unit_vector<Scalar>(n, g.identity().index())};
  d.antipode = {s};
  d.psi = std::vector<Mat<Scalar>>{identity<Scalar>(n)};
  return HopfPiCoalgebra<Scalar>(std::move(d));
}

// The four-dimensional algebra generated by a grouplike g and a (1,g)-skew primitive x
// with g² = 1, x² = 0, xg = −gx; basis order 1, g, x, gx. Needs characteristic ≠ 2.
template <class Scalar>
HopfPiCoalgebra<Scalar> sweedler_algebra(const FieldSpec& field) {
  const Index n = 4;
  auto idx = [](int gpow, int xpow) { return Index(gpow + 2 * xpow); };
  HopfData<Scalar> d;
  d.group = FiniteGroup::trivial();
  d.field = field;
  d.dims = {n};
  Mat<Scalar> m = Mat<Scalar>::Zero(n, n * n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          if (j + l > 1) continue;
          Scalar sign = (j * k) % 2 ? Scalar(-1) : Scalar(1);
          m(idx((i + k) % 2, j + l), idx(i, j) * n + idx(k, l)) = sign;
        }
  Mat<Scalar> delta = Mat<Scalar>::Zero(n * n, n);
  delta(idx(0, 0) * n + idx(0, 0), idx(0, 0)) = Scalar(1);
  delta(idx(1, 0) * n + idx(1, 0), idx(1, 0)) = Scalar(1);
  delta(idx(0, 1) * n + idx(0, 0), idx(0, 1)) = Scalar(1);  // x⊗1
  delta(idx(1, 0) * n + idx(0, 1), idx(0, 1)) = Scalar(1);  // g⊗x
  delta(idx(1, 1) * n + idx(1, 0), idx(1, 1)) = Scalar(1);  // gx⊗g
  delta(idx(0, 0) * n + idx(1, 1), idx(1, 1)) = Scalar(1);  // 1⊗gx
  Mat<Scalar> s = Mat<Scalar>::Zero(n, n);
  s(idx(0, 0), idx(0, 0)) = Scalar(1);
  s(idx(1, 0), idx(1, 0)) = Scalar(1);
  s(idx(1, 1), idx(0, 1)) = Scalar(-1);
  s(idx(0, 1), idx(1, 1)) = Scalar(1);
  d.comult = {delta};
  d.counit = Mat<Scalar>::Zero(1, n);
  d.counit(0, idx(0, 0)) = Scalar(1);
  d.counit(0, idx(1, 0)) = Scalar(1);
  d.mult = {m};
  d.unit = {unit_vector<Scalar>(n, idx(0, 0))};
  d.antipode = {s};
  d.psi = std::vector<Mat<Scalar>>{identity<Scalar>(n)};
  return HopfPiCoalgebra<Scalar>(std::move(d));
}

// Family with A_α = H for every α, twisted by Hopf automorphisms φ_α of H
// (φ a homomorphism from the grading group): Δ_{α,β} = (φ_β⊗id)Δ, S_α = S∘φ_α.
template <class Scalar>
HopfPiCoalgebra<Scalar> twisted_family(const HopfPiCoalgebra<Scalar>& h1, const FiniteGroup& group,
                                       const std::vector<Mat<Scalar>>& automorphisms) {
  if (h1.group().order() != 1) throw Error(ErrorKind::GradingMismatch, "base must be graded by the trivial group");
  detail::require(static_cast<int>(automorphisms.size()) == group.order(), "one automorphism per group element expected");
  const auto base = h1.one();
  const Index n = h1.dim(base);
  HopfData<Scalar> d;
  d.group = group;
  d.field = h1.field();
  d.dims.assign(group.order(), n);
  for (auto a : group.elements())
    for (auto b : group.elements())
      d.comult.push_back(tensor(automorphisms[b.index()], identity<Scalar>(n)) * h1.comult(base, base));
  d.counit = h1.counit();
  for (auto a : group.elements()) {
    d.mult.push_back(h1.mult(base));
    d.unit.push_back(h1.unit(base));
    d.antipode.push_back(h1.antipode(base) * automorphisms[a.index()]);
  }
  d.psi = std::vector<Mat<Scalar>>(group.order(), identity<Scalar>(n));
  return HopfPiCoalgebra<Scalar>(std::move(d));
}

// A_α = H, Δ_{α,β} = Δ, S_α = S for every α; psi is the identity.
template <class Scalar>
HopfPiCoalgebra<Scalar> constant_family(const HopfPiCoalgebra<Scalar>& h1, const FiniteGroup& group) {
  if (h1.group().order() != 1) throw Error(ErrorKind::GradingMismatch, "base must be graded by the trivial group");
  const auto report = verify_hopf(h1);
  if (!report.ok()) throw Error(ErrorKind::IncompatibleData, "base structure fails " + report.violations().front().check);
  return twisted_family(h1, group, std::vector<Mat<Scalar>>(group.order(), identity<Scalar>(h1.dim(h1.one()))));
}

}  // namespace hpc
