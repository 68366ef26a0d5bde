#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hpc/fodc.hpp"

namespace hpc {

// Per grading: rows indexed i·|I|+j, row = the functional on A_α.
template <class Scalar>
using FunctionalMatrix = std::vector<Mat<Scalar>>;

// Per grading: columns indexed i·|I|+j, column = the element of A_β.
template <class Scalar>
using ElementMatrix = std::vector<Mat<Scalar>>;

template <class Scalar>
struct CovariantBimodule {
  PiBimodule<Scalar> bimodule;
  CovariantMaps<Scalar> maps;

  bool left_covariant() const { return maps.delta_l.has_value(); }
  bool right_covariant() const { return maps.delta_r.has_value(); }
  bool bicovariant() const { return left_covariant() && right_covariant(); }
};

template <class Scalar>
struct StructureData {
  Index size = 0;                                  // |I|
  std::vector<Mat<Scalar>> omega;                  // per α, dim Γ_α × |I|, left invariant frame
  std::vector<std::vector<Mat<Scalar>>> F;         // per α, [i·|I|+j] : A_α → A_α, ω_i b = Σ_j F_ij(b) ω_j
  std::optional<FunctionalMatrix<Scalar>> f;
  std::optional<ElementMatrix<Scalar>> R;
  std::optional<std::vector<Mat<Scalar>>> eta;     // right invariant frame built from ω and R
  std::optional<FunctionalMatrix<Scalar>> g;
};

template <class Scalar>
CovariantBimodule<Scalar> covariant_bimodule(const HopfPiCoalgebra<Scalar>& h, PiBimodule<Scalar> m,
                                             CovariantMaps<Scalar> maps) {
  const auto report = verify_covariant_bimodule(h, m, maps);
  if (!report.ok()) {
    const auto& v = report.violations().front();
    throw Error(ErrorKind::IncompatibleData, "covariant bimodule law fails: " + v.check + " (" + v.lhs + " vs " + v.rhs + ")");
  }
  return {std::move(m), std::move(maps)};
}

template <class Scalar>
CovariantBimodule<Scalar> covariant_bimodule(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f) {
  return covariant_bimodule(h, f.bimodule, induced_maps(h, f));
}

namespace detail {

inline std::string grading_text(std::initializer_list<int> g) {
  std::string s;
  for (int x : g) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

template <class Scalar>
Subspace<Scalar> span_or_zero(const Mat<Scalar>& cols) {
  return cols.cols() ? Subspace<Scalar>::span(cols) : Subspace<Scalar>(cols.rows());
}

// A coefficient vector stacked as A_α⊗k^I (index k·|I|+i) split into the i-th element.
template <class Scalar>
Vec<Scalar> left_part(const Vec<Scalar>& coeffs, Index i, Index size) {
  Vec<Scalar> out(coeffs.size() / size);
  for (Index k = 0; k < out.size(); ++k) out(k) = coeffs(k * size + i);
  return out;
}

template <class Scalar>
Vec<Scalar> right_part(const Vec<Scalar>& coeffs, Index i, Index n) {
  return coeffs.segment(i * n, n);
}

template <class Scalar>
Mat<Scalar> antipode_inverse(const HopfPiCoalgebra<Scalar>& h, GroupElement a) {
  auto inv = inverse<Scalar>(h.antipode(a));
  if (!inv) throw Error(ErrorKind::IncompatibleData, "antipode is not invertible");
  return *inv;
}

template <class Scalar>
RowVec<Scalar> counit_through_psi(const HopfPiCoalgebra<Scalar>& h, GroupElement a) {
  return h.counit() * h.psi(a);
}

}  // namespace detail

// ρ with Δ^l_{1,α}(ρ) = 1_1⊗ρ.
template <class Scalar>
Subspace<Scalar> invariant_subspace_left(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                                         GroupElement a) {
  const auto e = h.one();
  return kernel<Scalar>(Mat<Scalar>(cb.maps.left(e, a) - tensor(h.unit(e), identity<Scalar>(cb.bimodule.dim(a)))));
}

// η with Δ^r_{α,1}(η) = η⊗1_1.
template <class Scalar>
Subspace<Scalar> invariant_subspace_right(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                                          GroupElement a) {
  const auto e = h.one();
  return kernel<Scalar>(Mat<Scalar>(cb.maps.right(a, e) - tensor(identity<Scalar>(cb.bimodule.dim(a)), h.unit(e))));
}

// ρ ↦ Σ S_{α^{-1}}(a_k)ρ_k where Δ^l_{α^{-1},α}(ρ) = Σ a_k⊗ρ_k, as a map Γ_1 → Γ_α.
template <class Scalar>
Mat<Scalar> projection_P(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb, GroupElement a) {
  const auto ai = h.inv(a);
  return cb.bimodule.left(a) * tensor(h.antipode(ai), identity<Scalar>(cb.bimodule.dim(a))) * cb.maps.left(ai, a);
}

// Mirror image of projection_P for right invariants: ρ ↦ Σ ρ_k S_{α^{-1}}(a_k), Δ^r_{α,α^{-1}}(ρ) = Σ ρ_k⊗a_k.
template <class Scalar>
Mat<Scalar> projection_P_right(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb, GroupElement a) {
  const auto ai = h.inv(a);
  return cb.bimodule.right(a) * tensor(identity<Scalar>(cb.bimodule.dim(a)), h.antipode(ai)) * cb.maps.right(a, ai);
}

namespace detail {

template <class Scalar>
std::vector<Mat<Scalar>> transported_frame(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                                           bool left) {
  const auto e = h.one();
  auto inv = [&](GroupElement a) { return left ? invariant_subspace_left(h, cb, a) : invariant_subspace_right(h, cb, a); };
  const auto base = inv(e);
  const Index size = base.dim();
  for (auto a : h.elements())
    if (inv(a).dim() != size)
      throw Error(ErrorKind::DimensionVariesAcrossGrading,
                  std::string(left ? "left" : "right") + " invariant subspace has dimension " +
                      std::to_string(inv(a).dim()) + " at grading " + std::to_string(a.index()) + " but " +
                      std::to_string(size) + " at the identity");
  std::vector<Mat<Scalar>> frame;
  for (auto a : h.elements()) {
    Mat<Scalar> w = (left ? projection_P(h, cb, a) : projection_P_right(h, cb, a)) * base.basis_columns();
    if (rank<Scalar>(w) != size || !inv(a).contains(span_or_zero(w)))
      throw Error(ErrorKind::StructureInconsistent,
                  "transported invariant frame is not a basis at grading " + std::to_string(a.index()));
    frame.push_back(std::move(w));
  }
  return frame;
}

}  // namespace detail

// Canonical echelon basis of the identity component, carried to every grading by P_α.
template <class Scalar>
std::vector<Mat<Scalar>> left_invariant_basis(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb) {
  return detail::transported_frame(h, cb, true);
}

template <class Scalar>
std::vector<Mat<Scalar>> right_invariant_basis(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb) {
  return detail::transported_frame(h, cb, false);
}

// (a_i) ↦ Σ a_i ω_i, domain A_α⊗k^I.
template <class Scalar>
Mat<Scalar> left_combination(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                             const Mat<Scalar>& frame, GroupElement a) {
  return cb.bimodule.left(a) * tensor(identity<Scalar>(h.dim(a)), frame);
}

// (b_i) ↦ Σ ω_i b_i, domain k^I⊗A_α.
template <class Scalar>
Mat<Scalar> right_combination(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                              const Mat<Scalar>& frame, GroupElement a) {
  return cb.bimodule.right(a) * tensor(frame, identity<Scalar>(h.dim(a)));
}

namespace detail {

template <class Scalar>
Mat<Scalar> invert_combination(const Mat<Scalar>& m, const char* side) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::StructureInconsistent, std::string(side) + " frame does not give a free module");
  auto inv = inverse<Scalar>(m);
  if (!inv) throw Error(ErrorKind::StructureInconsistent, std::string(side) + " frame does not give a free module");
  return *inv;
}

}  // namespace detail

// Coefficients a_i with ρ = Σ a_i ω_i, stacked as A_α⊗k^I.
template <class Scalar>
Vec<Scalar> decompose_left(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                           const Mat<Scalar>& frame, GroupElement a, const Vec<Scalar>& rho) {
  return detail::invert_combination(left_combination(h, cb, frame, a), "left") * rho;
}

// Coefficients b_i with ρ = Σ ω_i b_i, stacked as k^I⊗A_α.
template <class Scalar>
Vec<Scalar> decompose_right(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                            const Mat<Scalar>& frame, GroupElement a, const Vec<Scalar>& rho) {
  return detail::invert_combination(right_combination(h, cb, frame, a), "right") * rho;
}

// F^α_ij with ω_i b = Σ_j F^α_ij(b) ω_j.
template <class Scalar>
std::vector<std::vector<Mat<Scalar>>> structure_maps(const HopfPiCoalgebra<Scalar>& h,
                                                     const CovariantBimodule<Scalar>& cb,
                                                     const std::vector<Mat<Scalar>>& frame) {
  std::vector<std::vector<Mat<Scalar>>> out;
  for (auto a : h.elements()) {
    const Mat<Scalar>& w = frame[a.index()];
    const Index size = w.cols(), n = h.dim(a);
    const Mat<Scalar> solve = detail::invert_combination(left_combination(h, cb, w, a), "left");
    std::vector<Mat<Scalar>> maps(size * size, Mat<Scalar>(n, n));
    for (Index i = 0; i < size; ++i) {
      const Mat<Scalar> coeffs = solve * cb.bimodule.right(a) * tensor(Mat<Scalar>(w.col(i)), identity<Scalar>(n));
      for (Index j = 0; j < size; ++j)
        for (Index k = 0; k < n; ++k) maps[i * size + j].row(k) = coeffs.row(k * size + j);
    }
    out.push_back(std::move(maps));
  }
  return out;
}

// E_α∘F^α_ij with E_α = ε∘Ψ_α.
template <class Scalar>
FunctionalMatrix<Scalar> functionals_from_maps(const HopfPiCoalgebra<Scalar>& h,
                                               const std::vector<std::vector<Mat<Scalar>>>& maps) {
  FunctionalMatrix<Scalar> out;
  for (auto a : h.elements()) {
    const auto& m = maps[a.index()];
    const RowVec<Scalar> E = detail::counit_through_psi(h, a);
    Mat<Scalar> rows(static_cast<Index>(m.size()), h.dim(a));
    for (std::size_t k = 0; k < m.size(); ++k) rows.row(static_cast<Index>(k)) = E * m[k];
    out.push_back(std::move(rows));
  }
  return out;
}

// Identities tying the functionals to the bimodule; `left` selects the ω/f form, otherwise the η/g form.
template <class Scalar>
void check_functionals(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                       const std::vector<Mat<Scalar>>& frame, const FunctionalMatrix<Scalar>& fm, bool left,
                       VerificationReport& report) {
  const auto e = h.one();
  const auto& c = h.coalgebra();
  const Index size = frame[0].cols();
  const std::string name = left ? "f" : "g";
  const Mat<Scalar> s1 = h.antipode(e), s1_inv = detail::antipode_inverse(h, e);
  for (auto a : h.elements()) {
    const Index n = h.dim(a);
    const Mat<Scalar>& w = frame[a.index()];
    const Mat<Scalar>& fa = fm[a.index()];
    for (Index i = 0; i < size; ++i)
      for (Index l = 0; l < n; ++l) {
        const Vec<Scalar> b = unit_vector<Scalar>(n, l);
        // ω_i b = Σ_j (f_ij * b) ω_j   and   a ω_i = Σ_j ω_j ((f_ij∘S^{-1}) * a)
        // η_i b = Σ_j (b * g_ij) η_j   and   a η_i = Σ_j η_j (a * (g_ij∘S))
        const Vec<Scalar> acted = cb.bimodule.right(a) * tensor(Vec<Scalar>(w.col(i)), b);
        const Vec<Scalar> acted_left = cb.bimodule.left(a) * tensor(b, Vec<Scalar>(w.col(i)));
        Vec<Scalar> rhs = Vec<Scalar>::Zero(acted.size()), rhs_left = rhs;
        for (Index j = 0; j < size; ++j) {
          const RowVec<Scalar> fij = fm[e.index()].row(i * size + j);
          const Vec<Scalar> coeff = left ? Vec<Scalar>(functional_acting_left(c, a, fij) * b)
                                         : Vec<Scalar>(functional_acting_right(c, a, fij) * b);
          rhs += cb.bimodule.left(a) * tensor(coeff, Vec<Scalar>(w.col(j)));
          const Vec<Scalar> coeff_left = left ? Vec<Scalar>(functional_acting_left(c, a, RowVec<Scalar>(fij * s1_inv)) * b)
                                              : Vec<Scalar>(functional_acting_right(c, a, RowVec<Scalar>(fij * s1)) * b);
          rhs_left += cb.bimodule.right(a) * tensor(Vec<Scalar>(w.col(j)), coeff_left);
        }
        const std::vector<int> gr{a.index()};
        if (acted == rhs)
          report.pass("right action through " + name);
        else
          report.fail(Violation{"right action through " + name, gr, {i, l}, format_vector(acted), format_vector(rhs)});
        if (acted_left == rhs_left)
          report.pass("left action through " + name);
        else
          report.fail(Violation{"left action through " + name, gr, {i, l}, format_vector(acted_left),
                                format_vector(rhs_left)});
      }
    // multiplicativity and unit
    const Mat<Scalar> prod_basis = h.mult(a);
    for (Index i = 0; i < size; ++i)
      for (Index j = 0; j < size; ++j) {
        const RowVec<Scalar> lhs = fa.row(i * size + j) * prod_basis;
        RowVec<Scalar> rhs = RowVec<Scalar>::Zero(n * n);
        for (Index k = 0; k < size; ++k) rhs += tensor(RowVec<Scalar>(fa.row(i * size + k)), RowVec<Scalar>(fa.row(k * size + j)));
        if (lhs == rhs)
          report.pass(name + " multiplicative");
        else
          report.fail(Violation{name + " multiplicative", {a.index()}, {i, j}, format_vector(lhs), format_vector(rhs)});
        const Scalar at_one = (fa.row(i * size + j) * h.unit(a)).value();
        const Scalar delta = i == j ? Scalar(1) : Scalar(0);
        if (at_one == delta)
          report.pass(name + " unital");
        else
          report.fail(Violation{name + " unital", {a.index()}, {i, j}, format_scalar(at_one), format_scalar(delta)});
      }
  }
}

// Both convolution-inverse identities, on A_1.
template <class Scalar>
void check_functional_inverse(const HopfPiCoalgebra<Scalar>& h, const FunctionalMatrix<Scalar>& fm, Index size,
                              VerificationReport& report) {
  const auto e = h.one();
  const auto& c = h.coalgebra();
  const Mat<Scalar> s1_inv = detail::antipode_inverse(h, e);
  const Mat<Scalar>& f1 = fm[e.index()];
  auto f = [&](Index i, Index j) { return RowVec<Scalar>(f1.row(i * size + j)); };
  for (Index i = 0; i < size; ++i)
    for (Index k = 0; k < size; ++k) {
      RowVec<Scalar> first = RowVec<Scalar>::Zero(h.dim(e)), second = first;
      for (Index j = 0; j < size; ++j) {
        first += convolution(c, e, f(j, i), e, RowVec<Scalar>(f(k, j) * s1_inv));
        second += convolution(c, e, RowVec<Scalar>(f(j, k) * s1_inv), e, f(i, j));
      }
      const RowVec<Scalar> expected = i == k ? RowVec<Scalar>(h.counit()) : RowVec<Scalar>::Zero(h.dim(e));
      compare_maps(report, "f convolution inverse", {e.index()}, Mat<Scalar>(first), Mat<Scalar>(expected));
      compare_maps(report, "f convolution inverse (other side)", {e.index()}, Mat<Scalar>(second),
                   Mat<Scalar>(expected));
    }
}

template <class Scalar>
FunctionalMatrix<Scalar> functionals_f(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                                       const std::vector<Mat<Scalar>>& omega) {
  if (!h.has_psi()) throw Error(ErrorKind::MissingPsi, "functionals need the maps Ψ");
  auto fm = functionals_from_maps(h, structure_maps(h, cb, omega));
  VerificationReport report;
  check_functionals(h, cb, omega, fm, true, report);
  if (!report.ok()) {
    const auto& v = report.violations().front();
    throw Error(ErrorKind::StructureInconsistent, v.check + " fails at grading " + std::to_string(v.grading[0]) +
                                                      ": " + v.lhs + " vs " + v.rhs);
  }
  return fm;
}

template <class Scalar>
FunctionalMatrix<Scalar> functionals_g(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                                       const std::vector<Mat<Scalar>>& eta) {
  if (!h.has_psi()) throw Error(ErrorKind::MissingPsi, "functionals need the maps Ψ");
  auto gm = functionals_from_maps(h, structure_maps(h, cb, eta));
  VerificationReport report;
  check_functionals(h, cb, eta, gm, false, report);
  if (!report.ok()) {
    const auto& v = report.violations().front();
    throw Error(ErrorKind::StructureInconsistent, v.check + " fails at grading " + std::to_string(v.grading[0]) +
                                                      ": " + v.lhs + " vs " + v.rhs);
  }
  return gm;
}

// R^β_ji from Δ^r_{1,β}(ω^β_i) = Σ_j ω^1_j⊗R_ji, then checked against every Δ^r_{α,β}.
template <class Scalar>
ElementMatrix<Scalar> matrix_R(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                               const std::vector<Mat<Scalar>>& omega) {
  if (!cb.bicovariant()) throw Error(ErrorKind::NotBicovariant, "both coactions are needed");
  const auto e = h.one();
  const Mat<Scalar>& w1 = omega[e.index()];
  const Index size = w1.cols(), g1 = w1.rows();
  ElementMatrix<Scalar> R;
  for (auto b : h.elements()) {
    const Index nb = h.dim(b);
    Mat<Scalar> out(nb, size * size);
    for (Index i = 0; i < size; ++i) {
      const Vec<Scalar> image = cb.maps.right(e, b) * omega[b.index()].col(i);
      Mat<Scalar> legs(g1, nb);
      for (Index p = 0; p < g1; ++p)
        for (Index q = 0; q < nb; ++q) legs(p, q) = image(p * nb + q);
      auto coeffs = solve<Scalar>(w1, legs);
      if (!coeffs)
        throw Error(ErrorKind::StructureInconsistent,
                    "right coaction of a left invariant element leaves the invariant part at grading " +
                        std::to_string(b.index()));
      for (Index j = 0; j < size; ++j) out.col(j * size + i) = coeffs->row(j).transpose();
    }
    R.push_back(std::move(out));
  }
  for (auto a : h.elements())
    for (auto b : h.elements()) {
      const auto ab = h.mul(a, b);
      for (Index i = 0; i < size; ++i) {
        Vec<Scalar> expected = Vec<Scalar>::Zero(cb.bimodule.dim(a) * h.dim(b));
        for (Index j = 0; j < size; ++j)
          expected += tensor(Vec<Scalar>(omega[a.index()].col(j)), Vec<Scalar>(R[b.index()].col(j * size + i)));
        if (!(Vec<Scalar>(cb.maps.right(a, b) * omega[ab.index()].col(i)) == expected))
          throw Error(ErrorKind::StructureInconsistent,
                      "right coaction of frame element " + std::to_string(i) + " differs from the R expansion at " +
                          detail::grading_text({a.index(), b.index()}));
      }
    }
  return R;
}

// η^α_j = Σ_i ω^α_i S_{α^{-1}}(R^{α^{-1}}_ij).
template <class Scalar>
std::vector<Mat<Scalar>> eta_basis(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                                   const std::vector<Mat<Scalar>>& omega, const ElementMatrix<Scalar>& R) {
  const Index size = omega[0].cols();
  std::vector<Mat<Scalar>> eta;
  for (auto a : h.elements()) {
    const auto ai = h.inv(a);
    Mat<Scalar> out = Mat<Scalar>::Zero(cb.bimodule.dim(a), size);
    for (Index j = 0; j < size; ++j)
      for (Index i = 0; i < size; ++i)
        out.col(j) += cb.bimodule.right(a) *
                      tensor(Vec<Scalar>(omega[a.index()].col(i)), Vec<Scalar>(h.antipode(ai) * R[ai.index()].col(i * size + j)));
    eta.push_back(std::move(out));
  }
  return eta;
}

template <class Scalar>
StructureData<Scalar> extract_structure(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb) {
  if (!cb.left_covariant()) throw Error(ErrorKind::MissingCoaction, "left coaction is needed for the invariant frame");
  StructureData<Scalar> s;
  s.omega = left_invariant_basis(h, cb);
  s.size = s.omega[0].cols();
  s.F = structure_maps(h, cb, s.omega);
  if (h.has_psi()) s.f = functionals_f(h, cb, s.omega);
  if (cb.bicovariant()) {
    s.R = matrix_R(h, cb, s.omega);
    s.eta = eta_basis(h, cb, s.omega, *s.R);
    if (h.has_psi()) s.g = functionals_g(h, cb, *s.eta);
  }
  return s;
}

// Every identity relating the frames, functionals and R that applies to the data present.
template <class Scalar>
VerificationReport verify_structure(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                                    const StructureData<Scalar>& s) {
  VerificationReport report;
  const auto e = h.one();
  const auto& c = h.coalgebra();
  const Index size = s.size;
  const auto els = h.elements();

  for (auto a : els) {
    const auto inv = invariant_subspace_left(h, cb, a);
    if (detail::span_or_zero(s.omega[a.index()]) == inv && rank<Scalar>(s.omega[a.index()]) == size)
      report.pass("left invariant frame");
    else
      report.fail("left invariant frame", {a.index()}, "frame does not span the left invariant subspace");
    const Mat<Scalar> l = left_combination(h, cb, s.omega[a.index()], a);
    const Mat<Scalar> r = right_combination(h, cb, s.omega[a.index()], a);
    for (const auto& [name, m] : {std::pair{"free on the frame (left)", l}, std::pair{"free on the frame (right)", r}}) {
      if (m.rows() == m.cols() && rank<Scalar>(m) == m.rows())
        report.pass(name);
      else
        report.fail(name, {a.index()}, "coefficient map is not bijective");
    }
    // P_1 fixes invariants and kills the augmentation: P_α(bρ) = ε(b)P_α(ρ)
    const Mat<Scalar> P = projection_P(h, cb, a);
    const Index g1 = cb.bimodule.dim(e);
    compare_maps(report, "projection ignores left factors", {a.index()}, Mat<Scalar>(P * cb.bimodule.left(e)),
                 Mat<Scalar>(tensor(h.counit(), P)), {h.dim(e), g1});
  }
  compare_maps(report, "projection fixes invariants", {e.index()},
               Mat<Scalar>(projection_P(h, cb, e) * s.omega[e.index()]), s.omega[e.index()]);
  for (auto a : els)
    for (auto b : els) {
      const auto ab = h.mul(a, b);
      compare_maps(report, "left coaction on frame", {a.index(), b.index()},
                   Mat<Scalar>(cb.maps.left(a, b) * s.omega[ab.index()]),
                   Mat<Scalar>(tensor(h.unit(a), s.omega[b.index()])));
    }

  if (s.f) {
    check_functionals(h, cb, s.omega, *s.f, true, report);
    check_functional_inverse(h, *s.f, size, report);
  }

  if (s.R) {
    const auto& R = *s.R;
    auto r = [&](GroupElement b, Index i, Index j) { return Vec<Scalar>(R[b.index()].col(i * size + j)); };
    for (auto a : els)
      for (auto b : els) {
        const auto ab = h.mul(a, b);
        for (Index i = 0; i < size; ++i) {
          Vec<Scalar> expected = Vec<Scalar>::Zero(cb.bimodule.dim(a) * h.dim(b));
          for (Index j = 0; j < size; ++j) expected += tensor(Vec<Scalar>(s.omega[a.index()].col(j)), r(b, j, i));
          const Vec<Scalar> got = cb.maps.right(a, b) * s.omega[ab.index()].col(i);
          if (got == expected)
            report.pass("right coaction on frame");
          else
            report.fail(Violation{"right coaction on frame", {a.index(), b.index()}, {i}, format_vector(got),
                                  format_vector(expected)});
          for (Index j = 0; j < size; ++j) {
            Vec<Scalar> split = Vec<Scalar>::Zero(h.dim(a) * h.dim(b));
            for (Index k = 0; k < size; ++k) split += tensor(r(a, j, k), r(b, k, i));
            const Vec<Scalar> lhs = h.comult(a, b) * r(ab, j, i);
            if (lhs == split)
              report.pass("R comultiplicative");
            else
              report.fail(Violation{"R comultiplicative", {a.index(), b.index()}, {j, i}, format_vector(lhs),
                                    format_vector(split)});
          }
        }
      }
    for (Index i = 0; i < size; ++i)
      for (Index j = 0; j < size; ++j) {
        const Scalar eps = (h.counit() * r(e, i, j)).value();
        const Scalar delta = i == j ? Scalar(1) : Scalar(0);
        if (eps == delta)
          report.pass("R counital");
        else
          report.fail(Violation{"R counital", {e.index()}, {i, j}, format_scalar(eps), format_scalar(delta)});
      }
    for (auto a : els) {
      const auto ai = h.inv(a);
      const Index n = h.dim(a);
      for (Index i = 0; i < size; ++i)
        for (Index j = 0; j < size; ++j) {
          Vec<Scalar> first = Vec<Scalar>::Zero(n), second = first;
          for (Index k = 0; k < size; ++k) {
            first += h.mult(a) * tensor(Vec<Scalar>(h.antipode(ai) * r(ai, i, k)), r(a, k, j));
            second += h.mult(a) * tensor(r(a, i, k), Vec<Scalar>(h.antipode(ai) * r(ai, k, j)));
          }
          const Vec<Scalar> expected = i == j ? Vec<Scalar>(h.unit(a)) : Vec<Scalar>(Vec<Scalar>::Zero(n));
          compare_maps(report, "R invertible through the antipode", {a.index()}, Mat<Scalar>(first), Mat<Scalar>(expected));
          compare_maps(report, "R invertible through the antipode (other side)", {a.index()}, Mat<Scalar>(second),
                       Mat<Scalar>(expected));
        }
    }
    // Σ_i R_ij (b * f_ih) = Σ_i (f_ji * b) R_hi for every grading
    if (s.f) {
      const Mat<Scalar>& f1 = (*s.f)[e.index()];
      for (auto b : els) {
        const Index n = h.dim(b);
        for (Index j = 0; j < size; ++j)
          for (Index hh = 0; hh < size; ++hh)
            for (Index l = 0; l < n; ++l) {
              const Vec<Scalar> x = unit_vector<Scalar>(n, l);
              Vec<Scalar> lhs = Vec<Scalar>::Zero(n), rhs = lhs;
              for (Index i = 0; i < size; ++i) {
                const Vec<Scalar> xf = functional_acting_right(c, b, RowVec<Scalar>(f1.row(i * size + hh))) * x;
                const Vec<Scalar> fx = functional_acting_left(c, b, RowVec<Scalar>(f1.row(j * size + i))) * x;
                lhs += h.mult(b) * tensor(r(b, i, j), xf);
                rhs += h.mult(b) * tensor(fx, r(b, hh, i));
              }
              if (lhs == rhs)
                report.pass("R intertwines f");
              else
                report.fail(Violation{"R intertwines f", {b.index()}, {j, hh, l}, format_vector(lhs), format_vector(rhs)});
            }
      }
    }
  }

  if (s.eta) {
    const auto& eta = *s.eta;
    for (auto a : els) {
      compare_maps(report, "eta right invariant", {a.index()},
                   Mat<Scalar>(cb.maps.right(a, e) * eta[a.index()]),
                   Mat<Scalar>(tensor(eta[a.index()], h.unit(e))));
      if (detail::span_or_zero(eta[a.index()]) == invariant_subspace_right(h, cb, a) &&
          rank<Scalar>(eta[a.index()]) == size)
        report.pass("eta spans right invariants");
      else
        report.fail("eta spans right invariants", {a.index()}, "η does not form a basis of the right invariants");
      // ω_i = Σ_j η_j R_ji
      for (Index i = 0; i < size; ++i) {
        Vec<Scalar> sum = Vec<Scalar>::Zero(cb.bimodule.dim(a));
        for (Index j = 0; j < size; ++j)
          sum += cb.bimodule.right(a) *
                 tensor(Vec<Scalar>(eta[a.index()].col(j)), Vec<Scalar>((*s.R)[a.index()].col(j * size + i)));
        if (sum == Vec<Scalar>(s.omega[a.index()].col(i)))
          report.pass("frame from right frame");
        else
          report.fail(Violation{"frame from right frame", {a.index()}, {i}, format_vector(sum),
                                format_vector(s.omega[a.index()].col(i))});
      }
    }
    for (auto a : els)
      for (auto b : els) {
        const auto ab = h.mul(a, b), ai = h.inv(a);
        compare_maps(report, "right coaction on right frame", {a.index(), b.index()},
                     Mat<Scalar>(cb.maps.right(a, b) * eta[ab.index()]),
                     Mat<Scalar>(tensor(eta[a.index()], h.unit(b))));
        // Δ^l_{α,β}(η_j) = Σ_i S_{α^{-1}}(R_ij)⊗η^β_i
        for (Index j = 0; j < size; ++j) {
          Vec<Scalar> expected = Vec<Scalar>::Zero(h.dim(a) * cb.bimodule.dim(b));
          for (Index i = 0; i < size; ++i)
            expected += tensor(Vec<Scalar>(h.antipode(ai) * (*s.R)[ai.index()].col(i * size + j)),
                               Vec<Scalar>(eta[b.index()].col(i)));
          const Vec<Scalar> got = cb.maps.left(a, b) * eta[ab.index()].col(j);
          if (got == expected)
            report.pass("left coaction on right frame");
          else
            report.fail(Violation{"left coaction on right frame", {a.index(), b.index()}, {j}, format_vector(got),
                                  format_vector(expected)});
        }
      }
  }

  if (s.g) {
    check_functionals(h, cb, *s.eta, *s.g, false, report);
    // g = f∘S_1² on A_1; plain equality only when S_1 is an involution
    if (s.f) {
      const Mat<Scalar>& S1 = h.antipode(e);
      compare_maps(report, "f and g agree on the identity component", {e.index()},
                   Mat<Scalar>((*s.f)[e.index()] * S1 * S1), Mat<Scalar>((*s.g)[e.index()]));
    }
  }
  return report;
}

// Free bimodule on generators ω_i with right action from f, left coaction from Δ and right coaction from R.
// f and R are checked first.
template <class Scalar>
CovariantBimodule<Scalar> reconstruct(const HopfPiCoalgebra<Scalar>& h, const FunctionalMatrix<Scalar>& f,
                                      const ElementMatrix<Scalar>& R, Index size) {
  const auto e = h.one();
  const auto& c = h.coalgebra();
  const auto els = h.elements();
  const int order = h.group().order();
  detail::require(static_cast<int>(f.size()) == order && static_cast<int>(R.size()) == order,
                  "one functional matrix and one R matrix per grading expected");
  for (auto a : els) {
    detail::require(f[a.index()].rows() == size * size && f[a.index()].cols() == h.dim(a), "functional matrix shape");
    detail::require(R[a.index()].rows() == h.dim(a) && R[a.index()].cols() == size * size, "R matrix shape");
  }
  auto fail = [](const std::string& what, const VerificationReport& rep) {
    const auto& v = rep.violations().front();
    std::string basis;
    for (auto b : v.basis) basis += (basis.empty() ? "" : ",") + std::to_string(b);
    throw Error(ErrorKind::IncompatibleData, what + " violated: " + v.check + " at grading " +
                                                 std::to_string(v.grading.empty() ? 0 : v.grading[0]) + " index (" +
                                                 basis + "): " + v.lhs + " vs " + v.rhs);
  };
  {
    VerificationReport rep;
    for (auto a : els)
      for (Index i = 0; i < size; ++i)
        for (Index j = 0; j < size; ++j) {
          const RowVec<Scalar> lhs = f[a.index()].row(i * size + j) * h.mult(a);
          RowVec<Scalar> rhs = RowVec<Scalar>::Zero(h.dim(a) * h.dim(a));
          for (Index k = 0; k < size; ++k)
            rhs += tensor(RowVec<Scalar>(f[a.index()].row(i * size + k)), RowVec<Scalar>(f[a.index()].row(k * size + j)));
          compare_maps(rep, "f multiplicative", {a.index()}, Mat<Scalar>(lhs), Mat<Scalar>(rhs));
          const Scalar one = (f[a.index()].row(i * size + j) * h.unit(a)).value();
          compare_maps(rep, "f unital", {a.index()}, Mat<Scalar>(Mat<Scalar>::Constant(1, 1, one)),
                       Mat<Scalar>(Mat<Scalar>::Constant(1, 1, i == j ? Scalar(1) : Scalar(0))));
        }
    if (!rep.ok()) fail("functional relations", rep);
  }
  auto r = [&](GroupElement b, Index i, Index j) { return Vec<Scalar>(R[b.index()].col(i * size + j)); };
  {
    VerificationReport rep;
    for (auto a : els)
      for (auto b : els)
        for (Index j = 0; j < size; ++j)
          for (Index i = 0; i < size; ++i) {
            Vec<Scalar> split = Vec<Scalar>::Zero(h.dim(a) * h.dim(b));
            for (Index k = 0; k < size; ++k) split += tensor(r(a, j, k), r(b, k, i));
            compare_maps(rep, "R comultiplicative", {a.index(), b.index()}, Mat<Scalar>(h.comult(a, b) * r(h.mul(a, b), j, i)),
                         Mat<Scalar>(split));
          }
    for (Index i = 0; i < size; ++i)
      for (Index j = 0; j < size; ++j)
        compare_maps(rep, "R counital", {e.index()}, Mat<Scalar>(h.counit() * r(e, i, j)),
                     Mat<Scalar>(Mat<Scalar>::Constant(1, 1, i == j ? Scalar(1) : Scalar(0))));
    const Mat<Scalar>& f1 = f[e.index()];
    const Index n1 = h.dim(e);
    for (Index j = 0; j < size; ++j)
      for (Index hh = 0; hh < size; ++hh)
        for (Index l = 0; l < n1; ++l) {
          const Vec<Scalar> x = unit_vector<Scalar>(n1, l);
          Vec<Scalar> lhs = Vec<Scalar>::Zero(n1), rhs = lhs;
          for (Index i = 0; i < size; ++i) {
            lhs += h.mult(e) * tensor(r(e, i, j), Vec<Scalar>(functional_acting_right(c, e, RowVec<Scalar>(f1.row(i * size + hh))) * x));
            rhs += h.mult(e) * tensor(Vec<Scalar>(functional_acting_left(c, e, RowVec<Scalar>(f1.row(j * size + i))) * x), r(e, hh, i));
          }
          compare_maps(rep, "R intertwines f", {e.index()}, Mat<Scalar>(lhs), Mat<Scalar>(rhs));
        }
    if (!rep.ok()) fail("R relations", rep);
  }

  PiBimodule<Scalar> m;
  for (auto a : els) {
    const Index n = h.dim(a), g = n * size;
    m.dims.push_back(g);
    m.left_action.push_back(tensor(h.mult(a), identity<Scalar>(size)));
    Mat<Scalar> right = Mat<Scalar>::Zero(g, g * n);
    for (Index i = 0; i < size; ++i)
      for (Index j = 0; j < size; ++j) {
        const Mat<Scalar> act = functional_acting_left(c, a, RowVec<Scalar>(f[e.index()].row(i * size + j)));
        for (Index k = 0; k < n; ++k)
          for (Index l = 0; l < n; ++l) {
            const Vec<Scalar> v = h.mult(a) * tensor(unit_vector<Scalar>(n, k), Vec<Scalar>(act.col(l)));
            for (Index p = 0; p < n; ++p) right(p * size + j, (k * size + i) * n + l) += v(p);
          }
      }
    m.right_action.push_back(std::move(right));
  }
  CovariantMaps<Scalar> maps;
  maps.order = order;
  maps.delta_l.emplace();
  maps.delta_r.emplace();
  for (auto a : els)
    for (auto b : els) {
      const auto ab = h.mul(a, b);
      const Index na = h.dim(a), nb = h.dim(b), nab = h.dim(ab);
      maps.delta_l->push_back(tensor(h.comult(a, b), identity<Scalar>(size)));
      Mat<Scalar> dr = Mat<Scalar>::Zero(na * size * nb, nab * size);
      for (Index k = 0; k < nab; ++k) {
        const Vec<Scalar> split = h.comult(a, b) * unit_vector<Scalar>(nab, k);
        for (Index i = 0; i < size; ++i)
          for (Index p = 0; p < na; ++p)
            for (Index q = 0; q < nb; ++q) {
              const Scalar coeff = split(p * nb + q);
              if (coeff == Scalar(0)) continue;
              for (Index j = 0; j < size; ++j) {
                const Vec<Scalar> v = h.mult(b) * tensor(unit_vector<Scalar>(nb, q), r(b, j, i));
                for (Index t = 0; t < nb; ++t) dr((p * size + j) * nb + t, k * size + i) += coeff * v(t);
              }
            }
      }
      maps.delta_r->push_back(std::move(dr));
    }
  return covariant_bimodule(h, std::move(m), std::move(maps));
}

// Compares `rebuilt` (free on the frame) with `cb` through (a_i) ↦ Σ a_i ω_i.
template <class Scalar>
VerificationReport check_isomorphic(const HopfPiCoalgebra<Scalar>& h, const CovariantBimodule<Scalar>& cb,
                                    const std::vector<Mat<Scalar>>& omega, const CovariantBimodule<Scalar>& rebuilt) {
  VerificationReport report;
  const auto els = h.elements();
  std::vector<Mat<Scalar>> phi;
  for (auto a : els) {
    phi.push_back(left_combination(h, cb, omega[a.index()], a));
    const Mat<Scalar>& p = phi.back();
    if (p.rows() == p.cols() && p.cols() == rebuilt.bimodule.dim(a) && rank<Scalar>(p) == p.rows())
      report.pass("identification bijective");
    else {
      report.fail("identification bijective", {a.index()}, "frame coordinates are not a bijection");
      return report;
    }
  }
  for (auto a : els) {
    const Index n = h.dim(a);
    const Mat<Scalar>& p = phi[a.index()];
    compare_maps(report, "left action preserved", {a.index()}, Mat<Scalar>(p * rebuilt.bimodule.left(a)),
                 Mat<Scalar>(cb.bimodule.left(a) * tensor(identity<Scalar>(n), p)));
    compare_maps(report, "right action preserved", {a.index()}, Mat<Scalar>(p * rebuilt.bimodule.right(a)),
                 Mat<Scalar>(cb.bimodule.right(a) * tensor(p, identity<Scalar>(n))));
  }
  for (auto a : els)
    for (auto b : els) {
      const auto ab = h.mul(a, b);
      if (cb.left_covariant())
        compare_maps(report, "left coaction preserved", {a.index(), b.index()},
                     Mat<Scalar>(tensor(identity<Scalar>(h.dim(a)), phi[b.index()]) * rebuilt.maps.left(a, b)),
                     Mat<Scalar>(cb.maps.left(a, b) * phi[ab.index()]));
      if (cb.right_covariant())
        compare_maps(report, "right coaction preserved", {a.index(), b.index()},
                     Mat<Scalar>(tensor(phi[a.index()], identity<Scalar>(h.dim(b))) * rebuilt.maps.right(a, b)),
                     Mat<Scalar>(cb.maps.right(a, b) * phi[ab.index()]));
    }
  return report;
}

}  // namespace hpc
