#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "hpc/hopf.hpp"

namespace hpc {

// A π-graded bimodule over A given by its action matrices in a fixed basis of each Γ_α.
// Left action: dim Γ_α × (n_α·dim Γ_α); right action: dim Γ_α × (dim Γ_α·n_α).
template <class Scalar>
struct PiBimodule {
  std::vector<Index> dims;
  std::vector<Mat<Scalar>> left_action;
  std::vector<Mat<Scalar>> right_action;

  Index dim(GroupElement a) const { return dims[a.index()]; }
  const Mat<Scalar>& left(GroupElement a) const { return left_action[a.index()]; }
  const Mat<Scalar>& right(GroupElement a) const { return right_action[a.index()]; }
};

// Coactions indexed by (α,β) at α·|π|+β. Δ^l_{α,β}: Γ_{αβ} → A_α⊗Γ_β, Δ^r_{α,β}: Γ_{αβ} → Γ_α⊗A_β.
template <class Scalar>
struct CovariantMaps {
  int order = 1;
  std::optional<std::vector<Mat<Scalar>>> delta_l;
  std::optional<std::vector<Mat<Scalar>>> delta_r;

  const Mat<Scalar>& left(GroupElement a, GroupElement b) const {
    if (!delta_l) throw Error(ErrorKind::MissingCoaction, "no left coaction");
    return (*delta_l)[a.index() * order + b.index()];
  }
  const Mat<Scalar>& right(GroupElement a, GroupElement b) const {
    if (!delta_r) throw Error(ErrorKind::MissingCoaction, "no right coaction");
    return (*delta_r)[a.index() * order + b.index()];
  }
};

// First order differential calculus realised as a quotient of the universal one.
template <class Scalar>
struct Fodc {
  PiBimodule<Scalar> bimodule;
  std::vector<Mat<Scalar>> d;               // dim Γ_α × n_α
  std::vector<Subspace<Scalar>> universal;  // A²_α inside A_α⊗A_α
  std::vector<Subspace<Scalar>> kernels;    // N_α inside A_α⊗A_α
  std::vector<Mat<Scalar>> projection;      // A_α⊗A_α → Γ_α, meaningful on A²_α
  std::vector<Mat<Scalar>> section;         // Γ_α → A²_α
  std::optional<Subspace<Scalar>> ideal;    // R ⊆ ker ε when built from a right ideal

  Index dim(GroupElement a) const { return bimodule.dim(a); }
  const Mat<Scalar>& differential(GroupElement a) const { return d[a.index()]; }
};

template <class Scalar>
struct RightIdeal {
  Subspace<Scalar> space;
  friend bool operator==(const RightIdeal& a, const RightIdeal& b) { return a.space == b.space; }
};

template <class Scalar>
Subspace<Scalar> counit_kernel(const HopfPiCoalgebra<Scalar>& h) {
  return kernel<Scalar>(h.counit());
}

template <class Scalar>
Subspace<Scalar> universal_subspace(const HopfPiCoalgebra<Scalar>& h, GroupElement a) {
  return kernel<Scalar>(h.mult(a));
}

// b ↦ 1⊗b − b⊗1.
template <class Scalar>
Mat<Scalar> universal_differential(const HopfPiCoalgebra<Scalar>& h, GroupElement a) {
  const auto I = identity<Scalar>(h.dim(a));
  return tensor(h.unit(a), I) - tensor(I, h.unit(a));
}

// Σ a⊗b⊗c⊗d = (Δ_{α,β}⊗Δ_{α,β})q regrouped as Σ ac⊗b⊗d (left) or Σ a⊗c⊗bd (right).
template <class Scalar>
Mat<Scalar> phi_l(const HopfPiCoalgebra<Scalar>& h, GroupElement a, GroupElement b);
template <class Scalar>
Mat<Scalar> phi_r(const HopfPiCoalgebra<Scalar>& h, GroupElement a, GroupElement b);

namespace detail {

template <class Scalar>
Mat<Scalar> regrouped_double_comult(const HopfPiCoalgebra<Scalar>& h, GroupElement a, GroupElement b) {
  const Mat<Scalar>& delta = h.comult(a, b);
  return permute_legs(tensor(delta, delta), {h.dim(a), h.dim(b), h.dim(a), h.dim(b)}, {0, 2, 1, 3});
}

template <class Scalar>
void check_codomain(const HopfPiCoalgebra<Scalar>& h, GroupElement a, GroupElement b, const Mat<Scalar>& phi,
                    const Mat<Scalar>& kill, const char* which) {
  const auto a2 = universal_subspace(h, h.mul(a, b));
  const Mat<Scalar> images = kill * phi * a2.basis_columns();
  for (Index k = 0; k < images.cols(); ++k)
    if (!is_zero(images.col(k)))
      throw Error(ErrorKind::CodomainViolation,
                  std::string(which) + " sends universal basis vector " + std::to_string(k) + " = " +
                      format_vector(a2.basis().row(k)) + " outside the universal subspace at grading (" +
                      std::to_string(a.index()) + "," + std::to_string(b.index()) + ")");
}

}  // namespace detail

template <class Scalar>
Mat<Scalar> phi_l(const HopfPiCoalgebra<Scalar>& h, GroupElement a, GroupElement b) {
  const Index nb = h.dim(b);
  Mat<Scalar> phi = tensor(h.mult(a), identity<Scalar>(nb * nb)) * detail::regrouped_double_comult(h, a, b);
  detail::check_codomain<Scalar>(h, a, b, phi, tensor(identity<Scalar>(h.dim(a)), h.mult(b)), "left regrouping");
  return phi;
}

template <class Scalar>
Mat<Scalar> phi_r(const HopfPiCoalgebra<Scalar>& h, GroupElement a, GroupElement b) {
  const Index na = h.dim(a);
  Mat<Scalar> phi = tensor(identity<Scalar>(na * na), h.mult(b)) * detail::regrouped_double_comult(h, a, b);
  detail::check_codomain<Scalar>(h, a, b, phi, tensor(h.mult(a), identity<Scalar>(h.dim(b))), "right regrouping");
  return phi;
}

// a⊗b ↦ (a⊗1_1)Δ_{α,1}(b): A_α⊗A_α → A_α⊗A_1.
template <class Scalar>
Mat<Scalar> r_map(const HopfPiCoalgebra<Scalar>& h, GroupElement a) {
  const auto e = h.one();
  return tensor_mult(h, {a, e}) * tensor(identity<Scalar>(h.dim(a)), h.unit(e), h.comult(a, e));
}

// a⊗b ↦ (1_1⊗a)Δ_{1,α}(b): A_α⊗A_α → A_1⊗A_α.
template <class Scalar>
Mat<Scalar> t_map(const HopfPiCoalgebra<Scalar>& h, GroupElement a) {
  const auto e = h.one();
  return tensor_mult(h, {e, a}) * tensor(h.unit(e), identity<Scalar>(h.dim(a)), h.comult(e, a));
}

// a⊗b ↦ (a⊗1_α)(S_{α^{-1}}⊗id)Δ_{α^{-1},α}(b): A_α⊗A_1 → A_α⊗A_α.
template <class Scalar>
Mat<Scalar> r_inv(const HopfPiCoalgebra<Scalar>& h, GroupElement a) {
  const auto ai = h.inv(a);
  const Index n = h.dim(a);
  const Mat<Scalar> twisted = tensor(h.antipode(ai), identity<Scalar>(n)) * h.comult(ai, a);
  return tensor_mult(h, {a, a}) * tensor(identity<Scalar>(n), h.unit(a), twisted);
}

// a⊗b ↦ b·S_α^{-1}(a_(2,α^{-1})) ⊗ a_(1,α): A_1⊗A_α → A_α⊗A_α.
template <class Scalar>
Mat<Scalar> t_inv(const HopfPiCoalgebra<Scalar>& h, GroupElement a) {
  const auto ai = h.inv(a);
  const Index n = h.dim(a);
  auto s_inverse = inverse<Scalar>(h.antipode(a));
  if (!s_inverse) throw Error(ErrorKind::IncompatibleData, "antipode is not invertible");
  const Mat<Scalar> twisted = tensor(*s_inverse, identity<Scalar>(n)) * flip<Scalar>(n, h.dim(ai)) * h.comult(a, ai);
  return tensor_mult(h, {a, a}) * tensor(identity<Scalar>(n), h.unit(a), twisted) *
         flip<Scalar>(h.dim(h.one()), n);
}

// a ↦ t_α(r_α^{-1}(1_α⊗a)) : A_1 → A_1⊗A_α, cross-checked against the expanded
// form a_(2,1) ⊗ S_{α^{-1}}(a_(1,α^{-1}))a_(3,α).
template <class Scalar>
Mat<Scalar> ad_map(const HopfPiCoalgebra<Scalar>& h, GroupElement a) {
  const auto e = h.one(), ai = h.inv(a);
  const Mat<Scalar> composite = t_map(h, a) * r_inv(h, a) * tensor(h.unit(a), identity<Scalar>(h.dim(e)));
  const Mat<Scalar> legs = permute_legs(iterated_comult(h.coalgebra(), {ai, e, a}), {h.dim(ai), h.dim(e), h.dim(a)},
                                        {1, 0, 2});
  const Mat<Scalar> expanded =
      tensor(identity<Scalar>(h.dim(e)), Mat<Scalar>(h.mult(a) * tensor(h.antipode(ai), identity<Scalar>(h.dim(a))))) *
      legs;
  if (!(composite == expanded))
    throw Error(ErrorKind::InternalMismatch, "adjoint coaction formulas disagree at grading " + std::to_string(a.index()));
  return composite;
}

template <class Scalar>
RightIdeal<Scalar> right_ideal(const HopfPiCoalgebra<Scalar>& h, const Subspace<Scalar>& space) {
  const auto e = h.one();
  detail::require(space.ambient_dim() == h.dim(e), "ideal must live in the neutral component");
  const auto ker = counit_kernel(h);
  for (Index k = 0; k < space.dim(); ++k) {
    Vec<Scalar> x = space.basis().row(k).transpose();
    if (!ker.contains(x)) throw Error(ErrorKind::NotInKernelOfCounit, "generator " + format_vector(x) + " has nonzero counit");
    for (Index j = 0; j < h.dim(e); ++j) {
      Vec<Scalar> prod = right_mult(h, e, unit_vector<Scalar>(h.dim(e), j)) * x;
      if (!space.contains(prod))
        throw Error(ErrorKind::NotARightIdeal, format_vector(x) + " times basis element " + std::to_string(j) + " = " +
                                                   format_vector(prod) + " leaves the subspace");
    }
  }
  return {space};
}

// Smallest right ideal containing the given columns.
template <class Scalar>
RightIdeal<Scalar> right_ideal_from_generators(const HopfPiCoalgebra<Scalar>& h, const Mat<Scalar>& generators) {
  const auto e = h.one();
  const Index n = h.dim(e);
  detail::require(generators.rows() == n, "generators must live in the neutral component");
  const auto ker = counit_kernel(h);
  for (Index k = 0; k < generators.cols(); ++k)
    if (!ker.contains(Vec<Scalar>(generators.col(k))))
      throw Error(ErrorKind::NotInKernelOfCounit, "generator " + format_vector(generators.col(k)) + " has nonzero counit");
  auto space = generators.cols() ? Subspace<Scalar>::span(generators) : Subspace<Scalar>(n);
  for (;;) {
    Mat<Scalar> cols(n, space.dim() * (n + 1));
    cols.leftCols(space.dim()) = space.basis_columns();
    for (Index j = 0; j < n; ++j)
      cols.middleCols(space.dim() * (j + 1), space.dim()) =
          right_mult(h, e, unit_vector<Scalar>(n, j)) * space.basis_columns();
    auto next = Subspace<Scalar>::span(cols);
    if (next.dim() == space.dim()) break;
    space = next;
  }
  return right_ideal(h, space);
}

// Builds Γ_α = A²_α/N_α from explicit sub-bimodules N_α ⊆ A²_α.
template <class Scalar>
Fodc<Scalar> calculus_from_kernels(const HopfPiCoalgebra<Scalar>& h, const std::vector<Subspace<Scalar>>& kernels) {
  detail::require(static_cast<int>(kernels.size()) == h.group().order(), "one kernel per group element expected");
  Fodc<Scalar> f;
  for (auto a : h.elements()) {
    const Index n = h.dim(a);
    const auto& N = kernels[a.index()];
    auto a2 = universal_subspace(h, a);
    if (N.ambient_dim() != n * n || !a2.contains(N))
      throw Error(ErrorKind::IncompatibleData, "kernel at grading " + std::to_string(a.index()) +
                                                   " is not inside the universal subspace");
    const Mat<Scalar> coords = a2.coordinate_map();
    auto q = quotient<Scalar>(a2.dim(), image<Scalar>(coords, N));
    const Mat<Scalar> proj = q.projection * coords;
    const Mat<Scalar> sect = a2.basis_columns() * q.section;
    const Index g = q.dim();

    Mat<Scalar> left(g, n * g), right(g, g * n);
    for (Index i = 0; i < n; ++i) {
      const Vec<Scalar> ei = unit_vector<Scalar>(n, i);
      const Mat<Scalar> lm = tensor(left_mult(h, a, ei), identity<Scalar>(n));
      const Mat<Scalar> rm = tensor(identity<Scalar>(n), right_mult(h, a, ei));
      if (N.dim() && (!N.contains(image<Scalar>(lm, N)) || !N.contains(image<Scalar>(rm, N))))
        throw Error(ErrorKind::IncompatibleData,
                    "kernel at grading " + std::to_string(a.index()) + " is not a sub-bimodule");
      const Mat<Scalar> l = proj * lm * sect, r = proj * rm * sect;
      for (Index j = 0; j < g; ++j) {
        left.col(i * g + j) = l.col(j);
        right.col(j * n + i) = r.col(j);
      }
    }
    f.bimodule.dims.push_back(g);
    f.bimodule.left_action.push_back(left);
    f.bimodule.right_action.push_back(right);
    f.d.push_back(proj * universal_differential(h, a));
    f.universal.push_back(a2);
    f.kernels.push_back(N);
    f.projection.push_back(proj);
    f.section.push_back(sect);
  }
  return f;
}

template <class Scalar>
Fodc<Scalar> universal_calculus(const HopfPiCoalgebra<Scalar>& h) {
  std::vector<Subspace<Scalar>> zero;
  for (auto a : h.elements()) zero.emplace_back(h.dim(a) * h.dim(a));
  auto f = calculus_from_kernels(h, zero);
  f.ideal = Subspace<Scalar>(h.dim(h.one()));
  return f;
}

// N_α = r_α^{-1}(A_α⊗R).
template <class Scalar>
Fodc<Scalar> calculus_from_ideal(const HopfPiCoalgebra<Scalar>& h, const RightIdeal<Scalar>& R) {
  right_ideal(h, R.space);
  std::vector<Subspace<Scalar>> kernels;
  for (auto a : h.elements())
    kernels.push_back(image<Scalar>(r_inv(h, a), Subspace<Scalar>::span(tensor(identity<Scalar>(h.dim(a)),
                                                                               R.space.basis_columns()))));
  auto f = calculus_from_kernels(h, kernels);
  f.ideal = R.space;
  return f;
}

// N_α = t_α^{-1}(R⊗A_α).
template <class Scalar>
Fodc<Scalar> calculus_from_ideal_right(const HopfPiCoalgebra<Scalar>& h, const RightIdeal<Scalar>& R) {
  right_ideal(h, R.space);
  std::vector<Subspace<Scalar>> kernels;
  for (auto a : h.elements())
    kernels.push_back(image<Scalar>(t_inv(h, a), Subspace<Scalar>::span(tensor(R.space.basis_columns(),
                                                                               identity<Scalar>(h.dim(a))))));
  auto f = calculus_from_kernels(h, kernels);
  f.ideal = R.space;
  return f;
}

namespace detail {

template <class Scalar>
Subspace<Scalar> tensor_span(const Mat<Scalar>& left_cols, const Mat<Scalar>& right_cols) {
  const Mat<Scalar> cols = tensor(left_cols, right_cols);
  return cols.cols() ? Subspace<Scalar>::span(cols) : Subspace<Scalar>(cols.rows());
}

// Records which basis vectors of `source` the map sends outside `target`.
template <class Scalar>
bool check_containment(VerificationReport& report, const std::string& check, std::vector<int> grading,
                       const Mat<Scalar>& map, const Subspace<Scalar>& source, const Subspace<Scalar>& target) {
  bool ok = true;
  for (Index k = 0; k < source.dim(); ++k) {
    const Vec<Scalar> img = map * source.basis().row(k).transpose();
    if (target.contains(img)) continue;
    ok = false;
    report.fail(Violation{check, grading, {k}, format_vector(img), "outside target subspace"});
  }
  if (ok) report.pass(check);
  return ok;
}

template <class Scalar>
bool left_containment(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f, GroupElement a, GroupElement b,
                      VerificationReport& report) {
  const auto target = tensor_span<Scalar>(identity<Scalar>(h.dim(a)), f.kernels[b.index()].basis_columns());
  return check_containment(report, "left covariance", {a.index(), b.index()}, phi_l(h, a, b),
                           f.kernels[h.mul(a, b).index()], target);
}

template <class Scalar>
bool right_containment(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f, GroupElement a, GroupElement b,
                       VerificationReport& report) {
  const auto target = tensor_span<Scalar>(f.kernels[a.index()].basis_columns(), identity<Scalar>(h.dim(b)));
  return check_containment(report, "right covariance", {a.index(), b.index()}, phi_r(h, a, b),
                           f.kernels[h.mul(a, b).index()], target);
}

inline std::string first_witness(const VerificationReport& r) {
  if (r.ok()) return "";
  const auto& v = r.violations().front();
  std::string g;
  for (int x : v.grading) g += (g.empty() ? "" : ",") + std::to_string(x);
  return v.check + " at (" + g + "), kernel basis vector " + (v.basis.empty() ? "?" : std::to_string(v.basis[0])) +
         " maps to " + v.lhs;
}

}  // namespace detail

template <class Scalar>
VerificationReport check_left_covariant(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f) {
  VerificationReport report;
  for (auto a : h.elements())
    for (auto b : h.elements()) detail::left_containment(h, f, a, b, report);
  return report;
}

template <class Scalar>
VerificationReport check_right_covariant(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f) {
  VerificationReport report;
  for (auto a : h.elements())
    for (auto b : h.elements()) detail::right_containment(h, f, a, b, report);
  return report;
}

// Δ^l_{α,β} on Γ_{αβ}, pushed down from the left regrouping on A².
template <class Scalar>
Mat<Scalar> induced_delta_l(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f, GroupElement a, GroupElement b) {
  VerificationReport r;
  if (!detail::left_containment(h, f, a, b, r)) throw Error(ErrorKind::NotCovariant, detail::first_witness(r));
  return tensor(identity<Scalar>(h.dim(a)), f.projection[b.index()]) * phi_l(h, a, b) * f.section[h.mul(a, b).index()];
}

template <class Scalar>
Mat<Scalar> induced_delta_r(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f, GroupElement a, GroupElement b) {
  VerificationReport r;
  if (!detail::right_containment(h, f, a, b, r)) throw Error(ErrorKind::NotCovariant, detail::first_witness(r));
  return tensor(f.projection[a.index()], identity<Scalar>(h.dim(b))) * phi_r(h, a, b) * f.section[h.mul(a, b).index()];
}

// Coactions induced on f; a side is omitted when that covariance fails.
template <class Scalar>
CovariantMaps<Scalar> induced_maps(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f) {
  CovariantMaps<Scalar> maps;
  maps.order = h.group().order();
  if (check_left_covariant(h, f).ok()) {
    maps.delta_l.emplace();
    for (auto a : h.elements())
      for (auto b : h.elements()) maps.delta_l->push_back(induced_delta_l(h, f, a, b));
  }
  if (check_right_covariant(h, f).ok()) {
    maps.delta_r.emplace();
    for (auto a : h.elements())
      for (auto b : h.elements()) maps.delta_r->push_back(induced_delta_r(h, f, a, b));
  }
  return maps;
}

// Bimodule axioms and every coaction law applicable to the maps present.
template <class Scalar>
VerificationReport verify_covariant_bimodule(const HopfPiCoalgebra<Scalar>& h, const PiBimodule<Scalar>& m,
                                             const CovariantMaps<Scalar>& maps) {
  VerificationReport report;
  const auto els = h.elements();
  for (auto a : els) {
    const Index n = h.dim(a), g = m.dim(a);
    const auto In = identity<Scalar>(n), Ig = identity<Scalar>(g);
    const Mat<Scalar>& L = m.left(a);
    const Mat<Scalar>& R = m.right(a);
    const std::vector<int> gr{a.index()};
    compare_maps(report, "left action associative", gr, Mat<Scalar>(L * tensor(h.mult(a), Ig)),
                 Mat<Scalar>(L * tensor(In, L)), {n, n, g});
    compare_maps(report, "left action unital", gr, Mat<Scalar>(L * tensor(h.unit(a), Ig)), Ig);
    compare_maps(report, "right action associative", gr, Mat<Scalar>(R * tensor(Ig, h.mult(a))),
                 Mat<Scalar>(R * tensor(R, In)), {g, n, n});
    compare_maps(report, "right action unital", gr, Mat<Scalar>(R * tensor(Ig, h.unit(a))), Ig);
    compare_maps(report, "actions commute", gr, Mat<Scalar>(R * tensor(L, In)), Mat<Scalar>(L * tensor(In, R)),
                 {n, g, n});
  }

  if (maps.delta_l) {
    for (auto a : els)
      for (auto b : els) {
        const auto ab = h.mul(a, b);
        const Index na = h.dim(a), nb = h.dim(b), nab = h.dim(ab), gb = m.dim(b), gab = m.dim(ab);
        const Mat<Scalar>& dl = maps.left(a, b);
        const std::vector<int> gr{a.index(), b.index()};
        compare_maps(report, "left coaction respects left action", gr, Mat<Scalar>(dl * m.left(ab)),
                     Mat<Scalar>(tensor(h.mult(a), m.left(b)) *
                                 permute_legs(tensor(h.comult(a, b), dl), {na, nb, na, gb}, {0, 2, 1, 3})),
                     {nab, gab});
        compare_maps(report, "left coaction respects right action", gr, Mat<Scalar>(dl * m.right(ab)),
                     Mat<Scalar>(tensor(h.mult(a), m.right(b)) *
                                 permute_legs(tensor(dl, h.comult(a, b)), {na, gb, na, nb}, {0, 2, 1, 3})),
                     {gab, nab});
        for (auto c : els) {
          const auto bc = h.mul(b, c);
          compare_maps(report, "left coaction coassociative", {a.index(), b.index(), c.index()},
                       Mat<Scalar>(tensor(h.comult(a, b), identity<Scalar>(m.dim(c))) * maps.left(ab, c)),
                       Mat<Scalar>(tensor(identity<Scalar>(na), maps.left(b, c)) * maps.left(a, bc)));
        }
      }
    for (auto a : els)
      compare_maps(report, "left coaction counit", {a.index()},
                   Mat<Scalar>(tensor(h.counit(), identity<Scalar>(m.dim(a))) * maps.left(h.one(), a)),
                   identity<Scalar>(m.dim(a)));
  }

  if (maps.delta_r) {
    for (auto a : els)
      for (auto b : els) {
        const auto ab = h.mul(a, b);
        const Index na = h.dim(a), nb = h.dim(b), nab = h.dim(ab), ga = m.dim(a), gab = m.dim(ab);
        const Mat<Scalar>& dr = maps.right(a, b);
        const std::vector<int> gr{a.index(), b.index()};
        compare_maps(report, "right coaction respects left action", gr, Mat<Scalar>(dr * m.left(ab)),
                     Mat<Scalar>(tensor(m.left(a), h.mult(b)) *
                                 permute_legs(tensor(h.comult(a, b), dr), {na, nb, ga, nb}, {0, 2, 1, 3})),
                     {nab, gab});
        compare_maps(report, "right coaction respects right action", gr, Mat<Scalar>(dr * m.right(ab)),
                     Mat<Scalar>(tensor(m.right(a), h.mult(b)) *
                                 permute_legs(tensor(dr, h.comult(a, b)), {ga, nb, na, nb}, {0, 2, 1, 3})),
                     {gab, nab});
        for (auto c : els) {
          const auto bc = h.mul(b, c);
          compare_maps(report, "right coaction coassociative", {a.index(), b.index(), c.index()},
                       Mat<Scalar>(tensor(maps.right(a, b), identity<Scalar>(h.dim(c))) * maps.right(ab, c)),
                       Mat<Scalar>(tensor(identity<Scalar>(ga), h.comult(b, c)) * maps.right(a, bc)));
        }
      }
    for (auto a : els)
      compare_maps(report, "right coaction counit", {a.index()},
                   Mat<Scalar>(tensor(identity<Scalar>(m.dim(a)), h.counit()) * maps.right(a, h.one())),
                   identity<Scalar>(m.dim(a)));
  }

  if (maps.delta_l && maps.delta_r)
    for (auto a : els)
      for (auto b : els)
        for (auto c : els)
          compare_maps(report, "coactions compatible", {a.index(), b.index(), c.index()},
                       Mat<Scalar>(tensor(maps.left(a, b), identity<Scalar>(h.dim(c))) * maps.right(h.mul(a, b), c)),
                       Mat<Scalar>(tensor(identity<Scalar>(h.dim(a)), maps.right(b, c)) * maps.left(a, h.mul(b, c))));
  return report;
}

// Left and right covariance by containment, then the compatibility of the induced coactions.
template <class Scalar>
VerificationReport check_bicovariant(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f) {
  VerificationReport report = check_left_covariant(h, f);
  report.merge(check_right_covariant(h, f));
  if (!report.ok()) return report;
  const auto maps = induced_maps(h, f);
  for (auto a : h.elements())
    for (auto b : h.elements())
      for (auto c : h.elements())
        compare_maps(report, "coactions compatible", {a.index(), b.index(), c.index()},
                     Mat<Scalar>(tensor(maps.left(a, b), identity<Scalar>(h.dim(c))) * maps.right(h.mul(a, b), c)),
                     Mat<Scalar>(tensor(identity<Scalar>(h.dim(a)), maps.right(b, c)) * maps.left(a, h.mul(b, c))));
  return report;
}

// Leibniz rule, spanning by a·d(b), vanishing of d(1), bimodule axioms, and the
// compatibility of d with whichever coactions exist.
template <class Scalar>
VerificationReport verify_calculus(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f) {
  const auto maps = induced_maps(h, f);
  VerificationReport report = verify_covariant_bimodule(h, f.bimodule, maps);
  for (auto a : h.elements()) {
    const Index n = h.dim(a), g = f.dim(a);
    const Mat<Scalar>& d = f.d[a.index()];
    const auto In = identity<Scalar>(n);
    const std::vector<int> gr{a.index()};
    compare_maps(report, "Leibniz rule", gr, Mat<Scalar>(d * h.mult(a)),
                 Mat<Scalar>(f.bimodule.right(a) * tensor(d, In) + f.bimodule.left(a) * tensor(In, d)), {n, n});
    const Mat<Scalar> spanned = f.bimodule.left(a) * tensor(In, d);
    if (rank<Scalar>(spanned) == g)
      report.pass("spanned by a d(b)");
    else
      report.fail("spanned by a d(b)", gr, "rank " + std::to_string(rank<Scalar>(spanned)) + " < " + std::to_string(g));
    compare_maps(report, "d(1) = 0", gr, Mat<Scalar>(d * h.unit(a)), Mat<Scalar>(Mat<Scalar>::Zero(g, 1)));
  }
  for (auto a : h.elements())
    for (auto b : h.elements()) {
      const auto ab = h.mul(a, b);
      const std::vector<int> gr{a.index(), b.index()};
      if (maps.delta_l)
        compare_maps(report, "left coaction commutes with d", gr, Mat<Scalar>(maps.left(a, b) * f.d[ab.index()]),
                     Mat<Scalar>(tensor(identity<Scalar>(h.dim(a)), f.d[b.index()]) * h.comult(a, b)));
      if (maps.delta_r)
        compare_maps(report, "right coaction commutes with d", gr, Mat<Scalar>(maps.right(a, b) * f.d[ab.index()]),
                     Mat<Scalar>(tensor(f.d[a.index()], identity<Scalar>(h.dim(b))) * h.comult(a, b)));
    }
  return report;
}

// R = (ε⊗id) r_1(N_1); the left calculus of R must reproduce every N_α.
template <class Scalar>
RightIdeal<Scalar> ideal_from_calculus(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f) {
  const auto left = check_left_covariant(h, f);
  if (!left.ok()) throw Error(ErrorKind::NotCovariant, detail::first_witness(left));
  const auto e = h.one();
  const Mat<Scalar> extract = tensor(h.counit(), identity<Scalar>(h.dim(e))) * r_map(h, e);
  RightIdeal<Scalar> R = right_ideal(h, image<Scalar>(extract, f.kernels[e.index()]));
  const auto again = calculus_from_ideal(h, R);
  for (auto a : h.elements())
    if (!(again.kernels[a.index()] == f.kernels[a.index()]))
      throw Error(ErrorKind::NotCovariant, "kernel at grading " + std::to_string(a.index()) +
                                               " is not determined by the recovered ideal");
  return R;
}

// ad_α(R) ⊆ R⊗A_α for every α.
template <class Scalar>
VerificationReport check_ad_invariant(const HopfPiCoalgebra<Scalar>& h, const RightIdeal<Scalar>& R) {
  VerificationReport report;
  for (auto a : h.elements()) {
    const auto target = detail::tensor_span<Scalar>(R.space.basis_columns(), identity<Scalar>(h.dim(a)));
    detail::check_containment(report, "ad invariance", {a.index()}, ad_map(h, a), R.space, target);
  }
  return report;
}

inline constexpr std::uint32_t kEnumerationMaxPrime = 11;
inline constexpr Index kEnumerationMaxDim = 3;

// Every subspace of the span of `basis` (columns), as canonical subspaces of the
// ambient space. Requires a prime field.
template <class Scalar>
std::vector<Subspace<Scalar>> enumerate_subspaces(const Mat<Scalar>& basis) {
  static_assert(std::is_same_v<Scalar, Modp>, "subspace enumeration needs a finite field");
  const Index k = basis.cols();
  const Index p = Modp::modulus();
  std::vector<Subspace<Scalar>> out;
  for (Index d = 0; d <= k; ++d) {
    std::vector<int> pick(k, 0);
    std::fill(pick.begin(), pick.begin() + d, 1);
    std::sort(pick.begin(), pick.end(), std::greater<>());
    do {
      std::vector<Index> pivots;
      for (Index c = 0; c < k; ++c)
        if (pick[c]) pivots.push_back(c);
      std::vector<std::pair<Index, Index>> free;
      for (Index r = 0; r < d; ++r)
        for (Index c = pivots[r] + 1; c < k; ++c)
          if (!pick[c]) free.emplace_back(r, c);
      Index combos = 1;
      for (std::size_t i = 0; i < free.size(); ++i) combos *= p;
      for (Index code = 0; code < combos; ++code) {
        Mat<Scalar> rows = Mat<Scalar>::Zero(d, k);
        for (Index r = 0; r < d; ++r) rows(r, pivots[r]) = Scalar(1);
        Index c = code;
        for (const auto& [r, col] : free) {
          rows(r, col) = Scalar(static_cast<long long>(c % p));
          c /= p;
        }
        out.push_back(d ? Subspace<Scalar>::span(Mat<Scalar>(basis * rows.transpose()))
                        : Subspace<Scalar>(basis.rows()));
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

// All right ideals inside ker ε, by exhaustive search over its subspaces.
template <class Scalar>
std::vector<RightIdeal<Scalar>> enumerate_right_ideals(const HopfPiCoalgebra<Scalar>& h,
                                                       Index max_dim = kEnumerationMaxDim) {
  if constexpr (!std::is_same_v<Scalar, Modp>) {
    (void)h;
    (void)max_dim;
    throw Error(ErrorKind::Unsupported, "ideal enumeration requires a finite prime field");
  } else {
    const auto ker = counit_kernel(h);
    if (Modp::modulus() > kEnumerationMaxPrime)
      throw Error(ErrorKind::TooLarge, "field size " + std::to_string(Modp::modulus()) + " exceeds " +
                                           std::to_string(kEnumerationMaxPrime));
    if (ker.dim() > max_dim)
      throw Error(ErrorKind::TooLarge, "counit kernel has dimension " + std::to_string(ker.dim()) + " > " +
                                           std::to_string(max_dim));
    std::vector<RightIdeal<Scalar>> out;
    for (auto& s : enumerate_subspaces<Scalar>(ker.basis_columns())) {
      try {
        out.push_back(right_ideal(h, s));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotARightIdeal) throw;
      }
    }
    return out;
  }
}

}  // namespace hpc
