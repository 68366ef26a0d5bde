// Regenerates the checked-in definition files: make_fixtures <output dir>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hpc/io.hpp"

using namespace hpc;
using namespace hpc::io;

namespace {

template <class Scalar>
Vec<Scalar> vec(std::initializer_list<long long> xs) {
  Vec<Scalar> v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (auto x : xs) v(i++) = Scalar(x);
  return v;
}

template <class Scalar>
Definition<Scalar> named(std::string name, HopfPiCoalgebra<Scalar> h, std::vector<std::string> elements,
                         std::vector<std::string> basis) {
  auto d = definition_of(std::move(name), std::move(h));
  d.element_names = std::move(elements);
  d.basis_names.assign(d.element_names.size(), basis);
  return d;
}

void save(const std::filesystem::path& dir, const std::string& file, const std::string& text) {
  std::ofstream(dir / file, std::ios::binary) << text;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);

  using Q = Rational;
  auto kz2 = group_algebra<Q>(cyclic(2), FieldSpec::rationals());
  {
    auto d = named("k[Z2]", kz2, {"1"}, {"e", "u"});
    d.ideals = {{"kerEps", {vec<Q>({1, -1})}}, {"zero", {}}};
    const auto text = write_definition(d);
    save(dir, "kz2.json", text);
    save(dir, "truncated.json", text.substr(0, text.size() / 2));

    // S(u) = −u breaks the antipode axiom at u only
    HopfData<Q> bad = kz2.data();
    bad.antipode[0](1, 1) = Q(-1);
    auto b = named("k[Z2] with a wrong antipode", HopfPiCoalgebra<Q>(bad), {"1"}, {"e", "u"});
    save(dir, "kz2_bad_antipode.json", write_definition(b));
  }
  save(dir, "kz2_constant_z2.json",
       write_definition(named("k[Z2] constant over Z2", constant_family<Q>(kz2, cyclic(2)), {"1", "s"}, {"e", "u"})));

  {
    ModulusScope scope(7);
    auto h = group_algebra<Modp>(cyclic(3), FieldSpec::prime(7));
    auto d = named("F7[Z3]", h, {"1"}, {"1", "g", "g2"});
    d.ideals = {{"R1", {vec<Modp>({1, 4, 2})}},
                {"R2", {vec<Modp>({1, 2, 4})}},
                {"kerEps", {vec<Modp>({1, -1, 0}), vec<Modp>({0, 1, -1})}},
                {"notIdeal", {vec<Modp>({1, -1, 0})}}};
    save(dir, "f7z3.json", write_definition(d));
    save(dir, "f7z3_constant_z2.json",
         write_definition(named("F7[Z3] constant over Z2", constant_family<Modp>(h, cyclic(2)), {"1", "s"},
                                {"1", "g", "g2"})));
  }
  {
    ModulusScope scope(3);
    auto d = named("F3[Z2]", group_algebra<Modp>(cyclic(2), FieldSpec::prime(3)), {"1"}, {"e", "u"});
    d.ideals = {{"kerEps", {vec<Modp>({1, -1})}}};
    save(dir, "f3z2.json", write_definition(d));

    auto s = named("Sweedler algebra over F3", sweedler_algebra<Modp>(FieldSpec::prime(3)), {"1"},
                   {"1", "g", "x", "gx"});
    // span{x, gx} is a right ideal whose calculus is left but not right covariant
    s.ideals = {{"X", {vec<Modp>({0, 0, 1, 0}), vec<Modp>({0, 0, 0, 1})}},
                {"kerEps", {vec<Modp>({1, -1, 0, 0}), vec<Modp>({0, 0, 1, 0}), vec<Modp>({0, 0, 0, 1})}}};
    save(dir, "sweedler_f3.json", write_definition(s));
  }
  return 0;
}
