#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hpc/hopf.hpp"

namespace hpc::io {

inline constexpr const char* kFormatVersion = "hpc-1";

template <class Scalar>
struct NamedIdeal {
  std::string name;
  std::vector<Vec<Scalar>> generators;  // coordinates in A_1
};

// A definition file after parsing: the algebra plus the naming needed to print witnesses.
template <class Scalar>
struct Definition {
  std::string name;
  std::vector<std::string> element_names;
  std::vector<std::vector<std::string>> basis_names;  // per group element
  HopfPiCoalgebra<Scalar> algebra;
  std::vector<NamedIdeal<Scalar>> ideals;

  // Throws UnknownIdeal.
  const NamedIdeal<Scalar>& ideal(const std::string& wanted) const {
    for (const auto& i : ideals)
      if (i.name == wanted) return i;
    throw Error(ErrorKind::UnknownIdeal, "no ideal named \"" + wanted + "\"");
  }
};

using AnyDefinition = std::variant<Definition<Rational>, Definition<Modp>>;

// Parses an hpc-1 document. Prime-field entries are reduced under a ModulusScope
// installed for the duration of the call; callers computing with the result must
// install their own. Throws Error(ParseError) naming the line or the JSON field.
AnyDefinition parse_definition(std::string_view text);
AnyDefinition load_definition(const std::filesystem::path& path);

// Canonical hpc-1 text for a definition; parse_definition of it reproduces the input.
// Installs its own ModulusScope for prime fields.
template <class Scalar>
std::string write_definition(const Definition<Scalar>& def);

// Default names: the identity "1", other elements "g<index>"; basis "e0", "e1", ...
template <class Scalar>
Definition<Scalar> definition_of(std::string name, HopfPiCoalgebra<Scalar> h);

}  // namespace hpc::io
