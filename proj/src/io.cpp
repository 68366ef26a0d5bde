#include "hpc/io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hpc::io {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail_at(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, (where.empty() ? "document" : where) + ": " + what);
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& member(const Json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) fail_at(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail_at(path, "missing field \"" + key + "\"");
  return *it;
}

const Json& array_at(const Json& obj, const std::string& path, const std::string& key) {
  const Json& a = member(obj, path, key);
  if (!a.is_array()) fail_at(child(path, key), "expected an array");
  return a;
}

std::string string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) fail_at(path, "expected a string");
  return j.get<std::string>();
}

template <class Scalar>
Scalar scalar_at(const Json& j, const std::string& path) {
  std::string text;
  if (j.is_string())
    text = j.get<std::string>();
  else if (j.is_number_integer())
    text = j.dump();
  else
    fail_at(path, "scalars must be integers or strings such as \"3/7\"");
  try {
    return parse_scalar<Scalar>(text);
  } catch (const Error& e) {
    fail_at(path, e.what());
  }
}

template <class Scalar>
Vec<Scalar> vector_at(const Json& j, const std::string& path, Index n) {
  if (!j.is_array()) fail_at(path, "expected an array of scalars");
  if (static_cast<Index>(j.size()) != n)
    fail_at(path, "expected " + std::to_string(n) + " entries, found " + std::to_string(j.size()));
  Vec<Scalar> v(n);
  for (Index i = 0; i < n; ++i) v(i) = scalar_at<Scalar>(j[i], child(path, i));
  return v;
}

template <class Scalar>
Mat<Scalar> matrix_at(const Json& j, const std::string& path, Index rows, Index cols) {
  if (!j.is_array()) fail_at(path, "expected an array of rows");
  if (static_cast<Index>(j.size()) != rows)
    fail_at(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  Mat<Scalar> m(rows, cols);
  for (Index r = 0; r < rows; ++r) m.row(r) = vector_at<Scalar>(j[r], child(path, r), cols).transpose();
  return m;
}

// An index given either as a number or as one of `names`.
int index_at(const Json& j, const std::string& path, const std::vector<std::string>& names, const char* what) {
  if (j.is_number_integer()) {
    const auto i = j.get<long long>();
    if (i < 0 || i >= static_cast<long long>(names.size()))
      fail_at(path, std::string(what) + " index " + std::to_string(i) + " out of range");
    return static_cast<int>(i);
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == s) return static_cast<int>(k);
    fail_at(path, std::string("unknown ") + what + " \"" + s + "\"");
  }
  fail_at(path, std::string("expected a ") + what + " name or index");
}

std::vector<std::string> names_at(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail_at(path, "expected a non-empty array of names");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(string_at(j[i], child(path, i)));
    if (!seen.insert(out.back()).second) fail_at(child(path, i), "duplicate name \"" + out.back() + "\"");
  }
  return out;
}

struct Entry {
  const Json* json = nullptr;
  std::string path;
};

// Entries of a per-element block, in group order; every element exactly once.
std::vector<Entry> per_element(const Json& block, const std::string& path, const std::vector<std::string>& elements) {
  if (!block.is_array()) fail_at(path, "expected an array");
  std::vector<Entry> out(elements.size());
  for (std::size_t i = 0; i < block.size(); ++i) {
    const auto p = child(path, i);
    const int a = index_at(member(block[i], p, "element"), child(p, "element"), elements, "group element");
    if (out[a].json) fail_at(p, "element \"" + elements[a] + "\" given twice");
    out[a] = {&block[i], p};
  }
  for (std::size_t a = 0; a < elements.size(); ++a)
    if (!out[a].json) fail_at(path, "no entry for element \"" + elements[a] + "\"");
  return out;
}

FieldSpec field_at(const Json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "rationals") return FieldSpec::rationals();
  if (j.is_object() && j.contains("prime")) {
    const Json& p = j["prime"];
    if (!p.is_number_unsigned()) fail_at(child(path, "prime"), "expected a positive integer");
    try {
      return FieldSpec::prime(p.get<std::uint32_t>());
    } catch (const Error& e) {
      fail_at(child(path, "prime"), e.what());
    }
  }
  fail_at(path, "expected \"rationals\" or {\"prime\": p}");
}

template <class Scalar>
Definition<Scalar> build(const Json& doc, const FieldSpec& field) {
  const auto& gblock = member(doc, "", "group");
  auto elements = names_at(member(gblock, "/group", "elements"), "/group/elements");
  const auto& tjson = array_at(gblock, "/group", "table");
  const std::size_t order = elements.size();
  if (tjson.size() != order) fail_at("/group/table", "expected " + std::to_string(order) + " rows");
  FiniteGroup::Table table(order, std::vector<int>(order));
  for (std::size_t i = 0; i < order; ++i) {
    const auto p = child("/group/table", i);
    if (!tjson[i].is_array() || tjson[i].size() != order) fail_at(p, "expected " + std::to_string(order) + " entries");
    for (std::size_t k = 0; k < order; ++k) table[i][k] = index_at(tjson[i][k], child(p, k), elements, "group element");
  }
  FiniteGroup group;
  try {
    group = group_from_table(table);
  } catch (const Error& e) {
    fail_at("/group/table", e.what());
  }

  HopfData<Scalar> d;
  d.group = group;
  d.field = field;
  std::vector<std::vector<std::string>> basis(order);
  auto comps = per_element(member(doc, "", "components"), "/components", elements);
  for (std::size_t a = 0; a < order; ++a) {
    const auto& p = comps[a].path;
    basis[a] = names_at(member(*comps[a].json, p, "basis"), child(p, "basis"));
    d.dims.push_back(static_cast<Index>(basis[a].size()));
  }
  auto dim = [&](int a) { return d.dims[a]; };

  for (std::size_t a = 0; a < order; ++a) {
    const auto& p = comps[a].path;
    const Index n = dim(static_cast<int>(a));
    d.unit.push_back(vector_at<Scalar>(member(*comps[a].json, p, "unit"), child(p, "unit"), n));
    const auto& triples = array_at(*comps[a].json, p, "mult");
    Mat<Scalar> m = Mat<Scalar>::Zero(n, n * n);
    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t t = 0; t < triples.size(); ++t) {
      const auto tp = child(child(p, "mult"), t);
      const Json& e = triples[t];
      if (!e.is_array() || e.size() != 4) fail_at(tp, "expected [i, j, k, value]");
      const int i = index_at(e[0], child(tp, 0), basis[a], "basis element");
      const int j = index_at(e[1], child(tp, 1), basis[a], "basis element");
      const int k = index_at(e[2], child(tp, 2), basis[a], "basis element");
      if (!seen.insert({i, j, k}).second) fail_at(tp, "repeated structure constant");
      m(k, i * n + j) = scalar_at<Scalar>(e[3], child(tp, 3));
    }
    d.mult.push_back(std::move(m));
  }

  const auto& cblock = array_at(doc, "", "comult");
  d.comult.assign(order * order, Mat<Scalar>());
  std::vector<bool> have(order * order, false);
  for (std::size_t t = 0; t < cblock.size(); ++t) {
    const auto p = child("/comult", t);
    const Json& pair = member(cblock[t], p, "pair");
    if (!pair.is_array() || pair.size() != 2) fail_at(child(p, "pair"), "expected [left, right]");
    const int a = index_at(pair[0], child(child(p, "pair"), 0), elements, "group element");
    const int b = index_at(pair[1], child(child(p, "pair"), 1), elements, "group element");
    const std::size_t slot = a * order + b;
    if (have[slot]) fail_at(p, "pair given twice");
    have[slot] = true;
    const int ab = group.mul(GroupElement(a), GroupElement(b)).index();
    d.comult[slot] = matrix_at<Scalar>(member(cblock[t], p, "matrix"), child(p, "matrix"), dim(a) * dim(b), dim(ab));
  }
  for (std::size_t s = 0; s < order * order; ++s)
    if (!have[s]) fail_at("/comult", "no matrix for pair (" + elements[s / order] + ", " + elements[s % order] + ")");

  const int one = group.identity().index();
  d.counit = vector_at<Scalar>(member(doc, "", "counit"), "/counit", dim(one)).transpose();

  auto maps = [&](const std::string& key, auto rows_of) {
    std::vector<Mat<Scalar>> out;
    auto entries = per_element(member(doc, "", key), "/" + key, elements);
    for (std::size_t a = 0; a < order; ++a) {
      const auto& p = entries[a].path;
      out.push_back(matrix_at<Scalar>(member(*entries[a].json, p, "matrix"), child(p, "matrix"), rows_of(static_cast<int>(a)),
                                      dim(static_cast<int>(a))));
    }
    return out;
  };
  d.antipode = maps("antipode", [&](int a) { return dim(group.inverse(GroupElement(a)).index()); });
  if (doc.contains("psi")) d.psi = maps("psi", [&](int) { return dim(one); });

  std::vector<NamedIdeal<Scalar>> ideals;
  if (doc.contains("ideals")) {
    const auto& iblock = array_at(doc, "", "ideals");
    std::set<std::string> names;
    for (std::size_t t = 0; t < iblock.size(); ++t) {
      const auto p = child("/ideals", t);
      NamedIdeal<Scalar> ideal;
      ideal.name = string_at(member(iblock[t], p, "name"), child(p, "name"));
      if (!names.insert(ideal.name).second) fail_at(p, "duplicate ideal name \"" + ideal.name + "\"");
      const auto& gens = array_at(iblock[t], p, "generators");
      for (std::size_t g = 0; g < gens.size(); ++g)
        ideal.generators.push_back(vector_at<Scalar>(gens[g], child(child(p, "generators"), g), dim(one)));
      ideals.push_back(std::move(ideal));
    }
  }

  std::string name;
  if (doc.contains("name")) name = string_at(doc["name"], "/name");
  try {
    HopfPiCoalgebra<Scalar> h(std::move(d));
    return Definition<Scalar>{std::move(name), std::move(elements), std::move(basis), std::move(h), std::move(ideals)};
  } catch (const Error& e) {
    fail_at("", e.what());
  }
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Pretty printer that keeps scalar rows on one line.
void emit(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  auto flat = [](const Json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    if (j.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out << ",\n";
      first = false;
      out << inner << Json(it.key()).dump() << ": ";
      emit(out, it.value(), indent + 2);
    }
    out << "\n" << pad << "}";
  } else if (j.is_array() && !flat(j)) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out << ",\n";
      out << inner;
      emit(out, j[i], indent + 2);
    }
    out << "\n" << pad << "]";
  } else if (j.is_array()) {
    out << "[";
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << j[i].dump();
    out << "]";
  } else {
    out << j.dump();
  }
}

template <class Derived>
Json scalars(const Eigen::MatrixBase<Derived>& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(format_scalar(v(i)));
  return a;
}

template <class Scalar>
Json rows(const Mat<Scalar>& m) {
  Json a = Json::array();
  for (Index r = 0; r < m.rows(); ++r) a.push_back(scalars(m.row(r)));
  return a;
}

}  // namespace

AnyDefinition parse_definition(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                           ": malformed JSON");
  }
  const Json& version = member(doc, "", "format");
  if (!version.is_string() || version.get<std::string>() != kFormatVersion)
    fail_at("/format", std::string("expected \"") + kFormatVersion + "\"");
  const FieldSpec field = field_at(member(doc, "", "field"), "/field");
  if (field.is_prime_field()) {
    ModulusScope scope(field.p);
    return build<Modp>(doc, field);
  }
  return build<Rational>(doc, field);
}

AnyDefinition load_definition(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_definition(buf.str());
}

template <class Scalar>
std::string write_definition(const Definition<Scalar>& def) {
  const auto& h = def.algebra;
  std::optional<ModulusScope> scope;
  if (h.field().is_prime_field()) scope.emplace(h.field().p);
  const auto& g = h.group();
  const auto& el = def.element_names;
  Json doc;
  doc["format"] = kFormatVersion;
  if (!def.name.empty()) doc["name"] = def.name;
  if (h.field().is_prime_field())
    doc["field"] = Json{{"prime", h.field().p}};
  else
    doc["field"] = "rationals";
  Json table = Json::array();
  for (const auto& row : g.table()) {
    Json r = Json::array();
    for (int x : row) r.push_back(el[x]);
    table.push_back(r);
  }
  doc["group"] = Json{{"elements", el}, {"table", table}};
  Json comps = Json::array();
  for (auto a : h.elements()) {
    const auto& names = def.basis_names[a.index()];
    const Index n = h.dim(a);
    Json triples = Json::array();
    const Mat<Scalar>& m = h.mult(a);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        for (Index k = 0; k < n; ++k)
          if (!(m(k, i * n + j) == Scalar(0)))
            triples.push_back(Json::array({names[i], names[j], names[k], format_scalar(m(k, i * n + j))}));
    comps.push_back(Json{{"element", el[a.index()]}, {"basis", names}, {"unit", scalars(h.unit(a))}, {"mult", triples}});
  }
  doc["components"] = comps;
  Json comult = Json::array();
  for (auto a : h.elements())
    for (auto b : h.elements())
      comult.push_back(Json{{"pair", Json::array({el[a.index()], el[b.index()]})}, {"matrix", rows(h.comult(a, b))}});
  doc["comult"] = comult;
  doc["counit"] = scalars(h.counit().row(0));
  Json antipode = Json::array();
  for (auto a : h.elements()) antipode.push_back(Json{{"element", el[a.index()]}, {"matrix", rows(h.antipode(a))}});
  doc["antipode"] = antipode;
  if (h.has_psi()) {
    Json psi = Json::array();
    for (auto a : h.elements()) psi.push_back(Json{{"element", el[a.index()]}, {"matrix", rows(h.psi(a))}});
    doc["psi"] = psi;
  }
  if (!def.ideals.empty()) {
    Json ideals = Json::array();
    for (const auto& i : def.ideals) {
      Json gens = Json::array();
      for (const auto& v : i.generators) gens.push_back(scalars(v));
      ideals.push_back(Json{{"name", i.name}, {"generators", gens}});
    }
    doc["ideals"] = ideals;
  }
  std::ostringstream out;
  emit(out, doc, 0);
  out << "\n";
  return out.str();
}

template <class Scalar>
Definition<Scalar> definition_of(std::string name, HopfPiCoalgebra<Scalar> h) {
  std::vector<std::string> elements;
  std::vector<std::vector<std::string>> basis;
  for (auto a : h.elements()) {
    elements.push_back(a == h.one() ? "1" : "g" + std::to_string(a.index()));
    std::vector<std::string> b;
    for (Index i = 0; i < h.dim(a); ++i) b.push_back("e" + std::to_string(i));
    basis.push_back(std::move(b));
  }
  return Definition<Scalar>{std::move(name), std::move(elements), std::move(basis), std::move(h), {}};
}

template std::string write_definition(const Definition<Rational>&);
template std::string write_definition(const Definition<Modp>&);
template Definition<Rational> definition_of(std::string, HopfPiCoalgebra<Rational>);
template Definition<Modp> definition_of(std::string, HopfPiCoalgebra<Modp>);

}  // namespace hpc::io
