#include "hpc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "hpc/io.hpp"
#include "hpc/structure.hpp"
#include "json.hpp"

namespace hpc::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string command;
  std::string path;
  std::string format = "text";
  bool timing = false;
  std::string ideal;
  bool universal = false;
  bool right = false;
  Index max_dim = kEnumerationMaxDim;
  std::vector<std::string> echo;
};

// Thrown to stop a command with a verdict that is not an Error.
struct Verdict {
  int code;
  std::string message;
};

class Report {
public:
  Json doc;
  std::vector<std::string> lines;

  void line(std::string s) { lines.push_back(std::move(s)); }

  void phase(const std::string& name, std::function<void()> fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - t0;
    timings_.emplace_back(name, ms.count());
  }

  void finish(const Options& o, int code, std::ostream& out) {
    doc["result"] = code == kOk ? "ok" : "violations";
    if (o.timing) {
      Json t;
      std::ostringstream text;
      text << "timing:";
      for (const auto& [name, ms] : timings_) {
        t[name] = ms;
        text << " " << name << " " << std::fixed << std::setprecision(3) << ms << " ms;";
      }
      doc["timing_ms"] = t;
      std::string s = text.str();
      if (s.back() == ';') s.pop_back();
      line(s);
    }
    line(std::string("result: ") + (code == kOk ? "ok" : "violations"));
    if (o.format == "json")
      out << doc.dump(2) << "\n";
    else
      for (const auto& l : lines) out << l << "\n";
  }

private:
  std::vector<std::pair<std::string, double>> timings_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string list_text(const std::vector<Index>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + std::to_string(xs[i]);
  return s + "]";
}

template <class Scalar>
class Namer {
public:
  explicit Namer(const io::Definition<Scalar>& d) : d_(d) {}

  const std::string& element(int a) const { return d_.element_names[a]; }

  std::string grading(const std::vector<int>& g) const {
    static const char* labels[] = {"α", "β", "γ", "δ"};
    std::string s;
    for (std::size_t k = 0; k < g.size(); ++k)
      s += (k ? ", " : "") + std::string(k < 4 ? labels[k] : "?") + "=" + element(g[k]);
    return s;
  }

  // Leg k of a witness lives in component g[k] when there is one per leg,
  // otherwise in the only component named.
  std::string basis(const std::vector<int>& g, const std::vector<Index>& legs) const {
    std::string s;
    for (std::size_t k = 0; k < legs.size(); ++k) {
      const int comp = g.size() == legs.size() ? g[k] : (g.size() == 1 ? g[0] : -1);
      const auto& names = comp >= 0 ? d_.basis_names[comp] : common();
      const auto i = static_cast<std::size_t>(legs[k]);
      s += (k ? "⊗" : "") + (i < names.size() ? names[i] : "#" + std::to_string(i));
    }
    return s;
  }

  std::vector<std::string> grading_names(const std::vector<int>& g) const {
    std::vector<std::string> out;
    for (int a : g) out.push_back(element(a));
    return out;
  }

private:
  const std::vector<std::string>& common() const {
    for (const auto& b : d_.basis_names)
      if (b != d_.basis_names.front()) return empty_;
    return d_.basis_names.front();
  }

  const io::Definition<Scalar>& d_;
  std::vector<std::string> empty_;
};

template <class Scalar>
void add_suite(Report& r, const std::string& title, const VerificationReport& v, const Namer<Scalar>& n) {
  Json checks = Json::array();
  r.line(title + ":");
  for (const auto& c : v.checks()) {
    checks.push_back(Json{{"name", c.name}, {"instances", c.instances}, {"failures", c.failures}});
    if (c.failures == 0)
      r.line("  pass " + c.name + " (" + std::to_string(c.instances) + ")");
    else
      r.line("  FAIL " + c.name + " (" + std::to_string(c.failures) + " of " + std::to_string(c.instances) + ")");
  }
  Json violations = Json::array();
  for (const auto& x : v.violations()) {
    std::string w = x.check;
    if (!x.grading.empty()) w += ", " + n.grading(x.grading);
    if (!x.basis.empty()) w += ", basis " + n.basis(x.grading, x.basis);
    r.line("  violation: " + w + ": " + x.lhs + (x.rhs.empty() ? "" : " vs " + x.rhs));
    Json jv{{"check", x.check}, {"grading", n.grading_names(x.grading)}};
    if (!x.basis.empty()) jv["basis"] = n.basis(x.grading, x.basis);
    jv["lhs"] = x.lhs;
    jv["rhs"] = x.rhs;
    violations.push_back(jv);
  }
  r.doc["suites"][title] = Json{{"checks", checks}, {"violations", violations}};
}

template <class Scalar>
Json vector_json(const Vec<Scalar>& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(format_scalar(v(i)));
  return a;
}

template <class Scalar>
void describe_algebra(Report& r, const io::Definition<Scalar>& d) {
  const auto& h = d.algebra;
  if (!d.name.empty()) {
    r.doc["name"] = d.name;
    r.line("name: " + d.name);
  }
  r.doc["field"] = h.field().name();
  r.doc["group_order"] = h.group().order();
  r.doc["dims"] = h.dims();
  r.line("field: " + h.field().name());
  r.line("group order: " + std::to_string(h.group().order()));
  r.line("dim A = " + list_text(h.dims()));
}

// Later commands assume the axioms; stop with exit 1 otherwise.
template <class Scalar>
void require_axioms(Report& r, const io::Definition<Scalar>& d, const Namer<Scalar>& n) {
  VerificationReport v;
  r.phase("axioms", [&] { v = verify_hopf(d.algebra); });
  if (!v.ok()) {
    add_suite(r, "axioms", v, n);
    throw Verdict{kViolation, "the structure fails its axioms"};
  }
}

template <class Scalar>
RightIdeal<Scalar> named_ideal(Report& r, const io::Definition<Scalar>& d, const std::string& name) {
  const auto& ni = d.ideal(name);
  const auto& h = d.algebra;
  const Index n = h.dim(h.one());
  Mat<Scalar> gens(n, static_cast<Index>(ni.generators.size()));
  for (Index k = 0; k < gens.cols(); ++k) gens.col(k) = ni.generators[k];
  auto ideal = right_ideal(h, gens.cols() ? Subspace<Scalar>::span(gens) : Subspace<Scalar>(n));
  Json basis = Json::array();
  std::string text;
  for (Index k = 0; k < ideal.space.dim(); ++k) {
    const Vec<Scalar> v = ideal.space.basis().row(k).transpose();
    basis.push_back(vector_json(v));
    text += (k ? ", " : "") + format_vector(v);
  }
  r.doc["ideal"] = Json{{"name", name}, {"dim", ideal.space.dim()}, {"basis", basis}};
  r.line("ideal: " + name + ", dim " + std::to_string(ideal.space.dim()) + ", basis [" + text + "]");
  return ideal;
}

template <class Scalar>
Fodc<Scalar> build_calculus(Report& r, const Options& o, const io::Definition<Scalar>& d) {
  const auto& h = d.algebra;
  if (o.universal) {
    r.doc["calculus"] = "universal";
    r.line("calculus: universal");
    Fodc<Scalar> f;
    r.phase("calculus", [&] { f = universal_calculus(h); });
    return f;
  }
  const auto ideal = named_ideal(r, d, o.ideal);
  r.doc["calculus"] = o.right ? "right" : "left";
  r.line(std::string("calculus: ") + (o.right ? "right" : "left") + " construction from the ideal");
  Fodc<Scalar> f;
  r.phase("calculus", [&] { f = o.right ? calculus_from_ideal_right(h, ideal) : calculus_from_ideal(h, ideal); });
  return f;
}

template <class Scalar>
std::vector<Index> gamma_dims(const HopfPiCoalgebra<Scalar>& h, const Fodc<Scalar>& f) {
  std::vector<Index> out;
  for (auto a : h.elements()) out.push_back(f.dim(a));
  return out;
}

template <class Scalar>
int cmd_verify(Report& r, const Options&, const io::Definition<Scalar>& d) {
  const Namer<Scalar> n(d);
  describe_algebra(r, d);
  VerificationReport v;
  r.phase("axioms", [&] { v = verify_hopf(d.algebra); });
  add_suite(r, "axioms", v, n);
  return v.ok() ? kOk : kViolation;
}

template <class Scalar>
int cmd_calculus(Report& r, const Options& o, const io::Definition<Scalar>& d) {
  const Namer<Scalar> n(d);
  const auto& h = d.algebra;
  describe_algebra(r, d);
  require_axioms(r, d, n);
  const auto f = build_calculus(r, o, d);
  std::vector<Index> ndims;
  for (auto a : h.elements()) ndims.push_back(f.kernels[a.index()].dim());
  const auto gdims = gamma_dims(h, f);
  bool left = false, right = false, bi = false;
  VerificationReport v;
  r.phase("checks", [&] {
    left = check_left_covariant(h, f).ok();
    right = check_right_covariant(h, f).ok();
    bi = left && right && check_bicovariant(h, f).ok();
    v = verify_calculus(h, f);
  });
  r.doc["dim_N"] = ndims;
  r.doc["dim_Gamma"] = gdims;
  r.doc["left_covariant"] = left;
  r.doc["right_covariant"] = right;
  r.doc["bicovariant"] = bi;
  r.line("dim N = " + list_text(ndims));
  r.line("dim Γ = " + list_text(gdims) + "; bicovariant: " + yes_no(bi));
  r.line("left covariant: " + yes_no(left));
  r.line("right covariant: " + yes_no(right));
  add_suite(r, "calculus", v, n);
  return v.ok() ? kOk : kViolation;
}

template <class Scalar>
int cmd_structure(Report& r, const Options& o, const io::Definition<Scalar>& d) {
  const Namer<Scalar> n(d);
  const auto& h = d.algebra;
  describe_algebra(r, d);
  require_axioms(r, d, n);
  if (!h.has_psi()) throw Error(ErrorKind::MissingPsi, "the definition has no psi block");
  const auto f = build_calculus(r, o, d);
  r.line("dim Γ = " + list_text(gamma_dims(h, f)));
  CovariantBimodule<Scalar> cb;
  r.phase("coactions", [&] { cb = covariant_bimodule(h, f); });
  if (!cb.bicovariant()) {
    const auto rc = check_bicovariant(h, f);
    throw Error(ErrorKind::NotBicovariant, rc.ok() ? "coactions are incompatible" : detail::first_witness(rc));
  }
  StructureData<Scalar> s;
  VerificationReport v, iso;
  r.phase("structure", [&] { s = extract_structure(h, cb); });
  r.phase("verification", [&] { v = verify_structure(h, cb, s); });
  r.phase("reconstruction", [&] { iso = check_isomorphic(h, cb, s.omega, reconstruct(h, *s.f, *s.R, s.size)); });

  r.doc["size"] = s.size;
  r.line("|I| = " + std::to_string(s.size));
  Json fj = Json::array(), rj = Json::array();
  for (auto a : h.elements()) {
    const auto& name = n.element(a.index());
    Json rows = Json::array();
    r.line("f on component " + name + ":");
    for (Index i = 0; i < s.size; ++i)
      for (Index j = 0; j < s.size; ++j) {
        const Vec<Scalar> row = (*s.f)[a.index()].row(i * s.size + j).transpose();
        rows.push_back(Json{{"i", i}, {"j", j}, {"values", vector_json(row)}});
        r.line("  f[" + std::to_string(i) + "," + std::to_string(j) + "] = " + format_vector(row));
      }
    fj.push_back(Json{{"element", name}, {"entries", rows}});
  }
  for (auto b : h.elements()) {
    const auto& name = n.element(b.index());
    Json cols = Json::array();
    r.line("R in component " + name + ":");
    for (Index i = 0; i < s.size; ++i)
      for (Index j = 0; j < s.size; ++j) {
        const Vec<Scalar> col = (*s.R)[b.index()].col(i * s.size + j);
        cols.push_back(Json{{"i", i}, {"j", j}, {"values", vector_json(col)}});
        r.line("  R[" + std::to_string(i) + "," + std::to_string(j) + "] = " + format_vector(col));
      }
    rj.push_back(Json{{"element", name}, {"entries", cols}});
  }
  r.doc["f"] = fj;
  r.doc["R"] = rj;
  add_suite(r, "structure", v, n);
  add_suite(r, "reconstruction", iso, n);
  r.doc["reconstruction"] = iso.ok() ? "isomorphic" : "differs";
  r.line(std::string("reconstruction: ") + (iso.ok() ? "isomorphic" : "differs"));
  return v.ok() && iso.ok() ? kOk : kViolation;
}

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HPC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw Error(ErrorKind::ParseError, "HPC_THREADS must be a positive integer");
    cap = std::min<unsigned>(cap, static_cast<unsigned>(v));
  }
  return cap;
}

struct IdealRow {
  Index dim = 0;
  std::vector<Index> gamma;
  bool ad = false, left = false, right = false, bi = false;
};

template <class Scalar>
int cmd_enumerate(Report& r, const Options& o, const io::Definition<Scalar>& d) {
  const Namer<Scalar> n(d);
  const auto& h = d.algebra;
  describe_algebra(r, d);
  require_axioms(r, d, n);
  std::vector<RightIdeal<Scalar>> ideals;
  r.phase("enumeration", [&] { ideals = enumerate_right_ideals(h, o.max_dim); });
  std::vector<IdealRow> rows(ideals.size());

  const unsigned workers = std::min<unsigned>(thread_cap(), std::max<std::size_t>(1, ideals.size()));
  const std::uint32_t p = h.field().p;
  auto work = [&](unsigned w) {
    std::optional<ModulusScope> scope;
    if (h.field().is_prime_field()) scope.emplace(p);
    for (std::size_t k = w; k < ideals.size(); k += workers) {
      const auto f = calculus_from_ideal(h, ideals[k]);
      auto& row = rows[k];
      row.dim = ideals[k].space.dim();
      row.gamma = gamma_dims(h, f);
      row.ad = check_ad_invariant(h, ideals[k]).ok();
      row.left = check_left_covariant(h, f).ok();
      row.right = check_right_covariant(h, f).ok();
      row.bi = row.left && row.right && check_bicovariant(h, f).ok();
    }
  };
  r.phase("classification", [&] {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex m;
    for (unsigned w = 1; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!failure) failure = std::current_exception();
        }
      });
    try {
      work(0);
    } catch (...) {
      std::lock_guard<std::mutex> lock(m);
      if (!failure) failure = std::current_exception();
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  });

  Json table = Json::array();
  std::vector<Index> totals;
  std::size_t agree = 0;
  r.line("ideals: " + std::to_string(ideals.size()));
  r.line("  #  dim R  dim Γ  ad-invariant  left  right  bicovariant  basis");
  for (std::size_t k = 0; k < ideals.size(); ++k) {
    const auto& row = rows[k];
    Json basis = Json::array();
    std::string btext;
    for (Index b = 0; b < ideals[k].space.dim(); ++b) {
      const Vec<Scalar> v = ideals[k].space.basis().row(b).transpose();
      basis.push_back(vector_json(v));
      btext += (b ? ", " : "") + format_vector(v);
    }
    Index total = 0;
    for (auto g : row.gamma) total += g;
    totals.push_back(total);
    agree += row.ad == row.bi;
    table.push_back(Json{{"dim_R", row.dim},
                         {"dim_Gamma", row.gamma},
                         {"ad_invariant", row.ad},
                         {"left_covariant", row.left},
                         {"right_covariant", row.right},
                         {"bicovariant", row.bi},
                         {"basis", basis}});
    std::ostringstream l;
    l << "  " << std::left << std::setw(3) << k << std::setw(7) << row.dim << std::setw(7) << list_text(row.gamma)
      << std::setw(14) << yes_no(row.ad) << std::setw(6) << yes_no(row.left) << std::setw(7) << yes_no(row.right)
      << std::setw(13) << yes_no(row.bi) << "[" << btext << "]";
    r.line(l.str());
  }
  std::sort(totals.rbegin(), totals.rend());
  std::string multiset = "{";
  for (std::size_t k = 0; k < totals.size(); ++k) multiset += (k ? ", " : "") + std::to_string(totals[k]);
  multiset += "}";
  r.doc["ideals"] = table;
  r.doc["dim_Gamma_multiset"] = totals;
  r.doc["ad_invariance_matches_bicovariance"] = Json{{"agree", agree}, {"total", ideals.size()}};
  r.line("dim Γ over all ideals: " + multiset);
  r.line("ad invariance matches bicovariance: " + std::to_string(agree) + " of " + std::to_string(ideals.size()));
  return agree == ideals.size() ? kOk : kViolation;
}

template <class Scalar>
int dispatch(Report& r, const Options& o, const io::Definition<Scalar>& d) {
  if (o.command == "verify") return cmd_verify(r, o, d);
  if (o.command == "calculus") return cmd_calculus(r, o, d);
  if (o.command == "structure") return cmd_structure(r, o, d);
  return cmd_enumerate(r, o, d);
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotCovariant:
    case ErrorKind::NotBicovariant:
    case ErrorKind::InternalMismatch:
    case ErrorKind::StructureInconsistent:
    case ErrorKind::DimensionVariesAcrossGrading:
    case ErrorKind::CodomainViolation:
      return kViolation;
    default:
      return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations with Hopf group coalgebras and their differential calculi", "hpc"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", o.timing, "Append phase timings to the report");

  auto* verify = app.add_subcommand("verify", "Check the axioms of a definition file");
  verify->add_option("file", o.path, "Definition file")->required();

  auto calculus_opts = [&](CLI::App* sub) {
    sub->add_option("file", o.path, "Definition file")->required();
    auto* ideal = sub->add_option("--ideal", o.ideal, "Name of an ideal from the file");
    auto* uni = sub->add_flag("--universal", o.universal, "Use the universal calculus");
    ideal->excludes(uni);
    uni->excludes(ideal);
  };
  auto* calc = app.add_subcommand("calculus", "Build a calculus and decide its covariance");
  calculus_opts(calc);
  auto* left = calc->add_flag("--left", "Left-covariant construction from the ideal (default)");
  auto* right = calc->add_flag("--right", o.right, "Right-covariant construction from the ideal");
  left->excludes(right);
  right->excludes(left);

  auto* structure = app.add_subcommand("structure", "Extract and check the invariant structure data");
  calculus_opts(structure);

  auto* enumerate = app.add_subcommand("enumerate", "List all right ideals inside the counit kernel");
  enumerate->add_option("file", o.path, "Definition file")->required();
  enumerate->add_option("--max-dim", o.max_dim, "Largest counit kernel to enumerate")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  for (auto* sub : {verify, calc, structure, enumerate})
    if (sub->parsed()) o.command = sub->get_name();
  if ((o.command == "calculus" || o.command == "structure") && !o.universal && o.ideal.empty()) {
    err << "error: " << o.command << " needs --ideal NAME or --universal\n";
    return kInputError;
  }
  o.echo.assign(args.begin() + 1, args.end());

  Report r;
  std::string echo;
  for (const auto& a : o.echo) echo += (echo.empty() ? "" : " ") + a;
  r.doc["command"] = o.echo;
  r.line("command: " + echo);
  try {
    std::optional<io::AnyDefinition> def;
    r.phase("load", [&] { def.emplace(io::load_definition(o.path)); });
    const int code = std::visit(
        [&](const auto& d) {
          const auto& field = d.algebra.field();
          std::optional<ModulusScope> scope;
          if (field.is_prime_field()) scope.emplace(field.p);
          return dispatch(r, o, d);
        },
        *def);
    r.finish(o, code, out);
    return code;
  } catch (const Verdict& v) {
    r.doc["error"] = v.message;
    r.line("error: " + v.message);
    r.finish(o, v.code, out);
    return v.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    const int code = exit_code_for(e.kind());
    if (code == kViolation) {
      r.doc["error"] = e.what();
      r.line(std::string("error: ") + e.what());
      r.finish(o, code, out);
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace hpc::cli
