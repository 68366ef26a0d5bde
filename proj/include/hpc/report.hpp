#pragma once

#include <string>
#include <vector>

#include "hpc/linalg.hpp"

namespace hpc {

struct Violation {
  std::string check;
  std::vector<int> grading;        // group element indices the identity was instantiated at
  std::vector<Index> basis;        // basis index of the witness, one entry per tensor leg
  std::string lhs;
  std::string rhs;
};

struct CheckStatus {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
};

// Outcome of a verification suite; violations are collected, never thrown.
class VerificationReport {
public:
  void pass(const std::string& check) { status(check).instances++; }
  void fail(Violation v) {
    auto& s = status(v.check);
    s.instances++;
    s.failures++;
    violations_.push_back(std::move(v));
  }
  // Records an instance that failed without a per-basis witness.
  void fail(const std::string& check, std::vector<int> grading, std::string detail) {
    fail(Violation{check, std::move(grading), {}, std::move(detail), ""});
  }
  void merge(const VerificationReport& other) {
    for (const auto& c : other.checks_) {
      auto& s = status(c.name);
      s.instances += c.instances;
      s.failures += c.failures;
    }
    violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
  }

  bool ok() const { return violations_.empty(); }
  bool passed(const std::string& check) const {
    for (const auto& c : checks_)
      if (c.name == check) return c.failures == 0;
    return true;
  }
  const std::vector<CheckStatus>& checks() const { return checks_; }
  const std::vector<Violation>& violations() const { return violations_; }

private:
  CheckStatus& status(const std::string& name) {
    for (auto& c : checks_)
      if (c.name == name) return c;
    checks_.push_back({name, 0, 0});
    return checks_.back();
  }

  std::vector<CheckStatus> checks_;
  std::vector<Violation> violations_;
};

template <class Derived>
std::string format_vector(const Eigen::MatrixBase<Derived>& v) {
  std::string out = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_scalar(v(i));
  }
  return out + "]";
}

template <class Scalar>
std::string format_matrix(const Mat<Scalar>& m) {
  std::string out = "[";
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += format_vector(m.row(i));
  }
  return out + "]";
}

inline std::vector<Index> split_index(Index flat, const std::vector<Index>& dims) {
  std::vector<Index> legs(dims.size());
  for (Index l = static_cast<Index>(dims.size()) - 1; l >= 0; --l) {
    legs[l] = flat % dims[l];
    flat /= dims[l];
  }
  return legs;
}

// Compares two linear maps column by column, recording one violation per
// differing basis vector of the domain (whose leg dimensions are `domain`).
template <class Scalar>
bool compare_maps(VerificationReport& report, const std::string& check, std::vector<int> grading,
                  const Mat<Scalar>& lhs, const Mat<Scalar>& rhs, std::vector<Index> domain = {}) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    report.fail(check, std::move(grading),
                "shape " + detail::shape(lhs.rows(), lhs.cols()) + " vs " + detail::shape(rhs.rows(), rhs.cols()));
    return false;
  }
  if (domain.empty()) domain = {lhs.cols()};
  bool ok = true;
  for (Index j = 0; j < lhs.cols(); ++j) {
    if (lhs.col(j) == rhs.col(j)) continue;
    ok = false;
    report.fail(Violation{check, grading, split_index(j, domain), format_vector(lhs.col(j)),
                          format_vector(rhs.col(j))});
  }
  if (ok) report.pass(check);
  return ok;
}

}  // namespace hpc
