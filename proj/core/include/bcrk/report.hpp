#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "bcrk/errors.hpp"
#include "bcrk/tolerances.hpp"

namespace bcrk {

// One inequality of a bound system: lhs <= rhs, with slack = rhs - lhs.
// `label` is the caller-facing identifier of the inequality (the numeric
// labels used in reports and CSV output, e.g. "(2)").
struct BoundEntry {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool strict_ok = false;  // slack > tol::strict
  bool weak_ok = false;    // slack >= -tol::strict

  static BoundEntry make(std::string label, double lhs, double rhs) {
    BoundEntry e;
    e.label = std::move(label);
    e.lhs = lhs;
    e.rhs = rhs;
    e.slack = rhs - lhs;
    e.strict_ok = e.slack > tol::strict;
    e.weak_ok = e.slack >= -tol::strict;
    return e;
  }
};

// Evaluation of a full system of inequalities at one auxiliary choice.
struct BoundReport {
  std::string system;               // e.g. "han-costa", "thm2"
  double bandwidth_expansion = 1.0; // channel uses per source pair
  std::vector<BoundEntry> entries;
  std::vector<std::string> warnings;

  double min_slack() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) m = std::min(m, e.slack);
    return m;
  }
  bool all_strict() const {
    for (const auto& e : entries) {
      if (!e.strict_ok) return false;
    }
    return true;
  }
  bool all_weak() const {
    for (const auto& e : entries) {
      if (!e.weak_ok) return false;
    }
    return true;
  }
  const BoundEntry& entry(const std::string& label) const {
    for (const auto& e : entries) {
      if (e.label == label) return e;
    }
    throw InvalidArgument("no inequality labeled '" + label + "'");
  }
};

}  // namespace bcrk
