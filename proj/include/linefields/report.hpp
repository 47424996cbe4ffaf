#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace linefields {

// One verified identity.  `informational` checks (the Markus comparison)
// report a discrepancy without failing the run.
struct Check {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string source;  // the theorem or lemma the check instantiates
  bool informational = false;
};

struct VerificationReport {
  std::vector<Check> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.informational && !c.pass) return false;
    return true;
  }

  void add(std::string name, double lhs, double rhs, double tol,
           std::string source, bool informational = false) {
    Check c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.tolerance = tol;
    c.pass = std::abs(lhs - rhs) <= tol;
    c.source = std::move(source);
    c.informational = informational;
    checks.push_back(std::move(c));
  }
};

}  // namespace linefields
