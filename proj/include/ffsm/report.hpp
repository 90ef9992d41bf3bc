#ifndef FFSM_REPORT_HPP
#define FFSM_REPORT_HPP

#include "ffsm/suites.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>

namespace ffsm {

/// Keys in a fixed order: suite, seed, trials, tolerance, checks, elapsed_ms, then
/// note and errors when present. Only elapsed_ms varies between identical runs.
inline nlohmann::ordered_json report_json(const SuiteReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["tolerance"] = r.tolerance;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["max_residual"] = c.max_residual;
    e["pass"] = c.pass;
    e["worst_seed"] = c.worst_seed;
    j["checks"].push_back(std::move(e));
  }
  j["elapsed_ms"] = r.elapsed_ms;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.errors.empty()) {
    j["errors"] = nlohmann::ordered_json::array();
    for (const auto& e : r.errors) j["errors"].push_back({{"suite", e.suite}, {"seed", e.seed}, {"message", e.message}});
  }
  return j;
}

/// One line per check, failures marked with the offending trial seed.
inline void print_report(std::ostream& os, const SuiteReport& r) {
  os << "suite " << r.suite << "  seed " << r.seed << "  trials " << r.trials << "  tol " << r.tolerance;
  if (!r.note.empty()) os << "  (" << r.note << ")";
  os << "\n";
  for (const auto& c : r.checks) {
    os << (c.pass ? "  PASS  " : "  FAIL  ") << c.name << "  max " << c.max_residual;
    if (!c.pass) os << "  seed " << c.worst_seed;
    os << "\n";
  }
  for (const auto& e : r.errors) os << "  ERROR " << e.suite << " seed " << e.seed << ": " << e.message << "\n";
  os << (r.pass() ? "PASS" : "FAIL") << "  " << r.elapsed_ms << " ms\n";
}

}  // namespace ffsm

#endif  // FFSM_REPORT_HPP
