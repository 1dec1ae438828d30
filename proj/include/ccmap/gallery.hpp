#pragma once

// Named catalog of worked examples and counterexamples with automated
// verifiers. Scenario names are the stable identifiers used by the CLI.

#include <ccmap/gallery/domains.hpp>

#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccmap {

struct unknown_scenario_error : std::invalid_argument {
  explicit unknown_scenario_error(const std::string& name)
      : std::invalid_argument("unknown scenario: " + name) {}
};

// Every scenario, in a fixed order.
inline const std::vector<Scenario>& catalog() {
  static const std::vector<Scenario> all = [] {
    std::vector<Scenario> out;
    gallery::add_mapping_scenarios(out);
    gallery::add_reflector_scenarios(out);
    gallery::add_projector_scenarios(out);
    gallery::add_domain_scenarios(out);
    return out;
  }();
  return all;
}

// projector-half with a wrong closed form; verifies as a failure. Used to
// check that the harness can fail. Not part of catalog().
inline const Scenario& corrupted_scenario() {
  static const Scenario s = [] {
    Scenario c = gallery::projector_half();
    c.name = "selftest-corrupted";
    c.summary = "projector-half checked against x/3 instead of x/2; must fail";
    c.check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
      const auto u = gallery::unit_plane();
      const auto probes =
          gallery::subspace_probes({u, u.orthogonal_complement()}, seed, 20, 3);
      gallery::check_map(rep, gallery::projector_half_set(),
                         [](const Vector& x) { return Vector(x / 3.0); }, probes, tol);
    };
    return c;
  }();
  return s;
}

inline const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : catalog())
    if (s.name == name) return s;
  if (name == corrupted_scenario().name) return corrupted_scenario();
  throw unknown_scenario_error(name);
}

inline VerificationReport verify(const Scenario& s, std::uint64_t seed = 0,
                                 const Tolerances& tol = {}) {
  tol.validate();
  VerificationReport rep;
  rep.scenario = s.name;
  try {
    s.check(rep, seed, tol);
  } catch (const std::exception& e) {
    rep.failures.push_back({"verifier", "no exception", e.what()});
  }
  return rep;
}

inline VerificationReport verify(const std::string& name, std::uint64_t seed = 0,
                                 const Tolerances& tol = {}) {
  return verify(find_scenario(name), seed, tol);
}

}  // namespace ccmap
