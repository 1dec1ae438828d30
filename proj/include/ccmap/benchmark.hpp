#pragma once

// Iteration-count benchmarks on two subspaces of R^3. The stopping
// tolerance is not known a priori, so it is calibrated on the Douglas-Rachford
// shadow and every other method is counted at that same tolerance.

#include <ccmap/solvers.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace ccmap {

struct BenchmarkGeometry {
  std::string name;
  AffineSubspace u1;
  AffineSubspace u2;
  Vector x0;
  // expected counts: DRM, MAP, CRM-S1, CRM-S2
  std::array<std::size_t, 4> expected;
};

inline BenchmarkGeometry table1_geometry() {
  return {"table1-line-plane",
          AffineSubspace::line(Vector::Zero(3), make_vector({1, 0, 0})),
          AffineSubspace::hyperplane(make_vector({1, 1, 1}), 0.0),
          make_vector({0.5, 0, 0}),
          {12, 12, 1, 1}};
}

inline BenchmarkGeometry table2_geometry() {
  return {"table2-plane-plane",
          AffineSubspace::hyperplane(make_vector({1, 1, 1}), 0.0),
          AffineSubspace::hyperplane(make_vector({-1, 2, 2}), 0.0),
          make_vector({-1, 0.5, 0.5}),
          {5, 6, 5, 2}};
}

// S1 = {Id, R_U1, R_U2}, S2 = {Id, R_U1, R_U2 R_U1}
inline OperatorSet crm_s1(const AffineSubspace& u1, const AffineSubspace& u2) {
  return OperatorSet({identity(), reflector(u1, "U1"), reflector(u2, "U2")}, "S1");
}

inline OperatorSet crm_s2(const AffineSubspace& u1, const AffineSubspace& u2) {
  return OperatorSet({identity(), reflector(u1, "U1"), reflector_word({u1, u2}, {1, 2})},
                     "S2");
}

// The set of epsilons giving count n is [e_n, min_{k<n} e_k).
struct CalibrationWindow {
  double lo = 0.0;
  double hi = 0.0;
  bool feasible = false;
  double epsilon = 0.0;
};

inline CalibrationWindow calibrate(const std::vector<double>& errors, std::size_t n) {
  CalibrationWindow w;
  if (n >= errors.size()) return w;
  w.lo = errors[n];
  w.hi = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) w.hi = std::min(w.hi, errors[k]);
  w.feasible = w.lo < w.hi;
  if (w.feasible) w.epsilon = w.lo > 0.0 ? std::sqrt(w.lo * w.hi) : 0.5 * w.hi;
  return w;
}

struct BenchmarkRow {
  std::string method;
  std::size_t expected = 0;
  CalibrationWindow window;  // tolerances giving exactly `expected` for this row
  std::optional<std::size_t> got;
  double first_step_error = 0.0;
  double final_error = 0.0;
  StopReason stop_reason = StopReason::MaxIter;

  bool match() const { return got && *got == expected; }
};

struct BenchmarkResult {
  std::string name;
  Vector target;
  CalibrationWindow window;     // DRM window
  CalibrationWindow joint;      // DRM window narrowed by compatible rows
  double epsilon = 0.0;
  bool epsilon_overridden = false;
  std::vector<BenchmarkRow> rows;
  std::vector<IterationTrace> traces;

  bool match() const {
    if (!epsilon_overridden && !window.feasible) return false;
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.match(); });
  }
};

inline std::vector<double> error_sequence(const IterationTrace& tr, const Vector& target) {
  std::vector<double> e;
  for (std::size_t k = 0; k < tr.iterates.size(); ++k)
    e.push_back((tr.measured(k) - target).norm());
  return e;
}

// Each method runs until it is within 1e-15 of the target (or max_iter), so
// the recorded error sequences cover every tolerance of interest.
inline BenchmarkResult run_benchmark(const BenchmarkGeometry& g,
                                     std::optional<double> epsilon = {},
                                     std::size_t max_iter = 10000,
                                     std::optional<Vector> x0_override = {},
                                     const Tolerances& tol = {}) {
  const Vector x0 = x0_override ? *x0_override : g.x0;
  BenchmarkResult res;
  res.name = g.name;
  res.target = best_approximation({g.u1, g.u2}, x0, tol);

  StopRule rule{1e-15 * (1.0 + x0.norm()), max_iter, res.target};
  res.traces.push_back(drm_solve(g.u1, g.u2, x0, rule));
  res.traces.push_back(map_solve(g.u1, g.u2, x0, rule));
  res.traces.push_back(crm_solve(crm_s1(g.u1, g.u2), x0, rule, tol));
  res.traces.push_back(crm_solve(crm_s2(g.u1, g.u2), x0, rule, tol));
  res.traces[2].method = "CRM-S1";
  res.traces[3].method = "CRM-S2";

  std::vector<std::vector<double>> errors;
  for (const auto& tr : res.traces) errors.push_back(error_sequence(tr, res.target));

  // DRM fixes an interval of tolerances, not a single value. Inside it, keep
  // narrowing by every other row whose own interval overlaps, in table order.
  res.window = calibrate(errors[0], g.expected[0]);
  res.joint = res.window;
  if (res.joint.feasible) {
    for (std::size_t i = 1; i < errors.size(); ++i) {
      const auto w = calibrate(errors[i], g.expected[i]);
      const double lo = std::max(res.joint.lo, w.lo);
      const double hi = std::min(res.joint.hi, w.hi);
      if (w.feasible && lo < hi) {
        res.joint.lo = lo;
        res.joint.hi = hi;
      }
    }
    res.joint.epsilon = res.joint.lo > 0.0 ? std::sqrt(res.joint.lo * res.joint.hi)
                                           : 0.5 * res.joint.hi;
  }
  if (epsilon) {
    res.epsilon = *epsilon;
    res.epsilon_overridden = true;
  } else {
    res.epsilon = res.joint.feasible ? res.joint.epsilon : 1e-9;
  }

  for (std::size_t i = 0; i < res.traces.size(); ++i) {
    const auto& tr = res.traces[i];
    const auto& e = errors[i];
    BenchmarkRow row;
    row.method = tr.method;
    row.expected = g.expected[i];
    row.window = calibrate(e, g.expected[i]);
    row.got = iterations_to_tolerance(tr, res.target, res.epsilon);
    row.first_step_error = e.size() > 1 ? e[1] : e[0];
    row.final_error = row.got ? e[*row.got] : e.back();
    row.stop_reason = tr.stop_reason;
    res.rows.push_back(row);
  }
  return res;
}

}  // namespace ccmap
