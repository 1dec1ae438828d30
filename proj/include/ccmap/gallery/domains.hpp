#pragma once

// Improper reflector mappings once the standing assumptions are dropped:
// subspaces that do not meet, convex sets that are not affine, nonconvex
// circles, and reflected resolvents of monotone operators.

#include <ccmap/gallery/projectors.hpp>

namespace ccmap::gallery {

inline OperatorSet s1_of(Operator r1, Operator r2) {
  return OperatorSet({identity(), r1, r2}, "S1");
}
inline OperatorSet s2_of(const Operator& r1, const Operator& r2) {
  return OperatorSet({identity(), r1, r2 * r1}, "S2");
}

// Distance to the points (t, 0) bounding the exceptional rays and segments
// on the x-axis.
inline std::function<double(const Vector&)> axis_endpoints(std::vector<double> ts) {
  return [ts = std::move(ts)](const Vector& x) {
    double d = std::numeric_limits<double>::infinity();
    for (double t : ts) d = std::min(d, (x - v2(t, 0)).norm());
    return d;
  };
}

// The same characterization on the axis for every point, full domain off it.
inline std::function<std::optional<bool>(const Vector&)> axis_rule(
    std::function<bool(double)> in_on_axis) {
  return [f = std::move(in_on_axis)](const Vector& x) -> std::optional<bool> {
    if (!on_x_axis(x)) return true;
    return f(x(0));
  };
}

// Inclusions on the axis only; nothing claimed elsewhere.
inline std::function<std::optional<bool>(const Vector&)> axis_inclusions(
    std::function<std::optional<bool>(double)> rule) {
  return [f = std::move(rule)](const Vector& x) -> std::optional<bool> {
    if (!on_x_axis(x)) return std::nullopt;
    return f(x(0));
  };
}

inline std::vector<Vector> plane_probes(std::uint64_t seed) {
  std::vector<Vector> p = axis_points(range(-12.0, 12.0, 0.25));
  p = concat(p, ProbeGrid{-6, 6, -6, 6, 25, 25}.points());
  return concat(p, cloud(2, seed, 300, 4.0));
}

inline Scenario domain_scenario(std::string name, std::string summary,
                                std::vector<DomainSpec> domains) {
  Scenario s{.name = std::move(name),
             .dim = 2,
             .summary = std::move(summary),
             .kind = Expectation::DomainSpec,
             .operator_set = domains.front().set,
             .domains = domains};
  s.check = [domains](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
    const auto probes = plane_probes(seed);
    for (const auto& d : domains) check_domain(rep, d, probes, tol);
  };
  return s;
}

inline Scenario point_line_inconsistent() {
  const auto u1 = AffineSubspace::point(v2(2, 0));
  const auto u2 = y_axis();
  const auto r1 = reflector(u1, "U1"), r2 = reflector(u2, "U2");
  Scenario s = domain_scenario(
      "point-line-inconsistent",
      "U1 = {(2,0)}, U2 = R(0,1): dom CC_S1 = (R^2 minus the x-axis) plus (2,0), (0,0); "
      "dom CC_S2 = (R^2 minus the x-axis) plus (2,0), (4,0); DR pairs tend to ((2,0), (0,0))",
      {{"S1", s1_of(r1, r2), axis_rule([](double t) { return t == 2.0 || t == 0.0; }), {}},
       {"S2", s2_of(r1, r2), axis_rule([](double t) { return t == 2.0 || t == 4.0; }), {}}});
  auto domain_check = s.check;
  s.check = [domain_check, u1, u2](VerificationReport& rep, std::uint64_t seed,
                                   const Tolerances& tol) {
    domain_check(rep, seed, tol);
    for (const Vector& x0 : {v2(1, 3), v2(-5, 2), v2(7, -1)}) {
      const auto tr = drm_pair_solve(u1, ConvexSet{u2}, x0, StopRule{1e-13, 500, {}});
      const auto& p = tr.pairs.back();
      rep.expect_point(x0, v2(2, 0), p.u, tol.eq_tol, "pair u from ");
      rep.expect_point(x0, v2(0, 0), p.v, tol.eq_tol, "pair v from ");
    }
  };
  return s;
}

inline Scenario cone_line() {
  const auto r1 = reflector(Box::nonnegative_orthant(2), "R2+");
  const auto r2 = reflector(AffineSubspace::line(v2(2, 0), v2(0, 1)), "U2");
  const auto quadrant = [](const Vector& x) { return x(0) < 0.0 && x(1) >= 0.0; };
  const auto edges = [](const Vector& x) {
    return std::min({dist_to_ray(x, v2(0, 0), v2(0, 1)), dist_to_ray(x, v2(0, 0), v2(-1, 0)),
                     (x - v2(-2, 0)).norm()});
  };
  return domain_scenario(
      "cone-line",
      "U1 = R^2_+, U2 = (2,0) + R(0,1): dom CC_S1 = R^2 minus {x < 0, y >= 0}; dom CC_S2 "
      "adds back the ray {(-2, y) : y >= 0}",
      {{"S1", s1_of(r1, r2), [quadrant](const Vector& x) -> std::optional<bool> {
          return !quadrant(x);
        }, edges},
       {"S2", s2_of(r1, r2), [quadrant](const Vector& x) -> std::optional<bool> {
          return !quadrant(x) || x(0) == -2.0;
        }, edges}});
}

inline Scenario ball_line_offset() {
  const auto r1 = reflector(Ball{v2(0, 0), 1.0}, "B");
  const auto r2 = reflector(AffineSubspace::line(v2(1, 0), v2(0, 1)), "U2");
  return domain_scenario(
      "ball-line-offset",
      "U1 = B[(0,0);1], U2 = (1,0) + R(0,1): dom CC_S1 = R^2 minus {(x,0) : x < -1}; "
      "dom CC_S2 = R^2 minus {(x,0) : x < -3 or -3 < x < -1}",
      {{"S1", s1_of(r1, r2), axis_rule([](double t) { return !(t < -1.0); }),
        axis_endpoints({-1.0})},
       {"S2", s2_of(r1, r2), axis_rule([](double t) { return !(t < -3.0 || (-3.0 < t && t < -1.0)); }),
        axis_endpoints({-1.0})}});
}

inline Scenario ball_line_center() {
  const auto r1 = reflector(Ball{v2(0, 0), 1.0}, "B");
  const auto r2 = reflector(y_axis(), "U2");
  return domain_scenario(
      "ball-line-center",
      "U1 = B[(0,0);1], U2 = R(0,1): dom CC_S1 = R^2 minus {(x,0) : |x| > 1}; dom CC_S2 = "
      "R^2 minus {(x,0) : x < -2, -2 < x < -1, 1 < x < 2 or x > 2}",
      {{"S1", s1_of(r1, r2), axis_rule([](double t) { return std::abs(t) <= 1.0; }),
        axis_endpoints({-1.0, 1.0})},
       {"S2", s2_of(r1, r2),
        axis_rule([](double t) { return std::abs(t) <= 1.0 || std::abs(t) == 2.0; }),
        axis_endpoints({-1.0, 1.0})}});
}

// S1 is characterized completely; for S2 only the stated inclusions on the
// axis are checked.
inline Scenario ball_ball(std::string name, double r, double s1_edge,
                          std::function<std::optional<bool>(double)> s2_rule,
                          std::vector<double> s2_edges, std::string summary) {
  const auto r1 = reflector(Ball{v2(-1, 0), r}, "B1");
  const auto r2 = reflector(Ball{v2(1, 0), r}, "B2");
  return domain_scenario(
      std::move(name), std::move(summary),
      {{"S1", s1_of(r1, r2), axis_rule([s1_edge](double t) { return std::abs(t) <= s1_edge; }),
        axis_endpoints({-s1_edge, s1_edge})},
       {"S2", s2_of(r1, r2), axis_inclusions(std::move(s2_rule)),
        axis_endpoints(std::move(s2_edges))}});
}

inline Scenario ball_ball_unit() {
  return ball_ball(
      "ball-ball-unit", 1.0, 2.0,
      [](double t) -> std::optional<bool> {
        if ((-6.0 <= t && t <= -4.0) || t >= -2.0) return true;
        if (t < -6.0 || (-4.0 < t && t < -2.0)) return false;
        return std::nullopt;
      },
      {-6.0, -4.0, -2.0},
      "U1 = B[(-1,0);1], U2 = B[(1,0);1]: dom CC_S1 = R^2 minus {(x,0) : |x| > 2}; on the "
      "axis S2 is defined on [-6,-4] and [-2, inf) and undefined for x < -6 and -4 < x < -2");
}

inline Scenario ball_ball_two() {
  return ball_ball(
      "ball-ball-two", 2.0, 3.0,
      [](double t) -> std::optional<bool> {
        if ((-9.0 <= t && t <= -5.0) || (-3.0 <= t && t <= 3.0)) return true;
        if (t < -9.0 || (-5.0 < t && t < -3.0) || t > 3.0) return false;
        return std::nullopt;
      },
      {-9.0, -5.0, -3.0, 3.0},
      "U1 = B[(-1,0);2], U2 = B[(1,0);2]: dom CC_S1 = R^2 minus {(x,0) : |x| > 3}; on the "
      "axis S2 is defined on [-9,-5] and [-3,3] and undefined for x < -9, -5 < x < -3, x > 3");
}

inline Scenario circles_nonconvex() {
  const auto r1 = reflector(Sphere{v2(-1, 0), 2.0}, "C1");
  const auto r2 = reflector(Sphere{v2(1, 0), 2.0}, "C2");
  const std::vector<OperatorSet> sets{s1_of(r1, r2), s2_of(r1, r2)};
  return {.name = "circles-nonconvex",
          .dim = 2,
          .summary = "U1, U2 the circles of radius 2 about (-1,0) and (1,0): for S1 and S2 "
                     "some point lies outside dom CC_S",
          .kind = Expectation::ProbeOnly,
          .operator_set = sets.front(),
          .check = [sets](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            const auto probes = plane_probes(seed);
            for (const auto& s : sets)
              rep.expect_true(finds_not_exists(s, probes, tol), s.name(),
                              "some NotExists point", "proper on every probe");
          }};
}

inline std::vector<double> nonnegative_grid() { return {0.0, 0.5, 1.0, 2.0}; }

inline Scenario scaled_id_resolvents() {
  const auto ra = [](double a) { return reflected_resolvent_scaled_id(a); };
  return {.name = "scaled-id-resolvents",
          .dim = 2,
          .summary = "A = alpha Id, B = beta Id (alpha, beta >= 0): {Id, R_A, R_B} improper iff "
                     "alpha != 0, beta != 0, alpha != beta; {Id, R_A, R_B R_A} improper iff "
                     "alpha != 0, alpha != 1, beta != 0, alpha != -beta",
          .kind = Expectation::ImpropernessIff,
          .operator_set = s1_of(ra(0.5), ra(2.0)),
          .check = [ra](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            const auto probes = concat({v2(1, 0), v2(0, 1), v2(0, 0)}, cloud(2, seed, 10));
            check_improperness_grid(
                rep, nonnegative_grid(), [&](double a, double b) { return s1_of(ra(a), ra(b)); },
                [](double a, double b) { return a != 0.0 && b != 0.0 && a != b; }, probes, tol,
                "S1 alpha,beta");
            check_improperness_grid(
                rep, nonnegative_grid(), [&](double a, double b) { return s2_of(ra(a), ra(b)); },
                [](double a, double b) { return a != 0.0 && a != 1.0 && b != 0.0 && a != -b; },
                probes, tol, "S2 alpha,beta");
          }};
}

inline Scenario constant_resolvents() {
  const auto ra = [](double a) { return reflected_resolvent_const(make_vector({a})); };
  return {.name = "constant-resolvents",
          .dim = 1,
          .summary = "A = a, B = b constant on R: {Id, R_A, R_B} improper iff a != 0, b != 0, "
                     "a != b; {Id, R_A, R_B R_A} improper iff a != 0, b != 0, a != -b",
          .kind = Expectation::ImpropernessIff,
          .operator_set = s1_of(ra(0.5), ra(2.0)),
          .check = [ra](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            std::vector<Vector> probes;
            for (double t : {-3.0, -1.0, 0.0, 0.5, 2.0}) probes.push_back(make_vector({t}));
            probes = concat(probes, cloud(1, seed, 10));
            check_improperness_grid(
                rep, parameter_grid(), [&](double a, double b) { return s1_of(ra(a), ra(b)); },
                [](double a, double b) { return a != 0.0 && b != 0.0 && a != b; }, probes, tol,
                "S1 a,b");
            check_improperness_grid(
                rep, parameter_grid(), [&](double a, double b) { return s2_of(ra(a), ra(b)); },
                [](double a, double b) { return a != 0.0 && b != 0.0 && a != -b; }, probes, tol,
                "S2 a,b");
          }};
}

inline void add_domain_scenarios(std::vector<Scenario>& out) {
  out.push_back(point_line_inconsistent());
  out.push_back(cone_line());
  out.push_back(ball_line_offset());
  out.push_back(ball_line_center());
  out.push_back(ball_ball_unit());
  out.push_back(ball_ball_two());
  out.push_back(circles_nonconvex());
  out.push_back(scaled_id_resolvents());
  out.push_back(constant_resolvents());
}

}  // namespace ccmap::gallery
