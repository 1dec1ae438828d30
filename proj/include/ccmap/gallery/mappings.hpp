#pragma once

// Circumcenter mappings of general operator sets: scaled identities against
// axis reflectors, ball projectors, closed forms, continuity and
// demiclosedness counterexamples, and triples on the real line.

#include <ccmap/gallery/core.hpp>

namespace ccmap::gallery {

inline AffineSubspace x_axis() { return AffineSubspace::span({v2(1, 0)}); }
inline AffineSubspace y_axis() { return AffineSubspace::span({v2(0, 1)}); }

// {alpha Id, R_U1, R_U2} with the coordinate axes of R^2
inline OperatorSet scaled_axes_set(double alpha) {
  return OperatorSet(
      {scaled_identity(alpha), reflector(x_axis(), "U1"), reflector(y_axis(), "U2")},
      "alpha=" + format_real(alpha));
}

inline std::optional<bool> scaled_axes_member(double alpha, const Vector& x) {
  const bool origin = x(0) == 0.0 && x(1) == 0.0;
  if (alpha == 0.0) return origin;
  if (alpha == 1.0 || alpha == -1.0) return true;
  const bool on_axes = x(0) == 0.0 || x(1) == 0.0;
  return !on_axes || origin;
}

inline std::vector<Vector> axes_probes(std::uint64_t seed) {
  std::vector<Vector> p = ProbeGrid{-3, 3, -3, 3, 13, 13}.points();
  for (double t : range(-3.0, 3.0, 0.25)) {
    p.push_back(v2(t, 0));
    p.push_back(v2(0, t));
  }
  return concat(p, cloud(2, seed, 100));
}

inline Scenario scaled_id_reflectors() {
  Scenario s{.name = "scaled-id-reflectors",
             .dim = 2,
             .summary = "{alpha Id, R_U1, R_U2}, U1/U2 the axes: dom = {0} at alpha = 0, "
                        "R^2 at |alpha| = 1, else (R^2 minus the axes) plus the origin",
             .kind = Expectation::DomainSpec,
             .operator_set = scaled_axes_set(2.0)};
  for (double a : {0.0, 1.0, -1.0, 0.5, 2.0, -2.0, -0.5})
    s.domains.push_back({"alpha=" + format_real(a), scaled_axes_set(a),
                         [a](const Vector& x) { return scaled_axes_member(a, x); },
                         {}});
  auto domains = s.domains;
  s.check = [domains](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
    const auto probes = axes_probes(seed);
    for (const auto& d : domains) check_domain(rep, d, probes, tol);
  };
  return s;
}

inline OperatorSet ball_triple() {
  return OperatorSet({projector(Ball{v2(-2, 0), 1.0}, "B1"), projector(Ball{v2(0, 2), 1.0}, "B2"),
                      projector(Ball{v2(2, 0), 1.0}, "B3")},
                     "S");
}

inline Scenario ball_projector_triple() {
  return {.name = "ball-projector-triple",
          .dim = 2,
          .summary = "projectors onto B[(-2,0);1], B[(0,2);1], B[(2,0);1]: proper, "
                     "the fixed sets do not meet, Fix CC_S = {(0,0)}",
          .kind = Expectation::DomainSpec,
          .operator_set = ball_triple(),
          .check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            const OperatorSet s = ball_triple();
            const auto probes =
                concat(ProbeGrid{-6, 6, -6, 6, 25, 25}.points(), cloud(2, seed, 300, 4.0));
            check_proper(rep, s, probes, tol);

            // B1 and B3 are 4 apart with radius 1 each
            rep.expect_true((v2(-2, 0) - v2(2, 0)).norm() > 2.0, "B1, B3", "disjoint",
                            "overlap");

            const auto r0 = fixed_point_residual(s, v2(0, 0), tol);
            rep.expect_true(r0 && *r0 <= tol.eq_tol, "(0, 0)", "fixed",
                            r0 ? format_real(*r0) : "NotExists");
            for (const auto& x : probes) {
              if (x.norm() < 1e-6) continue;
              const auto r = fixed_point_residual(s, x, tol);
              rep.expect_true(r && *r > 1e-9, "Fix " + format_point(x), "not fixed",
                              r ? format_real(*r) : "NotExists");
            }
          }};
}

inline AffineSubspace unit_plane() {
  return AffineSubspace::span({make_vector({1, 1, 0}), make_vector({0, 0, 1})});
}

inline std::vector<Vector> subspace_probes(const std::vector<AffineSubspace>& us,
                                           std::uint64_t seed, std::size_t count,
                                           Eigen::Index n) {
  auto rng = make_rng(seed, 101);
  std::vector<Vector> p = cloud(n, seed, count);
  for (const auto& u : us)
    for (int i = 0; i < 10; ++i) p.push_back(random_point_of(rng, u));
  p.push_back(Vector::Zero(n));
  return p;
}

inline OperatorSet uuperp_reflectors() {
  const auto u = unit_plane();
  return OperatorSet({identity(), reflector(u, "U"), reflector(u.orthogonal_complement(), "Uperp")},
                     "S");
}

inline Scenario reflectors_zero() {
  return {.name = "reflectors-zero",
          .dim = 3,
          .summary = "{Id, R_U, R_Uperp} for a linear U: CC_S = 0 everywhere, and on "
                     "U and Uperp the images are affinely dependent",
          .kind = Expectation::ClosedFormMap,
          .operator_set = uuperp_reflectors(),
          .check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            const auto u = unit_plane();
            const auto up = u.orthogonal_complement();
            const auto s = uuperp_reflectors();
            const auto probes = subspace_probes({u, up}, seed, 200, 3);
            check_map(rep, s, [](const Vector& x) { return Vector(Vector::Zero(x.size())); },
                      probes, tol);
            auto rng = make_rng(seed, 7);
            for (const auto* a : {&u, &up})
              for (int i = 0; i < 10; ++i) {
                const Vector x = random_point_of(rng, *a);
                const auto im = images(s, x);
                const auto r = rank({im[1] - im[0], im[2] - im[0]}, tol);
                rep.expect_true(r < 2, format_point(x), "affinely dependent",
                                "rank " + std::to_string(r));
              }
          }};
}

inline OperatorSet projector_half_set() {
  const auto u = unit_plane();
  return OperatorSet({identity(), projector(u, "U"), projector(u.orthogonal_complement(), "Uperp"),
                      constant(Vector::Zero(3))},
                     "S");
}

inline Scenario projector_half() {
  return {.name = "projector-half",
          .dim = 3,
          .summary = "{Id, P_U, P_Uperp, 0}: CC_S x = x/2; off U and Uperp the four images "
                     "are pairwise distinct and always affinely dependent",
          .kind = Expectation::ClosedFormMap,
          .operator_set = projector_half_set(),
          .check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            const auto s = projector_half_set();
            const auto u = unit_plane();
            const auto probes = subspace_probes({u, u.orthogonal_complement()}, seed, 200, 3);
            check_map(rep, s, [](const Vector& x) { return Vector(0.5 * x); }, probes, tol);
            for (const auto& x : cloud(3, seed + 1, 50)) {
              const auto k = evaluate_set(s, x, tol);
              rep.expect_true(k.size() == 4, format_point(x), "4 distinct images",
                              std::to_string(k.size()));
              std::vector<Vector> diffs;
              for (std::size_t i = 1; i < k.size(); ++i) diffs.push_back(k[i] - k[0]);
              rep.expect_true(rank(diffs, tol) < diffs.size(), format_point(x),
                              "affinely dependent", "independent");
            }
          }};
}

// T3(x, y) = (x, -(x - 2)/4)
inline Operator quarter_map() {
  Matrix m(2, 2);
  m << 1, 0, -0.25, 0;
  return affine_map(m, v2(0, 0.5), "T3");
}

inline OperatorSet continuous_set() {
  Matrix flip(2, 2);
  flip << -1, 0, 0, 1;
  return OperatorSet({identity(), affine_map(flip, v2(0, 0), "T2"), quarter_map()}, "S");
}

inline Scenario continuous_closed_form() {
  return {.name = "continuous-closed-form",
          .dim = 2,
          .summary = "T1 = Id, T2(x,y) = (-x,y), T3(x,y) = (x,-(x-2)/4): "
                     "CC_S(x,y) = (0, (y - (x-2)/4)/2), independent iff 2x(-(x-2)/4 - y) != 0",
          .kind = Expectation::ClosedFormMap,
          .operator_set = continuous_set(),
          .check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            const auto s = continuous_set();
            const auto probes =
                concat(ProbeGrid{-4, 4, -4, 4, 17, 17}.points(), cloud(2, seed, 200));
            check_map(rep, s,
                      [](const Vector& p) {
                        return v2(0.0, 0.5 * (p(1) - 0.25 * (p(0) - 2.0)));
                      },
                      probes, tol);
            for (const auto& p : probes) {
              const auto im = images(s, p);
              const bool indep = rank({im[1] - im[0], im[2] - im[0]}, tol) == 2;
              const bool want = 2.0 * p(0) * (-0.25 * (p(0) - 2.0) - p(1)) != 0.0;
              rep.expect_true(indep == want, "independence " + format_point(p),
                              want ? "independent" : "dependent",
                              indep ? "independent" : "dependent");
            }
          }};
}

inline OperatorSet discontinuous_set() {
  return OperatorSet({constant(v2(2, 0)), constant(v2(-2, 0)), quarter_map()}, "S");
}

// circumcenter of {(-2,0), (2,0), (2 - 1/k, 1/(4k))}
inline Vector continuity_limit_center(double k) { return v2(0.0, -8.0 + 2.0 / k + 1.0 / (8.0 * k)); }

inline Scenario discontinuous_proper() {
  return {.name = "discontinuous-proper",
          .dim = 2,
          .summary = "T1 = (2,0), T2 = (-2,0), T3(x,y) = (x,-(x-2)/4): proper, and along "
                     "(2 - 1/k, 0) CC_S tends to (0,-8) while CC_S(2,0) = (0,0)",
          .kind = Expectation::SequenceLimit,
          .operator_set = discontinuous_set(),
          .check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            const auto s = discontinuous_set();
            check_proper(rep, s,
                         concat(ProbeGrid{-4, 4, -4, 4, 17, 17}.points(), cloud(2, seed, 200)),
                         tol);
            for (double k : {1.0, 2.0, 5.0, 10.0, 100.0, 1000.0, 10000.0}) {
              const Vector x = v2(2.0 - 1.0 / k, 0.0);
              const auto cc = cc_map(s, x, tol);
              const Vector want = continuity_limit_center(k);
              if (!cc) {
                rep.expect_true(false, format_point(x), format_point(want), "NotExists");
                continue;
              }
              rep.expect_point(x, want, cc.center, tol.eq_tol, "k=" + format_real(k) + " ");
            }
            const auto at = cc_map(s, v2(2, 0), tol);
            rep.expect_true(at && at.center.norm() <= tol.eq_tol, "(2, 0)", "(0, 0)",
                            at ? format_point(at.center) : "NotExists");
            const auto far = cc_map(s, v2(2.0 - 1e-6, 0.0), tol);
            rep.expect_true(far && (far.center - v2(0, -8)).norm() < 1e-3,
                            "(2 - 1e-6, 0)", "near (0, -8)",
                            far ? format_point(far.center) : "NotExists");
          }};
}

inline Scenario cco_continuity_counterexample() {
  return {.name = "cco-continuity-counterexample",
          .dim = 2,
          .summary = "CCO{(-2,0), (2,0), (2 - 1/k, 1/(4k))} = (0, -8 + 2/k + 1/(8k)), while "
                     "the limit set {(-2,0), (2,0)} has center (0,0)",
          .kind = Expectation::SequenceLimit,
          .operator_set = discontinuous_set(),
          .check = [](VerificationReport& rep, std::uint64_t, const Tolerances& tol) {
            for (double k : {1.0, 2.0, 5.0, 10.0, 100.0}) {
              const std::vector<Vector> pts{v2(-2, 0), v2(2, 0),
                                            v2(2.0 - 1.0 / k, 1.0 / (4.0 * k))};
              const Vector want = continuity_limit_center(k);
              const auto c = circumcenter(pts, tol);
              if (!c) {
                rep.expect_true(false, "k=" + format_real(k), format_point(want), "NotExists");
                continue;
              }
              const double rel = (c.center - want).norm() / want.norm();
              rep.max_deviation = std::max(rep.max_deviation, rel);
              rep.expect_true(rel <= tol.eq_tol, "k=" + format_real(k), format_point(want),
                              format_point(c.center));
            }
            const auto lim = circumcenter({v2(-2, 0), v2(2, 0), v2(2, 0)}, tol);
            rep.expect_true(lim && lim.center.norm() <= tol.eq_tol, "limit set", "(0, 0)",
                            lim ? format_point(lim.center) : "NotExists");
          }};
}

// L = {(u, v) : v = -u/4 + 1/2}
inline AffineSubspace demi_line() { return AffineSubspace::hyperplane(v2(0.25, 1.0), 0.5); }

inline OperatorSet demiclosed_set() {
  return OperatorSet({constant(v2(-2, 0)), constant(v2(2, 0)), projector(demi_line(), "L")}, "S");
}

inline std::vector<Vector> demi_sequence(std::size_t count) {
  std::vector<Vector> xs;
  for (std::size_t i = 1; i <= count; ++i) {
    const double k = static_cast<double>(i);
    xs.push_back(v2(1.0 / k, -1.0 / (4.0 * k) - 8.0));
  }
  return xs;
}

inline Scenario demiclosedness_fails() {
  return {.name = "demiclosedness-fails",
          .dim = 2,
          .summary = "T1 = (-2,0), T2 = (2,0), T3 = P_L: proper with empty Fix; along "
                     "x_k = (1/k, -1/(4k) - 8) the residual vanishes but the limit (0,-8) "
                     "has residual 8",
          .kind = Expectation::SequenceLimit,
          .operator_set = demiclosed_set(),
          .check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            const auto s = demiclosed_set();
            const auto probes =
                concat(ProbeGrid{-10, 10, -10, 10, 21, 21}.points(), cloud(2, seed, 200, 5.0));
            check_proper(rep, s, probes, tol);
            for (const auto& x : probes) {
              const auto r = fixed_point_residual(s, x, tol);
              rep.expect_true(r && *r > 1e-9, "Fix " + format_point(x), "not fixed",
                              r ? format_real(*r) : "NotExists");
            }
            const auto demi = demiclosedness_probe(s, demi_sequence(400), tol, v2(0, -8));
            rep.expect_true(!demi.left_domain, "x_k", "in domain", "left domain");
            if (demi.left_domain) return;
            rep.expect_true(demi.residuals_vanish, "x_k", "residuals -> 0",
                            "last " + format_real(demi.residuals.back()));
            rep.expect_true(!demi.limit_is_fixed, "(0, -8)", "not fixed", "fixed");
            rep.expect_true(demi.limit_residual.has_value(), "(0, -8)", "in domain", "NotExists");
            if (demi.limit_residual)
              rep.expect_near(8.0, *demi.limit_residual, 1e-6, "limit residual");
          }};
}

inline Scenario real_line_triples() {
  return {.name = "real-line-triples",
          .dim = 1,
          .summary = "in R, {a, b, c} has no equidistant point iff card{a, b, c} = 3",
          .kind = Expectation::ImpropernessIff,
          .operator_set = OperatorSet({constant(make_vector({0})), constant(make_vector({1})),
                                       constant(make_vector({2}))},
                                      "S"),
          .check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            std::vector<std::array<double, 3>> triples;
            const auto& g = parameter_grid();
            for (double a : g)
              for (double b : g)
                for (double c : g) triples.push_back({a, b, c});
            auto rng = make_rng(seed, 3);
            for (int i = 0; i < 100; ++i) {
              const Vector v = gaussian(rng, 3, 5.0);
              triples.push_back({v(0), v(1), v(2)});
            }
            for (const auto& [a, b, c] : triples) {
              const PointSet k({make_vector({a}), make_vector({b}), make_vector({c})}, tol);
              const auto cc = circumcenter(k, tol);
              const std::string in = format_real(a) + "," + format_real(b) + "," + format_real(c);
              rep.expect_true(cc.exists == (k.size() < 3), in,
                              k.size() < 3 ? "Exists" : "NotExists",
                              cc.exists ? "Exists" : "NotExists");
              if (cc && k.size() == 2)
                rep.expect_near(0.5 * (k[0](0) + k[1](0)), cc.center(0), tol.eq_tol, in);
            }
          }};
}

inline void add_mapping_scenarios(std::vector<Scenario>& out) {
  out.push_back(scaled_id_reflectors());
  out.push_back(ball_projector_triple());
  out.push_back(reflectors_zero());
  out.push_back(projector_half());
  out.push_back(continuous_closed_form());
  out.push_back(discontinuous_proper());
  out.push_back(cco_continuity_counterexample());
  out.push_back(demiclosedness_fails());
  out.push_back(real_line_triples());
}

}  // namespace ccmap::gallery
