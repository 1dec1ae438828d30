#pragma once

// Circumcenter mappings induced by reflectors: the proper families on
// subspaces with a common point, relaxed variants, improperness grids for a
// repeated subspace, the two iteration-count tables and the discontinuity and
// nonlinearity witnesses.

#include <ccmap/gallery/mappings.hpp>

namespace ccmap::gallery {

using FamilyBuilder = std::function<OperatorSet(const std::vector<AffineSubspace>&)>;

struct Configuration {
  std::vector<AffineSubspace> us;
  AffineSubspace meet;
};

inline Configuration random_configuration(Rng& rng, Eigen::Index n, std::size_t m,
                                          const Tolerances& tol) {
  Vector p;
  auto us = random_subspaces(rng, n, m, &p);
  auto meet = intersect_affine(us, tol);
  return {std::move(us), meet ? *meet : AffineSubspace::point(p)};
}

// Sample points: Gaussian ones plus points on each subspace and on the
// intersection, where images coincide.
inline std::vector<Vector> configuration_probes(Rng& rng, const Configuration& c,
                                                std::size_t generic) {
  const Eigen::Index n = c.meet.ambient_dim();
  std::vector<Vector> xs;
  for (std::size_t i = 0; i < generic; ++i) xs.push_back(gaussian(rng, n, 3.0));
  for (const auto& u : c.us) xs.push_back(random_point_of(rng, u));
  xs.push_back(random_point_of(rng, c.meet));
  return xs;
}

// Images are rounded to machine precision before either side sees them, so a
// nearly degenerate S(x) moves both sides by about eps times the condition
// number of its difference matrix. This is the allowance added to eq_tol.
inline double rounding_sensitivity(const std::vector<Vector>& k) {
  if (k.size() < 3) return 0.0;
  std::vector<Vector> d;
  for (std::size_t i = 1; i < k.size(); ++i) d.push_back(k[i] - k[0]);
  const Eigen::JacobiSVD<Matrix> svd(as_columns(d, k[0].size()));
  const Vector sv = svd.singularValues();
  const double lo = sv(std::min<Eigen::Index>(sv.size(), k[0].size()) - 1);
  if (!(lo > 0.0)) return 0.0;
  return 16.0 * std::numeric_limits<double>::epsilon() * sv(0) / lo;
}

// CC_S x exists and equals P_{aff S(x)}(u) for points u of the intersection.
inline void check_projection_identity(VerificationReport& rep, Rng& rng, const Configuration& c,
                                      const OperatorSet& s, const std::vector<Vector>& xs,
                                      const Tolerances& tol, std::size_t us_per_x = 3) {
  for (const auto& x : xs) {
    const auto cc = cc_map(s, x, tol);
    if (!cc) {
      rep.expect_true(false, s.describe() + " at " + format_point(x), "Exists", "NotExists");
      continue;
    }
    const auto im = evaluate_set(s, x, tol).points();
    const double bound = tol.eq_tol + rounding_sensitivity(im);
    for (std::size_t j = 0; j < us_per_x; ++j) {
      const Vector u = random_point_of(rng, c.meet);
      rep.expect_point(x, project_onto_hull(im, u, tol), cc.center, bound);
    }
    rep.expect_point(x, project_onto_hull(im, c.meet.project(x), tol), cc.center, bound);
  }
}

inline void verify_family(VerificationReport& rep, std::uint64_t seed, const Tolerances& tol,
                          std::size_t m_min, std::size_t m_max, const FamilyBuilder& build,
                          std::size_t configs = 40) {
  auto rng = make_rng(seed, 11);
  std::uniform_int_distribution<Eigen::Index> dims(2, 5);
  std::uniform_int_distribution<std::size_t> ms(m_min, m_max);
  for (std::size_t i = 0; i < configs; ++i) {
    const auto c = random_configuration(rng, dims(rng), ms(rng), tol);
    const auto s = build(c.us);
    check_projection_identity(rep, rng, c, s, configuration_probes(rng, c, 5), tol);
  }
}

// The line and plane of the first table, used as representative geometry.
inline std::vector<AffineSubspace> sample_pair() {
  const auto g = table1_geometry();
  return {g.u1, g.u2};
}

inline OperatorSet reflectors_m_set(const std::vector<AffineSubspace>& us) {
  std::vector<Operator> ops{identity()};
  for (std::size_t i = 0; i < us.size(); ++i)
    ops.push_back(reflector_word(us, {static_cast<int>(i + 1)}));
  return OperatorSet(std::move(ops), "S");
}

inline OperatorSet cyclic_pairs_set(const std::vector<AffineSubspace>& us) {
  const int m = static_cast<int>(us.size());
  std::vector<Operator> ops{identity()};
  for (int i = 1; i < m; ++i) ops.push_back(reflector_word(us, {i, i + 1}));
  ops.push_back(reflector_word(us, {m, 1}));
  return OperatorSet(std::move(ops), "S");
}

inline OperatorSet cdrm_set(const std::vector<AffineSubspace>& us) {
  return OperatorSet({identity(), reflector_word(us, {1}), reflector_word(us, {1, 2})}, "S");
}

inline OperatorSet crm_products_set(const std::vector<AffineSubspace>& us) {
  std::vector<Operator> ops{identity()};
  std::vector<int> word;
  for (std::size_t i = 0; i < us.size(); ++i) {
    word.push_back(static_cast<int>(i + 1));
    ops.push_back(reflector_word(us, word));
  }
  return OperatorSet(std::move(ops), "S");
}

inline OperatorSet dr_set(const std::vector<AffineSubspace>& us) {
  return OperatorSet({identity(), reflector_word(us, {1, 2})}, "S");
}

inline OperatorSet four_words_set(const std::vector<AffineSubspace>& us) {
  return OperatorSet({identity(), reflector_word(us, {1}), reflector_word(us, {2}),
                      reflector_word(us, {1, 2})},
                     "S");
}

inline Scenario family_scenario(std::string name, std::string summary, std::size_t m_min,
                                std::size_t m_max, FamilyBuilder build) {
  Scenario s{.name = std::move(name),
             .dim = 3,
             .summary = std::move(summary),
             .kind = Expectation::ClosedFormMap,
             .operator_set = build(sample_pair())};
  s.check = [=](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
    verify_family(rep, seed, tol, m_min, m_max, build);
  };
  return s;
}

inline Scenario douglas_rachford() {
  Scenario s = family_scenario("douglas-rachford",
                               "{Id, R_U2 R_U1}: CC_S = (Id + R_U2 R_U1)/2, the "
                               "Douglas-Rachford operator",
                               2, 2, dr_set);
  s.check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
    verify_family(rep, seed, tol, 2, 2, dr_set);
    auto rng = make_rng(seed, 12);
    for (int i = 0; i < 20; ++i) {
      const auto c = random_configuration(rng, 3, 2, tol);
      const auto t = reflector_word(c.us, {1, 2});
      check_map(rep, dr_set(c.us), [&](const Vector& x) { return Vector(0.5 * (x + t(x))); },
                configuration_probes(rng, c, 5), tol);
    }
  };
  return s;
}

inline Scenario reflectors_two_on_subspace() {
  Scenario s = family_scenario("reflectors-two-on-subspace",
                               "{Id, R_U1, R_U2}: proper, CC_S = P_U2 on U1 and "
                               "CC_S = P_U1 on U2",
                               2, 2, reflectors_m_set);
  s.check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
    verify_family(rep, seed, tol, 2, 2, reflectors_m_set);
    auto rng = make_rng(seed, 13);
    for (int i = 0; i < 20; ++i) {
      const auto c = random_configuration(rng, 4, 2, tol);
      const auto s2 = reflectors_m_set(c.us);
      for (int j = 0; j < 5; ++j) {
        const Vector on1 = random_point_of(rng, c.us[0]);
        const Vector on2 = random_point_of(rng, c.us[1]);
        check_map(rep, s2, [&](const Vector& x) { return c.us[1].project(x); }, {on1}, tol,
                  "on U1 ");
        check_map(rep, s2, [&](const Vector& x) { return c.us[0].project(x); }, {on2}, tol,
                  "on U2 ");
      }
    }
  };
  return s;
}

// The four cases of {Id, R_U1, R_U2, R_U2 R_U1} by the number l of distinct
// images: x, the midpoint, the three-point formula, the Gram formula.
inline Scenario four_reflector_words() {
  Scenario s = family_scenario("four-reflector-words",
                               "{Id, R_U1, R_U2, R_U2 R_U1}: CC_S x is x, a midpoint, the "
                               "three-point formula or the Gram formula as l = 1, 2, 3, 4",
                               2, 2, four_words_set);
  s.check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
    verify_family(rep, seed, tol, 2, 2, four_words_set);
    auto rng = make_rng(seed, 14);
    std::array<std::size_t, 5> seen{};
    for (int i = 0; i < 30; ++i) {
      // a line and a plane of R^3 through a common point
      const Vector p = gaussian(rng, 3, 2.0);
      const AffineSubspace u1(p, {gaussian(rng, 3)});
      const AffineSubspace u2(p, {gaussian(rng, 3), gaussian(rng, 3)});
      const std::vector<AffineSubspace> us{u1, u2};
      const auto set = four_words_set(us);
      std::vector<Vector> xs{p, random_point_of(rng, u1), random_point_of(rng, u2),
                             gaussian(rng, 3, 3.0)};
      for (const auto& x : xs) {
        const auto k = evaluate_set(set, x, tol);
        const auto cc = circumcenter(k, tol);
        if (!cc) {
          rep.expect_true(false, format_point(x), "Exists", "NotExists");
          continue;
        }
        Vector want;
        switch (k.size()) {
          case 1: want = x; break;
          case 2: want = 0.5 * (k[0] + k[1]); break;
          case 3: want = circumcenter_three(k[0], k[1], k[2], tol).center; break;
          default: want = circumcenter_oracle(k, tol).center; break;
        }
        ++seen[std::min<std::size_t>(k.size(), 4)];
        rep.expect_point(x, want, cc.center, tol.eq_tol, "l=" + std::to_string(k.size()) + " ");
      }
    }
    for (std::size_t l = 1; l <= 4; ++l)
      rep.expect_true(seen[l] > 0, "case l=" + std::to_string(l), "exercised", "never hit");
  };
  return s;
}

inline Scenario relaxed_reflectors() {
  Scenario s = family_scenario("relaxed-reflectors",
                               "{Id, (1-alpha) Id + alpha R_Ui}: proper with "
                               "CC = alpha CC_S x + (1 - alpha) x",
                               2, 4, reflectors_m_set);
  s.check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
    auto rng = make_rng(seed, 15);
    std::uniform_int_distribution<Eigen::Index> dims(2, 5);
    std::uniform_int_distribution<std::size_t> ms(2, 4);
    for (int i = 0; i < 20; ++i) {
      const auto c = random_configuration(rng, dims(rng), ms(rng), tol);
      const auto base = reflectors_m_set(c.us);
      for (const auto& x : configuration_probes(rng, c, 3))
        for (double a : {-2.0, -1.0, 0.0, 0.5, 1.0, 1.5, 2.0}) {
          const auto [lhs, rhs] = affine_comb_identity_check(base, a, x, tol);
          rep.expect_point(x, rhs, lhs, tol.eq_tol, "alpha=" + format_real(a) + " ");
        }
    }
  };
  return s;
}

// {Id, T, T^2} with T the Douglas-Rachford operator spans the same affine
// hull as {Id, R_U2 R_U1, (R_U2 R_U1)^2} and is proper.
inline Scenario dr_powers() {
  auto build = [](const std::vector<AffineSubspace>& us) {
    const auto r = reflector_word(us, {1, 2});
    return OperatorSet({identity(), r, r * r}, "S");
  };
  Scenario s = family_scenario("dr-powers",
                               "T = (Id + R_U2 R_U1)/2: aff{Id, T, T^2} = aff{Id, R_U2 R_U1, "
                               "(R_U2 R_U1)^2} pointwise, and {Id, T, T^2} is proper",
                               2, 2, build);
  s.check = [build](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
    verify_family(rep, seed, tol, 2, 2, build);
    auto rng = make_rng(seed, 16);
    for (int i = 0; i < 30; ++i) {
      const auto c = random_configuration(rng, 2 + i % 4, 2, tol);
      const auto r = reflector_word(c.us, {1, 2});
      const auto t = affine_combination({{0.5, identity()}, {0.5, r}});
      const OperatorSet tilde({identity(), t, t * t}, "S~");
      const auto base = build(c.us);
      for (const auto& x : configuration_probes(rng, c, 4)) {
        const auto a = images(base, x);
        const auto b = images(tilde, x);
        const double scale = 1.0 + x.norm();
        for (const auto& y : b)
          rep.expect_point(x, y, project_onto_hull(a, y, tol), tol.eq_tol * scale,
                           "T-image in aff S ");
        for (const auto& y : a)
          rep.expect_point(x, y, project_onto_hull(b, y, tol), tol.eq_tol * scale,
                           "S-image in aff T ");
        rep.expect_true(in_domain(tilde, x, tol).in_domain, format_point(x), "in domain",
                        "NotExists");
      }
    }
  };
  return s;
}

// A fixed affine line of R^2 used as the repeated subspace U = U1 = U2.
inline AffineSubspace repeated_line() {
  return AffineSubspace::line(v2(0, 1), v2(1, 2));
}

inline std::vector<Vector> repeated_probes(const AffineSubspace& u, std::uint64_t seed) {
  std::vector<Vector> p{u.anchor(), u.anchor() + u.basis().col(0), v2(3, -1), v2(-2, -2),
                        v2(0, 0)};
  return concat(p, cloud(2, seed, 20));
}

inline bool relaxed_composition_improper(double a1, double a2) {
  return a1 != 0.0 && a1 != 0.5 && a2 != 0.0 && a2 != a1 / (2.0 * a1 - 1.0);
}

inline OperatorSet relaxed_pair_set(const Operator& t, double a1, double a2) {
  return OperatorSet({identity(), relaxed(t, a1), relaxed(t, a2)}, "S~");
}

inline OperatorSet relaxed_composition_set(const Operator& t, double a1, double a2) {
  const auto t1 = relaxed(t, a1);
  return OperatorSet({identity(), t1, relaxed(t, a2) * t1}, "S~");
}

inline Scenario relaxed_same_subspace() {
  const auto r = reflector(repeated_line(), "U");
  return {.name = "relaxed-same-subspace",
          .dim = 2,
          .summary = "U1 = U2 = U, {Id, (1-a1) Id + a1 R_U, (1-a2) Id + a2 R_U}: improper iff "
                     "a1 != 0, a2 != 0, a1 != a2",
          .kind = Expectation::ImpropernessIff,
          .operator_set = relaxed_pair_set(r, 0.5, 2.0),
          .check = [r](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            check_improperness_grid(
                rep, parameter_grid(),
                [&](double a1, double a2) { return relaxed_pair_set(r, a1, a2); },
                [](double a1, double a2) { return a1 != 0.0 && a2 != 0.0 && a1 != a2; },
                repeated_probes(repeated_line(), seed), tol);
          }};
}

inline Scenario relaxed_composition_same_subspace() {
  const auto r = reflector(repeated_line(), "U");
  return {.name = "relaxed-composition-same-subspace",
          .dim = 2,
          .summary = "U1 = U2 = U, {Id, T1, T2 T1} with Ti = (1-ai) Id + ai R_U: improper iff "
                     "a1 != 0, a1 != 1/2, a2 != 0, a2 != a1/(2a1 - 1)",
          .kind = Expectation::ImpropernessIff,
          .operator_set = relaxed_composition_set(r, 2.0, 2.0),
          .check = [r](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            check_improperness_grid(
                rep, parameter_grid(),
                [&](double a1, double a2) { return relaxed_composition_set(r, a1, a2); },
                relaxed_composition_improper, repeated_probes(repeated_line(), seed), tol);
          }};
}

// U1 a proper subspace of U2 = H, so R_U2 R_U1 = R_U1.
inline Scenario relaxed_dr_composition() {
  const std::vector<AffineSubspace> us{repeated_line(), AffineSubspace::whole(2)};
  const auto r = reflector_word(us, {1, 2});
  return {.name = "relaxed-dr-composition",
          .dim = 2,
          .summary = "U1 strictly inside U2 = H, Ti = (1-ai) Id + ai R_U2 R_U1, {Id, T1, T2 T1}: "
                     "improper iff a1 != 0, a1 != 1/2, a2 != 0, a2 != a1/(2a1 - 1)",
          .kind = Expectation::ImpropernessIff,
          .operator_set = relaxed_composition_set(r, 2.0, 2.0),
          .check = [r](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            check_improperness_grid(
                rep, parameter_grid(),
                [&](double a1, double a2) { return relaxed_composition_set(r, a1, a2); },
                relaxed_composition_improper, repeated_probes(repeated_line(), seed), tol);
          }};
}

inline Scenario benchmark_scenario(const BenchmarkGeometry& g, std::string summary,
                                   bool one_step_exact) {
  return {.name = g.name,
          .dim = 3,
          .summary = std::move(summary),
          .kind = Expectation::IterationCounts,
          .operator_set = crm_s1(g.u1, g.u2),
          .benchmark = g,
          .check = [g, one_step_exact](VerificationReport& rep, std::uint64_t,
                                       const Tolerances& tol) {
            const auto res = run_benchmark(g, {}, 10000, {}, tol);
            rep.expect_true(res.window.feasible, "DRM window", "feasible",
                            "empty: no tolerance gives " + std::to_string(g.expected[0]));
            for (const auto& row : res.rows)
              rep.expect_true(row.match(), row.method + " at eps=" + format_real(res.epsilon),
                              std::to_string(row.expected),
                              row.got ? std::to_string(*row.got) : "not reached");
            if (!one_step_exact) return;
            for (std::size_t i = 2; i < 4; ++i) {
              const auto& tr = res.traces[i];
              const double e = tr.iterates.size() > 1 ? (tr.iterates[1] - res.target).norm()
                                                      : (tr.iterates[0] - res.target).norm();
              rep.expect_near(0.0, e, 1e-12, tr.method + " first step");
            }
          }};
}

inline Scenario table1_line_plane() {
  return benchmark_scenario(table1_geometry(),
                            "x-axis and the plane x+y+z = 0, x0 = (0.5,0,0): iterations "
                            "DRM 12, MAP 12, CRM-S1 1, CRM-S2 1 at the DRM-calibrated tolerance",
                            true);
}

inline Scenario table2_plane_plane() {
  return benchmark_scenario(table2_geometry(),
                            "planes x+y+z = 0 and -x+2y+2z = 0, x0 = (-1,0.5,0.5): iterations "
                            "DRM 5, MAP 6, CRM-S1 5, CRM-S2 2",
                            false);
}

inline std::vector<AffineSubspace> diagonal_pair() {
  return {x_axis(), AffineSubspace::span({v2(1, 1)})};
}

inline std::vector<OperatorSet> diagonal_sets() {
  const auto us = diagonal_pair();
  return {crm_s1(us[0], us[1]), crm_s2(us[0], us[1])};
}

inline Scenario discontinuity() {
  return {.name = "discontinuity",
          .dim = 2,
          .summary = "U1 = R(1,0), U2 = R(1,1), S1 or S2: CC(1,0) = (1/2,1/2) but "
                     "CC(1, 1/(k+1)) = (0,0) for k >= 1",
          .kind = Expectation::SequenceLimit,
          .operator_set = diagonal_sets()[0],
          .check = [](VerificationReport& rep, std::uint64_t, const Tolerances& tol) {
            for (const auto& s : diagonal_sets()) {
              check_map(rep, s, [](const Vector&) { return v2(0.5, 0.5); }, {v2(1, 0)}, tol,
                        s.name() + " ");
              std::vector<Vector> xs;
              for (int k = 1; k <= 50; ++k) xs.push_back(v2(1.0, 1.0 / (k + 1.0)));
              check_map(rep, s, [](const Vector&) { return v2(0, 0); }, xs, tol, s.name() + " ");
            }
          }};
}

// For S2, y = (1,-1) gives S2(y) = {(1,-1), (1,1)} and CC y = (1,0), not the
// origin; the map is still not additive.
inline Scenario nonlinearity() {
  return {.name = "nonlinearity",
          .dim = 2,
          .summary = "U1 = R(1,0), U2 = R(1,1), S1 or S2, x = (1,0), y = (1,-1): CC x + CC y "
                     "!= CC(x + y) = (0,0); CC_S1 y = (0,0), CC_S2 y = (1,0)",
          .kind = Expectation::ClosedFormMap,
          .operator_set = diagonal_sets()[0],
          .check = [](VerificationReport& rep, std::uint64_t, const Tolerances& tol) {
            const Vector x = v2(1, 0), y = v2(1, -1);
            const std::vector<Vector> cc_y{v2(0, 0), v2(1, 0)};
            const auto sets = diagonal_sets();
            for (std::size_t i = 0; i < sets.size(); ++i) {
              const auto& s = sets[i];
              check_map(rep, s, [](const Vector&) { return v2(0.5, 0.5); }, {x}, tol,
                        s.name() + " ");
              check_map(rep, s, [&](const Vector&) { return cc_y[i]; }, {y}, tol, s.name() + " ");
              check_map(rep, s, [](const Vector&) { return v2(0, 0); }, {x + y}, tol,
                        s.name() + " ");
              const auto a = cc_map(s, x, tol), b = cc_map(s, y, tol), c = cc_map(s, x + y, tol);
              const double gap = a && b && c ? (a.center + b.center - c.center).norm() : 0.0;
              rep.expect_true(gap > 0.5, s.name() + " additivity", "CC x + CC y != CC(x + y)",
                              format_real(gap));
            }
          }};
}

inline void add_reflector_scenarios(std::vector<Scenario>& out) {
  out.push_back(family_scenario("reflectors-m",
                                "{Id, R_U1, ..., R_Um} with a common point: proper, "
                                "CC_S x = P_aff S(x)(u) for every u in the intersection",
                                2, 4, reflectors_m_set));
  out.push_back(family_scenario("reflector-pairs-cyclic",
                                "{Id, R_U2 R_U1, R_U3 R_U2, ..., R_U1 R_Um}: proper",
                                2, 4, cyclic_pairs_set));
  out.push_back(family_scenario("cdrm", "{Id, R_U1, R_U2 R_U1}: proper", 2, 2, cdrm_set));
  out.push_back(family_scenario("crm-products",
                                "{Id, R_U1, R_U2 R_U1, ..., R_Um ... R_U1}: proper", 2, 4,
                                crm_products_set));
  out.push_back(douglas_rachford());
  out.push_back(reflectors_two_on_subspace());
  out.push_back(four_reflector_words());
  out.push_back(relaxed_reflectors());
  out.push_back(dr_powers());
  out.push_back(relaxed_same_subspace());
  out.push_back(relaxed_composition_same_subspace());
  out.push_back(relaxed_dr_composition());
  out.push_back(table1_line_plane());
  out.push_back(table2_plane_plane());
  out.push_back(discontinuity());
  out.push_back(nonlinearity());
}

}  // namespace ccmap::gallery
