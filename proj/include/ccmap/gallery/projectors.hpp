#pragma once

// Circumcenter mappings induced by projectors: proper words with a linear
// second subspace, relaxed projector sets, and the improper examples.

#include <ccmap/gallery/reflectors.hpp>

namespace ccmap::gallery {

// U2 linear and U1 through a point of U2.
inline std::vector<AffineSubspace> linear_pair(Rng& rng, Eigen::Index n) {
  std::uniform_int_distribution<Eigen::Index> dims(0, n - 1);
  std::vector<Vector> d2, d1;
  for (Eigen::Index j = dims(rng); j > 0; --j) d2.push_back(gaussian(rng, n));
  const AffineSubspace u2(Vector::Zero(n), d2);
  const Vector q = random_point_of(rng, u2);
  for (Eigen::Index j = dims(rng); j > 0; --j) d1.push_back(gaussian(rng, n));
  return {AffineSubspace(q, d1), u2};
}

inline Scenario projector_words_linear() {
  const auto pair = sample_pair();
  return {.name = "projector-words-linear",
          .dim = 3,
          .summary = "U2 linear: {Id, P_U1, P_U2 P_U1} and {Id, P_U2, P_U2 P_U1} are proper",
          .kind = Expectation::DomainSpec,
          .operator_set = OperatorSet(
              {identity(), projector_word(pair, {1}), projector_word(pair, {1, 2})}, "S^"),
          .check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            auto rng = make_rng(seed, 21);
            for (int i = 0; i < 60; ++i) {
              const Eigen::Index n = 2 + i % 4;
              const auto us = linear_pair(rng, n);
              const OperatorSet a({identity(), projector_word(us, {1}), projector_word(us, {1, 2})},
                                  "S1^");
              const OperatorSet b({identity(), projector_word(us, {2}), projector_word(us, {1, 2})},
                                  "S2^");
              std::vector<Vector> xs;
              for (int j = 0; j < 5; ++j) xs.push_back(gaussian(rng, n, 3.0));
              xs.push_back(random_point_of(rng, us[0]));
              xs.push_back(random_point_of(rng, us[1]));
              check_proper(rep, a, xs, tol, "S1^ ");
              check_proper(rep, b, xs, tol, "S2^ ");
            }
          }};
}

inline OperatorSet relaxed_projectors_set(const std::vector<AffineSubspace>& us, double alpha) {
  std::vector<Operator> ops{identity()};
  for (std::size_t i = 0; i < us.size(); ++i)
    ops.push_back(relaxed(projector_word(us, {static_cast<int>(i + 1)}), alpha));
  return OperatorSet(std::move(ops), "S^");
}

inline Scenario projectors_all() {
  return {.name = "projectors-all",
          .dim = 3,
          .summary = "{Id, (1-alpha) Id + alpha P_Ui}: proper with CC = (alpha/2) CC_S x + "
                     "(1 - alpha/2) x for S = {Id, R_Ui}; alpha = 1 gives {Id, P_U1, ..., P_Um}",
          .kind = Expectation::ClosedFormMap,
          .operator_set = relaxed_projectors_set(sample_pair(), 1.0),
          .check = [](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            auto rng = make_rng(seed, 22);
            std::uniform_int_distribution<Eigen::Index> dims(2, 5);
            std::uniform_int_distribution<std::size_t> ms(2, 4);
            for (int i = 0; i < 20; ++i) {
              const auto c = random_configuration(rng, dims(rng), ms(rng), tol);
              const auto base = reflectors_m_set(c.us);
              for (double a : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
                const auto hat = relaxed_projectors_set(c.us, a);
                check_map(rep, hat,
                          [&](const Vector& x) {
                            return Vector(0.5 * a * cc_map(base, x, tol).center +
                                          (1.0 - 0.5 * a) * x);
                          },
                          configuration_probes(rng, c, 3), tol, "alpha=" + format_real(a) + " ");
              }
            }
          }};
}

inline Scenario relaxed_projectors_same_subspace() {
  const auto p = projector(repeated_line(), "U");
  return {.name = "relaxed-projectors-same-subspace",
          .dim = 2,
          .summary = "U1 = U2 = U, {Id, T1, T2 T1} with Ti = (1-ai) Id + ai P_U: improper iff "
                     "a1 != 0, a1 != 1, a2 != 0, a2 != a1/(a1 - 1)",
          .kind = Expectation::ImpropernessIff,
          .operator_set = relaxed_composition_set(p, 0.5, 0.5),
          .check = [p](VerificationReport& rep, std::uint64_t seed, const Tolerances& tol) {
            check_improperness_grid(
                rep, parameter_grid(),
                [&](double a1, double a2) { return relaxed_composition_set(p, a1, a2); },
                [](double a1, double a2) {
                  return a1 != 0.0 && a1 != 1.0 && a2 != 0.0 && a2 != a1 / (a1 - 1.0);
                },
                repeated_probes(repeated_line(), seed), tol);
          }};
}

inline OperatorSet colinear_set() {
  const std::vector<AffineSubspace> us{x_axis(), AffineSubspace::span({v2(1, 2)})};
  const auto t = projector_word(us, {1, 2});
  return OperatorSet({identity(), t, t * t}, "S^");
}

inline Scenario projector_colinear() {
  return {.name = "projector-colinear",
          .dim = 2,
          .summary = "U1 = R(1,0), U2 = R(1,2), {Id, P2 P1, (P2 P1)^2} at x = (2,4): three "
                     "pairwise distinct colinear images, so CC_S x does not exist",
          .kind = Expectation::DomainSpec,
          .operator_set = colinear_set(),
          .check = [](VerificationReport& rep, std::uint64_t, const Tolerances& tol) {
            const Vector x = v2(2, 4);
            const auto d = in_domain(colinear_set(), x, tol);
            rep.expect_true(d.card == 3, "card at (2, 4)", "3", std::to_string(d.card));
            rep.expect_true(!d.affinely_independent, "(2, 4)", "colinear", "independent");
            rep.expect_true(!d.in_domain, "(2, 4)", "NotExists", "Exists");
          }};
}

inline OperatorSet noncolinear_set() {
  const auto us = diagonal_pair();
  return OperatorSet({identity(), projector_word(us, {1}), projector_word(us, {2}),
                      projector_word(us, {1, 2})},
                     "S^");
}

inline Scenario projector_noncolinear() {
  return {.name = "projector-noncolinear",
          .dim = 2,
          .summary = "U1 = R(1,0), U2 = R(1,1), {Id, P1, P2, P2 P1} at x = (4,2): the center "
                     "of {x, P1 x, P2 x} is not equidistant from P2 P1 x, so CC_S x does not exist",
          .kind = Expectation::DomainSpec,
          .operator_set = noncolinear_set(),
          .check = [](VerificationReport& rep, std::uint64_t, const Tolerances& tol) {
            const Vector x = v2(4, 2);
            const auto s = noncolinear_set();
            rep.expect_true(!in_domain(s, x, tol).in_domain, "(4, 2)", "NotExists", "Exists");
            const auto im = images(s, x);
            const auto k = circumcenter({im[0], im[1], im[2]}, tol);
            rep.expect_true(k.exists, "CC_K (4, 2)", "Exists", "NotExists");
            if (k) {
              const double d = (k.center - im[3]).norm();
              rep.expect_true(std::abs(d - k.radius) > 1e-6, "|CC_K x - P2 P1 x|",
                              "!= " + format_real(k.radius), format_real(d));
            }
          }};
}

inline void add_projector_scenarios(std::vector<Scenario>& out) {
  out.push_back(projector_words_linear());
  out.push_back(projectors_all());
  out.push_back(relaxed_projectors_same_subspace());
  out.push_back(projector_colinear());
  out.push_back(projector_noncolinear());
}

}  // namespace ccmap::gallery
