#pragma once

// Building blocks of the scenario gallery: the scenario record, the
// verification report, domain specifications and the shared checkers.

#include <ccmap/benchmark.hpp>
#include <ccmap/circummap.hpp>
#include <ccmap/format.hpp>

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ccmap {

enum class Expectation {
  ClosedFormMap,
  DomainSpec,
  ImpropernessIff,
  SequenceLimit,
  IterationCounts,
  ProbeOnly
};

inline const char* to_string(Expectation e) {
  switch (e) {
    case Expectation::ClosedFormMap: return "closed-form";
    case Expectation::DomainSpec: return "domain";
    case Expectation::ImpropernessIff: return "improperness-iff";
    case Expectation::SequenceLimit: return "sequence-limit";
    case Expectation::IterationCounts: return "iteration-counts";
    case Expectation::ProbeOnly: return "probe-only";
  }
  return "?";
}

struct Failure {
  std::string input;
  std::string expected;
  std::string got;
};

struct VerificationReport {
  std::string scenario;
  std::size_t checks = 0;
  std::size_t skipped = 0;  // probes inside a boundary exclusion zone
  double max_deviation = 0.0;
  std::vector<Failure> failures;

  bool pass() const { return failures.empty(); }

  void expect_true(bool ok, std::string input, std::string expected, std::string got) {
    ++checks;
    if (!ok) failures.push_back({std::move(input), std::move(expected), std::move(got)});
  }

  // |got - want| <= bound, recording the deviation
  void expect_near(double want, double got, double bound, std::string input) {
    const double dev = std::abs(got - want);
    if (std::isfinite(dev)) max_deviation = std::max(max_deviation, dev);
    expect_true(dev <= bound, std::move(input), format_real(want), format_real(got));
  }

  // ‖got - want‖ / (1 + ‖x‖) <= bound
  void expect_point(const Vector& x, const Vector& want, const Vector& got, double bound,
                    const std::string& what = "") {
    const double dev = (got - want).norm() / (1.0 + x.norm());
    if (std::isfinite(dev)) max_deviation = std::max(max_deviation, dev);
    expect_true(dev <= bound, what + format_point(x), format_point(want), format_point(got));
  }
};

// Membership in dom CC_S as described for one operator set. `member`
// returns nothing where the description makes no claim. `boundary_distance`
// measures the distance to the relative boundary of the described pieces.
struct DomainSpec {
  std::string label;
  OperatorSet set;
  std::function<std::optional<bool>(const Vector&)> member;
  std::function<double(const Vector&)> boundary_distance;
};

struct Scenario {
  std::string name;
  Eigen::Index dim = 2;
  std::string summary;
  Expectation kind = Expectation::ClosedFormMap;
  OperatorSet operator_set;  // a representative instance for parametrized families
  std::vector<DomainSpec> domains;
  std::optional<BenchmarkGeometry> benchmark;
  std::function<void(VerificationReport&, std::uint64_t, const Tolerances&)> check;
};

// Rectangular grid in R^2 (or an interval of R^1 when ny = 0 and dim = 1).
struct ProbeGrid {
  double x_min = -4.0, x_max = 4.0;
  double y_min = -4.0, y_max = 4.0;
  std::size_t nx = 17, ny = 17;
  Eigen::Index dim = 2;

  std::vector<Vector> points() const {
    std::vector<Vector> out;
    auto at = [](double lo, double hi, std::size_t n, std::size_t i) {
      return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    if (dim == 1) {
      for (std::size_t i = 0; i < nx; ++i) out.push_back(make_vector({at(x_min, x_max, nx, i)}));
      return out;
    }
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i)
        out.push_back(make_vector({at(x_min, x_max, nx, i), at(y_min, y_max, ny, j)}));
    return out;
  }
};

struct ProbeSample {
  Vector x;
  bool in_domain = false;
  std::size_t card = 0;
  std::optional<bool> expected;
  bool skipped = false;  // inside the boundary zone, not compared
};

struct DomainProbe {
  std::vector<ProbeSample> samples;
  std::size_t compared = 0;
  std::size_t agreed = 0;

  double agreement() const {
    return compared == 0 ? 1.0 : static_cast<double>(agreed) / static_cast<double>(compared);
  }
};

inline double boundary_zone(const Tolerances& tol) { return 10.0 * tol.dup_tol; }

inline DomainProbe domain_probe(const OperatorSet& s, const std::vector<Vector>& points,
                                const Tolerances& tol = {},
                                const DomainSpec* spec = nullptr) {
  DomainProbe out;
  for (const auto& x : points) {
    ProbeSample p;
    p.x = x;
    const auto d = in_domain(s, x, tol);
    p.in_domain = d.in_domain;
    p.card = d.card;
    if (spec) {
      p.expected = spec->member(x);
      if (p.expected && spec->boundary_distance &&
          spec->boundary_distance(x) < boundary_zone(tol))
        p.skipped = true;
      if (p.expected && !p.skipped) {
        ++out.compared;
        if (*p.expected == p.in_domain) ++out.agreed;
      }
    }
    out.samples.push_back(std::move(p));
  }
  return out;
}

inline DomainProbe domain_probe(const OperatorSet& s, const ProbeGrid& grid,
                                const Tolerances& tol = {},
                                const DomainSpec* spec = nullptr) {
  return domain_probe(s, grid.points(), tol, spec);
}

namespace gallery {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  return Rng(seq);
}

inline Vector gaussian(Rng& rng, Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * g(rng);
  return v;
}

inline std::vector<Vector> cloud(Eigen::Index n, std::uint64_t seed, std::size_t count,
                                 double scale = 3.0) {
  GaussianCloud c{n, seed, scale, {}};
  std::vector<Vector> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(c(i));
  return out;
}

inline std::vector<Vector> concat(std::vector<Vector> a, const std::vector<Vector>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Vector v2(double x, double y) { return make_vector({x, y}); }

// Points (t, 0) for every t.
inline std::vector<Vector> axis_points(const std::vector<double>& ts) {
  std::vector<Vector> out;
  for (double t : ts) out.push_back(v2(t, 0.0));
  return out;
}

inline std::vector<double> range(double lo, double hi, double step) {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

inline double dist_to_points(const Vector& x, const std::vector<Vector>& pts) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) d = std::min(d, (x - p).norm());
  return d;
}

// Distance to the ray {o + t·dir : t >= 0}.
inline double dist_to_ray(const Vector& x, const Vector& o, const Vector& dir) {
  const Vector u = dir.normalized();
  const double t = std::max(0.0, (x - o).dot(u));
  return (x - (o + t * u)).norm();
}

inline bool on_x_axis(const Vector& x) { return x(1) == 0.0; }

// P_{aff K}(y)
inline Vector project_onto_hull(const std::vector<Vector>& k, const Vector& y,
                                const Tolerances& tol = {}) {
  const auto hull = affine_hull_basis(k, tol);
  Vector p = hull.anchor;
  for (const auto& b : hull.basis) p += b.dot(y - hull.anchor) * b;
  return p;
}

// m affine subspaces of R^n through a shared random point, dimensions in
// [0, n - 1].
inline std::vector<AffineSubspace> random_subspaces(Rng& rng, Eigen::Index n, std::size_t m,
                                                    Vector* common = nullptr) {
  const Vector p = gaussian(rng, n, 2.0);
  std::uniform_int_distribution<Eigen::Index> dims(0, n - 1);
  std::vector<AffineSubspace> out;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index d = dims(rng);
    std::vector<Vector> dirs;
    for (Eigen::Index j = 0; j < d; ++j) dirs.push_back(gaussian(rng, n));
    out.emplace_back(p, dirs);
  }
  if (common) *common = p;
  return out;
}

// Random point of an affine subspace.
inline Vector random_point_of(Rng& rng, const AffineSubspace& a, double scale = 2.0) {
  return a.anchor() + a.basis() * gaussian(rng, a.dim(), scale);
}

inline void check_map(VerificationReport& rep, const OperatorSet& s,
                      const std::function<Vector(const Vector&)>& want,
                      const std::vector<Vector>& probes, const Tolerances& tol,
                      const std::string& what = "") {
  for (const auto& x : probes) {
    const auto cc = cc_map(s, x, tol);
    if (!cc) {
      rep.expect_true(false, what + format_point(x), format_point(want(x)), "NotExists");
      continue;
    }
    rep.expect_point(x, want(x), cc.center, tol.eq_tol, what);
  }
}

inline void check_proper(VerificationReport& rep, const OperatorSet& s,
                         const std::vector<Vector>& probes, const Tolerances& tol,
                         const std::string& what = "") {
  for (const auto& x : probes) {
    const bool in = in_domain(s, x, tol).in_domain;
    rep.expect_true(in, what + format_point(x), "in domain", "NotExists");
  }
}

inline void check_domain(VerificationReport& rep, const DomainSpec& spec,
                         const std::vector<Vector>& probes, const Tolerances& tol) {
  const auto probe = domain_probe(spec.set, probes, tol, &spec);
  for (const auto& p : probe.samples) {
    if (p.skipped) ++rep.skipped;
    if (!p.expected || p.skipped) continue;
    rep.expect_true(*p.expected == p.in_domain, spec.label + " " + format_point(p.x),
                    *p.expected ? "in" : "out", p.in_domain ? "in" : "out");
  }
}

inline bool finds_not_exists(const OperatorSet& s, const std::vector<Vector>& probes,
                             const Tolerances& tol) {
  for (const auto& x : probes)
    if (!in_domain(s, x, tol).in_domain) return true;
  return false;
}

// Improperness over a two-parameter grid: sampled improperness must equal
// the predicate at every grid point.
inline void check_improperness_grid(
    VerificationReport& rep, const std::vector<double>& grid,
    const std::function<OperatorSet(double, double)>& build,
    const std::function<bool(double, double)>& improper,
    const std::vector<Vector>& probes, const Tolerances& tol,
    const std::string& names = "alpha1,alpha2") {
  for (double a : grid)
    for (double b : grid) {
      const bool got = finds_not_exists(build(a, b), probes, tol);
      const bool want = improper(a, b);
      rep.expect_true(got == want, names + "=" + format_real(a) + "," + format_real(b),
                      want ? "improper" : "proper", got ? "improper" : "proper");
    }
}

inline const std::vector<double>& parameter_grid() {
  static const std::vector<double> g{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  return g;
}

}  // namespace gallery
}  // namespace ccmap
