// ccmap: benchmarks, gallery verification, circumcenters of point files,
// domain probes and iterate traces.
//
// Exit codes: 0 success or match, 1 usage or I/O error, 2 verification or
// benchmark mismatch.

#include <ccmap/gallery.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using ccmap::format_csv;
using ccmap::format_real;
using ccmap::Vector;
using json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kMismatch = 2;

enum class Format { Csv, JsonLines };

struct RunConfig {
  std::string scenario = "all";
  std::optional<double> epsilon;
  std::size_t max_iter = 10000;
  std::uint64_t seed = 0;
  std::string output_path;
  Format format = Format::Csv;
};

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Vector parse_point(const std::string& line, const std::string& where) {
  std::vector<double> xs;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception&) {
      throw usage_error(where + ": not a number: '" + field + "'");
    }
    if (field.find_first_not_of(" \t\r", used) != std::string::npos)
      throw usage_error(where + ": trailing characters in '" + field + "'");
    xs.push_back(v);
  }
  if (xs.empty()) throw usage_error(where + ": empty point");
  Vector p(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) p(static_cast<Eigen::Index>(i)) = xs[i];
  return p;
}

// One point per line, comma-separated; '#' starts a comment.
std::vector<Vector> read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open " + path);
  std::vector<Vector> pts;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    pts.push_back(parse_point(line, path + ":" + std::to_string(n)));
    if (pts.back().size() != pts.front().size())
      throw usage_error(path + ":" + std::to_string(n) + ": dimension differs from first point");
  }
  if (pts.empty()) throw usage_error(path + ": no points");
  return pts;
}

// Writes to --out when given, else stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw usage_error("cannot write " + path);
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    os().flush();
    if (!os()) throw usage_error("write failed");
  }

 private:
  std::ofstream file_;
};

std::vector<ccmap::BenchmarkGeometry> bench_geometries(const std::string& name) {
  if (name == "all") return {ccmap::table1_geometry(), ccmap::table2_geometry()};
  if (name == "table1-line-plane") return {ccmap::table1_geometry()};
  if (name == "table2-plane-plane") return {ccmap::table2_geometry()};
  throw usage_error("bench: scenario must be table1-line-plane, table2-plane-plane or all");
}

int cmd_bench(const RunConfig& cfg, const std::optional<Vector>& x0) {
  const auto geoms = bench_geometries(cfg.scenario);
  Sink out(cfg.output_path);
  bool all_match = true;
  if (cfg.format == Format::Csv)
    out.os() << "scenario,method,expected,iterations,epsilon,window_lo,window_hi,"
                "first_step_error,final_error,stop_reason,match\n";
  for (const auto& g : geoms) {
    if (x0 && x0->size() != g.x0.size()) throw usage_error("bench: --x0 has the wrong dimension");
    const auto res = ccmap::run_benchmark(g, cfg.epsilon, cfg.max_iter, x0);
    all_match = all_match && res.match();
    for (const auto& r : res.rows) {
      const std::string iters = r.got ? std::to_string(*r.got) : "";
      if (cfg.format == Format::Csv) {
        out.os() << g.name << ',' << r.method << ',' << r.expected << ',' << iters << ','
                 << format_real(res.epsilon) << ',' << format_real(r.window.lo) << ','
                 << format_real(r.window.hi) << ',' << format_real(r.first_step_error) << ','
                 << format_real(r.final_error) << ',' << ccmap::to_string(r.stop_reason) << ','
                 << (r.match() ? "true" : "false") << '\n';
      } else {
        json j{{"scenario", g.name},
               {"method", r.method},
               {"expected", r.expected},
               {"iterations", r.got ? json(*r.got) : json(nullptr)},
               {"epsilon", res.epsilon},
               {"epsilon_calibrated", !res.epsilon_overridden},
               {"window", {r.window.lo, r.window.hi}},
               {"first_step_error", r.first_step_error},
               {"final_error", r.final_error},
               {"stop_reason", ccmap::to_string(r.stop_reason)},
               {"match", r.match()}};
        out.os() << j.dump() << '\n';
      }
    }
  }
  out.finish();
  return all_match ? kOk : kMismatch;
}

std::vector<const ccmap::Scenario*> selected_scenarios(const std::string& name) {
  std::vector<const ccmap::Scenario*> out;
  if (name == "all") {
    for (const auto& s : ccmap::catalog()) out.push_back(&s);
  } else {
    try {
      out.push_back(&ccmap::find_scenario(name));
    } catch (const ccmap::unknown_scenario_error& e) {
      throw usage_error(e.what());
    }
  }
  return out;
}

int cmd_verify(const RunConfig& cfg, unsigned threads) {
  const auto scenarios = selected_scenarios(cfg.scenario);
  std::vector<ccmap::VerificationReport> reports(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < scenarios.size();)
      reports[i] = ccmap::verify(*scenarios[i], cfg.seed);
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(threads, scenarios.size()); ++t)
    pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  Sink out(cfg.output_path);
  bool all_pass = true;
  if (cfg.format == Format::Csv)
    out.os() << "scenario,kind,pass,checks,skipped,failures,max_deviation,first_failure\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    all_pass = all_pass && r.pass();
    if (cfg.format == Format::Csv) {
      std::string first;
      if (!r.failures.empty()) {
        const auto& f = r.failures.front();
        first = f.input + ": expected " + f.expected + ", got " + f.got;
      }
      out.os() << r.scenario << ',' << to_string(scenarios[i]->kind) << ','
               << (r.pass() ? "true" : "false") << ',' << r.checks << ',' << r.skipped << ','
               << r.failures.size() << ',' << format_real(r.max_deviation) << ','
               << csv_quote(first) << '\n';
    } else {
      json fails = json::array();
      for (std::size_t k = 0; k < r.failures.size() && k < 20; ++k)
        fails.push_back({{"input", r.failures[k].input},
                         {"expected", r.failures[k].expected},
                         {"got", r.failures[k].got}});
      json j{{"scenario", r.scenario},
             {"kind", to_string(scenarios[i]->kind)},
             {"pass", r.pass()},
             {"checks", r.checks},
             {"skipped", r.skipped},
             {"max_deviation", r.max_deviation},
             {"failure_count", r.failures.size()},
             {"failures", fails}};
      out.os() << j.dump() << '\n';
    }
  }
  out.finish();
  return all_pass ? kOk : kMismatch;
}

int cmd_circumcenter(const RunConfig& cfg, const std::string& input) {
  const auto pts = read_point_file(input);
  const auto cc = ccmap::circumcenter(pts);
  Sink out(cfg.output_path);
  if (cfg.format == Format::Csv) {
    if (cc)
      out.os() << "EXISTS " << format_csv(cc.center) << " radius " << format_real(cc.radius)
               << '\n';
    else
      out.os() << "NOT_EXISTS\n";
  } else {
    json j{{"exists", cc.exists}};
    if (cc) {
      j["center"] = to_json(cc.center);
      j["radius"] = cc.radius;
    }
    out.os() << j.dump() << '\n';
  }
  out.finish();
  return kOk;
}

struct GridArgs {
  double x_min = -6, x_max = 6, y_min = -6, y_max = 6;
  std::size_t nx = 49, ny = 49;
  std::string domain;
};

int cmd_probe(const RunConfig& cfg, const GridArgs& ga) {
  if (cfg.scenario == "all") throw usage_error("probe: --scenario is required");
  const auto& s = *selected_scenarios(cfg.scenario).front();
  if (s.dim != 2) throw usage_error("probe: scenario " + s.name + " is not planar");
  const ccmap::DomainSpec* spec = nullptr;
  for (const auto& d : s.domains)
    if (ga.domain.empty() || d.label == ga.domain) {
      spec = &d;
      break;
    }
  if (!ga.domain.empty() && !spec) throw usage_error("probe: no domain labelled " + ga.domain);
  const ccmap::OperatorSet& set = spec ? spec->set : s.operator_set;

  std::vector<Vector> pts;
  if (ga.nx > 0 && ga.ny > 0)
    pts = ccmap::ProbeGrid{ga.x_min, ga.x_max, ga.y_min, ga.y_max, ga.nx, ga.ny}.points();
  const auto probe = ccmap::domain_probe(set, pts);

  Sink out(cfg.output_path);
  if (cfg.format == Format::Csv) out.os() << "x,y,in_domain\n";
  for (const auto& p : probe.samples) {
    if (cfg.format == Format::Csv)
      out.os() << format_real(p.x(0)) << ',' << format_real(p.x(1)) << ','
               << (p.in_domain ? 1 : 0) << '\n';
    else
      out.os() << json{{"x", p.x(0)}, {"y", p.x(1)}, {"in_domain", p.in_domain}}.dump() << '\n';
  }
  out.finish();
  return kOk;
}

int cmd_trace(const RunConfig& cfg, const std::string& method, const std::optional<Vector>& x0) {
  if (cfg.scenario == "all") throw usage_error("trace: --scenario is required");
  const auto geoms = bench_geometries(cfg.scenario);
  const auto& g = geoms.front();
  if (x0 && x0->size() != g.x0.size()) throw usage_error("trace: --x0 has the wrong dimension");
  const auto res = ccmap::run_benchmark(g, cfg.epsilon, cfg.max_iter, x0);

  std::size_t idx = res.traces.size();
  for (std::size_t i = 0; i < res.traces.size(); ++i)
    if (res.traces[i].method == method) idx = i;
  if (idx == res.traces.size())
    throw usage_error("trace: method must be DRM, MAP, CRM-S1 or CRM-S2");
  const auto& tr = res.traces[idx];
  const auto& row = res.rows[idx];
  // rows up to the iterate that meets the tolerance, or the whole run
  const std::size_t last = row.got ? *row.got : tr.iterates.size() - 1;

  Sink out(cfg.output_path);
  const auto n = tr.iterates.front().size();
  if (cfg.format == Format::Csv) {
    out.os() << 'k';
    for (Eigen::Index i = 1; i <= n; ++i) out.os() << ",x" << i;
    out.os() << ",residual\n";
  }
  for (std::size_t k = 0; k <= last; ++k) {
    const double residual = (tr.measured(k) - res.target).norm();
    if (cfg.format == Format::Csv)
      out.os() << k << ',' << format_csv(tr.iterates[k]) << ',' << format_real(residual) << '\n';
    else
      out.os() << json{{"k", k}, {"x", to_json(tr.iterates[k])}, {"residual", residual}}.dump()
               << '\n';
  }
  out.finish();
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.output_path, "Write output to this file instead of stdout");
  sub->add_option("--format", cfg.format, "Output format: csv or json-lines")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::Csv}, {"json-lines", Format::JsonLines}}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circumcenter mappings: benchmarks, gallery verification and domain probes"};
  app.require_subcommand(1);
  RunConfig cfg;

  std::string x0_text;
  auto* bench = app.add_subcommand(
      "bench",
      "Iteration counts of DRM, MAP, CRM-S1, CRM-S2 at the calibrated (or given) epsilon.\n"
      "CSV columns: scenario,method,expected,iterations,epsilon,window_lo,window_hi,\n"
      "first_step_error,final_error,stop_reason,match");
  bench->add_option("--scenario", cfg.scenario, "table1-line-plane, table2-plane-plane or all")
      ->capture_default_str();
  bench->add_option("--epsilon", cfg.epsilon, "Stopping tolerance instead of the calibrated one")
      ->check(CLI::PositiveNumber);
  bench->add_option("--max-iter", cfg.max_iter, "Iteration cap")->capture_default_str();
  bench->add_option("--x0", x0_text, "Starting point, comma-separated");
  add_common(bench, cfg);

  unsigned threads = 0;
  auto* verify = app.add_subcommand(
      "verify",
      "Verify gallery scenarios (all, one name, or selftest-corrupted).\n"
      "CSV columns: scenario,kind,pass,checks,skipped,failures,max_deviation,first_failure");
  verify->add_option("--scenario", cfg.scenario, "Scenario name or all")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "Seed for the random probes")->capture_default_str();
  verify->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  add_common(verify, cfg);

  std::string input;
  auto* circ = app.add_subcommand(
      "circumcenter",
      "Circumcenter of the points in a file (one per line, comma-separated, '#' comments).\n"
      "Prints 'EXISTS c1,...,cn radius r' or 'NOT_EXISTS'");
  circ->add_option("file", input, "Point file")->required();
  add_common(circ, cfg);

  GridArgs grid;
  auto* probe = app.add_subcommand(
      "probe",
      "Classify grid points of a planar scenario as in or out of dom CC_S.\n"
      "CSV columns: x,y,in_domain (1 or 0); nx or ny = 0 gives only the header");
  probe->add_option("--scenario", cfg.scenario, "Scenario name")->required();
  probe->add_option("--domain", grid.domain, "Domain label, e.g. S1 or S2 (default: first)");
  probe->add_option("--x-min", grid.x_min)->capture_default_str();
  probe->add_option("--x-max", grid.x_max)->capture_default_str();
  probe->add_option("--y-min", grid.y_min)->capture_default_str();
  probe->add_option("--y-max", grid.y_max)->capture_default_str();
  probe->add_option("--nx", grid.nx, "Grid columns")->capture_default_str();
  probe->add_option("--ny", grid.ny, "Grid rows")->capture_default_str();
  add_common(probe, cfg);

  std::string method = "CRM-S1";
  auto* trace = app.add_subcommand(
      "trace",
      "Iterates of one method on a benchmark until it meets the tolerance.\n"
      "CSV columns: k,x1,...,xn,residual (distance of the measured point to the solution)");
  trace->add_option("--scenario", cfg.scenario, "table1-line-plane or table2-plane-plane")
      ->required();
  trace->add_option("--method", method, "DRM, MAP, CRM-S1 or CRM-S2")->capture_default_str();
  trace->add_option("--epsilon", cfg.epsilon, "Stopping tolerance instead of the calibrated one")
      ->check(CLI::PositiveNumber);
  trace->add_option("--max-iter", cfg.max_iter, "Iteration cap")->capture_default_str();
  trace->add_option("--x0", x0_text, "Starting point, comma-separated");
  add_common(trace, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (cfg.max_iter < 1) throw usage_error("--max-iter must be >= 1");
    std::optional<Vector> x0;
    if (!x0_text.empty()) x0 = parse_point(x0_text, "--x0");
    if (*bench) return cmd_bench(cfg, x0);
    if (*verify) return cmd_verify(cfg, threads);
    if (*circ) return cmd_circumcenter(cfg, input);
    if (*probe) return cmd_probe(cfg, grid);
    if (*trace) return cmd_trace(cfg, method, x0);
  } catch (const std::exception& e) {
    std::cerr << "ccmap: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
