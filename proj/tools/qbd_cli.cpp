#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbd/coredec.hpp"
#include "qbd/counting.hpp"
#include "qbd/error.hpp"
#include "qbd/experiments.hpp"
#include "qbd/parallel.hpp"
#include "qbd/params.hpp"

#ifndef QBD_VERSION
#define QBD_VERSION "0.0.0"
#endif

using namespace qbd;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;

struct Config {
  std::string subcommand;
  long n = 1000;
  std::vector<long> ns;
  double alpha = 1.0;
  double eps = 0.1;
  double delta = 0.05;
  long replicates = 100;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  long m = 1;
  long p = 4;
  bool log = false;
  bool table = false;
  std::vector<long> gaps{0, 1, 10};
  int resamples = 1000;
};

void config_error(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

std::string csv_field(const Json& v) {
  std::string s;
  if (v.is_string()) s = v.get<std::string>();
  else if (v.is_boolean()) s = v.get<bool>() ? "1" : "0";
  else if (v.is_number_float()) {
    std::ostringstream o;
    o << std::setprecision(12) << v.get<double>();
    s = o.str();
  } else s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

// Rows share the keys of the first row; the output starts with a metadata record.
class Report {
 public:
  Report(const Config& c, std::string schema) : config_(c), schema_(std::move(schema)) {}

  void add(Json row) { rows_.push_back(std::move(row)); }

  void write() const {
    std::ostringstream o;
    if (config_.format == "json") {
      Json all = Json::array();
      all.push_back(meta());
      for (const auto& r : rows_) all.push_back(r);
      o << all.dump(1) << '\n';
    } else {
      o << "# qbd version=" << QBD_VERSION << " schema=" << schema_ << " seed=" << config_.seed
        << " config=" << meta()["config"].get<std::string>() << '\n';
      if (!rows_.empty()) {
        bool first = true;
        for (const auto& item : rows_.front().items()) {
          o << (first ? "" : ",") << item.key();
          first = false;
        }
        o << '\n';
      }
      for (const auto& r : rows_) {
        bool first = true;
        for (const auto& item : r.items()) {
          o << (first ? "" : ",") << csv_field(item.value());
          first = false;
        }
        o << '\n';
      }
    }
    if (config_.out.empty()) {
      std::cout << o.str();
    } else {
      std::ofstream f(config_.out);
      if (!f) config_error("cannot open output file " + config_.out);
      f << o.str();
    }
  }

 private:
  Json meta() const {
    Json c;
    c["subcommand"] = config_.subcommand;
    c["n"] = config_.ns.empty() ? Json(config_.n) : Json(config_.ns);
    c["alpha"] = config_.alpha;
    c["eps"] = config_.eps;
    c["delta"] = config_.delta;
    c["replicates"] = config_.replicates;
    c["seed"] = config_.seed;
    c["format"] = config_.format;
    if (config_.subcommand == "count") {
      c["m"] = config_.m;
      c["p"] = config_.p;
    }
    if (config_.subcommand == "gw-check") c["gap"] = config_.gaps;
    Json m;
    m["record"] = "meta";
    m["version"] = QBD_VERSION;
    m["schema"] = schema_;
    m["seed"] = config_.seed;
    m["config"] = c.dump();
    return m;
  }

  const Config& config_;
  std::string schema_;
  std::vector<Json> rows_;
};

void check_common(const Config& c) {
  if (c.replicates < 1) config_error("--replicates must be at least 1");
  if (!(c.alpha > 0)) config_error("--alpha must be positive");
  if (!(0 < c.delta && c.delta < c.eps && c.eps < 1.0 / 3)) config_error("need 0 < delta < eps < 1/3");
  if (c.format != "csv" && c.format != "json") config_error("--format must be csv or json");
  if (c.n < 0) config_error("--n must be nonnegative");
}

int run_count(const Config& c) {
  if (c.m < 0 || c.p < 0 || c.p % 2) config_error("need m >= 0 and an even p >= 0");
  if (!c.table) {
    if (c.log) {
      std::cout << std::setprecision(12) << log_count_simple(c.m, c.p) << '\n';
    } else {
      std::cout << count_simple(c.m, c.p).get_str() << '\n';
    }
    return kExitOk;
  }
  Report r(c, "count/v1");
  for (long m = 0; m <= c.m; ++m) {
    for (long ell = 1; 2 * ell <= c.p; ++ell) {
      Json row;
      row["m"] = m;
      row["ell"] = ell;
      if (c.log) row["count"] = log_count_simple(m, 2 * ell);
      else row["count"] = count_simple(m, 2 * ell).get_str();
      r.add(std::move(row));
    }
  }
  r.write();
  return kExitOk;
}

int run_sample(const Config& c) {
  if (c.p < 2 || c.p % 2) config_error("--p must be even and at least 2");
  const Rng base(c.seed);
  const auto rows = parallel_map(static_cast<std::size_t>(c.replicates), [&](std::size_t k) {
    Rng rng = base.split(k);
    const auto ltb = sample_treed_bridge(static_cast<int>(c.p), static_cast<int>(c.n), rng);
    const auto b = build_quadrangulation(ltb);
    Json row;
    row["replicate"] = k;
    row["seed"] = rng.seed();
    row["n"] = c.n;
    row["p"] = c.p;
    row["vertices"] = b.quad.map.vertex_count();
    row["rho"] = b.quad.rho;
    row["simple"] = boundary_walk(b.quad).simple;
    row["treed_bridge"] = ltb_to_text(ltb);
    row["map"] = to_text(b.quad.map);
    return row;
  });
  Report r(c, "sample/v1");
  for (const auto& row : rows) r.add(row);
  r.write();
  return kExitOk;
}

int run_validate(const Config& c) {
  if (c.p < 2 || c.p % 2) config_error("--p must be even and at least 2");
  const auto s = validate_samples(static_cast<int>(c.n), static_cast<int>(c.p), c.replicates, c.seed);
  Report r(c, "validate/v1");
  Json row;
  row["n"] = c.n;
  row["p"] = c.p;
  row["seed"] = c.seed;
  row["samples"] = s.samples;
  row["failures"] = s.failures;
  std::string messages;
  for (const auto& m : s.messages) messages += (messages.empty() ? "" : " | ") + m;
  row["messages"] = messages;
  r.add(std::move(row));
  r.write();
  for (const auto& m : s.messages) std::cerr << m << '\n';
  return s.failures == 0 ? kExitOk : kExitAssertion;
}

int run_core_stats(const Config& c) {
  if (c.n < 1) config_error("--n must be at least 1");
  Report r(c, "core-stats/v1");
  for (long n : c.ns.empty() ? std::vector<long>{c.n} : c.ns) {
    const auto s = core_statistics(n, c.alpha, static_cast<int>(c.replicates), c.seed);
    Json row;
    row["n"] = n;
    row["alpha"] = c.alpha;
    row["seed"] = c.seed;
    row["replicates"] = s.replicates;
    row["frac_cemetery"] = s.frac_cemetery;
    row["mean_area_ratio"] = s.mean_area_ratio;
    row["se_area_ratio"] = s.se_area_ratio;
    row["mean_perim_ratio"] = s.mean_perim_ratio;
    row["se_perim_ratio"] = s.se_perim_ratio;
    r.add(std::move(row));
  }
  r.write();
  return kExitOk;
}

int run_restrict_stats(const Config& c) {
  if (c.n < 1) config_error("--n must be at least 1");
  const auto records = restriction_experiment(c.n, c.alpha, c.eps, c.delta, c.replicates, c.seed);
  Report r(c, "restrict-stats/v1");
  bool all_ok = true;
  for (const auto& x : records) {
    Json row;
    row["n"] = x.n;
    row["alpha"] = x.alpha;
    row["eps"] = x.eps;
    row["delta"] = x.delta;
    row["seed"] = x.seed;
    row["outcome"] = x.ok ? "restriction" : "cemetery";
    row["r"] = x.r;
    row["p_right"] = x.p_right;
    row["p_in"] = x.p_in;
    row["p_left"] = x.p_left;
    row["area_restriction"] = x.area_restriction;
    row["good"] = x.good;
    row["S"] = x.S;
    row["S_ge"] = x.S_ge;
    row["S_eq"] = x.S_eq;
    row["M_low"] = x.M_low;
    row["M_high"] = x.M_high;
    row["bounds_ok"] = x.bounds_ok;
    if (x.ok && !x.bounds_ok) all_ok = false;
    r.add(std::move(row));
  }
  r.write();
  return all_ok ? kExitOk : kExitAssertion;
}

int run_tv(const Config& c) {
  const auto ns = c.ns.empty() ? std::vector<long>{c.n} : c.ns;
  Report r(c, "tv/v1");
  for (long n : ns) {
    if (n < 1) config_error("--n must be at least 1");
    const auto t = tv_experiment(n, c.alpha, c.eps, c.replicates, c.resamples, c.seed);
    Json row;
    row["n"] = t.n;
    row["p_n"] = t.p_n;
    row["eps"] = t.eps;
    row["samples"] = t.samples;
    row["tv"] = t.tv.estimate;
    row["tv_lower"] = t.tv.lower;
    row["tv_upper"] = t.tv.upper;
    row["distinct_simple"] = t.distinct_simple;
    row["distinct_core"] = t.distinct_core;
    row["cemetery_simple"] = t.cemetery_simple;
    row["cemetery_core"] = t.cemetery_core;
    r.add(std::move(row));
  }
  r.write();
  return kExitOk;
}

int run_gw_check(const Config& c) {
  Report r(c, "gw-check/v1");
  bool ok = true;
  for (long gap : c.gaps) {
    if (gap < 0) config_error("--gap must be nonnegative");
    Rng rng(Rng::derive_seed(c.seed, static_cast<std::uint64_t>(gap)));
    const auto s = gw_first_passage_simulation(gap, c.replicates, rng);
    const double derivative = gw_derivative_at_one(gap, 0);
    const double f0 = gw_generating_function(gap, 0, 0.0);
    const bool mean_ok = std::abs(s.mean - 1.0) <= 3 * s.standard_error + 1e-12;
    const bool discard_ok = s.discard_rate < 1e-4;
    const bool derivative_ok = std::abs(derivative - 1.0) <= 1e-3;
    ok = ok && mean_ok && discard_ok && derivative_ok;
    Json row;
    row["gap"] = gap;
    row["replicates"] = s.replicates;
    row["discarded"] = s.discarded;
    row["discard_rate"] = s.discard_rate;
    row["mean"] = s.mean;
    row["standard_error"] = s.standard_error;
    row["frac_zero"] = s.frac_zero;
    row["f_at_zero"] = f0;
    row["derivative_at_one"] = derivative;
    row["mean_ok"] = mean_ok;
    row["discard_ok"] = discard_ok;
    row["derivative_ok"] = derivative_ok;
    r.add(std::move(row));
  }
  r.write();
  return ok ? kExitOk : kExitAssertion;
}

int run_asymptotic_check(const Config& c) {
  Report r(c, "asymptotic-check/v1");
  struct Point {
    long m, ell;
    double tolerance;
  };
  std::vector<Point> points;
  for (long m = 100; m <= 1'000'000; m *= 10) points.push_back({m, static_cast<long>(std::sqrt(static_cast<double>(m))), -1});
  points.push_back({10'000, 100, 0.02});
  points.push_back({1'000'000, 1000, 0.005});
  bool ok = true;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto [m, ell, tolerance] = points[k];
    const double exact = log_count_simple(m, 2 * ell);
    const double asym = log_count_asymptotic(m, ell);
    const double error = std::abs(std::expm1(exact - asym));
    bool pass = tolerance < 0 || error <= tolerance;
    if (tolerance < 0) {
      pass = error < previous;
      previous = error;
    }
    ok = ok && pass;
    Json row;
    row["m"] = m;
    row["ell"] = ell;
    row["log_exact"] = exact;
    row["log_asymptotic"] = asym;
    row["relative_error"] = error;
    row["check"] = tolerance < 0 ? "monotone" : "tolerance";
    row["pass"] = pass;
    r.add(std::move(row));
  }
  r.write();
  return ok ? kExitOk : kExitAssertion;
}

int run_reglue_test(const Config& c) {
  if (c.n < 1) config_error("--n must be at least 1");
  const Rng base(c.seed);
  const auto records = parallel_map(static_cast<std::size_t>(c.replicates), [&](std::size_t k) {
    return reglue_trial(c.n, c.alpha, c.eps, base.split(k).seed());
  });
  Report r(c, "reglue-test/v1");
  bool ok = true;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& x = records[k];
    if (x.applicable && !(x.reconstructs && x.restriction_kept)) ok = false;
    Json row;
    row["replicate"] = k;
    row["seed"] = x.seed;
    row["applicable"] = x.applicable;
    row["reconstructs"] = x.reconstructs;
    row["restriction_kept"] = x.restriction_kept;
    row["complete"] = x.complete;
    row["endpoint_inside"] = x.endpoint_inside;
    row["filler"] = x.filler;
    row["filler_perimeter"] = x.filler_perimeter;
    r.add(std::move(row));
  }
  r.write();
  return ok ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrangulations with a boundary: sampling, counting, cores and restrictions"};
  app.set_version_flag("--version", QBD_VERSION);
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* sub, bool area, bool restriction) {
    sub->add_option("--replicates", c.replicates, "number of replicates")->capture_default_str();
    sub->add_option("--seed", c.seed, "64-bit seed")->capture_default_str();
    sub->add_option("--out", c.out, "output path (default stdout)");
    sub->add_option("--format", c.format, "csv or json")->capture_default_str();
    if (area) sub->add_option("--n", c.n, "area")->capture_default_str();
    sub->add_option("--alpha", c.alpha, "perimeter scale, p_n = 2 round(alpha sqrt(2n))")->capture_default_str();
    if (restriction) {
      sub->add_option("--eps", c.eps, "restriction window")->capture_default_str();
      sub->add_option("--delta", c.delta, "goodness margin")->capture_default_str();
    } else {
      sub->add_option("--eps", c.eps)->group("");
      sub->add_option("--delta", c.delta)->group("");
    }
  };

  std::vector<std::pair<CLI::App*, std::function<int()>>> subs;
  auto* count = app.add_subcommand("count", "exact count of simple-boundary quadrangulations");
  count->add_option("--m", c.m, "inner faces (table: maximum)")->required();
  count->add_option("--p", c.p, "perimeter (table: maximum)")->required();
  count->add_flag("--log", c.log, "natural log, 12 significant digits");
  count->add_flag("--table", c.table, "CSV table m,ell,count for m <= --m, 2 ell <= --p");
  common(count, false, false);
  subs.push_back({count, [&] { return run_count(c); }});

  auto* sample = app.add_subcommand("sample", "serialized pointed quadrangulations from random treed bridges");
  sample->add_option("--p", c.p, "perimeter")->required();
  common(sample, true, false);
  subs.push_back({sample, [&] { return run_sample(c); }});

  auto* validate = app.add_subcommand("validate", "invariant suite on sampled maps");
  validate->add_option("--p", c.p, "perimeter")->required();
  common(validate, true, false);
  subs.push_back({validate, [&] { return run_validate(c); }});

  auto* core_stats = app.add_subcommand("core-stats", "area and perimeter of the core");
  core_stats->add_option("--n", c.ns, "area (repeatable)")->expected(1, -1);
  common(core_stats, false, false);
  subs.push_back({core_stats, [&] { return run_core_stats(c); }});

  auto* restrict_stats = app.add_subcommand("restrict-stats", "restriction statistics and certificate bounds");
  common(restrict_stats, true, true);
  subs.push_back({restrict_stats, [&] { return run_restrict_stats(c); }});

  auto* tv = app.add_subcommand("tv", "total variation between restriction laws");
  tv->add_option("--n", c.ns, "area (repeatable)")->expected(1, -1);
  tv->add_option("--resamples", c.resamples, "bootstrap resamples")->capture_default_str();
  common(tv, false, true);
  subs.push_back({tv, [&] { return run_tv(c); }});

  auto* gw = app.add_subcommand("gw-check", "first-passage identity for labeled Galton-Watson trees");
  gw->add_option("--gap", c.gaps, "label gaps ell - r")->expected(1, -1)->capture_default_str();
  common(gw, false, false);
  subs.push_back({gw, [&] { return run_gw_check(c); }});

  auto* asym = app.add_subcommand("asymptotic-check", "exact versus asymptotic counts");
  common(asym, false, false);
  subs.push_back({asym, [&] { return run_asymptotic_check(c); }});

  auto* reglue = app.add_subcommand("reglue-test", "complement regluing and restriction invariance");
  common(reglue, true, true);
  subs.push_back({reglue, [&] { return run_reglue_test(c); }});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    for (auto& [sub, run] : subs) {
      if (!sub->parsed()) continue;
      c.subcommand = sub->get_name();
      check_common(c);
      return run();
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.kind() == ErrorKind::ConfigError || e.kind() == ErrorKind::PreconditionViolated) return kExitConfig;
    return kExitAssertion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
  return kExitConfig;
}
