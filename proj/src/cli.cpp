#include "lpplab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lpplab/dlpp.hpp"
#include "lpplab/errors.hpp"
#include "lpplab/io.hpp"
#include "lpplab/landscape.hpp"
#include "lpplab/lpp.hpp"
#include "lpplab/mc.hpp"
#include "lpplab/pitman.hpp"
#include "lpplab/verify.hpp"

namespace lpplab::cli {

namespace {

struct Options {
  std::uint64_t seed = 1;
  std::string grid = "0:1:1001";
  int lines = 2;
  double variance = 1.0;
  double tol = 1e-9;
  std::string out;
  std::size_t cases = 50;
  std::size_t replicates = 1000;

  std::string env_path;
  std::string array_path;
  std::string starts;
  std::string ends;
  bool optimizer = false;
  int split_line = 0;
  std::string transform = "melon";
  double shift = 0.0;
  bool has_shift = false;
  std::string op;
  double time = 1.0;
  bool has_time = false;
  std::string rows_i;
  std::string rows_j;
  int star_i = 0;
  int star_j = 0;
  int star_k = 0;
  std::size_t columns = 0;
  std::string profile_lines;
  std::string spatial;
  std::string scales;
  double a1 = 0.0;
  double a2 = -1.0;
  std::string test = "pitman";
  double grid_step = 1e-4;
  double horizon = 1.0;
  std::string starts_x = "0,0.1";
  std::string window = "1.0:1.25";
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::kInvalidArgument, "not a number: " + s);
  }
  require(used == s.size(), ErrorKind::kInvalidArgument, "not a number: " + s);
  return v;
}

int to_int(const std::string& s) {
  const double v = to_double(s);
  require(v == static_cast<int>(v), ErrorKind::kInvalidArgument, "not an integer: " + s);
  return static_cast<int>(v);
}

std::vector<double> doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) out.push_back(to_double(item));
  return out;
}

std::vector<int> ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split(s, ',')) out.push_back(to_int(item));
  return out;
}

Grid parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  require(parts.size() == 3, ErrorKind::kInvalidArgument, "grid must be a:b:m");
  const int m = to_int(parts[2]);
  require(m >= 2, ErrorKind::kInvalidArgument, "grid needs at least two points");
  return Grid::uniform(to_double(parts[0]), to_double(parts[1]), static_cast<std::size_t>(m));
}

// "t:line,t:line"
std::vector<PointOnLine> parse_points(const std::string& spec) {
  std::vector<PointOnLine> out;
  for (const auto& item : split(spec, ',')) {
    const auto parts = split(item, ':');
    require(parts.size() == 2, ErrorKind::kInvalidArgument, "points are time:line");
    out.push_back({to_double(parts[0]), to_int(parts[1])});
  }
  require(!out.empty(), ErrorKind::kInvalidArgument, "no points given");
  return out;
}

Interval parse_interval(const std::string& spec) {
  const auto parts = split(spec, ':');
  require(parts.size() == 2, ErrorKind::kInvalidArgument, "interval must be lo:hi");
  return {to_double(parts[0]), to_double(parts[1])};
}

class Emitter {
 public:
  Emitter(const Options& o, std::ostream& out) : path_(o.out), out_(out) {}

  void emit(const std::string& text) {
    if (path_.empty()) {
      out_ << text;
    } else {
      write_text_file(path_, text);
    }
  }

 private:
  std::string path_;
  std::ostream& out_;
};

std::string with_config_header(const Json& config, const std::string& csv) {
  return "# config: " + config.dump() + "\n" + csv;
}

Environment require_env(const Options& o) {
  require(!o.env_path.empty(), ErrorKind::kInvalidArgument, "--env is required");
  return load_environment(o.env_path);
}

int cmd_sample(const Options& o, const Json& config, std::ostream& out) {
  const Environment env =
      sample_brownian_env(parse_grid(o.grid), o.lines, o.variance, Seed{o.seed, 0});
  Emitter(o, out).emit(json_of(env, config).dump() + "\n");
  return kOk;
}

int cmd_lpp(const Options& o, const Json& config, std::ostream& out) {
  const Environment env = require_env(o);
  EndpointTuple ep{parse_points(o.starts), parse_points(o.ends)};
  Json j{{"config", config}, {"endpoints", json_of(ep)}};
  j["value"] = json_of(multipoint_lpp(env, ep));
  if (o.optimizer) j["optimizer"] = json_of(rightmost_optimizer(env, ep));
  if (o.split_line > 0) {
    const auto check = metric_composition_check(env, ep, o.split_line);
    j["composition"] = {{"direct", json_of(check.direct)},
                        {"composed", json_of(check.composed)},
                        {"abs_diff", check.abs_diff}};
  }
  Emitter(o, out).emit(j.dump(2) + "\n");
  return kOk;
}

Environment transform(const Environment& env, const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const int n = env.line_count();
  if (name == "melon") return apply_w_tau(env, Permutation::reversal(n));
  if (name == "sigma") return apply_sigma(env, to_int(arg));
  if (name == "word") {
    const auto w = ints(arg);
    return apply_word(env, w);
  }
  if (name == "tau") return apply_w_tau(env, Permutation(ints(arg)));
  if (name == "tau-ij") {
    const auto v = ints(arg);
    require(v.size() == 2, ErrorKind::kInvalidArgument, "tau-ij takes i,j");
    return w_tau_ij(env, v[0], v[1]);
  }
  if (name == "tau-I") return w_tau_I(env, ints(arg));
  fail(ErrorKind::kInvalidArgument, "unknown transform " + name);
}

int cmd_pitman(const Options& o, const Json& config, std::ostream& out) {
  Environment env = require_env(o);
  if (o.has_shift) env = env.recentered(o.shift);
  Emitter(o, out).emit(json_of(transform(env, o.transform), config).dump() + "\n");
  return kOk;
}

int cmd_dlpp(const Options& o, const Json& config, std::ostream& out) {
  Json j{{"config", config}};
  if (o.op == "lpp" || o.op == "star" || o.op == "wg") {
    require(!o.array_path.empty(), ErrorKind::kInvalidArgument, "--array is required");
    const LatticeArray g = array_from_json(read_json_file(o.array_path));
    if (o.op == "lpp") {
      j["value"] = json_of(array_lpp(g, ints(o.rows_i), ints(o.rows_j)));
    } else if (o.op == "star") {
      j["value"] = json_of(star_lpp(g, o.star_i, o.star_j, o.star_k));
    } else {
      j["array"] = json_of(array_wg(g));
    }
  } else if (o.op == "side-to-side" || o.op == "gt" || o.op == "discretize") {
    const Environment env = require_env(o);
    const double t = o.has_time ? o.time : env.grid().back();
    if (o.op == "side-to-side") {
      j["array"] = json_of(side_to_side_array(env, t));
    } else if (o.op == "gt") {
      const GTPattern x = gt_pattern(env, t);
      j["pattern"] = json_of(x);
      j["interlacing_violation"] = x.interlacing_violation();
    } else {
      require(o.columns >= 1, ErrorKind::kInvalidArgument, "--columns is required");
      j["array"] = json_of(discretize(env, t, o.columns));
    }
  } else {
    fail(ErrorKind::kInvalidArgument, "unknown dlpp operation " + o.op);
  }
  Emitter(o, out).emit(j.dump(2) + "\n");
  return kOk;
}

int cmd_profile(const Options& o, const Json& config, std::ostream& out) {
  const Environment env = require_env(o);
  DifferenceProfile prof;
  if (!o.spatial.empty()) {
    const auto x = doubles(o.spatial);
    require(x.size() == 2, ErrorKind::kInvalidArgument, "--spatial takes x1,x2");
    prof = difference_profile_spatial(env, x[0], x[1]);
  } else {
    const auto l = ints(o.profile_lines.empty() ? "1,2" : o.profile_lines);
    require(l.size() == 2, ErrorKind::kInvalidArgument, "--profile-lines takes i1,i2");
    prof = difference_profile_line(env, l[0], l[1]);
  }
  std::ostringstream csv;
  write_profile_csv(csv, prof);
  Emitter(o, out).emit(with_config_header(config, csv.str()));
  if (!o.out.empty()) {
    Json summary{{"config", config}, {"running_max_residual", prof.running_max_residual}};
    summary["support"] = Json::array();
    for (const auto& iv : prof.support) summary["support"].push_back({iv.lo, iv.hi});
    if (!o.scales.empty()) {
      const auto dim = support_dimension(prof, doubles(o.scales));
      summary["box_counts"] = dim.counts;
      summary["slope"] = dim.slope ? Json(*dim.slope) : Json(nullptr);
    }
    out << summary.dump(2) << "\n";
  }
  return kOk;
}

int cmd_two_wedge(const Options& o, const Json& config, std::ostream& out) {
  const Environment env = require_env(o);
  const TwoWedgeResult r = two_wedge(env, o.a1, o.a2);
  std::ostringstream csv;
  write_two_wedge_csv(csv, r);
  Emitter(o, out).emit(with_config_header(config, csv.str()));
  if (!o.out.empty()) {
    out << Json{{"tau", r.tau},
                {"crossed", r.crossed},
                {"monotonicity_violation", r.monotonicity_violation},
                {"decomposition_error", r.decomposition_error}}
               .dump(2)
        << "\n";
  }
  return kOk;
}

std::string ledger(const Json& config, const std::vector<TestReport>& reports) {
  std::ostringstream csv;
  write_ledger_header(csv);
  for (const auto& r : reports) write_ledger_row(csv, r);
  return with_config_header(config, csv.str());
}

int finish_reports(const Options& o, const Json& config, const std::vector<TestReport>& reports,
                   std::ostream& out) {
  Emitter(o, out).emit(ledger(config, reports));
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  return ok ? kOk : kVerificationFailed;
}

int cmd_verify(const Options& o, const Json& config, std::ostream& out) {
  require(o.cases >= 1, ErrorKind::kInvalidArgument, "--cases must be positive");
  return finish_reports(o, config, verify::run_identity_suite(Seed{o.seed, 0}, o.cases), out);
}

int cmd_montecarlo(const Options& o, const Json& config, std::ostream& out) {
  const Seed seed{o.seed, 0};
  std::vector<TestReport> reports;
  if (o.test == "pitman") {
    reports.push_back(pitman_2mx_test(o.grid_step, o.replicates, seed));
  } else if (o.test == "pitman-calibration") {
    reports.push_back(pitman_2mx_calibration(o.replicates, seed));
  } else if (o.test == "gue") {
    reports.push_back(gue_minors_test(o.lines, o.horizon, o.replicates, seed, o.grid_step));
  } else if (o.test == "main-comparison") {
    MainComparisonConfig c;
    c.env_lines = o.lines;
    c.starts = doubles(o.starts_x);
    c.window = parse_interval(o.window);
    c.horizon = o.horizon;
    c.grid_step = o.grid_step;
    c.variance = o.variance;
    c.replicates = o.replicates;
    const auto r = main_comparison_stats(c, seed);
    double worst = 0.0;
    for (double v : r.variance_ratio) worst = std::max(worst, std::abs(v - 1.0));
    reports.push_back(make_report("main-comparison-variance", worst, 0.15, r.increments, seed, 0.0));
  } else {
    fail(ErrorKind::kInvalidArgument, "unknown test " + o.test);
  }
  return finish_reports(o, config, reports, out);
}

int exit_code(ErrorKind kind) {
  return kind == ErrorKind::kCapacity ? kCapacity : kInvalid;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Semi-discrete last passage percolation toolkit", "lpplab"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "root seed");
    sub->add_option("--grid", o.grid, "grid a:b:m");
    sub->add_option("--lines", o.lines, "number of lines");
    sub->add_option("--variance", o.variance, "line variance");
    sub->add_option("--tol", o.tol, "tolerance");
    sub->add_option("--out", o.out, "output path");
    sub->add_option("--cases", o.cases, "instances per identity check");
    sub->add_option("--replicates", o.replicates, "Monte Carlo replicates");
  };
  auto* sample = app.add_subcommand("sample", "sample a Brownian environment");
  auto* lpp = app.add_subcommand("lpp", "last passage values and optimizers");
  auto* pitman = app.add_subcommand("pitman", "apply a Pitman transform");
  auto* dlpp = app.add_subcommand("dlpp", "lattice array operations");
  auto* profile = app.add_subcommand("profile", "difference profiles");
  auto* wedge = app.add_subcommand("two-wedge", "two-wedge decomposition");
  auto* verify_cmd = app.add_subcommand("verify", "deterministic identity suite");
  auto* mc = app.add_subcommand("montecarlo", "distributional tests");
  for (auto* sub : {sample, lpp, pitman, dlpp, profile, wedge, verify_cmd, mc}) common(sub);

  for (auto* sub : {lpp, pitman, dlpp, profile, wedge}) sub->add_option("--env", o.env_path, "environment JSON");
  lpp->add_option("--starts", o.starts, "start points t:line,...")->required();
  lpp->add_option("--ends", o.ends, "end points t:line,...")->required();
  lpp->add_flag("--optimizer", o.optimizer, "also emit the rightmost optimizer");
  lpp->add_option("--split-line", o.split_line, "check the composition law across this line");
  pitman->add_option("--transform", o.transform,
                     "melon | sigma:i | word:i,j,... | tau:p1,p2,... | tau-ij:i,j | tau-I:i1,i2,...");
  pitman->add_option("--shift", o.shift, "recentre at this time first")->each([&](const std::string&) {
    o.has_shift = true;
  });
  dlpp->add_option("--op", o.op, "lpp | star | wg | side-to-side | gt | discretize")->required();
  dlpp->add_option("--array", o.array_path, "array JSON");
  dlpp->add_option("--I", o.rows_i, "start rows, bottom first");
  dlpp->add_option("--J", o.rows_j, "end rows, bottom first");
  dlpp->add_option("--i", o.star_i, "star start row");
  dlpp->add_option("--j", o.star_j, "star end row");
  dlpp->add_option("--k", o.star_k, "star path count");
  dlpp->add_option("--columns", o.columns, "columns for discretize");
  dlpp->add_option("--time", o.time, "end time")->each([&](const std::string&) { o.has_time = true; });
  profile->add_option("--profile-lines", o.profile_lines, "line starts i1,i2");
  profile->add_option("--spatial", o.spatial, "spatial starts x1,x2");
  profile->add_option("--scales", o.scales, "box sizes for the dimension estimate");
  wedge->add_option("--a1", o.a1, "first wedge height");
  wedge->add_option("--a2", o.a2, "second wedge height");
  mc->add_option("--test", o.test, "pitman | pitman-calibration | gue | main-comparison");
  mc->add_option("--grid-step", o.grid_step, "grid step");
  mc->add_option("--horizon", o.horizon, "time horizon");
  mc->add_option("--starts", o.starts_x, "spatial starts for main-comparison");
  mc->add_option("--window", o.window, "increment window lo:hi");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "invalid-argument", e.what());
    return kInvalid;
  }

  Json config;
  config["command"] = app.get_subcommands().front()->get_name();
  config["args"] = args;
  config["seed"] = o.seed;
  try {
    if (sample->parsed()) return cmd_sample(o, config, out);
    if (lpp->parsed()) return cmd_lpp(o, config, out);
    if (pitman->parsed()) return cmd_pitman(o, config, out);
    if (dlpp->parsed()) return cmd_dlpp(o, config, out);
    if (profile->parsed()) return cmd_profile(o, config, out);
    if (wedge->parsed()) return cmd_two_wedge(o, config, out);
    if (verify_cmd->parsed()) return cmd_verify(o, config, out);
    if (mc->parsed()) return cmd_montecarlo(o, config, out);
  } catch (const LabError& e) {
    report_error(err, to_string(e.kind()), e.what());
    return exit_code(e.kind());
  }
  return kInvalid;
}

}  // namespace lpplab::cli
