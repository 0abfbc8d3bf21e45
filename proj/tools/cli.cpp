#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hcube/bounds.hpp"
#include "hcube/error.hpp"
#include "hcube/extremal.hpp"
#include "hcube/io.hpp"
#include "hcube/special.hpp"
#include "hcube/verify.hpp"

namespace hcube::cli {

namespace {

struct Options {
  std::optional<double> x, eps, q;
  std::vector<int> n;
  std::optional<int> r;
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "json";
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw Usage(std::string("missing required flag ") + flag);
  return *v;
}

int need_one(const std::vector<int>& v, const char* flag) {
  if (v.size() != 1) throw Usage(std::string("flag ") + flag + " takes exactly one value here");
  return v.front();
}

std::string human(double v) { return format_number(v, kHumanDigits); }

// Writes to --out when given, else to `out`. Unwritable paths are input errors.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}

  std::ostream& stream() { return path_.empty() ? fallback_ : buffer_; }

  void commit() {
    if (path_.empty()) return;
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw Usage("cannot open '" + path_ + "' for writing");
    f << buffer_.str();
    if (!f) throw Usage("failed writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ostringstream buffer_;
};

using ScalarFn = std::function<double(const Options&)>;

const std::map<std::string, ScalarFn>& scalar_functions() {
  static const std::map<std::string, ScalarFn> fns{
      {"H", [](const Options& o) { return binary_entropy(need(o.x, "--x")); }},
      {"Hinv", [](const Options& o) { return inv_binary_entropy(need(o.x, "--x")); }},
      {"y", [](const Options& o) { return y_coupling(need(o.x, "--x"), need(o.eps, "--eps")); }},
      {"Phi", [](const Options& o) { return big_phi(need(o.x, "--x"), need(o.eps, "--eps")); }},
      {"phi", [](const Options& o) { return phi_eps(need(o.x, "--x"), need(o.eps, "--eps")); }},
      {"phi_prime", [](const Options& o) { return phi_prime(need(o.x, "--x"), need(o.eps, "--eps")); }},
      {"psi2q", [](const Options& o) { return psi_2q(need(o.x, "--x"), need(o.eps, "--eps"), need(o.q, "--q")); }},
      {"kappa2q",
       [](const Options& o) { return kappa_2q(need(o.x, "--x"), need(o.eps, "--eps"), need(o.q, "--q")); }},
      {"C", [](const Options& o) { return log_sobolev_C(need(o.x, "--x")); }},
      {"mgl_psi", [](const Options& o) { return mgl_psi(need(o.x, "--x"), need(o.eps, "--eps")); }},
      {"x_threshold", [](const Options& o) { return x_threshold(need(o.q, "--q"), need(o.eps, "--eps")); }},
      {"eps_threshold", [](const Options& o) { return eps_threshold(need(o.q, "--q")); }},
  };
  return fns;
}

const ScalarFn& scalar_function(const std::string& name) {
  const auto& fns = scalar_functions();
  const auto it = fns.find(name);
  if (it == fns.end()) {
    std::string known;
    for (const auto& [k, _] : fns) known += (known.empty() ? "" : ", ") + k;
    throw Usage("unknown function '" + name + "'; expected one of " + known);
  }
  return it->second;
}

std::string read_input(const std::string& input) {
  if (!input.empty() && input.front() == '{') return input;
  if (input == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream f(input, std::ios::binary);
  if (!f) throw Usage("cannot read '" + input + "'");
  return {std::istreambuf_iterator<char>(f), {}};
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string json_field(const std::string& key, const std::string& value) { return "\"" + key + "\":" + value; }

int cmd_eval(const Options& o, const std::string& fn, std::ostream& out) {
  const double v = scalar_function(fn)(o);
  if (o.format == "json") {
    out << '{' << json_field("fn", "\"" + fn + "\"") << ',' << json_field("value", format_number(v, kMachineDigits))
        << "}\n";
  } else {
    out << human(v) << '\n';
  }
  return kOk;
}

int cmd_check(const Options& o, const std::string& input, const std::string& which, std::ostream& out,
              std::ostream& err) {
  const CubeFunction f = parse_cube_function(read_input(input));
  std::vector<std::string> names;
  if (which != "all") names = split_list(which);
  const std::vector<CheckReport> reports = run_checks(f, o.eps.value_or(0.1), o.q.value_or(2.0), names);
  Sink sink(o.out, out);
  if (o.format == "csv") sink.stream() << check_report_csv_header() << '\n';
  int failed = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const CheckReport& r : reports) {
    sink.stream() << (o.format == "csv" ? check_report_csv_row(r) : check_report_json(r)) << '\n';
    if (!r.pass) ++failed;
    worst = std::min(worst, r.slack);
  }
  sink.commit();
  err << reports.size() - failed << '/' << reports.size() << " checks passed";
  if (!reports.empty()) err << ", min slack " << human(worst);
  err << '\n';
  return failed ? kCheckFailed : kOk;
}

struct SweepGrid {
  double from = 0.0;
  double to = 1.0;
  int steps = 101;
  std::vector<double> eps;
  std::vector<double> q;
};

int cmd_sweep(const Options& o, const std::string& fn, const SweepGrid& g, std::ostream& out) {
  const ScalarFn& f = scalar_function(fn);
  if (g.steps < 0) throw Usage("--steps must be >= 0");
  const std::vector<double> eps = g.eps.empty() ? std::vector<double>{o.eps.value_or(0.1)} : g.eps;
  const std::vector<double> qs = g.q.empty() ? std::vector<double>{o.q.value_or(2.0)} : g.q;
  Sink sink(o.out, out);
  std::ostream& s = sink.stream();
  s << "x,eps,q," << fn << '\n';
  for (double e : eps) {
    for (double q : qs) {
      for (int i = 0; i < g.steps; ++i) {
        const double x = g.steps == 1 ? g.from : g.from + (g.to - g.from) * i / (g.steps - 1);
        Options at = o;
        at.x = x;
        at.eps = e;
        at.q = q;
        s << format_number(x, kMachineDigits) << ',' << format_number(e, kMachineDigits) << ','
          << format_number(q, kMachineDigits) << ',' << format_number(f(at), kMachineDigits) << '\n';
      }
    }
  }
  sink.commit();
  return kOk;
}

int cmd_tightness(const Options& o, const std::string& kind_name, bool explicit_mode, std::ostream& out,
                  std::ostream& err) {
  const TightnessKind kind = parse_tightness_kind(kind_name);
  if (o.n.empty()) throw Usage("missing required flag --n");
  const double q = need(o.q, "--q"), eps = need(o.eps, "--eps"), x = need(o.x, "--x");
  Sink sink(o.out, out);
  if (o.format == "csv") sink.stream() << "kind,q,eps,x,n,rate,lhs,rhs,slack\n";
  for (int n : o.n) {
    const TightnessInstance t =
        tightness_instance(kind, q, eps, x, n, explicit_mode ? TightnessMode::Explicit : TightnessMode::Analytic);
    if (o.format == "csv") {
      const auto m = [](double v) { return format_number(v, kMachineDigits); };
      sink.stream() << kind_name << ',' << m(q) << ',' << m(eps) << ',' << m(x) << ',' << n << ',' << m(t.rate)
                    << ',' << m(t.lhs) << ',' << m(t.rhs) << ',' << m(t.slack) << '\n';
    } else {
      sink.stream() << tightness_json(t) << '\n';
    }
    err << kind_name << " n=" << n << " slack " << human(t.slack) << '\n';
  }
  sink.commit();
  return kOk;
}

std::vector<std::uint64_t> star_points(int n) {
  std::vector<std::uint64_t> p{0};
  for (int i = 0; i < n; ++i) p.push_back(std::uint64_t{1} << i);
  return p;
}

int cmd_eigen(const Options& o, const std::string& set, std::ostream& out, std::ostream& err) {
  const int n = need_one(o.n, "--n");
  if (n < 2 || n > std::min(dimension_cap(), 20)) throw Usage("--n must lie in [2, min(cap, 20)]");
  std::vector<std::pair<int, std::vector<std::uint64_t>>> sets;
  if (set == "star") {
    sets.emplace_back(1, star_points(n));
  } else if (set == "ball") {
    if (o.r) {
      sets.emplace_back(*o.r, hamming_ball_points(n, *o.r));
    } else {
      for (int r = 0; r < n; ++r) sets.emplace_back(r, hamming_ball_points(n, r));
    }
  } else {
    throw Usage("--set must be ball or star");
  }
  Sink sink(o.out, out);
  if (o.format == "csv") sink.stream() << check_report_csv_header() << '\n';
  int failed = 0;
  for (auto& [r, pts] : sets) {
    CheckReport rep = eigen_bound_check(n, std::move(pts));
    rep.extras.emplace_back("radius", r);
    sink.stream() << (o.format == "csv" ? check_report_csv_row(rep) : check_report_json(rep)) << '\n';
    if (!rep.pass) ++failed;
    err << set << " r=" << r << " lambda " << human(rep.lhs) << " bound " << human(rep.rhs) << '\n';
  }
  sink.commit();
  return failed ? kCheckFailed : kOk;
}

int cmd_suite(const Options& o, int samples, const std::string& models, int threads, std::ostream& out,
              std::ostream& err) {
  SuiteConfig c;
  c.seed = o.seed;
  if (!o.n.empty()) {
    const int top = need_one(o.n, "--n");
    c.n_range.clear();
    for (int n = 1; n <= top; ++n) c.n_range.push_back(n);
  }
  if (o.eps) c.eps_grid = {*o.eps};
  if (o.q) c.q_grid = {*o.q};
  c.samples_per_cell = samples;
  if (models != "all") {
    c.models.clear();
    for (const std::string& m : split_list(models)) c.models.push_back(parse_model(m));
  }
  c.threads = threads;
  const SuiteReport r = run_suite(c);
  Sink sink(o.out, out);
  sink.stream() << (o.format == "csv" ? trend_csv(r) : suite_report_json(r) + "\n");
  sink.commit();
  for (const CheckSummary& s : r.checks) {
    err << s.name << ": " << s.passed << '/' << s.total << " passed, min slack " << human(s.min_slack) << '\n';
  }
  err << (r.passed ? "suite passed" : "suite FAILED") << '\n';
  return r.passed ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noisy hypercontractivity toolkit on the boolean cube", "hcube"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--x", o.x, "entropy rate in [0, 1]");
    sub->add_option("--eps", o.eps, "noise in [0, 1/2]");
    sub->add_option("--q", o.q, "order q > 1");
    sub->add_option("--seed", o.seed, "suite seed");
    sub->add_option("--out", o.out, "write output to this path");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  std::string fn;
  auto* eval = app.add_subcommand("eval", "evaluate a scalar function");
  eval->add_option("fn", fn, "function name")->required();
  common(eval);
  o.format = "";

  std::string input, which = "all";
  auto* check = app.add_subcommand("check", "run inequality checks on a function");
  check->add_option("input", input, "JSON file, inline JSON, or - for stdin")->required();
  check->add_option("--which", which, "comma-separated check names or all");
  common(check);

  SweepGrid grid;
  auto* sweep = app.add_subcommand("sweep", "tabulate a scalar function over a grid");
  sweep->add_option("fn", fn, "function name")->required();
  sweep->add_option("--from", grid.from, "first x");
  sweep->add_option("--to", grid.to, "last x");
  sweep->add_option("--steps", grid.steps, "number of x points");
  sweep->add_option("--eps-list", grid.eps, "eps values")->delimiter(',');
  sweep->add_option("--q-list", grid.q, "q values")->delimiter(',');
  common(sweep);

  std::string kind;
  bool explicit_mode = false;
  auto* tight = app.add_subcommand("tightness", "build near-extremal sphere-mixture instances");
  tight->add_option("kind", kind, "renyi2 or nhc")->required();
  tight->add_option("--n", o.n, "dimensions, comma-separated")->delimiter(',');
  tight->add_flag("--explicit", explicit_mode, "materialize the function (n <= cap)");
  common(tight);

  std::string set = "ball";
  auto* eigen = app.add_subcommand("eigen", "largest eigenvalue of induced subgraphs vs the bound");
  eigen->add_option("--n", o.n, "dimension");
  eigen->add_option("--r", o.r, "ball radius; all radii below n when omitted");
  eigen->add_option("--set", set, "ball or star");
  common(eigen);

  int samples = 100, threads = 0;
  std::string models = "all";
  auto* suite = app.add_subcommand("suite", "seeded randomized verification suite");
  suite->add_option("--n", o.n, "largest dimension (suite runs 1..n)");
  suite->add_option("--samples", samples, "functions per cell and model");
  suite->add_option("--models", models, "comma-separated models or all");
  suite->add_option("--threads", threads, "worker threads, 0 for all cores");
  common(suite);

  std::vector<std::string> argv_store{"hcube"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*eval) {
      o.format = o.format.empty() ? "text" : o.format;
      return cmd_eval(o, fn, out);
    }
    if (o.format.empty()) o.format = "json";
    if (*check) return cmd_check(o, input, which, out, err);
    if (*sweep) return cmd_sweep(o, fn, grid, out);
    if (*tight) return cmd_tightness(o, kind, explicit_mode, out, err);
    if (*eigen) return cmd_eigen(o, set, out, err);
    if (*suite) return cmd_suite(o, samples, models, threads, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Usage& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace hcube::cli
