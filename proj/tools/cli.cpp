#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <variant>

#include "fracproc/error.hpp"
#include "fracproc/etas.hpp"
#include "fracproc/fraccalc.hpp"
#include "fracproc/growth.hpp"
#include "fracproc/montecarlo.hpp"
#include "fracproc/processes.hpp"
#include "fracproc/specfun.hpp"

namespace fracproc::cli {

namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<double, long, std::string>;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// A result table; `meta` holds scalars that do not fit the rows.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  json meta = json::object();

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_double(*d);
  }
  if (const auto* l = std::get_if<long>(&c)) return *l;
  return std::get<std::string>(c);
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  return csv_field(std::get<std::string>(c));
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void write_json(const std::string& command, const Table& t, std::ostream& os) {
  json doc;
  doc["command"] = command;
  doc["columns"] = t.columns;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  doc["meta"] = t.meta;
  os << doc.dump(2) << '\n';
}

// Meta entries echoed on the diagnostic stream in CSV mode.
void write_meta_note(const Table& t, std::ostream& err) {
  for (const auto& [key, value] : t.meta.items()) err << "# " << key << " = " << value.dump() << '\n';
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 1) throw DomainError("need at least one sample");
  if (n == 1) return {lo};
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// Applies JSON defaults for one subcommand before flags are parsed.
void apply_config(CLI::App& sub, const json& section) {
  for (const auto& [key, value] : section.items()) {
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (!opt) throw CLI::ValidationError("config", "unknown key '" + key + "' for " + sub.get_name());
    if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
      opt->default_val(joined);
    } else if (value.is_string()) {
      opt->default_val(value.get<std::string>());
    } else if (value.is_boolean()) {
      opt->default_val(value.get<bool>() ? "true" : "false");
    } else {
      opt->default_val(value.dump());
    }
  }
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv)) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw DomainError(std::string(kSeedEnv) + " is not an unsigned integer");
    return v;
  }
  return 0;
}

struct Common {
  std::string format = "csv";
  std::string output;
  std::string config;
};

struct MlfArgs {
  double nu = 0.5;
  std::vector<double> x;
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t samples = 0;
};

struct MeanArgs {
  std::string process = "death";
  std::vector<double> nu{1.0, 0.7, 0.4};
  double rate = 1.0;
  long n0 = 1;
  double t_max = 5.0;
  std::size_t samples = 101;
};

struct PmfArgs {
  std::string process = "death";
  long n0 = 1;
  double rate = 1.0;
  double nu = 1.0;
  double t = 1.0;
  std::size_t k_max = 50;
  double dt = 1e-6;
};

struct SimulateArgs {
  std::string process = "death";
  long n0 = 1;
  double rate = 1.0;
  double nu = 1.0;
  double t = 1.0;
  std::size_t replicas = 100000;
  std::optional<std::uint64_t> seed;
  double step = 1e-3;
  unsigned threads = 1;
  long cap = 1000000;
  std::size_t samples = 11;
};

struct SolveArgs {
  double nu = 0.5;
  double c = -1.0;
  double n0 = 1.0;
  double t_max = 1.0;
  double step = 1e-3;
  std::size_t every = 1;
};

struct EtasArgs {
  double k = 0.2;
  double theta = 0.3;
  double t0 = 1.0;
  bool curve = false;
  std::string sign = "death";
  double n0 = 1.0;
  double t_max = 10.0;
  double step = 0.1;
};

struct FitArgs {
  std::string input;
  bool fit_n0 = false;
};

Table cmd_mlf(const MlfArgs& a) {
  const FractionalOrder nu(a.nu);
  std::vector<double> xs = a.x;
  if (a.samples > 0) {
    if (!(a.x_max >= a.x_min)) throw DomainError("mlf: --x-max must be >= --x-min");
    const auto grid = linspace(a.x_min, a.x_max, a.samples);
    xs.insert(xs.end(), grid.begin(), grid.end());
  }
  if (xs.empty()) throw DomainError("mlf: give --x or --samples with --x-min/--x-max");
  Table t;
  t.columns = {"x", "value", "est_abs_error", "branch"};
  for (double x : xs) {
    const MlfEvaluation e = mittag_leffler(nu, x);
    t.add({x, e.value, e.est_abs_error, std::string(to_string(e.branch_used))});
  }
  return t;
}

Table cmd_mean(const MeanArgs& a) {
  if (a.process != "death" && a.process != "birth") throw DomainError("mean: process must be death or birth");
  std::vector<FractionalOrder> orders;
  for (double v : a.nu) orders.emplace_back(v);
  if (!(a.t_max > 0.0)) throw DomainError("mean: --t-max must be positive");
  const auto times = linspace(0.0, a.t_max, a.samples);
  Table t;
  t.columns = {"nu", "t", "mean"};
  for (const FractionalOrder& nu : orders) {
    if (a.process == "death") {
      const DeathParams p(a.n0, a.rate, nu);
      for (double s : times) t.add({nu.value(), s, death_mean(p, s)});
    } else {
      const BirthParams p(a.n0, a.rate, nu);
      for (double s : times) t.add({nu.value(), s, birth_mean(p, s)});
    }
  }
  return t;
}

Table cmd_pmf(const PmfArgs& a) {
  const FractionalOrder nu(a.nu);
  Table t;
  if (a.process == "offspring") {
    const BirthParams p(a.n0, a.rate, nu);
    const OffspringProbability o = first_offspring_probability(p, a.dt);
    t.columns = {"dt", "exact", "leading_order", "ratio"};
    t.add({a.dt, o.exact, o.leading_order, o.exact / o.leading_order});
    return t;
  }
  Pmf pmf;
  if (a.process == "death") {
    pmf = death_pmf(DeathParams(a.n0, a.rate, nu), a.t);
  } else if (a.process == "birth") {
    pmf = birth_pmf(BirthParams(a.n0, a.rate, nu), a.t, a.k_max);
  } else {
    throw DomainError("pmf: process must be death, birth or offspring");
  }
  t.columns = {"state", "probability", "cumulative"};
  double cumulative = 0.0;
  for (std::size_t i = 0; i < pmf.probabilities.size(); ++i) {
    cumulative += pmf.probabilities[i];
    t.add({pmf.support_offset + static_cast<long>(i), pmf.probabilities[i], cumulative});
  }
  t.meta["tail_mass"] = pmf.tail_mass;
  t.meta["max_abs_error"] = pmf.max_abs_error;
  t.meta["mean_over_support"] = pmf.mean();
  return t;
}

Table cmd_simulate(const SimulateArgs& a, std::uint64_t seed) {
  const FractionalOrder nu(a.nu);
  const SubordinatorConfig cfg(nu, a.step);
  SimulationConfig sim;
  sim.replicas = a.replicas;
  sim.seed = RngSeed{seed};
  sim.threads = a.threads;
  sim.population_cap = a.cap;
  if (a.replicas < 1) throw DomainError("simulate: --replicas must be >= 1");
  if (!(a.t > 0.0)) throw DomainError("simulate: --t must be positive");

  Table t;
  t.meta["seed"] = seed;
  t.meta["replicas"] = a.replicas;
  if (a.process == "paths") {
    const BirthParams p(a.n0, a.rate, nu);
    const auto times = linspace(0.0, a.t, a.samples);
    const GrowthEnsemble e = sample_paths(p, times, cfg, sim);
    const auto exact = predict_mean(nu, a.rate, static_cast<double>(a.n0), times);
    t.columns = {"t", "mean", "standard_error", "lower90", "upper90", "exact_mean"};
    for (std::size_t i = 0; i < times.size(); ++i)
      t.add({times[i], e.mean[i], e.standard_error[i], e.lower[i], e.upper[i], exact[i]});
    t.meta["cap_hits"] = e.cap_hits;
    return t;
  }

  EmpiricalLaw law;
  std::optional<Pmf> exact;
  double exact_mean = 0.0;
  if (a.process == "death") {
    const DeathParams p(a.n0, a.rate, nu);
    law = simulate_death(p, a.t, cfg, sim);
    exact_mean = death_mean(p, a.t);
    try {
      exact = death_pmf(p, a.t);
    } catch (const PrecisionError&) {
    }
  } else if (a.process == "birth") {
    const BirthParams p(a.n0, a.rate, nu);
    law = simulate_birth(p, a.t, cfg, sim);
    exact_mean = birth_mean(p, a.t);
    try {
      exact = birth_pmf(p, a.t, law.counts.size() - 1);
    } catch (const PrecisionError&) {
    }
    t.meta["cap_hits"] = law.cap_hits;
  } else {
    throw DomainError("simulate: process must be death, birth or paths");
  }

  t.columns = {"state", "count", "empirical", "standard_error", "exact"};
  const Pmf emp = law.pmf();
  const auto se = law.standard_errors();
  for (std::size_t i = 0; i < law.counts.size(); ++i) {
    const long state = law.support_offset + static_cast<long>(i);
    const double ex = exact ? exact->at(state) : std::nan("");
    t.add({state, static_cast<long>(law.counts[i]), emp.probabilities[i], se[i], ex});
  }
  t.meta["empirical_mean"] = law.mean;
  t.meta["mean_standard_error"] = law.mean_standard_error;
  t.meta["exact_mean"] = exact_mean;
  if (exact) {
    const TestResult chi = chi_square_test(law.counts, exact->probabilities, exact->tail_mass);
    t.meta["chi_square"] = chi.statistic;
    t.meta["chi_square_df"] = chi.degrees_of_freedom;
    t.meta["chi_square_p"] = chi.p_value;
  }
  return t;
}

Table cmd_solve(const SolveArgs& a) {
  const FractionalRelaxation problem(FractionalOrder(a.nu), a.c, a.n0);
  if (a.every < 1) throw DomainError("solve: --every must be >= 1");
  const TimeGrid grid = TimeGrid::covering(a.t_max, a.step);
  const SampledFunction numeric = solve_relaxation(problem, grid);
  Table t;
  t.columns = {"t", "numeric", "exact", "abs_error"};
  for (std::size_t i = 0; i < grid.size(); i += a.every) {
    const double exact = problem.exact(grid[i]);
    t.add({grid[i], numeric.values[i], exact, std::abs(numeric.values[i] - exact)});
  }
  return t;
}

Table cmd_etas(const EtasArgs& a) {
  const EtasParams p(a.k, a.theta, a.t0);
  Table t;
  if (a.curve) {
    if (a.sign != "death" && a.sign != "birth") throw DomainError("etas: --sign must be death or birth");
    const RateSign sign = a.sign == "death" ? RateSign::DeathLike : RateSign::BirthLike;
    const SampledFunction c = rate_curve(p, a.n0, sign, TimeGrid::covering(a.t_max, a.step));
    t.columns = {"t", "rate"};
    for (std::size_t i = 0; i < c.grid.size(); ++i) t.add({c.grid[i], c.values[i]});
    return t;
  }
  const Regime regime = classify_regime(p);
  const std::optional<double> ratio = branching_ratio(p);
  t.columns = {"regime", "branching_ratio", "nu", "lambda"};
  Cell nu = std::string();
  Cell lambda = std::string();
  if (p.theta < 0.0) {
    const FractionalMapping m = to_fractional(p);
    nu = m.nu.value();
    lambda = m.lambda;
  }
  t.add({std::string(to_string(regime)), ratio ? Cell(*ratio) : Cell(std::string("divergent")), nu, lambda});
  return t;
}

GrowthObservation read_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("fit: cannot open input '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DomainError("fit: input is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,size") throw DomainError("fit: header must be 't,size', got '" + line + "'");
  std::vector<double> times;
  std::vector<double> sizes;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("fit: line " + std::to_string(lineno) + " lacks a comma");
    try {
      std::size_t used = 0;
      const std::string a = line.substr(0, comma);
      const std::string b = line.substr(comma + 1);
      times.push_back(std::stod(a, &used));
      if (used != a.size()) throw std::invalid_argument(a);
      sizes.push_back(std::stod(b, &used));
      if (used != b.size()) throw std::invalid_argument(b);
    } catch (const std::logic_error&) {
      throw DomainError("fit: line " + std::to_string(lineno) + " is not numeric");
    }
  }
  return GrowthObservation(std::move(times), std::move(sizes));
}

Table cmd_fit(const FitArgs& a) {
  const GrowthObservation obs = read_observations(a.input);
  FitOptions opts;
  opts.fit_n0 = a.fit_n0;
  const GrowthFit f = fit(obs, opts);
  Table t;
  t.columns = {"nu", "gamma", "n0", "sse", "converged"};
  t.add({f.nu.value(), f.gamma, f.n0, f.sse, static_cast<long>(f.converged)});
  t.meta["starts"] = f.starts;
  t.meta["converged_starts"] = f.converged_starts;
  return t;
}

void add_common(CLI::App& sub, Common& c) {
  sub.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub.add_option("--output,-o", c.output, "Write the table to this file instead of standard output");
  sub.add_option("--config", c.config, "JSON file of default parameter values");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional linear birth and death processes, Mittag-Leffler functions and the ETAS mapping"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Common common;
  MlfArgs mlf;
  MeanArgs mean;
  PmfArgs pmf;
  SimulateArgs simulate;
  SolveArgs solve;
  EtasArgs etas;
  FitArgs fit_args;

  auto* s_mlf = app.add_subcommand("mlf", "Mittag-Leffler E_nu(x). Columns: x,value,est_abs_error,branch");
  s_mlf->add_option("--nu", mlf.nu, "Order in (0, 1]")->capture_default_str();
  s_mlf->add_option("--x", mlf.x, "Argument(s)")->delimiter(',');
  s_mlf->add_option("--x-min", mlf.x_min, "Range start")->capture_default_str();
  s_mlf->add_option("--x-max", mlf.x_max, "Range end")->capture_default_str();
  s_mlf->add_option("--samples", mlf.samples, "Evenly spaced points on [x-min, x-max]");

  auto* s_mean = app.add_subcommand("mean", "Mean population n0 E_nu(-+rate t^nu). Columns: nu,t,mean");
  s_mean->add_option("process", mean.process, "death or birth")->check(CLI::IsMember({"death", "birth"}));
  s_mean->add_option("--nu", mean.nu, "Orders (comma separated)")->delimiter(',')->capture_default_str();
  s_mean->add_option("--rate,--mu,--gamma", mean.rate, "mu (death) or gamma (birth)")->capture_default_str();
  s_mean->add_option("--n0", mean.n0, "Initial population")->capture_default_str();
  s_mean->add_option("--t-max", mean.t_max, "Last time")->capture_default_str();
  s_mean->add_option("--samples", mean.samples, "Evenly spaced times on [0, t-max]")->capture_default_str();

  auto* s_pmf = app.add_subcommand(
      "pmf",
      "Exact state probabilities. Columns: state,probability,cumulative "
      "(offspring: dt,exact,leading_order,ratio)");
  s_pmf->add_option("process", pmf.process, "death, birth or offspring")
      ->check(CLI::IsMember({"death", "birth", "offspring"}));
  s_pmf->add_option("--n0", pmf.n0, "Initial population")->capture_default_str();
  s_pmf->add_option("--rate,--mu,--gamma", pmf.rate, "mu (death) or gamma (birth)")->capture_default_str();
  s_pmf->add_option("--nu", pmf.nu, "Order in (0, 1]")->capture_default_str();
  s_pmf->add_option("--t", pmf.t, "Time")->capture_default_str();
  s_pmf->add_option("--k-max", pmf.k_max, "Birth: states n0..n0+k-max")->capture_default_str();
  s_pmf->add_option("--dt", pmf.dt, "Offspring: time step")->capture_default_str();

  auto* s_sim = app.add_subcommand(
      "simulate",
      "Monte Carlo by subordination. Columns: state,count,empirical,standard_error,exact "
      "(paths: t,mean,standard_error,lower90,upper90,exact_mean)");
  s_sim->add_option("process", simulate.process, "death, birth or paths")
      ->check(CLI::IsMember({"death", "birth", "paths"}));
  s_sim->add_option("--n0", simulate.n0, "Initial population")->capture_default_str();
  s_sim->add_option("--rate,--mu,--gamma", simulate.rate, "Per-individual rate")->capture_default_str();
  s_sim->add_option("--nu", simulate.nu, "Order in (0, 1]")->capture_default_str();
  s_sim->add_option("--t", simulate.t, "Horizon")->capture_default_str();
  s_sim->add_option("--replicas", simulate.replicas, "Independent replicas")->capture_default_str();
  s_sim->add_option("--seed", simulate.seed, std::string("Master seed (default from ") + kSeedEnv + ", else 0)");
  s_sim->add_option("--step", simulate.step, "Stable path increment")->capture_default_str();
  s_sim->add_option("--threads", simulate.threads, "Worker threads (output does not depend on it)")
      ->capture_default_str();
  s_sim->add_option("--cap", simulate.cap, "Birth population cap")->capture_default_str();
  s_sim->add_option("--samples", simulate.samples, "paths: evenly spaced times on [0, t]")->capture_default_str();

  auto* s_solve = app.add_subcommand("solve", "Numerical D^nu N = c N. Columns: t,numeric,exact,abs_error");
  s_solve->add_option("--nu", solve.nu, "Order in (0, 1]")->capture_default_str();
  s_solve->add_option("--c", solve.c, "Signed coefficient")->capture_default_str();
  s_solve->add_option("--n0", solve.n0, "Initial value")->capture_default_str();
  s_solve->add_option("--t-max", solve.t_max, "Horizon")->capture_default_str();
  s_solve->add_option("--step", solve.step, "Grid step")->capture_default_str();
  s_solve->add_option("--every", solve.every, "Print every n-th grid point")->capture_default_str();

  auto* s_etas = app.add_subcommand(
      "etas", "ETAS regime and fractional mapping. Columns: regime,branching_ratio,nu,lambda (--curve: t,rate)");
  s_etas->add_option("--k", etas.k, "Productivity offset")->capture_default_str();
  s_etas->add_option("--theta", etas.theta, "Omori exponent parameter")->capture_default_str();
  s_etas->add_option("--t0", etas.t0, "Time delay")->capture_default_str();
  s_etas->add_flag("--curve", etas.curve, "Print the rate curve of the mapped relaxation");
  s_etas->add_option("--sign", etas.sign, "death or birth")->check(CLI::IsMember({"death", "birth"}))
      ->capture_default_str();
  s_etas->add_option("--n0", etas.n0, "Initial rate")->capture_default_str();
  s_etas->add_option("--t-max", etas.t_max, "Curve horizon")->capture_default_str();
  s_etas->add_option("--step", etas.step, "Curve step")->capture_default_str();

  auto* s_fit = app.add_subcommand("fit", "Fit (nu, gamma) to a t,size CSV. Columns: nu,gamma,n0,sse,converged");
  s_fit->add_option("--input,-i", fit_args.input, "CSV with header t,size")->required();
  s_fit->add_flag("--fit-n0", fit_args.fit_n0, "Fit n0 instead of pinning it to the first point");

  for (CLI::App* sub : app.get_subcommands({})) add_common(*sub, common);

  try {
    if (const auto path = find_config_path(args)) {
      std::ifstream in(*path);
      if (!in) throw CLI::ValidationError("--config", "cannot open '" + *path + "'");
      json cfg;
      try {
        cfg = json::parse(in);
      } catch (const json::exception& e) {
        throw CLI::ValidationError("--config", e.what());
      }
      if (!cfg.is_object()) throw CLI::ValidationError("--config", "top level must be an object");
      for (const auto& [name, section] : cfg.items()) {
        CLI::App* sub = app.get_subcommand_no_throw(name);
        if (!sub || !section.is_object())
          throw CLI::ValidationError("--config", "'" + name + "' is not a subcommand section");
        apply_config(*sub, section);
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, err, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    Table table;
    if (name == "mlf") table = cmd_mlf(mlf);
    else if (name == "mean") table = cmd_mean(mean);
    else if (name == "pmf") table = cmd_pmf(pmf);
    else if (name == "simulate") table = cmd_simulate(simulate, simulate.seed ? *simulate.seed : default_seed());
    else if (name == "solve") table = cmd_solve(solve);
    else if (name == "etas") table = cmd_etas(etas);
    else table = cmd_fit(fit_args);

    std::ofstream file;
    if (!common.output.empty()) {
      file.open(common.output, std::ios::binary);
      if (!file) throw DomainError("cannot open output '" + common.output + "'");
    }
    std::ostream& sink = common.output.empty() ? out : file;
    if (common.format == "json") {
      write_json(name, table, sink);
    } else {
      write_csv(table, sink);
      write_meta_note(table, err);
    }
    if (!sink) throw Error("failed writing output");
    return kOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << '\n';
    return kPrecision;
  } catch (const OverflowError& e) {
    err << "numeric error: " << e.what() << " (log of the value = " << format_double(e.log_value()) << ")\n";
    return kNumeric;
  } catch (const NumericalError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace fracproc::cli
