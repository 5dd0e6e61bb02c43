// trapwalk: command-line front end for the trapped random walk library.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trapwalk/distribution.hpp"
#include "trapwalk/errors.hpp"
#include "trapwalk/exact_law.hpp"
#include "trapwalk/io.hpp"
#include "trapwalk/limit_diagnostics.hpp"
#include "trapwalk/montecarlo.hpp"
#include "trapwalk/msd.hpp"
#include "trapwalk/scaling_fit.hpp"

namespace tw = trapwalk;
using json = nlohmann::ordered_json;

namespace {

enum Exit : int { kOk = 0, kConfig = 2, kDomain = 3, kProperty = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything a run depends on. Lists and optional reals are kept as text so
// the key=value file reproduces them exactly.
struct RunConfig {
  std::string command;
  std::string dist;
  std::uint64_t tmax = 0;
  std::uint64_t t = 0;
  std::string law = "position";
  bool oracle = false;
  bool bounds = false;
  std::uint64_t walkers = 100000;
  std::uint64_t seed = 42;
  std::string checkpoints;
  bool trajectory = false;
  bool samples = false;
  std::uint64_t tmin = 10;
  std::string input;
  std::string model = "powerlaw";
  std::string q;
  std::string horizons;
  std::string norm = "truncated";
  std::string suite;
  std::string alpha;
  unsigned workers = 0;
  std::string output;
  std::string format = "csv";
};

// ---------------------------------------------------------------- config file

template <class T>
T parse_unsigned(std::string_view key, std::string_view text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("'" + std::string(key) + "' expects a non-negative integer, got '" +
                      std::string(text) + "'");
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError("'" + std::string(key) + "' expects true or false");
}

struct Field {
  const char* key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, std::string_view)> set;
};

template <class M>
Field field(const char* key, M RunConfig::*member) {
  using V = std::remove_cvref_t<decltype(std::declval<RunConfig>().*member)>;
  Field f{key, {}, {}};
  if constexpr (std::is_same_v<V, std::string>) {
    f.get = [member](const RunConfig& c) { return c.*member; };
    f.set = [member](RunConfig& c, std::string_view v) { c.*member = std::string(v); };
  } else if constexpr (std::is_same_v<V, bool>) {
    f.get = [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); };
    f.set = [member, key](RunConfig& c, std::string_view v) { c.*member = parse_bool(key, v); };
  } else {
    f.get = [member](const RunConfig& c) { return std::to_string(c.*member); };
    f.set = [member, key](RunConfig& c, std::string_view v) { c.*member = parse_unsigned<V>(key, v); };
  }
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> all = {
      field("command", &RunConfig::command),     field("dist", &RunConfig::dist),
      field("tmax", &RunConfig::tmax),           field("t", &RunConfig::t),
      field("law", &RunConfig::law),             field("oracle", &RunConfig::oracle),
      field("bounds", &RunConfig::bounds),       field("walkers", &RunConfig::walkers),
      field("seed", &RunConfig::seed),           field("checkpoints", &RunConfig::checkpoints),
      field("trajectory", &RunConfig::trajectory), field("samples", &RunConfig::samples),
      field("tmin", &RunConfig::tmin),           field("input", &RunConfig::input),
      field("model", &RunConfig::model),         field("q", &RunConfig::q),
      field("N", &RunConfig::horizons),          field("norm", &RunConfig::norm),
      field("suite", &RunConfig::suite),         field("alpha", &RunConfig::alpha),
      field("workers", &RunConfig::workers),     field("output", &RunConfig::output),
      field("format", &RunConfig::format),
  };
  return all;
}

std::string dump_config(const RunConfig& c) {
  std::string out;
  for (const auto& f : fields()) out += std::string(f.key) + "=" + f.get(c) + "\n";
  return out;
}

RunConfig load_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + " has no '='");
    const std::string key = line.substr(0, eq);
    const auto it = std::find_if(fields().begin(), fields().end(),
                                 [&](const Field& f) { return key == f.key; });
    if (it == fields().end()) throw ConfigError("unknown config key '" + key + "'");
    it->set(c, std::string_view(line).substr(eq + 1));
  }
  return c;
}

// ------------------------------------------------------------- value parsing

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    if (end > start) parts.push_back(text.substr(start, end - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

double parse_real(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ConfigError("'" + std::string(key) + "' expects a real number, got '" +
                      std::string(text) + "'");
  return v;
}

std::vector<std::size_t> parse_times(std::string_view key, std::string_view text) {
  std::vector<std::size_t> out;
  for (auto part : split_list(text)) out.push_back(parse_unsigned<std::size_t>(key, part));
  return out;
}

// `a:b:step` or a comma list.
std::vector<double> parse_q_grid(std::string_view text) {
  if (text.find(':') == std::string_view::npos) {
    std::vector<double> out;
    for (auto part : split_list(text)) out.push_back(parse_real("q", part));
    return out;
  }
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw ConfigError("q grid must read start:stop:step");
  const double a = parse_real("q", text.substr(0, c1));
  const double b = parse_real("q", text.substr(c1 + 1, c2 - c1 - 1));
  const double h = parse_real("q", text.substr(c2 + 1));
  if (!(h > 0.0) || b < a) throw ConfigError("q grid needs step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9)) + 1;
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(std::round((a + static_cast<double>(i) * h) * 1e12) / 1e12);
  return out;
}

std::optional<double> parse_alpha(const RunConfig& c) {
  if (c.alpha.empty()) return std::nullopt;
  return parse_real("alpha", c.alpha);
}

tw::TrappingDistribution require_dist(const RunConfig& c) {
  if (c.dist.empty()) throw ConfigError("--dist is required");
  return tw::parse_spec(c.dist);
}

std::size_t require_positive(const char* name, std::uint64_t v) {
  if (v < 1) throw ConfigError(std::string("--") + name + " must be at least 1");
  return static_cast<std::size_t>(v);
}

// ------------------------------------------------------------------- results

struct Result {
  tw::Table table;
  json summary = json::object();
  bool passed = true;
};

json cell_json(const tw::Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) return std::isfinite(*d) ? json(*d) : json(nullptr);
  return std::get<std::string>(cell);
}

std::string render(const RunConfig& c, const Result& r) {
  if (c.format == "csv") {
    std::ostringstream os;
    tw::write_csv(os, r.table);
    return os.str();
  }
  json doc;
  doc["command"] = c.command;
  if (!c.dist.empty()) doc["dist"] = c.dist;
  for (const auto& [k, v] : r.summary.items()) doc[k] = v;
  doc["columns"] = r.table.columns;
  json rows = json::array();
  for (const auto& row : r.table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[r.table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

// ------------------------------------------------------------------ commands

Result cmd_msd(const RunConfig& c) {
  const auto d = require_dist(c);
  const std::size_t n = require_positive("tmax", c.tmax);
  const tw::MsdSeries series = tw::msd_series(d, n);
  Result r;
  if (!c.bounds) {
    r.table.columns = {"t", "sigma2"};
    for (std::size_t t = 0; t <= n; ++t) r.table.add_row({as_int(t), series.sigma2[t]});
  } else {
    const tw::BoundEnvelope env = tw::linear_bounds(d, n);
    r.table.columns = {"t", "sigma2", "dt", "lower", "upper"};
    for (std::size_t t = 0; t <= n; ++t)
      r.table.add_row({as_int(t), series.sigma2[t], env.diffusion * static_cast<double>(t),
                       env.lower[t], env.upper[t]});
    r.summary["kappa"] = env.kappa;
    r.summary["mean"] = env.mean;
  }
  if (series.diffusion) r.summary["diffusion"] = *series.diffusion;
  return r;
}

Result cmd_exact(const RunConfig& c) {
  const auto d = require_dist(c);
  const std::size_t t = require_positive("t", c.t);
  Result r;
  if (c.law == "count") {
    if (c.oracle) throw ConfigError("--oracle applies to the position law only");
    const tw::CountDistribution law = tw::count_distribution(d, t);
    r.table.columns = {"n", "prob"};
    for (std::size_t n = 0; n < law.probs.size(); ++n) r.table.add_row({as_int(n), law.probs[n]});
    r.summary["total"] = law.total();
    r.summary["mean"] = law.mean();
  } else if (c.law == "position") {
    const tw::PositionDistribution law =
        c.oracle ? tw::brute_force_distribution(d, t) : tw::position_distribution(d, t);
    r.table.columns = {"z", "prob"};
    const auto span = static_cast<std::int64_t>(t);
    for (std::int64_t z = -span; z <= span; ++z) r.table.add_row({z, law.prob(z)});
    r.summary["total"] = law.total();
    r.summary["second_moment"] = law.second_moment();
  } else {
    throw ConfigError("--law must be position or count");
  }
  return r;
}

Result cmd_simulate(const RunConfig& c) {
  const auto d = require_dist(c);
  Result r;
  r.summary["seed"] = c.seed;
  if (c.trajectory) {
    const std::size_t n = require_positive("tmax", c.tmax);
    const tw::Trajectory path = tw::simulate_walker(d, n, c.seed);
    r.table.columns = {"t", "x", "trap"};
    for (std::size_t t = 0; t <= n; ++t)
      r.table.add_row({as_int(t), path.positions[t], as_int(path.traps[t])});
    return r;
  }
  r.summary["walkers"] = c.walkers;
  if (c.samples) {
    if (c.checkpoints.empty()) throw ConfigError("--samples needs --checkpoints");
    const auto cps = parse_times("checkpoints", c.checkpoints);
    const tw::CheckpointSamples s =
        tw::ensemble_samples(d, cps, static_cast<std::size_t>(c.walkers), c.seed, c.workers);
    r.table.columns = {"t", "x", "n"};
    for (std::size_t k = 0; k < cps.size(); ++k)
      for (std::size_t w = 0; w < s.x[k].size(); ++w)
        r.table.add_row({as_int(cps[k]), std::int64_t{s.x[k][w]}, std::int64_t{s.n[k][w]}});
    return r;
  }
  const std::size_t n = require_positive("tmax", c.tmax);
  const tw::EnsembleStats stats =
      tw::ensemble_msd(d, n, static_cast<std::size_t>(c.walkers), c.seed, c.workers);
  r.table.columns = {"t", "msd_hat", "msd_se"};
  std::vector<std::size_t> rows;
  if (c.checkpoints.empty()) {
    for (std::size_t t = 0; t <= n; ++t) rows.push_back(t);
  } else {
    rows = parse_times("checkpoints", c.checkpoints);
    for (auto t : rows)
      if (t > n) throw ConfigError("checkpoint " + std::to_string(t) + " exceeds --tmax");
  }
  for (auto t : rows) r.table.add_row({as_int(t), stats.msd_hat[t], stats.msd_se[t]});
  return r;
}

Result cmd_fit(const RunConfig& c) {
  if (c.input.empty()) throw ConfigError("--input is required");
  const tw::CsvData data = tw::read_csv_file(c.input);
  Result r;
  if (c.model == "powerlaw") {
    const std::size_t tc = data.column("t");
    const std::size_t sc = data.column("sigma2");
    std::vector<double> sigma2;
    for (const auto& row : data.rows) {
      if (!(row[tc] >= 0.0) || row[tc] != std::floor(row[tc])) throw ConfigError("t must be a non-negative integer");
      const auto t = static_cast<std::size_t>(row[tc]);
      if (t >= sigma2.size()) sigma2.resize(t + 1, std::nan(""));
      sigma2[t] = row[sc];
    }
    const std::size_t t_max = c.tmax ? static_cast<std::size_t>(c.tmax) : sigma2.size() - 1;
    const tw::ExponentFit fit = tw::powerlaw_fit(sigma2, static_cast<std::size_t>(c.tmin), t_max);
    r.table.columns = {"t_min", "t_max", "beta", "log_intercept", "rms"};
    r.table.add_row({as_int(fit.t_min), as_int(fit.t_max), fit.beta, fit.log_intercept, fit.rms_residual});
    return r;
  }
  tw::SigmoidModel model;
  if (c.model == "sigmoid2") model = tw::SigmoidModel::TwoParam;
  else if (c.model == "sigmoid3") model = tw::SigmoidModel::ThreeParam;
  else throw ConfigError("--model must be powerlaw, sigmoid2 or sigmoid3");
  const std::size_t qc = data.column("q");
  const std::size_t bc = data.column("beta");
  std::optional<double> horizon;
  if (!c.horizons.empty()) {
    const auto hs = parse_times("N", c.horizons);
    if (hs.size() != 1) throw ConfigError("--N selects a single horizon for a sigmoid fit");
    horizon = static_cast<double>(hs.front());
  }
  std::vector<std::pair<double, double>> points;
  for (const auto& row : data.rows) {
    if (horizon && row[data.column("N")] != *horizon) continue;
    points.emplace_back(row[qc], row[bc]);
  }
  const tw::SigmoidFit fit = tw::sigmoid_fit(points, model);
  if (model == tw::SigmoidModel::TwoParam) {
    r.table.columns = {"model", "r", "eta", "rms"};
    r.table.add_row({std::string("TwoParam"), fit.r, fit.eta, fit.rms_residual});
  } else {
    r.table.columns = {"model", "r", "eta", "c", "rms"};
    r.table.add_row({std::string("ThreeParam"), fit.r, fit.eta, *fit.c, fit.rms_residual});
  }
  return r;
}

Result cmd_beta_sweep(const RunConfig& c) {
  if (c.q.empty() || c.horizons.empty()) throw ConfigError("--q and --N are required");
  const auto grid = parse_q_grid(c.q);
  const auto horizons = parse_times("N", c.horizons);
  tw::SweepLaw law;
  if (c.norm == "zeta") law = tw::SweepLaw::Zeta;
  else if (c.norm == "truncated") law = tw::SweepLaw::Truncated;
  else throw ConfigError("--norm must be zeta or truncated");
  const auto rows = tw::beta_sweep(grid, horizons, static_cast<std::size_t>(c.tmin), law, c.workers);
  Result r;
  r.summary["norm"] = c.norm;
  r.summary["tmin"] = c.tmin;
  r.table.columns = {"q", "N", "beta", "rms"};
  for (const auto& row : rows) r.table.add_row({row.q, as_int(row.horizon), row.beta, row.rms});
  return r;
}

std::vector<std::size_t> checkpoints_or(const RunConfig& c, std::vector<std::size_t> fallback) {
  return c.checkpoints.empty() ? fallback : parse_times("checkpoints", c.checkpoints);
}

double tail_index(const RunConfig& c, const tw::TrappingDistribution& d) {
  if (auto a = parse_alpha(c)) return *a;
  if (const auto* z = std::get_if<tw::PowerLawZeta>(&d.variant())) return std::min(1.0, z->q - 1.0);
  if (d.mean().is_finite()) return 1.0;
  throw ConfigError("--alpha is required for this distribution");
}

Result check_invariants(const RunConfig& c, const tw::TrappingDistribution& d) {
  const std::size_t n = require_positive("tmax", c.tmax);
  const tw::MsdSeries s = tw::msd_series(d, n);
  Result r;
  r.table.columns = {"invariant", "value", "bound", "pass"};
  auto record = [&](const std::string& name, double value, double bound, bool ok) {
    r.table.add_row({name, value, bound, std::int64_t{ok}});
    r.passed = r.passed && ok;
  };

  const std::size_t probe = std::min<std::size_t>(10000, n);
  double pmf_gap = 0.0;
  for (std::size_t tau = 0; tau <= probe; ++tau)
    pmf_gap = std::max(pmf_gap, std::abs(d.tail(tau) - d.tail(tau + 1) - d.pmf(tau)));
  record("tail_origin", d.tail(0), 1.0, d.tail(0) == 1.0);
  record("tail_pmf_gap", pmf_gap, 1e-12, pmf_gap <= 1e-12);

  record("sigma2_origin", s.sigma2[0], 0.0, s.sigma2[0] == 0.0);
  record("sigma2_first_step", std::abs(s.sigma2[1] - d.pmf(0)), 1e-15,
         std::abs(s.sigma2[1] - d.pmf(0)) <= 1e-15);
  double drop = 0.0, excess = 0.0, tail_excess = 0.0;
  for (std::size_t t = 1; t <= n; ++t) {
    drop = std::max(drop, s.sigma2[t - 1] - s.sigma2[t]);
    excess = std::max(excess, s.sigma2[t] - static_cast<double>(t));
    const double tl = d.tail(t + 1);
    if (tl > 0.0) tail_excess = std::max(tail_excess, s.sigma2[t] * tl - 1.0);
  }
  record("sigma2_monotone_drop", drop, 0.0, drop <= 0.0);
  record("sigma2_le_t_excess", excess, 1e-9, excess <= 1e-9);
  record("sigma2_tail_bound_excess", tail_excess, 1e-12, tail_excess <= 1e-12);
  if (n >= 2) {
    const double half = s.sigma2[n / 2];
    record("sigma2_growth", s.sigma2[n] - half, 0.0, s.sigma2[n] > half);
  }

  if (d.mean().is_finite()) {
    double mass_gap = 0.0;
    for (std::size_t tau = 0; tau < std::min<std::size_t>(1000, n); ++tau)
      mass_gap = std::max(mass_gap, std::abs(d.stationary(tau) - d.stationary(0) * d.pmf(tau) -
                                             d.stationary(tau + 1)));
    record("stationary_fixed_point", mass_gap, 1e-12, mass_gap <= 1e-12);
    if (d.pmf(0) > 0.0) {
      const tw::BoundEnvelope env = tw::linear_bounds(d, n);
      double worst = 0.0;
      for (std::size_t t = 0; t <= n; ++t) {
        const double dev = s.sigma2[t] - env.diffusion * static_cast<double>(t);
        worst = std::max({worst, env.lower[t] - dev, dev - env.upper[t]});
      }
      record("envelope_violation", worst, 1e-9, worst <= 1e-9);
    }
  }
  return r;
}

Result cmd_check(const RunConfig& c) {
  const auto d = require_dist(c);
  const auto walkers = static_cast<std::size_t>(c.walkers);
  Result r;
  if (c.suite == "invariants") return check_invariants(c, d);
  r.summary["walkers"] = c.walkers;
  r.summary["seed"] = c.seed;
  if (c.suite == "clt") {
    const auto cps = checkpoints_or(c, {256, 1024, 4096, 16384});
    const tw::CltReport rep = tw::clt_check(d, cps, walkers, c.seed, parse_alpha(c), c.workers);
    r.summary["mu"] = rep.mu;
    r.summary["rate_fit"] = rep.rate_fit;
    if (rep.alpha) r.summary["alpha"] = *rep.alpha;
    if (rep.theoretical_rate) r.summary["theoretical_rate"] = *rep.theoretical_rate;
    if (rep.c_t) r.summary["c_t"] = *rep.c_t;
    if (rep.constant_floor) r.summary["constant_floor"] = *rep.constant_floor;
    r.table.columns = {"t", "sup_distance"};
    for (std::size_t k = 0; k < cps.size(); ++k) r.table.add_row({as_int(cps[k]), rep.sup_distance[k]});
    r.passed = rep.sup_distance.back() <= rep.sup_distance.front();
    if (rep.theoretical_rate && cps.size() >= 2)
      r.passed = r.passed && rep.rate_fit <= *rep.theoretical_rate + 0.15;
  } else if (c.suite == "concentration") {
    const double alpha = tail_index(c, d);
    const auto cps = checkpoints_or(c, {1024, 4096, 16384});
    const tw::ConcentrationReport rep = tw::concentration_check(d, alpha, cps, walkers, c.seed, c.workers);
    r.summary["alpha"] = alpha;
    r.table.columns = {"t", "h", "violation_freq", "ratio", "median_scaled", "skipped"};
    for (std::size_t k = 0; k < cps.size(); ++k) {
      r.table.add_row({as_int(cps[k]), rep.h_values[k], rep.violation_freq[k], rep.ratio[k],
                       rep.median_scaled[k], std::int64_t{rep.skipped[k]}});
      if (!rep.skipped[k]) r.passed = r.passed && rep.violation_freq[k] <= 20.0 * rep.h_values[k];
    }
  } else if (c.suite == "heavy-tail") {
    const double alpha = tail_index(c, d);
    const auto cps = checkpoints_or(c, {1024, 4096, 16384});
    const tw::HeavyTailReport rep = tw::heavy_tail_scaling_check(d, alpha, cps, walkers, c.seed, c.workers);
    r.summary["alpha"] = alpha;
    const bool normal = !rep.normal_distance.empty();
    r.table.columns = {"t", "pairwise_distance", "symmetry_defect", "second_moment"};
    if (normal) r.table.columns.push_back("normal_distance");
    const double sym_bound = 3.0 / std::sqrt(static_cast<double>(walkers)) + 0.01;
    for (std::size_t k = 0; k < cps.size(); ++k) {
      std::vector<tw::Cell> row = {as_int(cps[k]), k ? rep.pairwise_distance[k - 1] : std::nan(""),
                                   rep.symmetry_defect[k], rep.second_moment[k]};
      if (normal) row.push_back(rep.normal_distance[k]);
      r.table.add_row(std::move(row));
      r.passed = r.passed && rep.symmetry_defect[k] <= sym_bound;
    }
    if (rep.pairwise_distance.size() >= 2)
      r.passed = r.passed && rep.pairwise_distance.back() < rep.pairwise_distance.front();
  } else {
    throw ConfigError("--suite must be clt, concentration, heavy-tail or invariants");
  }
  return r;
}

Result dispatch(const RunConfig& c) {
  if (c.format != "csv" && c.format != "json") throw ConfigError("--format must be csv or json");
  if (c.command == "msd") return cmd_msd(c);
  if (c.command == "exact") return cmd_exact(c);
  if (c.command == "simulate") return cmd_simulate(c);
  if (c.command == "fit") return cmd_fit(c);
  if (c.command == "beta-sweep") return cmd_beta_sweep(c);
  if (c.command == "check") return cmd_check(c);
  throw ConfigError("unknown command '" + c.command + "'");
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw tw::IoError("cannot write '" + c.output + "'");
  out << text;
}

int classify(const tw::Error& e) {
  switch (e.kind()) {
    case tw::ErrorKind::Parse:
    case tw::ErrorKind::Validation:
    case tw::ErrorKind::Window:
    case tw::ErrorKind::Io:
      return kConfig;
    default:
      return kDomain;
  }
}

void add_common(CLI::App* sub, RunConfig& c, bool& dump) {
  sub->add_option("--format", c.format, "csv or json");
  sub->add_option("--output,-o", c.output, "output file (default stdout)");
  sub->add_option("--workers", c.workers, "thread cap (0 = all cores)");
  sub->add_flag("--dump-config", dump, "print the run configuration and exit");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  bool dump = false;
  std::string config_path;

  CLI::App app{"Trapped random walk: exact MSD, exact laws, simulation and scaling diagnostics"};
  app.add_option("--config", config_path, "run from a key=value config file");
  app.require_subcommand(0, 1);

  auto* msd = app.add_subcommand("msd", "exact mean squared displacement by renewal recurrence");
  msd->add_option("--dist", c.dist, "exp:<lambda> | zeta:<q> | zetacut:<q>:<cutoff> | det:<tau0> | custom:<path>");
  msd->add_option("--tmax", c.tmax, "horizon N");
  msd->add_flag("--bounds", c.bounds, "add the linear-diffusion envelope");
  add_common(msd, c, dump);

  auto* exact = app.add_subcommand("exact", "exact law of X_t or N_t");
  exact->add_option("--dist", c.dist, "trapping law");
  exact->add_option("--t", c.t, "time");
  exact->add_option("--law", c.law, "position or count");
  exact->add_flag("--oracle", c.oracle, "use the brute-force state-space oracle");
  add_common(exact, c, dump);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo ensemble or single trajectory");
  sim->add_option("--dist", c.dist, "trapping law");
  sim->add_option("--tmax", c.tmax, "horizon N");
  sim->add_option("--walkers", c.walkers, "ensemble size M");
  sim->add_option("--seed", c.seed, "64-bit seed");
  sim->add_option("--checkpoints", c.checkpoints, "comma-separated times");
  sim->add_flag("--trajectory", c.trajectory, "emit one path t,x,trap");
  sim->add_flag("--samples", c.samples, "emit X_t and N_t per walker at each checkpoint");
  add_common(sim, c, dump);

  auto* fit = app.add_subcommand("fit", "power-law or sigmoid fit of a CSV series");
  fit->add_option("--input", c.input, "CSV with t,sigma2 or q,N,beta columns");
  fit->add_option("--tmin", c.tmin, "window start");
  fit->add_option("--tmax", c.tmax, "window end (default: last t)");
  fit->add_option("--model", c.model, "powerlaw, sigmoid2 or sigmoid3");
  fit->add_option("--N", c.horizons, "horizon selecting sweep rows for sigmoid fits");
  add_common(fit, c, dump);

  auto* sweep = app.add_subcommand("beta-sweep", "fitted exponent table over q and N");
  sweep->add_option("--q", c.q, "start:stop:step or comma list");
  sweep->add_option("--N", c.horizons, "comma-separated horizons");
  sweep->add_option("--tmin", c.tmin, "window start");
  sweep->add_option("--norm", c.norm, "truncated (normalised on tau <= max N) or zeta");
  add_common(sweep, c, dump);

  auto* check = app.add_subcommand("check", "property suites: clt, concentration, heavy-tail, invariants");
  check->add_option("--suite", c.suite, "suite name");
  check->add_option("--dist", c.dist, "trapping law");
  check->add_option("--tmax", c.tmax, "horizon for the invariant suite");
  check->add_option("--walkers", c.walkers, "ensemble size M");
  check->add_option("--seed", c.seed, "64-bit seed");
  check->add_option("--checkpoints", c.checkpoints, "comma-separated times");
  check->add_option("--alpha", c.alpha, "tail or moment index");
  add_common(check, c, dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty())
        throw ConfigError("--config replaces the subcommand and its flags");
      c = load_config(tw::read_text_file(config_path));
    } else if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return kConfig;
    } else {
      c.command = app.get_subcommands().front()->get_name();
    }
    if (dump) {
      std::cout << dump_config(c);
      return kOk;
    }
    const Result r = dispatch(c);
    emit(c, render(c, r));
    if (!r.passed) {
      std::cerr << "property check failed\n";
      return kProperty;
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const tw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
}
