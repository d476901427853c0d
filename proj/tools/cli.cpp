#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hotspots/asymptotic.hpp"
#include "hotspots/bound.hpp"
#include "hotspots/error.hpp"
#include "hotspots/fingerprint.hpp"
#include "hotspots/montecarlo.hpp"
#include "hotspots/ratio.hpp"
#include "hotspots/rounding.hpp"
#include "hotspots/version.hpp"
#include "hotspots/vfunction.hpp"
#include "hotspots/zeros.hpp"

namespace hotspots::cli {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Json, Csv };

struct Output {
  std::string body;
  json parameters = json::object();
  int code = kExitOk;
};

// --- formatting helpers ---------------------------------------------------

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sig5(double v) { return format_significant(v, 5); }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string render_text_table(const std::vector<std::string>& header,
                              const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << (c ? "  " : "") << pad(cells[c], widths[c]);
    }
    os << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  return os.str();
}

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) os << (c ? "," : "") << cells[c];
    os << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json zero_record_json(const BesselZeroRecord& z) {
  return json{{"nu", z.nu},
              {"family", to_string(z.family)},
              {"value", z.value},
              {"value_squared", z.value * z.value},
              {"value_squared_up", z.value_squared_up},
              {"value_squared_down", z.value_squared_down},
              {"residual", z.residual},
              {"error_estimate", z.error_estimate}};
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  return Format::Text;
}

template <class F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// --- table / bound --------------------------------------------------------

struct BoundRow {
  RatioBoundSpec ratio;
  BoundResult result;
};

BoundRow compute_row(int d, const RatioChoice& choice, const VFunction& v, int ratio_digits,
                     double tolerance) {
  RatioBoundSpec ratio = make_ratio(d, choice);
  if (ratio_digits > 0) ratio = round_ratio_up(ratio, ratio_digits);
  BoundQuery q;
  q.d = d;
  q.ratio = ratio;
  q.vfunction = v;
  q.tolerance = tolerance;
  return {ratio, optimize_bound(q)};
}

const std::vector<std::string> kBoundHeader = {"d", "p_squared", "j_squared", "r",
                                               "epsilon", "a", "bound", "evaluations"};

json row_json(const BoundRow& row) {
  json j{{"d", row.result.d},
         {"ratio_kind", to_string(row.ratio.kind)},
         {"vfunction", to_string(row.result.vkind)},
         {"p_squared", row.ratio.p_squared ? json(*row.ratio.p_squared) : json(nullptr)},
         {"j_squared", row.ratio.j_squared ? json(*row.ratio.j_squared) : json(nullptr)},
         {"r", row.result.r},
         {"epsilon", row.result.epsilon_star},
         {"a", row.result.a_star},
         {"bound", row.result.bound},
         {"evaluations", row.result.evaluations}};
  if (row.ratio.p_root) j["p_root"] = zero_record_json(*row.ratio.p_root);
  if (row.ratio.j_zero) j["j_zero"] = zero_record_json(*row.ratio.j_zero);
  return j;
}

std::string render_rows(const std::string& command, const std::vector<BoundRow>& rows,
                        Format format, const json& parameters) {
  if (format == Format::Json) {
    json out{{"command", command}, {"version", kVersion}, {"parameters", parameters}};
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(row_json(r));
    if (command == "bound") {
      out["result"] = arr.at(0);
    } else {
      out["rows"] = arr;
    }
    return dump(out);
  }
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    const bool text = format == Format::Text;
    auto num = [&](double v) { return text ? sig5(v) : full(v); };
    auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string("-"); };
    cells.push_back({std::to_string(r.result.d), opt(r.ratio.p_squared), opt(r.ratio.j_squared),
                     num(r.result.r), num(r.result.epsilon_star), num(r.result.a_star),
                     num(r.result.bound), std::to_string(r.result.evaluations)});
  }
  return format == Format::Csv ? render_csv(kBoundHeader, cells)
                               : render_text_table(kBoundHeader, cells);
}

// --- command implementations ----------------------------------------------

struct TableArgs {
  std::vector<int> dims{2, 3, 4, 10, 100};
  std::string ratio = "bessel";
  std::string vfunction = "improved";
  int ratio_digits = kPublishedRatioDecimals;
  double tolerance = kDefaultTolerance;
  std::string format = "text";
};

Output do_table(const TableArgs& a) {
  const RatioChoice choice = as_usage([&] { return parse_ratio_choice(a.ratio); });
  const VFunction v = as_usage([&] { return parse_vfunction(a.vfunction); });
  Output out;
  out.parameters = json{{"dims", a.dims},          {"ratio", a.ratio},
                        {"vfunction", a.vfunction}, {"ratio_digits", a.ratio_digits},
                        {"tolerance", a.tolerance}, {"format", a.format}};
  std::vector<BoundRow> rows;
  for (int d : a.dims) rows.push_back(compute_row(d, choice, v, a.ratio_digits, a.tolerance));
  out.body = render_rows("table", rows, parse_format(a.format), out.parameters);
  return out;
}

Output do_bound(const TableArgs& a, int d) {
  const RatioChoice choice = as_usage([&] { return parse_ratio_choice(a.ratio); });
  const VFunction v = as_usage([&] { return parse_vfunction(a.vfunction); });
  Output out;
  out.parameters = json{{"dim", d},
                        {"ratio", a.ratio},
                        {"vfunction", a.vfunction},
                        {"ratio_digits", a.ratio_digits},
                        {"tolerance", a.tolerance},
                        {"format", a.format}};
  const BoundRow row = compute_row(d, choice, v, a.ratio_digits, a.tolerance);
  out.body = render_rows("bound", {row}, parse_format(a.format), out.parameters);
  return out;
}

struct ZerosArgs {
  std::vector<double> nus;
  std::vector<int> dims;
  std::string format = "text";
};

Output do_zeros(const ZerosArgs& a) {
  if (a.nus.empty() && a.dims.empty()) throw UsageError("zeros: give --nu and/or --dim");
  std::vector<BesselZeroRecord> records;
  for (double nu : a.nus) records.push_back(first_bessel_zero(nu));
  for (int d : a.dims) {
    records.push_back(first_p_root(d));
    records.push_back(first_bessel_zero(0.5 * d - 1.0));
  }
  Output out;
  out.parameters = json{{"nu", a.nus}, {"dim", a.dims}, {"format", a.format}};
  const Format f = parse_format(a.format);
  if (f == Format::Json) {
    json recs = json::array();
    for (const auto& r : records) recs.push_back(zero_record_json(r));
    out.body = dump(json{{"command", "zeros"},
                         {"version", kVersion},
                         {"parameters", out.parameters},
                         {"records", recs}});
    return out;
  }
  const std::vector<std::string> header = {"nu", "family", "value", "value_squared",
                                           "squared_down", "squared_up", "residual"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : records) {
    if (f == Format::Text) {
      char v[40], v2[40], lo[40], hi[40], res[40];
      std::snprintf(v, sizeof v, "%.15g", r.value);
      std::snprintf(v2, sizeof v2, "%.15g", r.value * r.value);
      std::snprintf(lo, sizeof lo, "%.15g", r.value_squared_down);
      std::snprintf(hi, sizeof hi, "%.15g", r.value_squared_up);
      std::snprintf(res, sizeof res, "%.3e", r.residual);
      cells.push_back({full(r.nu), to_string(r.family), v, v2, lo, hi, res});
    } else {
      cells.push_back({full(r.nu), to_string(r.family), full(r.value), full(r.value * r.value),
                       full(r.value_squared_down), full(r.value_squared_up), full(r.residual)});
    }
  }
  out.body = f == Format::Csv ? render_csv(header, cells) : render_text_table(header, cells);
  return out;
}

struct AsymptoticArgs {
  double dmin = 100;
  double dmax = 1e8;
  int points = 7;
  double c = 1.0;
  double alpha = -0.5;
  double k = 0.125;
  std::string format = "text";
};

Output do_asymptotic(const AsymptoticArgs& a) {
  AsymptoticParams p{a.c, a.alpha, a.k};
  p.validate();
  const std::vector<std::int64_t> dims = as_usage([&] {
    return geometric_dims(std::llround(a.dmin), std::llround(a.dmax), a.points);
  });
  const auto values = sweep(p, dims);
  const double sqrt_e = std::exp(0.5);
  Output out;
  out.parameters = json{{"dmin", dims.front()}, {"dmax", dims.back()}, {"points", a.points},
                        {"c", a.c},             {"alpha", a.alpha},    {"k", a.k},
                        {"beta", 1},            {"format", a.format}};
  const Format f = parse_format(a.format);
  if (f == Format::Json) {
    json pts = json::array();
    for (const auto& [d, b] : values) {
      pts.push_back(json{{"d", d},
                         {"epsilon", epsilon_d(p, d)},
                         {"a", a_d(p, d)},
                         {"r", 4.0 / static_cast<double>(d)},
                         {"bound", b},
                         {"relative_excess", b / sqrt_e - 1.0}});
    }
    out.body = dump(json{{"command", "asymptotic"},
                         {"version", kVersion},
                         {"parameters", out.parameters},
                         {"sqrt_e", sqrt_e},
                         {"min_feasible_d", min_feasible_dimension(p)},
                         {"points", pts}});
    return out;
  }
  const std::vector<std::string> header = {"d", "epsilon", "a", "bound", "relative_excess"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& [d, b] : values) {
    if (f == Format::Text) {
      char excess[40];
      std::snprintf(excess, sizeof excess, "%.4e", b / sqrt_e - 1.0);
      cells.push_back({std::to_string(d), sig5(epsilon_d(p, d)), sig5(a_d(p, d)), sig5(b), excess});
    } else {
      cells.push_back({std::to_string(d), full(epsilon_d(p, d)), full(a_d(p, d)), full(b),
                       full(b / sqrt_e - 1.0)});
    }
  }
  out.body = f == Format::Csv ? render_csv(header, cells) : render_text_table(header, cells);
  return out;
}

struct VBoundArgs {
  std::string shape = "ball";
  double radius = 1.0;
  std::vector<double> sides;
  int dim = 2;
  std::vector<double> start;
  std::int64_t paths = 100000;
  std::optional<double> dt;
  std::vector<double> epsilons{0.5};
  std::vector<std::string> vfunctions{"vogt"};
  std::uint64_t seed = 42;
  double t_max = 2.0;
  double t_step = 0.05;
  bool no_bridge = false;
  int chunks = kDefaultChunks;
  int threads = 0;
  std::string format = "text";
};

Output do_verify_vbound(const VBoundArgs& a) {
  SimConfig cfg;
  if (a.shape == "ball") {
    cfg.domain = SimDomain::ball(a.dim, a.radius);
  } else {
    if (a.sides.empty()) throw UsageError("verify-vbound: box shape needs --sides");
    cfg.domain = SimDomain::box(a.sides);
  }
  cfg.start = a.start.empty() ? cfg.domain.centre() : a.start;
  const double length = cfg.domain.characteristic_length();
  cfg.dt = a.dt.value_or(1e-4 * length * length);
  cfg.n_paths = a.paths;
  cfg.seed = a.seed;
  cfg.bridge_correction = !a.no_bridge;
  cfg.chunks = a.chunks;
  cfg.threads = a.threads;
  if (!(a.t_step > 0.0) || !(a.t_max >= 0.0)) {
    throw UsageError("verify-vbound: need --t-step > 0 and --t-max >= 0");
  }
  const auto steps = static_cast<int>(std::llround(a.t_max / a.t_step));
  for (int i = 0; i <= steps; ++i) cfg.t_grid.push_back(a.t_step * i);

  std::vector<VFunction> vfs;
  for (const auto& name : a.vfunctions) {
    vfs.push_back(as_usage([&] { return parse_vfunction(name); }));
  }

  if (!(cfg.domain.boundary_distance(cfg.start) > 0.0)) {
    fail(ErrorKind::OutOfDomain, "verify-vbound needs a start strictly inside the domain");
  }
  const std::vector<double> samples = sample_exit_times(cfg);
  const TailEstimate est = survival_from_samples(cfg, samples);
  const ExitTimeSummary summary = summarize_exit_times(samples);
  const double lambda = principal_eigenvalue(cfg.domain);

  std::vector<VBoundReport> reports;
  for (const auto& v : vfs) {
    for (double eps : a.epsilons) reports.push_back(check_vbound(est, v, eps, lambda));
  }
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;

  Output out;
  json config{{"shape", a.shape},
              {"dim", cfg.domain.dim()},
              {"start", cfg.start},
              {"dt", cfg.dt},
              {"n_paths", cfg.n_paths},
              {"seed", cfg.seed},
              {"bridge_correction", cfg.bridge_correction},
              {"chunks", cfg.chunks},
              {"t_max", a.t_max},
              {"t_step", a.t_step}};
  if (a.shape == "ball") {
    config["radius"] = a.radius;
  } else {
    config["sides"] = a.sides;
  }
  out.parameters = config;
  out.parameters["epsilon"] = a.epsilons;
  out.parameters["vfunction"] = a.vfunctions;
  out.parameters["format"] = a.format;
  out.code = pass ? kExitOk : kExitVBoundFailed;

  const Format f = parse_format(a.format);
  if (f == Format::Json) {
    json checks = json::array();
    for (const auto& r : reports) {
      checks.push_back(json{{"vfunction", to_string(r.vkind)},
                            {"epsilon", r.epsilon},
                            {"bound_curve", r.bound_curve},
                            {"worst_margin", r.worst_margin},
                            {"worst_t", est.t_grid[r.worst_index]},
                            {"pass", r.pass}});
    }
    out.body = dump(json{{"command", "verify-vbound"},
                         {"version", kVersion},
                         {"parameters", out.parameters},
                         {"fingerprint", est.fingerprint},
                         {"lambda", lambda},
                         {"exit_time",
                          {{"mean", number_or_null(summary.exited ? summary.mean : NAN)},
                           {"standard_error", summary.standard_error},
                           {"exited", summary.exited},
                           {"censored", summary.censored}}},
                         {"t_grid", est.t_grid},
                         {"survival", est.survival},
                         {"ci_low", est.ci_low},
                         {"ci_high", est.ci_high},
                         {"checks", checks},
                         {"pass", pass}});
    return out;
  }
  if (f == Format::Csv) {
    std::vector<std::string> header = {"t", "survival", "ci_low", "ci_high"};
    for (const auto& r : reports) {
      header.push_back(std::string("bound_") + to_string(r.vkind) + "_" + full(r.epsilon));
    }
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < est.t_grid.size(); ++i) {
      std::vector<std::string> row = {full(est.t_grid[i]), full(est.survival[i]),
                                      full(est.ci_low[i]), full(est.ci_high[i])};
      for (const auto& r : reports) row.push_back(full(r.bound_curve[i]));
      cells.push_back(std::move(row));
    }
    out.body = render_csv(header, cells);
    return out;
  }
  std::ostringstream os;
  os << "domain: " << a.shape << " dim=" << cfg.domain.dim() << "  lambda_D=" << sig5(lambda)
     << "  paths=" << cfg.n_paths << "  dt=" << cfg.dt << "  fingerprint=" << est.fingerprint
     << '\n';
  os << "mean exit time: " << sig5(summary.mean) << " +/- " << sig5(summary.standard_error)
     << " (censored " << summary.censored << ")\n";
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : reports) {
    cells.push_back({to_string(r.vkind), sig5(r.epsilon), sig5(r.worst_margin),
                     sig5(est.t_grid[r.worst_index]), r.pass ? "pass" : "FAIL"});
  }
  os << render_text_table({"vfunction", "epsilon", "worst_margin", "at_t", "result"}, cells);
  os << (pass ? "V-bound check: pass\n" : "V-bound check: FAIL\n");
  out.body = os.str();
  return out;
}

// --- manifests --------------------------------------------------------------

json make_manifest(const std::string& subcommand, std::span<const std::string> args,
                   const Output& out) {
  json argv = json::array();
  for (const auto& a : args) argv.push_back(a);
  return json{{"tool", "hotspots"},
              {"version", kVersion},
              {"subcommand", subcommand},
              {"argv", argv},
              {"parameters", out.parameters},
              {"output_checksum", "fnv1a64:" + fnv1a64_hex(out.body)}};
}

int exit_code_for(const Error& e) {
  return e.kind() == ErrorKind::Accuracy ? kExitAccuracy : kExitInfeasible;
}

void add_format(CLI::App* sub, std::string& target) {
  sub->add_option("--format", target, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hotspots: dimension-dependent upper bounds on the Hot Spots constant"};
  app.name("hotspots");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  std::string manifest_path;
  app.add_option("--manifest", manifest_path,
                 "Write a run manifest (parameters, version, output checksum) to this file");

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "Bound table for several dimensions");
  table->add_option("--dims", table_args.dims, "Dimensions")->delimiter(',')->capture_default_str();
  table->add_option("--ratio", table_args.ratio, "bessel | closed | 4overd | custom:<v>")
      ->capture_default_str();
  table->add_option("--vfunction", table_args.vfunction, "vogt | improved | custom:<csv>")
      ->capture_default_str();
  table->add_option("--ratio-digits", table_args.ratio_digits,
                    "Round r up to this many decimals (p^2 up, j^2 down to 5 s.f.); 0 = full")
      ->check(CLI::Range(0, 15))
      ->capture_default_str();
  table->add_option("--tolerance", table_args.tolerance, "Golden-section tolerance on epsilon")
      ->capture_default_str();
  add_format(table, table_args.format);

  TableArgs bound_args;
  bound_args.ratio_digits = 0;
  int bound_dim = 0;
  auto* bound = app.add_subcommand("bound", "Optimized bound for one dimension");
  bound->add_option("--dim", bound_dim, "Dimension d >= 2")->required();
  bound->add_option("--ratio", bound_args.ratio, "bessel | closed | 4overd | custom:<v>")
      ->capture_default_str();
  bound->add_option("--vfunction", bound_args.vfunction, "vogt | improved | custom:<csv>")
      ->capture_default_str();
  bound->add_option("--ratio-digits", bound_args.ratio_digits,
                    "Round r up to this many decimals; 0 = full precision")
      ->check(CLI::Range(0, 15))
      ->capture_default_str();
  bound->add_option("--tolerance", bound_args.tolerance, "Golden-section tolerance on epsilon")
      ->capture_default_str();
  add_format(bound, bound_args.format);

  ZerosArgs zeros_args;
  auto* zeros = app.add_subcommand("zeros", "First Bessel zeros j_{nu,1} and p-roots p_{d/2,1}");
  zeros->add_option("--nu", zeros_args.nus, "Order(s) nu for j_{nu,1}")->delimiter(',');
  zeros->add_option("--dim", zeros_args.dims, "Dimension(s) d for p_{d/2,1} and j_{d/2-1,1}")
      ->delimiter(',');
  add_format(zeros, zeros_args.format);

  AsymptoticArgs asym_args;
  auto* asym = app.add_subcommand("asymptotic", "Bound along eps_d = (1 + c d^alpha)^-2, a_d = k d");
  asym->add_option("--dmin", asym_args.dmin, "Smallest dimension")->capture_default_str();
  asym->add_option("--dmax", asym_args.dmax, "Largest dimension")->capture_default_str();
  asym->add_option("--points", asym_args.points, "Number of geometrically spaced dimensions")
      ->capture_default_str();
  asym->add_option("--c", asym_args.c, "c > 0")->capture_default_str();
  asym->add_option("--alpha", asym_args.alpha, "alpha in (-1, -1/2]")->capture_default_str();
  asym->add_option("--k", asym_args.k, "k > 0 (1/8 is optimal)")->capture_default_str();
  add_format(asym, asym_args.format);

  VBoundArgs vb;
  auto* verify = app.add_subcommand("verify-vbound", "Monte Carlo check of the V-bound");
  verify->add_option("--shape", vb.shape, "ball | box")
      ->check(CLI::IsMember({"ball", "box"}))
      ->capture_default_str();
  verify->add_option("--radius", vb.radius, "Ball radius")->capture_default_str();
  verify->add_option("--sides", vb.sides, "Box side lengths")->delimiter(',');
  verify->add_option("--dim", vb.dim, "Ball dimension")->capture_default_str();
  verify->add_option("--start", vb.start, "Start point (default: centre)")->delimiter(',');
  verify->add_option("--paths", vb.paths, "Number of paths")->capture_default_str();
  verify->add_option("--dt", vb.dt, "Time step (default 1e-4 * length^2)");
  verify->add_option("--epsilon", vb.epsilons, "epsilon value(s) in (0, 1]")
      ->delimiter(',')
      ->capture_default_str();
  verify->add_option("--vfunction", vb.vfunctions, "V-function(s): vogt, improved, custom:<csv>")
      ->delimiter(',')
      ->capture_default_str();
  verify->add_option("--seed", vb.seed, "64-bit seed")->capture_default_str();
  verify->add_option("--t-max", vb.t_max, "Last survival grid time")->capture_default_str();
  verify->add_option("--t-step", vb.t_step, "Survival grid spacing")->capture_default_str();
  verify->add_flag("--no-bridge", vb.no_bridge, "Disable the Brownian-bridge crossing correction");
  verify->add_option("--chunks", vb.chunks, "Work items paths are split into")
      ->capture_default_str();
  verify->add_option("--threads", vb.threads, "Worker threads (0 = hardware)")
      ->capture_default_str();
  add_format(verify, vb.format);

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "Re-run a manifest and verify its output checksum");
  replay->add_option("manifest", replay_path, "Manifest file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string subcommand = chosen->get_name();
  try {
    Output result;
    if (chosen == table) {
      result = do_table(table_args);
    } else if (chosen == bound) {
      result = do_bound(bound_args, bound_dim);
    } else if (chosen == zeros) {
      result = do_zeros(zeros_args);
    } else if (chosen == asym) {
      result = do_asymptotic(asym_args);
    } else if (chosen == verify) {
      result = do_verify_vbound(vb);
    } else {
      std::ifstream in(replay_path);
      if (!in) throw UsageError("cannot open manifest '" + replay_path + "'");
      const json manifest = json::parse(in, nullptr, false);
      if (manifest.is_discarded() || !manifest.contains("argv") ||
          !manifest.contains("output_checksum")) {
        throw UsageError("malformed manifest '" + replay_path + "'");
      }
      const auto argv = manifest["argv"].get<std::vector<std::string>>();
      std::ostringstream replay_out, replay_err;
      const int code = run(argv, replay_out, replay_err);
      const std::string checksum = "fnv1a64:" + fnv1a64_hex(replay_out.str());
      const bool match = checksum == manifest["output_checksum"].get<std::string>();
      out << replay_out.str();
      err << replay_err.str();
      err << "replay: checksum " << checksum << (match ? " matches" : " DIFFERS from")
          << " manifest\n";
      return match ? code : kExitAccuracy;
    }
    out << result.body;
    if (!manifest_path.empty()) {
      std::vector<std::string> inner;
      // Store the argv without the --manifest option itself.
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--manifest") {
          ++i;
          continue;
        }
        if (args[i].rfind("--manifest=", 0) == 0) continue;
        inner.push_back(args[i]);
      }
      std::ofstream mf(manifest_path);
      if (!mf) throw UsageError("cannot write manifest '" + manifest_path + "'");
      mf << make_manifest(subcommand, inner, result).dump(2) << '\n';
    }
    return result.code;
  } catch (const UsageError& e) {
    err << "hotspots " << subcommand << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "hotspots " << subcommand << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace hotspots::cli
