#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prodnorm/prodnorm.hpp"

namespace prodnorm::cli {
namespace {

using json = nlohmann::ordered_json;

/// Raised for malformed option values that CLI11 cannot check (exit 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A number printed with a fixed count of significant digits.
struct Rounded {
  double value;
  int digits;
};

using Cell = std::variant<std::monostate, double, std::int64_t, std::string, bool, Rounded>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Options {
  // Distribution parameters and output.
  int n = 1;
  double rho = 0.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  // Command specific.
  std::vector<double> xs;
  std::string grid;
  std::vector<double> qs;
  int k = 4;
  std::string route = "recursion";
  std::string rep = "r4";
  std::size_t count = 100000;
  std::string method = "quadrature";
  std::string config;
  bool full = false;
  double phi = 0.5;
  std::vector<double> gamma1s{-0.60, -0.55, -0.52, -0.51};
  int grid_m = 256;
  std::size_t wasserstein_count = 100000;
};

std::string format_double(double v) {
  if (std::isnan(v)) return {};
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_rounded(const Rounded& r) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%#.*g", r.digits, r.value);  // keeps trailing zeros
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return csv_quote(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const Rounded& v) const { return format_rounded(v); }
  };
  return std::visit(Visitor{}, c);
}

json json_cell(const Cell& c) {
  struct Visitor {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(double v) const { return std::isfinite(v) ? json(v) : json(nullptr); }
    json operator()(std::int64_t v) const { return v; }
    json operator()(const std::string& v) const { return v; }
    json operator()(bool v) const { return v; }
    json operator()(const Rounded& v) const { return std::stod(format_rounded(v)); }
  };
  return std::visit(Visitor{}, c);
}

std::string to_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + csv_quote(t.columns[i]);
  s += "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
    s += "\r\n";
  }
  return s;
}

std::string to_json_doc(const std::string& command, const json& params, const Table& t) {
  json doc;
  doc["command"] = command;
  doc["params"] = params;
  doc["columns"] = t.columns;
  json records = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = json_cell(row[i]);
    records.push_back(std::move(r));
  }
  doc["records"] = std::move(records);
  return doc.dump(2) + "\n";
}

void write_output(const Options& o, const std::string& content, std::ostream& out) {
  if (o.out.empty() || o.out == "-") {
    out << content;
    out.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(o.out);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + target.string() + ": " + ec.message());
  }
}

DistParams dist_params(const Options& o) {
  DistParams p{o.n, o.rho, o.sigma_x, o.sigma_y};
  p.validate();
  return p;
}

json dist_json(const Options& o) {
  return json{{"n", o.n}, {"rho", o.rho}, {"sigma_x", o.sigma_x}, {"sigma_y", o.sigma_y}};
}

std::vector<double> parse_grid(const std::string& spec) {
  // lo:hi:count, both ends included.
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("--grid expects lo:hi:count, got '" + spec + "'");
  double lo, hi;
  long count;
  try {
    std::size_t used = 0;
    lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("lo");
    hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("hi");
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw UsageError("--grid expects lo:hi:count, got '" + spec + "'");
  }
  if (!(hi > lo) || count < 2) throw UsageError("--grid needs hi > lo and count >= 2");
  std::vector<double> xs(count);
  for (long i = 0; i < count; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  xs.back() = hi;
  return xs;
}

std::vector<double> points(const Options& o, const std::string& default_grid) {
  if (!o.xs.empty()) return o.xs;
  return parse_grid(o.grid.empty() ? default_grid : o.grid);
}

// ---------------------------------------------------------------------------
// Commands. Each returns the table and fills the params object.

Table cmd_pdf(const Options& o, json& params) {
  const DistParams p = dist_params(o);
  params = dist_json(o);
  Table t{{"x", "pdf"}, {}};
  for (double x : points(o, "-4:4:161")) {
    double f;
    try {
      f = dist::pdf(p, x);
    } catch (const SingularityError&) {
      f = std::numeric_limits<double>::infinity();
    }
    t.rows.push_back({x, f});
  }
  return t;
}

Table cmd_cdf(const Options& o, json& params) {
  const DistParams p = dist_params(o);
  params = dist_json(o);
  Table t{{"x", "cdf", "survival"}, {}};
  for (double x : points(o, "-4:4:161")) t.rows.push_back({x, dist::cdf(p, x), dist::survival(p, x)});
  return t;
}

Table cmd_quantile(const Options& o, json& params) {
  const DistParams p = dist_params(o);
  params = dist_json(o);
  if (o.qs.empty()) throw UsageError("quantile needs at least one --q");
  Table t{{"q", "x"}, {}};
  for (double q : o.qs) t.rows.push_back({q, dist::quantile(p, q)});
  return t;
}

Table cmd_moments(const Options& o, json& params) {
  const DistParams p = dist_params(o);
  params = dist_json(o);
  params["k"] = o.k;
  params["route"] = o.route;
  if (o.k < 1) throw DomainError("moments: --k must be >= 1");
  std::vector<double> raw, central, kappa;
  if (o.route == "recursion" || o.route == "cumulants") {
    const auto m = o.route == "recursion" ? dist::moments_recursive(p, o.k) : dist::moments_from_cumulants(p, o.k);
    raw = m.raw;
    central = m.central;
    kappa = m.cumulants;
  } else {
    raw.assign(o.k + 1, 1.0);
    for (int j = 1; j <= o.k; ++j) {
      if (o.route == "hypergeometric") {
        raw[j] = dist::moments_hypergeometric(p, j).raw;
      } else if (o.route == "kan") {
        raw[j] = dist::moments_kan_n1(p, j);
      } else {
        raw[j] = dist::moment_rho0(p, j);
      }
    }
    central = dist::raw_to_central(raw);
    kappa = dist::raw_to_cumulants(raw);
  }
  Table t{{"k", "raw", "central", "cumulant"}, {}};
  for (int j = 1; j <= o.k; ++j) t.rows.push_back({std::int64_t{j}, raw[j], central[j], kappa[j]});
  return t;
}

Table cmd_mode(const Options& o, json& params) {
  const DistParams p = dist_params(o);
  params = dist_json(o);
  Cell closed, root, lo, hi, sharp;
  if (auto c = dist::mode_closed_form(p)) closed = *c;
  if (p.n >= 3) {
    const auto b = dist::mode_bounds(p);
    lo = b.lower;
    hi = b.upper;
    sharp = b.lower_sharp;
    if (p.rho != 0.0) root = dist::mode_by_root(p).mode;
  }
  Table t{{"mode", "closed_form", "root", "bound_lower", "bound_upper", "bound_lower_sharp"}, {}};
  t.rows.push_back({dist::mode(p), closed, root, lo, hi, sharp});
  return t;
}

Table cmd_median(const Options& o, json& params) {
  const DistParams p = dist_params(o);
  params = dist_json(o);
  Table t{{"median", "mean", "mode"}, {}};
  t.rows.push_back({dist::median(p), p.rho * p.s(), dist::mode(p)});
  return t;
}

Table cmd_stein(const Options& o, json& params) {
  const DistParams p = dist_params(o);
  params = dist_json(o);
  params["method"] = o.method;
  const stein::Method m = o.method == "quadrature" ? stein::Method::quadrature : stein::Method::monte_carlo;
  if (m == stein::Method::monte_carlo) {
    params["seed"] = o.seed;
    params["count"] = o.count;
  }
  Table t{{"test_function", "residual", "error", "method"}, {}};
  for (const auto& g : stein::default_suite()) {
    const auto r = stein::stein_residual(p, g, m, {o.seed, o.count});
    t.rows.push_back({r.test_function, r.residual, r.error, stein::to_string(r.method)});
  }
  return t;
}

struct AuditGrid {
  std::vector<int> n{1, 3, 5, 7, 10};
  std::vector<double> rho{0.1, 0.3, 0.5, 0.7, 0.9};
  double s = 1.0;
};

AuditGrid load_audit_grid(const std::string& path) {
  AuditGrid g;
  if (path.empty()) return g;
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read --config " + path);
  json j;
  try {
    j = json::parse(f);
    g.n = j.at("n").get<std::vector<int>>();
    g.rho = j.at("rho").get<std::vector<double>>();
    if (j.contains("s")) g.s = j.at("s").get<double>();
  } catch (const json::exception& e) {
    throw UsageError("bad audit config " + path + ": " + e.what());
  }
  return g;
}

Table cmd_audit(const Options& o, json& params) {
  const AuditGrid g = load_audit_grid(o.config);
  params = json{{"n", g.n}, {"rho", g.rho}, {"s", g.s}};
  Table t{{"n", "rho", "median", "mode", "mean", "check", "lhs", "rhs", "applicable", "pass"}, {}};
  for (int n : g.n) {
    for (double rho : g.rho) {
      const auto a = dist::median_conjecture_audit(DistParams::with_scale(n, rho, g.s));
      for (const auto& b : a.bounds) {
        t.rows.push_back({std::int64_t{n}, rho, a.median, a.mode, a.mean, b.name, b.lhs, b.rhs, b.applicable, b.pass});
      }
      t.rows.push_back({std::int64_t{n}, rho, a.median, a.mode, a.mean, std::string("mode < Med < mean"), a.mode,
                        a.mean, true, a.mean_median_mode_order});
    }
  }
  return t;
}

Table cmd_table1(const Options& o, json& params) {
  const AuditGrid g;
  params = json{{"n", g.n}, {"rho", g.rho}, {"s", 1.0}, {"significant_digits", 3}};
  Table t;
  if (o.full) {
    t.columns = {"n", "rho", "median", "median_3sf"};
    for (int n : g.n) {
      for (double rho : g.rho) {
        const double m = dist::median(DistParams::with_scale(n, rho, 1.0));
        t.rows.push_back({std::int64_t{n}, rho, m, Rounded{m, 3}});
      }
    }
    return t;
  }
  t.columns = {"n"};
  for (double rho : g.rho) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "rho_%g", rho);
    t.columns.push_back(buf);
  }
  for (int n : g.n) {
    std::vector<Cell> row{std::int64_t{n}};
    for (double rho : g.rho) row.push_back(Rounded{dist::median(DistParams::with_scale(n, rho, 1.0)), 3});
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_chaos_sweep(const Options& o, json& params) {
  params = json{{"phi", o.phi}, {"gamma1", o.gamma1s}, {"grid_m", o.grid_m}, {"seed", o.seed},
                {"wasserstein_count", o.wasserstein_count}};
  chaos::SweepOptions so;
  so.seed = o.seed;
  so.wasserstein_count = o.wasserstein_count;
  so.threads = worker_threads();
  const auto rows = chaos::chaos_sweep(o.phi, o.gamma1s, o.grid_m, so);
  Table t{{"gamma1", "phi", "grid_m", "kappa2_gap", "kappa3_gap", "kappa4_gap", "kappa5_gap", "kappa6_gap", "M",
           "wasserstein_est"},
          {}};
  for (const auto& r : rows) {
    std::vector<Cell> row{r.gamma1, r.phi, std::int64_t{r.grid_m}};
    for (double gap : r.gaps) row.push_back(gap);
    row.push_back(r.M);
    row.push_back(r.wasserstein_est);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string cmd_sample(const Options& o) {
  const DistParams p = dist_params(o);
  const auto rep = sampling::representation_from_string(o.rep);
  const auto batch = sampling::sample(p, rep, o.seed, o.count, worker_threads());
  std::ostringstream os(std::ios::binary);
  if (o.format == "binary") {
    sampling::write_binary(os, batch.values);
  } else if (o.format == "csv") {
    sampling::write_csv(os, batch.values);
  } else {
    json params = dist_json(o);
    params["rep"] = sampling::to_string(rep);
    params["seed"] = o.seed;
    params["count"] = o.count;
    Table t{{"value"}, {}};
    t.rows.reserve(batch.values.size());
    for (double v : batch.values) t.rows.push_back({v});
    return to_json_doc("sample", params, t);
  }
  return os.str();
}

void emit_error(std::ostream& err, const std::string& command, const std::string& type, const std::string& msg) {
  json e{{"error", {{"type", type}, {"command", command}, {"message", msg}}}};
  err << e.dump() << "\n";
  err.flush();
}

}  // namespace

unsigned worker_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("PRODNORM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && v > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Product-normal distribution toolkit", "prodnorm"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Expand all help");

  const std::vector<std::string> table_formats{"csv", "json"};
  auto common = [&](CLI::App* sub, bool dist) {
    if (dist) {
      sub->add_option("--n", o.n, "Number of averaged products")->capture_default_str();
      sub->add_option("--rho", o.rho, "Correlation in (-1, 1)")->capture_default_str();
      sub->add_option("--sigma-x", o.sigma_x, "Standard deviation of X")->capture_default_str();
      sub->add_option("--sigma-y", o.sigma_y, "Standard deviation of Y")->capture_default_str();
    }
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_option("--out", o.out, "Output file (stdout when omitted)");
  };
  auto table_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember(table_formats))->capture_default_str();
  };
  auto grid_opts = [&](CLI::App* sub) {
    sub->add_option("--x", o.xs, "Evaluation points");
    sub->add_option("--grid", o.grid, "lo:hi:count, both ends included (default -4:4:161)");
  };

  auto* pdf = app.add_subcommand("pdf", "Density on points or a grid");
  common(pdf, true);
  table_format(pdf);
  grid_opts(pdf);

  auto* cdf = app.add_subcommand("cdf", "Distribution and survival functions");
  common(cdf, true);
  table_format(cdf);
  grid_opts(cdf);

  auto* quantile = app.add_subcommand("quantile", "Quantile function");
  common(quantile, true);
  table_format(quantile);
  quantile->add_option("--q", o.qs, "Probabilities in (0, 1)")->required();

  auto* moments = app.add_subcommand("moments", "Raw, central moments and cumulants up to order k");
  common(moments, true);
  table_format(moments);
  moments->add_option("--k", o.k, "Highest order")->capture_default_str();
  moments->add_option("--route", o.route, "recursion, cumulants, hypergeometric, kan (n = 1) or rho0")
      ->check(CLI::IsMember({"recursion", "cumulants", "hypergeometric", "kan", "rho0"}))
      ->capture_default_str();

  auto* mode = app.add_subcommand("mode", "Mode with closed form, root and bounds where defined");
  common(mode, true);
  table_format(mode);

  auto* median = app.add_subcommand("median", "Median, mean and mode");
  common(median, true);
  table_format(median);

  auto* sample = app.add_subcommand("sample", "Exact draws");
  common(sample, true);
  sample->add_option("--format", o.format, "csv, json or binary")
      ->check(CLI::IsMember({"csv", "json", "binary"}))
      ->capture_default_str();
  sample->add_option("--rep", o.rep, "r1, r2, r4, r5 (even n) or chaos")->capture_default_str();
  sample->add_option("--count", o.count, "Number of draws")->capture_default_str();

  auto* stein = app.add_subcommand("stein", "Stein residuals over the shipped test-function suite");
  common(stein, true);
  table_format(stein);
  stein->add_option("--method", o.method, "quadrature or monte-carlo")
      ->check(CLI::IsMember({"quadrature", "monte-carlo"}))
      ->capture_default_str();
  stein->add_option("--count", o.count, "Monte-Carlo draws")->capture_default_str();

  auto* audit = app.add_subcommand("audit", "Conjectured median bounds over a grid");
  common(audit, false);
  table_format(audit);
  audit->add_option("--config", o.config, "JSON grid {\"n\": [...], \"rho\": [...], \"s\": 1}");

  auto* sweep = app.add_subcommand("chaos-sweep", "Six-cumulant gap of the generalized Rosenblatt variable");
  common(sweep, false);
  table_format(sweep);
  sweep->add_option("--phi", o.phi, "phi in (0, 1)")->capture_default_str();
  sweep->add_option("--gamma1", o.gamma1s, "gamma1 values in (-1, -1/2)")->capture_default_str();
  sweep->add_option("--grid-m", o.grid_m, "Cells per kernel axis")->capture_default_str();
  sweep->add_option("--wasserstein-count", o.wasserstein_count, "Draws per W1 estimate, 0 to skip")
      ->capture_default_str();

  auto* table1 = app.add_subcommand("table1", "Median grid, n in {1,3,5,7,10} by rho in {0.1,...,0.9}, s = 1");
  common(table1, false);
  table_format(table1);
  table1->add_flag("--full", o.full, "Long form with full-precision medians");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    std::string content;
    if (command == "sample") {
      if (o.format == "binary" && (o.out.empty() || o.out == "-")) throw UsageError("binary output needs --out");
      content = cmd_sample(o);
    } else {
      json params;
      Table t;
      if (command == "pdf") t = cmd_pdf(o, params);
      else if (command == "cdf") t = cmd_cdf(o, params);
      else if (command == "quantile") t = cmd_quantile(o, params);
      else if (command == "moments") t = cmd_moments(o, params);
      else if (command == "mode") t = cmd_mode(o, params);
      else if (command == "median") t = cmd_median(o, params);
      else if (command == "stein") t = cmd_stein(o, params);
      else if (command == "audit") t = cmd_audit(o, params);
      else if (command == "chaos-sweep") t = cmd_chaos_sweep(o, params);
      else t = cmd_table1(o, params);
      content = o.format == "json" ? to_json_doc(command, params, t) : to_csv(t);
    }
    write_output(o, content, out);
  } catch (const UsageError& e) {
    emit_error(err, command, "UsageError", e.what());
    return kExitUsage;
  } catch (const SingularityError& e) {
    emit_error(err, command, "SingularityError", e.what());
    return kExitFailure;
  } catch (const DomainError& e) {
    emit_error(err, command, "DomainError", e.what());
    return kExitFailure;
  } catch (const RangeError& e) {
    emit_error(err, command, "RangeError", e.what());
    return kExitFailure;
  } catch (const PrecisionLossError& e) {
    emit_error(err, command, "PrecisionLossError", e.what());
    return kExitFailure;
  } catch (const ConvergenceError& e) {
    emit_error(err, command, "ConvergenceError", e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    emit_error(err, command, "Error", e.what());
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace prodnorm::cli
