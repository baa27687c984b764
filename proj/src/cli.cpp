#include "bl/cli.hpp"

#include <CLI11.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "bl/io.hpp"
#include "bl/mixing.hpp"
#include "bl/oracle.hpp"
#include "bl/spectral.hpp"
#include "bl/symmetry.hpp"
#include "bl/verify.hpp"

namespace bl {

namespace {

using nlohmann::json;

struct Options {
  int n1 = 0, n2 = 0, nw = 0;
  std::string backend;  // resolved to "exact" or "float"
  std::string format = "csv";
  std::string output;
  double exact_cost_limit = 2e8;

  int k = 0;
  std::string form = "hypergeometric";
  long m = 1;
  long m_max = 0;
  long m_step = 1;
  int start = 0;
  std::vector<double> c_values;
  std::string kind = "upper";
  double constant = 1.0;
  long walkers = 100000;
  std::uint64_t seed = 1;
  int max_n = 12;
};

void add_model_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--n1", o.n1, "capacity of urn 1")->required();
  cmd->add_option("--n2", o.n2, "capacity of urn 2")->required();
  cmd->add_option("--nw", o.nw, "number of white balls")->required();
}

void add_io_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--backend", o.backend, "scalar backend (exact|float)")
      ->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--format", o.format, "output format (csv|json)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", o.output, "write the document to a file instead of stdout");
  cmd->add_option("--exact-cost-limit", o.exact_cost_limit,
                  "reject exact-backend runs whose m*states^2 cost estimate exceeds this");
}

std::string resolve_backend(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("BL_BACKEND")) {
    const std::string v(env);
    if (v == "exact" || v == "float") return v;
  }
  return "float";
}

ModelParams resolve_model(const Options& o, std::ostream& err) {
  try {
    return new_model(o.n1, o.n2, o.nw);
  } catch (const NeedsCanonicalization&) {
    const auto canon = canonicalize(o.n1, o.n2, o.nw);
    err << "note: model relabeled to canonical form (" << canon.params.n1 << ","
        << canon.params.n2 << "," << canon.params.nw << "): " << canon.map.description() << "\n";
    return canon.params;
  }
}

void guard_exact_cost(const Options& o, double cost) {
  if (cost > o.exact_cost_limit)
    throw std::domain_error(
        "exact backend rejected: cost estimate " + std::to_string(cost) + " exceeds limit " +
        std::to_string(o.exact_cost_limit) + " (use --backend float or raise --exact-cost-limit)");
}

json params_json(const ModelParams& p, const std::string& backend) {
  return json{{"n1", p.n1}, {"n2", p.n2}, {"nw", p.nw}, {"backend", backend}};
}

struct Document {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // CSV cells; exact values "num/den"
  json data;                                   // JSON payload
};

void emit(const Options& o, const ModelParams& p, const std::string& command,
          const std::string& backend, const Document& doc, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) throw std::domain_error("cannot open output file: " + o.output);
    sink = &file;
  }
  if (o.format == "json") {
    const json envelope{{"command", command}, {"params", params_json(p, backend)}, {"data", doc.data}};
    *sink << envelope.dump(2) << '\n';
  } else {
    write_csv_row(*sink, doc.header);
    for (const auto& row : doc.rows) write_csv_row(*sink, row);
  }
}

std::string value_str(const Rational& r, bool exact) {
  return exact ? r.str() : double_repr(r.to_double());
}

json value_json(const Rational& r, bool exact) {
  return exact ? json(r.str()) : json(r.to_double());
}

int cmd_spectrum(const Options& o, std::ostream& out, std::ostream& err) {
  const auto params = resolve_model(o, err);
  const std::string backend = resolve_backend(o.backend);
  const bool exact = backend == "exact";
  const auto lams = spectrum(params);
  Document doc;
  doc.header = {"k", "lambda"};
  doc.data = json::array();
  for (int k = 0; k < static_cast<int>(lams.size()); ++k) {
    doc.rows.push_back({std::to_string(k), value_str(lams[k], exact)});
    doc.data.push_back({{"k", k}, {"lambda", value_json(lams[k], exact)}});
  }
  emit(o, params, "spectrum", backend, doc, out);
  return 0;
}

int cmd_eigvec(const Options& o, std::ostream& out, std::ostream& err) {
  const auto params = resolve_model(o, err);
  const std::string backend = resolve_backend(o.backend);
  const bool exact = backend == "exact";
  if (o.k < 0 || o.k > params.nw) throw std::out_of_range("eigvec: --k out of range 0..nw");
  std::vector<Rational> vec;
  if (o.form == "hypergeometric")
    vec = c_hypergeometric(params, o.k);
  else if (o.form == "pascal")
    vec = pascal_to_c(b_coefficients(params, o.k));
  else
    vec = b_coefficients(params, o.k).b;
  Document doc;
  doc.header = {"i", "value"};
  doc.data = json::array();
  for (int i = 0; i < static_cast<int>(vec.size()); ++i) {
    doc.rows.push_back({std::to_string(i), value_str(vec[i], exact)});
    doc.data.push_back({{"i", i}, {"value", value_json(vec[i], exact)}});
  }
  emit(o, params, "eigvec", backend, doc, out);
  return 0;
}

int cmd_stationary(const Options& o, std::ostream& out, std::ostream& err) {
  const auto params = resolve_model(o, err);
  const std::string backend = resolve_backend(o.backend);
  const bool exact = backend == "exact";
  const auto pi = stationary_distribution(params);
  Document doc;
  doc.header = {"i", "pi"};
  doc.data = json::array();
  for (int i = 0; i < static_cast<int>(pi.size()); ++i) {
    doc.rows.push_back({std::to_string(i), value_str(pi[i], exact)});
    doc.data.push_back({{"i", i}, {"pi", value_json(pi[i], exact)}});
  }
  emit(o, params, "stationary", backend, doc, out);
  return 0;
}

int cmd_power(const Options& o, std::ostream& out, std::ostream& err) {
  const auto params = resolve_model(o, err);
  const std::string backend = resolve_backend(o.backend);
  const bool exact = backend == "exact";
  if (o.m < 0) throw std::invalid_argument("power: --m must be >= 0");
  const auto sys = symmetric_system(params);
  Document doc;
  doc.header = {"i", "j", "value"};
  doc.data = json::array();
  const int s = params.states();
  if (exact) {
    guard_exact_cost(o, static_cast<double>(o.m) * s * s);
    const auto t_m = spectral_power(sys, o.m);
    for (int i = 0; i < s; ++i) {
      json row = json::array();
      for (int j = 0; j < s; ++j) {
        doc.rows.push_back({std::to_string(i), std::to_string(j), t_m(i, j).str()});
        row.push_back(t_m(i, j).str());
      }
      doc.data.push_back(row);
    }
  } else {
    const auto t_m = spectral_power_double(sys, o.m);
    for (int i = 0; i < s; ++i) {
      json row = json::array();
      for (int j = 0; j < s; ++j) {
        doc.rows.push_back({std::to_string(i), std::to_string(j), double_repr(t_m(i, j))});
        row.push_back(t_m(i, j));
      }
      doc.data.push_back(row);
    }
  }
  emit(o, params, "power", backend, doc, out);
  return 0;
}

int cmd_tv_curve(const Options& o, std::ostream& out, std::ostream& err) {
  const auto params = resolve_model(o, err);
  const std::string backend = resolve_backend(o.backend);
  const bool exact = backend == "exact";
  if (o.m_max < 0) throw std::invalid_argument("tv-curve: --m-max must be >= 0");
  if (o.m_step < 1) throw std::invalid_argument("tv-curve: --m-step must be >= 1");
  if (o.start < 0 || o.start > params.nw)
    throw std::out_of_range("tv-curve: --start out of range 0..nw");
  std::vector<long> steps;
  for (long m = 0; m <= o.m_max; m += o.m_step) steps.push_back(m);
  const auto sys = symmetric_system(params);
  Document doc;
  doc.header = {"m", "tv"};
  doc.data = json::array();
  if (exact) {
    double cost = 0;
    for (const long m : steps) cost += static_cast<double>(m) * params.states() * params.states();
    guard_exact_cost(o, cost);
    const auto curve = tv_curve_exact(sys, o.start, steps);
    for (std::size_t idx = 0; idx < steps.size(); ++idx) {
      doc.rows.push_back({std::to_string(steps[idx]), curve.tv[idx].str()});
      doc.data.push_back({{"m", steps[idx]}, {"tv", curve.tv[idx].str()}});
    }
  } else {
    const auto curve = tv_curve(sys, o.start, steps);
    for (std::size_t idx = 0; idx < steps.size(); ++idx) {
      doc.rows.push_back({std::to_string(steps[idx]), double_repr(curve.tv[idx])});
      doc.data.push_back({{"m", steps[idx]}, {"tv", curve.tv[idx]}});
    }
  }
  emit(o, params, "tv-curve", backend, doc, out);
  return 0;
}

int cmd_bounds(const Options& o, std::ostream& out, std::ostream& err) {
  const auto params = resolve_model(o, err);
  const std::string backend = resolve_backend(o.backend);
  const BoundKind kind = (o.kind == "upper") ? BoundKind::kUpper : BoundKind::kLower;
  std::vector<double> cs = o.c_values;
  if (cs.empty()) cs = {0.0, 1.0, 2.0, 3.0};
  Document doc;
  doc.header = {"c", "m", "bound"};
  doc.data = json::array();
  for (const double c : cs) {
    const auto spec = mixing_bound(params, kind, c, o.constant);
    doc.rows.push_back({double_repr(c), std::to_string(spec.m), double_repr(spec.bound)});
    doc.data.push_back({{"c", c}, {"m", spec.m}, {"bound", spec.bound}});
  }
  emit(o, params, "bounds", backend, doc, out);
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  const auto results = run_verification(o.max_n);
  bool all_pass = true;
  for (const auto& r : results) {
    if (r.pass) {
      out << "PASS " << r.name << " (" << r.cases << " cases)\n";
    } else {
      out << "FAIL " << r.name << " (" << r.cases << " cases): " << r.detail << "\n";
      all_pass = false;
    }
  }
  return all_pass ? 0 : 1;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto params = resolve_model(o, err);
  if (o.m < 0) throw std::invalid_argument("simulate: --m must be >= 0");
  if (o.start < 0 || o.start > params.nw)
    throw std::out_of_range("simulate: --start out of range 0..nw");
  auto report = simulate(params, o.start, o.m, o.walkers, o.seed);
  const auto exact_law = distribution_at_double(symmetric_system(params), o.start, o.m);
  report.tv_vs_exact = tv_distance(report.empirical, exact_law);

  json data{{"start", report.start},
            {"steps", report.steps},
            {"walkers", report.walkers},
            {"seed", report.seed},
            {"counts", report.counts},
            {"empirical", report.empirical},
            {"tv_vs_exact", report.tv_vs_exact}};
  const json envelope{{"command", "simulate"},
                      {"params", params_json(params, "float")},
                      {"data", data}};
  std::ofstream file;
  std::ostream* sink = &out;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) throw std::domain_error("cannot open output file: " + o.output);
    sink = &file;
  }
  *sink << envelope.dump(2) << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact spectral toolkit for the Bernoulli-Laplace two-urn chain"};
  app.require_subcommand(1);
  Options o;

  auto* spectrum_cmd = app.add_subcommand("spectrum", "closed-form eigenvalues");
  add_model_flags(spectrum_cmd, o);
  add_io_flags(spectrum_cmd, o);

  auto* eigvec_cmd = app.add_subcommand("eigvec", "eigenvector coefficients");
  add_model_flags(eigvec_cmd, o);
  add_io_flags(eigvec_cmd, o);
  eigvec_cmd->add_option("--k", o.k, "eigen-index")->required();
  eigvec_cmd->add_option("--form", o.form, "construction route")
      ->check(CLI::IsMember({"pascal", "hypergeometric", "b"}));

  auto* stationary_cmd = app.add_subcommand("stationary", "stationary distribution");
  add_model_flags(stationary_cmd, o);
  add_io_flags(stationary_cmd, o);

  auto* power_cmd = app.add_subcommand("power", "m-step transition matrix");
  add_model_flags(power_cmd, o);
  add_io_flags(power_cmd, o);
  power_cmd->add_option("--m", o.m, "step count")->required();

  auto* tv_cmd = app.add_subcommand("tv-curve", "total-variation distance to stationarity");
  add_model_flags(tv_cmd, o);
  add_io_flags(tv_cmd, o);
  tv_cmd->add_option("--start", o.start, "initial state");
  tv_cmd->add_option("--m-max", o.m_max, "largest step count")->required();
  tv_cmd->add_option("--m-step", o.m_step, "stride through step counts");

  auto* bounds_cmd = app.add_subcommand("bounds", "mixing-time bound step counts and values");
  add_model_flags(bounds_cmd, o);
  add_io_flags(bounds_cmd, o);
  bounds_cmd->add_option("--kind", o.kind, "bound kind")->check(CLI::IsMember({"upper", "lower"}));
  bounds_cmd->add_option("--c", o.c_values, "c parameters (default 0 1 2 3)");
  bounds_cmd->add_option("--constant", o.constant, "universal constant (A or b)");

  auto* verify_cmd = app.add_subcommand("verify", "run the exact invariant suite");
  verify_cmd->add_option("--max-n", o.max_n, "largest total ball count to enumerate");

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo walker histogram (JSON)");
  add_model_flags(simulate_cmd, o);
  simulate_cmd->add_option("--output", o.output, "write the document to a file instead of stdout");
  simulate_cmd->add_option("--start", o.start, "initial state");
  simulate_cmd->add_option("--m", o.m, "step count")->required();
  simulate_cmd->add_option("--walkers", o.walkers, "number of independent walkers");
  simulate_cmd->add_option("--seed", o.seed, "RNG seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (spectrum_cmd->parsed()) return cmd_spectrum(o, out, err);
    if (eigvec_cmd->parsed()) return cmd_eigvec(o, out, err);
    if (stationary_cmd->parsed()) return cmd_stationary(o, out, err);
    if (power_cmd->parsed()) return cmd_power(o, out, err);
    if (tv_cmd->parsed()) return cmd_tv_curve(o, out, err);
    if (bounds_cmd->parsed()) return cmd_bounds(o, out, err);
    if (verify_cmd->parsed()) return cmd_verify(o, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace bl
