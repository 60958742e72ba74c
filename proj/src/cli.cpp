#include "ouheat/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "ouheat/geodesic.hpp"
#include "ouheat/kernel.hpp"
#include "ouheat/operator.hpp"
#include "ouheat/verify.hpp"

namespace ouheat::cli {

namespace {

using nlohmann::json;

std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid number: " + item);
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) {
      throw std::invalid_argument("invalid number: " + item);
    }
    out.push_back(v);
  }
  if (out.empty()) {
    throw std::invalid_argument("expected at least one number");
  }
  return out;
}

struct OperatorSource {
  std::string inline_json;
  std::string file_path;

  AnyOperator load() const {
    if (inline_json.empty() == file_path.empty()) {
      throw std::invalid_argument(
          "exactly one of --op and --op-file is required");
    }
    if (!inline_json.empty()) {
      return parse_operator(inline_json);
    }
    std::ifstream in(file_path);
    if (!in) {
      throw std::invalid_argument("cannot read operator file: " + file_path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_operator(buffer.str());
  }

  OUOperator load_scalar() const {
    AnyOperator any = load();
    if (const auto* op = std::get_if<OUOperator>(&any)) {
      return *op;
    }
    throw std::invalid_argument(
        "product operators are only supported by kernel and sample");
  }
};

void add_operator_flags(CLI::App* cmd, OperatorSource& src) {
  cmd->add_option("--op", src.inline_json, "operator as inline JSON");
  cmd->add_option("--op-file", src.file_path, "path to an operator JSON file");
}

json regime_json(const Regime& r) {
  return json{{"regime", regime_name(r.kind)},
              {"lambda0", r.lambda0},
              {"discriminant", r.discriminant}};
}

json context_json(const VerificationReport& r) {
  json ctx = json::object();
  for (const auto& [k, v] : r.context) ctx[k] = v;
  return ctx;
}

int emit_singular_time(const SingularTimeError& e, std::ostream& out) {
  json doc{{"error", "singular_time"},
           {"k", e.k()},
           {"t", e.t()},
           {"t_singular", e.t_singular()},
           {"window", e.window()},
           {"message", e.what()}};
  out << doc.dump() << "\n";
  return 1;
}

struct ClassifyCmd {
  OperatorSource src;
  double eps_class = 1e-10;

  int execute(std::ostream& out) const {
    const Regime r = classify(src.load_scalar(), eps_class);
    out << regime_json(r).dump() << "\n";
    return 0;
  }
};

struct GeodesicCmd {
  OperatorSource src;
  double x0 = 0.0;
  double x1 = 0.0;
  int samples = 0;
  std::string format = "json";

  int execute(std::ostream& out) const {
    const OUOperator op = src.load_scalar();
    const GeodesicResult result = geodesic(op, x0, x1);

    if (const auto* path = std::get_if<GeodesicPath>(&result)) {
      if (format == "csv" && samples > 0) {
        out << "s,x\n";
        for (int i = 0; i <= samples; ++i) {
          const double s = static_cast<double>(i) / samples;
          out << csv_number(s) << "," << csv_number(geodesic_eval(*path, s))
              << "\n";
        }
        return 0;
      }
      json doc{{"result", "unique"},
               {"regime", regime_name(path->regime.kind)},
               {"x0", path->x0},
               {"x1", path->x1},
               {"shift", path->shift}};
      if (samples > 0) {
        json rows = json::array();
        for (int i = 0; i <= samples; ++i) {
          const double s = static_cast<double>(i) / samples;
          rows.push_back(json::array({s, geodesic_eval(*path, s)}));
        }
        doc["samples"] = rows;
      }
      out << doc.dump() << "\n";
      return 0;
    }
    if (const auto* family = std::get_if<SingularFamily>(&result)) {
      const double forced = family_eval(*family, 0.0, 1.0);
      json doc{{"result", "family"},
               {"k", family->k},
               {"x0", family->x0},
               {"shift", family->shift},
               {"forced_endpoint", forced}};
      out << doc.dump() << "\n";
      return 0;
    }
    const auto& none = std::get<NoSolution>(result);
    json doc{{"result", "no_solution"},
             {"k", none.k},
             {"required_endpoint", none.required_endpoint}};
    out << doc.dump() << "\n";
    return 0;
  }
};

struct KernelCmd {
  OperatorSource src;
  double t = 0.0;
  std::string x_text;
  std::string x0_text;

  int execute(std::ostream& out) const {
    const AnyOperator any = src.load();
    const std::vector<double> xs = parse_csv_doubles(x_text);
    const std::vector<double> x0s = parse_csv_doubles(x0_text);

    double log_p = 0.0, log_p_delta = 0.0;
    if (const auto* op = std::get_if<OUOperator>(&any)) {
      if (xs.size() != 1 || x0s.size() != 1) {
        throw std::invalid_argument("scalar operator takes scalar x and x0");
      }
      log_p = log_kernel(*op, t, xs[0], x0s[0]);
      log_p_delta =
          log_kernel(*op, t, xs[0], x0s[0], KernelNormalization::Delta);
    } else {
      const auto& pop = std::get<ProductOperator>(any);
      Eigen::VectorXd x(static_cast<Eigen::Index>(xs.size()));
      Eigen::VectorXd x0(static_cast<Eigen::Index>(x0s.size()));
      for (std::size_t i = 0; i < xs.size(); ++i) x(static_cast<Eigen::Index>(i)) = xs[i];
      for (std::size_t i = 0; i < x0s.size(); ++i) x0(static_cast<Eigen::Index>(i)) = x0s[i];
      log_p = log_kernel_nd(pop, t, x, x0);
      log_p_delta = log_kernel_nd(pop, t, x, x0, KernelNormalization::Delta);
    }
    json doc{{"t", t},
             {"x", xs.size() == 1 ? json(xs[0]) : json(xs)},
             {"x0", x0s.size() == 1 ? json(x0s[0]) : json(x0s)},
             {"log_p", log_p},
             {"log_p_delta", log_p_delta},
             {"p", std::exp(log_p)}};
    out << doc.dump() << "\n";
    return 0;
  }
};

struct SingularTimesCmd {
  OperatorSource src;
  double t_max = 0.0;

  int execute(std::ostream& out) const {
    const OUOperator op = src.load_scalar();
    const Regime r = classify(op);
    json doc{{"regime", regime_name(r.kind)},
             {"lambda0", r.lambda0},
             {"t_max", t_max},
             {"singular_times", singular_times(op, t_max)}};
    out << doc.dump() << "\n";
    return 0;
  }
};

struct SampleCmd {
  OperatorSource src;
  std::string t_text;
  std::string x_text;
  std::string x0_text = "0";
  int samples = 50;
  std::string format = "csv";

  int execute(std::ostream& out) const {
    const AnyOperator any = src.load();
    const std::vector<double> ts = parse_csv_doubles(t_text);
    const std::vector<double> xs = parse_csv_doubles(x_text);
    const std::vector<double> x0v = parse_csv_doubles(x0_text);
    if (ts.size() > 2 || xs.size() > 2 || x0v.size() != 1) {
      throw std::invalid_argument(
          "sample takes --t lo[,hi], --x lo[,hi] and scalar --x0");
    }
    if (samples < 1) {
      throw std::invalid_argument("--samples must be positive");
    }
    const double x0 = x0v[0];

    const auto grid = [&](const std::vector<double>& range) {
      std::vector<double> g;
      if (range.size() == 1) {
        g.push_back(range[0]);
        return g;
      }
      for (int i = 0; i <= samples; ++i) {
        g.push_back(range[0] +
                    (range[1] - range[0]) * static_cast<double>(i) / samples);
      }
      return g;
    };

    const auto eval = [&](double t, double x) {
      if (const auto* op = std::get_if<OUOperator>(&any)) {
        return log_kernel(*op, t, x, x0);
      }
      const auto& pop = std::get<ProductOperator>(any);
      const auto n = static_cast<Eigen::Index>(pop.factors.size());
      // Isotropic slice: every coordinate takes the scalar grid value.
      return log_kernel_nd(pop, t, Eigen::VectorXd::Constant(n, x),
                           Eigen::VectorXd::Constant(n, x0));
    };

    json rows = json::array();
    const bool csv = format == "csv";
    if (csv) out << "t,x,x0,log_p\n";
    for (double t : grid(ts)) {
      for (double x : grid(xs)) {
        double lp = 0.0;
        try {
          lp = eval(t, x);
        } catch (const SingularTimeError&) {
          continue;  // grid point inside a singular window: no finite value
        }
        if (csv) {
          out << csv_number(t) << "," << csv_number(x) << "," << csv_number(x0)
              << "," << csv_number(lp) << "\n";
        } else {
          rows.push_back(json::array({t, x, x0, lp}));
        }
      }
    }
    if (!csv) {
      out << json{{"rows", rows}}.dump() << "\n";
    }
    return 0;
  }
};

struct VerifyCmd {
  OperatorSource src;
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::uint64_t paths = 20000;
  double dt = 1e-3;

  int execute(std::ostream& out) const {
    const OUOperator op = src.load_scalar();
    SuiteOptions options;
    options.seed = seed;
    options.paths = paths;
    options.dt = dt;
    const std::vector<VerificationReport> reports =
        run_suite(op, suite, options);
    bool all_passed = true;
    json rows = json::array();
    for (const auto& r : reports) {
      all_passed = all_passed && r.passed;
      rows.push_back(json{{"name", r.name},
                          {"measured", r.measured},
                          {"tolerance", r.tolerance},
                          {"passed", r.passed},
                          {"context", context_json(r)}});
    }
    json doc{{"op", json::parse(to_json_string(op))},
             {"suite", suite},
             {"seed", seed},
             {"passed", all_passed},
             {"reports", rows}};
    out << doc.dump() << "\n";
    return all_passed ? 0 : 3;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Closed-form geodesics and heat kernels of perturbed "
               "Ornstein-Uhlenbeck operators, with verification oracles"};
  app.require_subcommand(1);

  ClassifyCmd classify_cmd;
  auto* c_classify = app.add_subcommand(
      "classify", "regime classification of a 1-d operator");
  add_operator_flags(c_classify, classify_cmd.src);
  c_classify->add_option("--eps-class", classify_cmd.eps_class,
                         "relative tolerance of the critical band");

  GeodesicCmd geodesic_cmd;
  auto* c_geodesic = app.add_subcommand(
      "geodesic", "two-point boundary geodesic classification");
  add_operator_flags(c_geodesic, geodesic_cmd.src);
  c_geodesic->add_option("--x0", geodesic_cmd.x0, "left endpoint")->required();
  c_geodesic->add_option("--x1", geodesic_cmd.x1, "right endpoint")->required();
  c_geodesic->add_option("--samples", geodesic_cmd.samples,
                         "sample the path at this many intervals");
  c_geodesic->add_option("--format", geodesic_cmd.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  KernelCmd kernel_cmd;
  auto* c_kernel =
      app.add_subcommand("kernel", "heat kernel value at (t, x, x0)");
  add_operator_flags(c_kernel, kernel_cmd.src);
  c_kernel->add_option("--t", kernel_cmd.t, "time")->required();
  c_kernel->add_option("--x", kernel_cmd.x_text, "x (csv for product operators)")
      ->required();
  c_kernel
      ->add_option("--x0", kernel_cmd.x0_text, "x0 (csv for product operators)")
      ->required();

  SingularTimesCmd singular_cmd;
  auto* c_singular = app.add_subcommand(
      "singular-times", "singular times k pi / lambda0 up to --t");
  add_operator_flags(c_singular, singular_cmd.src);
  c_singular->add_option("--t", singular_cmd.t_max, "upper bound")->required();

  SampleCmd sample_cmd;
  auto* c_sample = app.add_subcommand(
      "sample", "CSV grid of log-kernel values for plotting");
  add_operator_flags(c_sample, sample_cmd.src);
  c_sample->add_option("--t", sample_cmd.t_text, "time or time range lo,hi")
      ->required();
  c_sample->add_option("--x", sample_cmd.x_text, "x or x range lo,hi")
      ->required();
  c_sample->add_option("--x0", sample_cmd.x0_text, "fixed x0");
  c_sample->add_option("--samples", sample_cmd.samples,
                       "grid intervals per axis");
  c_sample->add_option("--format", sample_cmd.format, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));

  VerifyCmd verify_cmd;
  auto* c_verify =
      app.add_subcommand("verify", "run oracle suites against an operator");
  add_operator_flags(c_verify, verify_cmd.src);
  c_verify->add_option(
      "--suite", verify_cmd.suite,
      "pde | ode | chapman | delta | mc | shooting | all");
  c_verify->add_option("--seed", verify_cmd.seed, "RNG seed");
  c_verify->add_option("--paths", verify_cmd.paths, "Monte Carlo paths");
  c_verify->add_option("--dt", verify_cmd.dt, "Monte Carlo step size");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (c_classify->parsed()) return classify_cmd.execute(out);
    if (c_geodesic->parsed()) return geodesic_cmd.execute(out);
    if (c_kernel->parsed()) return kernel_cmd.execute(out);
    if (c_singular->parsed()) return singular_cmd.execute(out);
    if (c_sample->parsed()) return sample_cmd.execute(out);
    if (c_verify->parsed()) return verify_cmd.execute(out);
  } catch (const SingularTimeError& e) {
    return emit_singular_time(e, out);
  } catch (const std::domain_error& e) {
    json doc{{"error", "domain"}, {"message", e.what()}};
    out << doc.dump() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 2;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace ouheat::cli
