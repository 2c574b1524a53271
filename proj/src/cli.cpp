// Copyright 2026 The ldpu Authors
// SPDX-License-Identifier: Apache-2.0

#include "ldpu/cli.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldpu/classifiers.hpp"
#include "ldpu/empirical.hpp"
#include "ldpu/errors.hpp"
#include "ldpu/mechanisms.hpp"
#include "ldpu/quantify.hpp"
#include "ldpu/robustness.hpp"

namespace ldpu {
namespace {

using nlohmann::ordered_json;

// Machine formats print the shortest text that survives a double round-trip is
// overkill here; ten significant digits keep files stable and readable.
std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string human(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed != text.size() || text.empty()) {
    throw ValidationError(what + ": '" + text + "' is not a number");
  }
  return value;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  if (text.empty()) throw ValidationError(what + " must not be empty");
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) values.push_back(parse_number(part, what));
  return values;
}

// "lo,hi;lo,hi" -> one interval per dimension.
Hyperrectangle parse_rect(const std::string& text) {
  Hyperrectangle rect;
  for (const std::string& part : split(text, ';')) {
    const std::vector<double> pair = parse_number_list(part, "--rect interval");
    if (pair.size() != 2) {
      throw ValidationError("--rect: each interval needs exactly 'lo,hi', got '" + part + "'");
    }
    if (!(pair[0] <= pair[1])) {
      throw ValidationError("--rect: interval '" + part + "' has lo > hi");
    }
    rect.dims.push_back({pair[0], pair[1]});
  }
  if (rect.dims.empty()) throw ValidationError("--rect must not be empty");
  return rect;
}

// Either --theta (symmetric box around x, clipped to [0,1]) or --rect.
Hyperrectangle resolve_rect(const std::vector<double>& x, double theta, const std::string& rect_text) {
  const bool have_theta = theta > 0.0;
  const bool have_rect = !rect_text.empty();
  if (have_theta == have_rect) {
    throw ValidationError("provide exactly one of --theta or --rect");
  }
  if (have_theta) return Hyperrectangle::box(x, theta);
  Hyperrectangle rect = parse_rect(rect_text);
  if (rect.dims.size() != x.size()) {
    throw ValidationError("--rect has " + std::to_string(rect.dims.size()) +
                          " intervals but --point has " + std::to_string(x.size()) +
                          " coordinates");
  }
  return rect;
}

struct MechAssignment {
  std::vector<int> dims;  // 0-based, ascending
  std::vector<MechanismPtr> mechanisms;
};

// "all=laplace:2" or "1=pm:2,3=krr:2:100" (1-based dimensions). A bare spec
// without '=' is shorthand for all dimensions.
MechAssignment parse_assignments(const std::string& text, int dimension) {
  if (text.empty()) throw ValidationError("--mech must not be empty");
  MechAssignment out;
  std::vector<bool> seen(static_cast<std::size_t>(dimension), false);
  const std::vector<std::string> entries = split(text, ',');
  for (const std::string& entry : entries) {
    const std::size_t eq = entry.find('=');
    const std::string target = eq == std::string::npos ? "all" : entry.substr(0, eq);
    const std::string spec = eq == std::string::npos ? entry : entry.substr(eq + 1);
    const MechanismPtr mech = parse_mechanism_spec(spec);
    if (target == "all") {
      if (entries.size() != 1) {
        throw ValidationError("--mech: 'all=' cannot be combined with per-dimension entries");
      }
      for (int d = 0; d < dimension; ++d) {
        out.dims.push_back(d);
        out.mechanisms.push_back(mech);
      }
      return out;
    }
    const double index = parse_number(target, "--mech dimension");
    const int dim = static_cast<int>(index);
    if (static_cast<double>(dim) != index || dim < 1 || dim > dimension) {
      throw ValidationError("--mech: dimension '" + target + "' is not in 1.." +
                            std::to_string(dimension));
    }
    if (seen[static_cast<std::size_t>(dim - 1)]) {
      throw ValidationError("--mech: dimension " + target + " assigned twice");
    }
    seen[static_cast<std::size_t>(dim - 1)] = true;
    out.dims.push_back(dim - 1);
    out.mechanisms.push_back(mech);
  }
  // Keep dimensions ascending so reports line up with the model's axes.
  for (std::size_t i = 1; i < out.dims.size(); ++i) {
    for (std::size_t j = i; j > 0 && out.dims[j - 1] > out.dims[j]; --j) {
      std::swap(out.dims[j - 1], out.dims[j]);
      std::swap(out.mechanisms[j - 1], out.mechanisms[j]);
    }
  }
  return out;
}

std::string join_full(const std::vector<double>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(sep);
    out += full(values[i]);
  }
  return out;
}

std::string join_strings(const std::vector<std::string>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(sep);
    out += values[i];
  }
  return out;
}

// --- tabular rendering -------------------------------------------------------

const char* kSweepHeader = "family,epsilon,theta_or_rect,rho,per_dim_probs,composed_eps,composed_delta";

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const SweepRow& r : rows) {
    out += r.family + "," + full(r.epsilon) + "," + r.theta_or_rect + "," + full(r.rho) + "," +
           join_full(r.per_dim_probs, '|') + "," + full(r.composed_eps) + "," +
           full(r.composed_delta) + "\n";
  }
  return out;
}

ordered_json sweep_record(const SweepRow& r) {
  ordered_json rec;
  rec["family"] = r.family;
  rec["epsilon"] = r.epsilon;
  rec["theta_or_rect"] = r.theta_or_rect;
  rec["rho"] = r.rho;
  rec["per_dim_probs"] = join_full(r.per_dim_probs, '|');
  rec["composed_eps"] = r.composed_eps;
  rec["composed_delta"] = r.composed_delta;
  return rec;
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const SweepRow& r : rows) arr.push_back(sweep_record(r));
  return arr.dump(2) + "\n";
}

std::string sweep_human(const std::vector<SweepRow>& rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-12s %8s %14s %10s %12s %14s  %s\n", "family", "epsilon",
                "theta_or_rect", "rho", "composed_eps", "composed_delta", "best");
  out += line;
  for (const SweepRow& r : rows) {
    std::snprintf(line, sizeof(line), "%-12s %8s %14s %10s %12s %14s  %s\n", r.family.c_str(),
                  full(r.epsilon).c_str(), r.theta_or_rect.c_str(), human(r.rho).c_str(),
                  full(r.composed_eps).c_str(), full(r.composed_delta).c_str(),
                  r.best ? "*" : "");
    out += line;
  }
  return out;
}

const char* kCompareHeader =
    "family,epsilon,theta_or_rect,rho,per_dim_probs,composed_eps,composed_delta,"
    "rho_hat,halfwidth,t_sample_ms,t_infer_ms,t_theory_ms";

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::string out = std::string(kCompareHeader) + "\n";
  for (const CompareRow& r : rows) {
    out += r.family + "," + full(r.epsilon) + "," + r.theta_or_rect + "," + full(r.rho) + "," +
           join_full(r.per_dim_probs, '|') + "," + full(r.composed_eps) + "," +
           full(r.composed_delta) + "," + full(r.rho_hat) + "," + full(r.halfwidth) + "," +
           full(r.t_sample_ms) + "," + full(r.t_infer_ms) + "," + full(r.t_theory_ms) + "\n";
  }
  return out;
}

std::string compare_json(const std::vector<CompareRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const CompareRow& r : rows) {
    ordered_json rec;
    rec["family"] = r.family;
    rec["epsilon"] = r.epsilon;
    rec["theta_or_rect"] = r.theta_or_rect;
    rec["rho"] = r.rho;
    rec["per_dim_probs"] = join_full(r.per_dim_probs, '|');
    rec["composed_eps"] = r.composed_eps;
    rec["composed_delta"] = r.composed_delta;
    rec["rho_hat"] = r.rho_hat;
    rec["halfwidth"] = r.halfwidth;
    rec["t_sample_ms"] = r.t_sample_ms;
    rec["t_infer_ms"] = r.t_infer_ms;
    rec["t_theory_ms"] = r.t_theory_ms;
    arr.push_back(rec);
  }
  return arr.dump(2) + "\n";
}

std::string compare_human(const std::vector<CompareRow>& rows) {
  std::string out;
  char line[320];
  std::snprintf(line, sizeof(line), "%-12s %8s %14s %10s %10s %10s %12s %12s %12s  %s\n", "family",
                "epsilon", "theta_or_rect", "rho", "rho_hat", "halfwidth", "t_sample_ms",
                "t_infer_ms", "t_theory_ms", "violation");
  out += line;
  for (const CompareRow& r : rows) {
    std::snprintf(line, sizeof(line), "%-12s %8s %14s %10s %10s %10s %12s %12s %12s  %s\n",
                  r.family.c_str(), full(r.epsilon).c_str(), r.theta_or_rect.c_str(),
                  human(r.rho).c_str(), human(r.rho_hat).c_str(), human(r.halfwidth).c_str(),
                  full(r.t_sample_ms).c_str(), full(r.t_infer_ms).c_str(),
                  full(r.t_theory_ms).c_str(), r.violation ? "VIOLATION" : "");
    out += line;
  }
  return out;
}

// --- output plumbing ---------------------------------------------------------

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw ComputationError("cannot open '" + path + "' for writing");
  stream << content;
  if (!stream) throw ComputationError("failed while writing '" + path + "'");
}

// Every run that produces file outputs records how it was invoked next to
// them; `ldpu replay <manifest>` reruns the stored argument vector and must
// reproduce the outputs byte-identically.
void write_manifest(const std::string& manifest_path, const std::string& command,
                    const std::vector<std::string>& argv, std::uint64_t seed,
                    const std::vector<std::string>& outputs) {
  ordered_json manifest;
  manifest["tool"] = "ldpu";
  manifest["version"] = kToolVersion;
  manifest["command"] = command;
  manifest["argv"] = argv;
  manifest["seed"] = seed;
  manifest["outputs"] = outputs;
  write_text_file(manifest_path, manifest.dump(2) + "\n");
}

// Writes `content` to --out (plus the manifest) or to stdout.
void emit(const std::string& content, const std::string& out_path, const std::string& command,
          const std::vector<std::string>& argv, std::uint64_t seed) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  write_text_file(out_path, content);
  write_manifest(out_path + ".manifest.json", command, argv, seed, {out_path});
  std::cout << "wrote " << out_path << "\n";
}

std::string scalar_output(const std::string& format, const std::string& key, double value) {
  if (format == "csv") return key + "\n" + full(value) + "\n";
  if (format == "json") {
    ordered_json obj;
    obj[key] = value;
    return obj.dump(2) + "\n";
  }
  return human(value) + "\n";
}

std::string rect_output(const std::string& format, const Hyperrectangle& rect) {
  if (format == "csv") {
    std::string out = "dim,lo,hi\n";
    for (std::size_t i = 0; i < rect.dims.size(); ++i) {
      out += std::to_string(i + 1) + "," + full(rect.dims[i].lo) + "," + full(rect.dims[i].hi) + "\n";
    }
    return out;
  }
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const Interval& iv : rect.dims) {
      ordered_json rec;
      rec["lo"] = iv.lo;
      rec["hi"] = iv.hi;
      arr.push_back(rec);
    }
    ordered_json obj;
    obj["rect"] = arr;
    return obj.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < rect.dims.size(); ++i) {
    out += "dim " + std::to_string(i + 1) + ": [" + human(rect.dims[i].lo) + ", " +
           human(rect.dims[i].hi) + "]\n";
  }
  return out;
}

std::string rect_text(const Hyperrectangle& rect) {
  std::vector<std::string> parts;
  for (const Interval& iv : rect.dims) parts.push_back(full(iv.lo) + ".." + full(iv.hi));
  return join_strings(parts, '|');
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Utility quantification for classifiers under local differential privacy"};
  app.set_help_all_flag("--help-all", "print help for every subcommand");
  app.require_subcommand(1);

  // Shared option storage. Each subcommand binds the flags it understands;
  // defaults only matter where the flag is optional.
  std::string mech_text, model_path, rect_text_flag, out_path, dir_path, manifest_path;
  std::string point_text = "0.5";
  std::string families_text = "laplace,gaussian,pm,sw,krr,exponential";
  std::string eps_list_text = "0.5,1,2,4,8";
  std::string theta_list_text = "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5";
  std::string format = "human";
  std::string family = "laplace";
  double eps = 0.0, delta = 0.0, x_scalar = 0.0, a = 0.0, b = 0.0;
  double tau = 0.02, omega = 0.05, kappa = 0.01, theta = 0.0, joint_delta = 0.0;
  double target = 0.0, eps_min = 0.5, eps_max = 8.0;
  std::uint64_t seed = 0;
  int k = 100, max_passes = 3, threads = 1, reps = 10;
  long n = 2000;
  bool got_eps = false, slack = false, no_slack = false;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"human", "csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", out_path, "write output to this file (plus <file>.manifest.json)");
    cmd->add_option("--threads", threads, "worker cap (computation is single-threaded)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  const auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed")->envname("LDPU_SEED")->capture_default_str();
  };

  CLI::App* c_conc = app.add_subcommand("concentration", "interval probability of one mechanism");
  c_conc->add_option("--mech", mech_text, "family name or compact spec family:eps[:delta][:k]")
      ->required();
  c_conc->add_option("--eps", eps, "privacy budget (when --mech is a bare family name)")
      ->check(CLI::PositiveNumber);
  c_conc->add_option("--delta", delta, "PAC failure probability")->capture_default_str();
  c_conc->add_option("--k", k, "grid size for discrete families")->capture_default_str();
  c_conc->add_option("--x", x_scalar, "true value in [0,1]")->required();
  c_conc->add_option("--a", a, "interval lower end")->required();
  c_conc->add_option("--b", b, "interval upper end")->required();
  add_common(c_conc);

  CLI::App* c_radius = app.add_subcommand("radius", "largest certified robustness radius");
  c_radius->add_option("--model", model_path, "model JSON file")->required();
  c_radius->add_option("--point", point_text, "anchor point, comma-separated")->required();
  c_radius->add_option("--tau", tau, "misclassification tolerance")->capture_default_str();
  c_radius->add_option("--omega", omega, "statistical error bound")->capture_default_str();
  c_radius->add_option("--kappa", kappa, "search precision")->capture_default_str();
  add_seed(c_radius);
  add_common(c_radius);

  CLI::App* c_rect = app.add_subcommand("hyperrect", "expand a theta-box into a robust rectangle");
  c_rect->add_option("--model", model_path, "model JSON file")->required();
  c_rect->add_option("--point", point_text, "anchor point, comma-separated")->required();
  c_rect->add_option("--theta", theta, "initial half-width")->required();
  c_rect->add_option("--tau", tau, "misclassification tolerance")->capture_default_str();
  c_rect->add_option("--omega", omega, "statistical error bound")->capture_default_str();
  c_rect->add_option("--kappa", kappa, "search precision")->capture_default_str();
  c_rect->add_option("--max-passes", max_passes, "expansion passes over all faces")
      ->capture_default_str();
  add_seed(c_rect);
  add_common(c_rect);

  CLI::App* c_quant = app.add_subcommand("quantify", "utility statement for a mechanism assignment");
  c_quant->add_option("--model", model_path, "model JSON file")->required();
  c_quant->add_option("--point", point_text, "anchor point, comma-separated")->required();
  c_quant->add_option("--mech", mech_text, "all=SPEC or 1=SPEC,3=SPEC (1-based dims)")->required();
  c_quant->add_option("--theta", theta, "symmetric robust half-width");
  c_quant->add_option("--rect", rect_text_flag, "robust rectangle lo,hi;lo,hi");
  c_quant->add_flag("--slack", slack, "multiply by (1-omega)(1-tau)");
  c_quant->add_option("--joint-delta", joint_delta, "shared privacy indicator over all dims")
      ->capture_default_str();
  c_quant->add_option("--omega", omega, "statistical error bound")->capture_default_str();
  c_quant->add_option("--tau", tau, "misclassification tolerance")->capture_default_str();
  add_common(c_quant);

  CLI::App* c_select = app.add_subcommand("select-eps", "smallest epsilon meeting a utility target");
  c_select->add_option("--target", target, "required utility in [0,1)")->required();
  c_select->add_option("--family", family, "mechanism family")->capture_default_str();
  c_select->add_option("--point", point_text, "anchor point, comma-separated")
      ->capture_default_str();
  c_select->add_option("--theta", theta, "symmetric robust half-width");
  c_select->add_option("--rect", rect_text_flag, "robust rectangle lo,hi;lo,hi");
  c_select->add_option("--eps-min", eps_min, "search range lower end")->capture_default_str();
  c_select->add_option("--eps-max", eps_max, "search range upper end")->capture_default_str();
  c_select->add_option("--delta", delta, "PAC failure probability (gaussian)")
      ->capture_default_str();
  c_select->add_option("--k", k, "grid size for discrete families")->capture_default_str();
  add_common(c_select);

  CLI::App* c_sweep = app.add_subcommand("sweep", "rho per family over an (epsilon, theta) grid");
  c_sweep->add_option("--point", point_text, "anchor point, comma-separated")->required();
  c_sweep->add_option("--families", families_text, "comma-separated family list")
      ->capture_default_str();
  c_sweep->add_option("--eps", eps_list_text, "comma-separated epsilon grid")
      ->capture_default_str();
  c_sweep->add_option("--theta", theta_list_text, "comma-separated theta grid")
      ->capture_default_str();
  add_common(c_sweep);

  CLI::App* c_emp = app.add_subcommand("empirical", "Monte-Carlo estimate of preserved prediction");
  c_emp->add_option("--model", model_path, "model JSON file")->required();
  c_emp->add_option("--point", point_text, "anchor point, comma-separated")->required();
  c_emp->add_option("--mech", mech_text, "all=SPEC or 1=SPEC,3=SPEC (1-based dims)")->required();
  c_emp->add_option("--n", n, "sample count")->check(CLI::PositiveNumber)->capture_default_str();
  c_emp->add_option("--joint-delta", joint_delta, "shared privacy indicator over all dims")
      ->capture_default_str();
  add_seed(c_emp);
  add_common(c_emp);

  CLI::App* c_cmp = app.add_subcommand("compare", "theory vs Monte-Carlo, one row per family/eps");
  c_cmp->add_option("--model", model_path, "model JSON file")->required();
  c_cmp->add_option("--point", point_text, "anchor point, comma-separated")->required();
  c_cmp->add_option("--families", families_text, "comma-separated family list")->required();
  c_cmp->add_option("--eps", eps_list_text, "comma-separated epsilon grid")->required();
  c_cmp->add_option("--theta", theta, "symmetric robust half-width");
  c_cmp->add_option("--rect", rect_text_flag, "robust rectangle lo,hi;lo,hi");
  c_cmp->add_option("--n", n, "Monte-Carlo sample count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_cmp->add_option("--reps", reps, "timing repetitions (median reported)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_cmp->add_option("--delta", delta, "gaussian delta / indicator wrap for pure families")
      ->capture_default_str();
  c_cmp->add_option("--k", k, "grid size for discrete families")->capture_default_str();
  c_cmp->add_option("--omega", omega, "statistical error bound")->capture_default_str();
  c_cmp->add_option("--tau", tau, "misclassification tolerance")->capture_default_str();
  c_cmp->add_flag("--no-slack", no_slack, "report the raw concentration product");
  add_seed(c_cmp);
  add_common(c_cmp);

  CLI::App* c_fixtures = app.add_subcommand("fixtures", "bundled reference models");
  CLI::App* c_export = c_fixtures->add_subcommand("export", "write all fixtures as JSON");
  c_export->add_option("--dir", dir_path, "target directory (must exist)")->required();
  c_fixtures->require_subcommand(1);

  CLI::App* c_replay = app.add_subcommand("replay", "rerun a recorded manifest");
  c_replay->add_option("manifest", manifest_path, "path to a .manifest.json file")->required();

  got_eps = false;
  try {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("ldpu");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
    got_eps = c_conc->count("--eps") > 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_conc) {
      MechanismPtr mech;
      if (mech_text.find(':') != std::string::npos) {
        if (got_eps) {
          throw ValidationError("--mech already carries an epsilon; drop the --eps flag");
        }
        mech = parse_mechanism_spec(mech_text);
      } else {
        if (!got_eps) throw ValidationError("--eps is required when --mech is a bare family name");
        mech = make_family_mechanism(mech_text, eps, delta, k);
      }
      const double p = mech->interval_probability(x_scalar, a, b).value;
      emit(scalar_output(format, "probability", p), out_path, "concentration", args, seed);
      return 0;
    }

    if (*c_radius) {
      const ClassifierModel model = load_model(model_path);
      const std::vector<double> x = parse_number_list(point_text, "--point");
      RobustnessConfig config;
      config.tau = tau;
      config.omega = omega;
      config.kappa = kappa;
      config.seed = seed;
      const double theta_star = find_radius(model, x, config);
      emit(scalar_output(format, "theta", theta_star), out_path, "radius", args, seed);
      return 0;
    }

    if (*c_rect) {
      const ClassifierModel model = load_model(model_path);
      const std::vector<double> x = parse_number_list(point_text, "--point");
      RobustnessConfig config;
      config.tau = tau;
      config.omega = omega;
      config.kappa = kappa;
      config.seed = seed;
      config.max_expand_passes = max_passes;
      const Hyperrectangle rect = expand_hyperrectangle(model, x, theta, config);
      emit(rect_output(format, rect), out_path, "hyperrect", args, seed);
      return 0;
    }

    if (*c_quant) {
      const ClassifierModel model = load_model(model_path);
      const std::vector<double> x = parse_number_list(point_text, "--point");
      const MechAssignment assignment =
          parse_assignments(mech_text, static_cast<int>(x.size()));
      UtilityQuery query;
      query.model = &model;
      query.x = x;
      query.sensitive_dims = assignment.dims;
      query.mechanisms = assignment.mechanisms;
      query.rect = resolve_rect(x, theta, rect_text_flag);
      query.omega = omega;
      query.tau = tau;
      query.include_slack = slack;
      query.joint_delta = joint_delta;
      const UtilityReport report = rho(query);

      std::vector<std::string> names;
      std::vector<double> eps_values;
      for (const MechanismPtr& mech : assignment.mechanisms) {
        names.push_back(family_name(mech->family()));
        eps_values.push_back(mech->params().epsilon);
      }
      if (format == "csv") {
        std::string out = std::string(kSweepHeader) + "\n";
        out += join_strings(names, '|') + "," + join_full(eps_values, '|') + "," +
               rect_text(query.rect) + "," + full(report.rho) + "," +
               join_full(report.per_dim_probs, '|') + "," + full(report.composed.epsilon) + "," +
               full(report.composed.delta) + "\n";
        emit(out, out_path, "quantify", args, seed);
      } else if (format == "json") {
        ordered_json obj;
        obj["family"] = join_strings(names, '|');
        obj["epsilon"] = join_full(eps_values, '|');
        obj["theta_or_rect"] = rect_text(query.rect);
        obj["rho"] = report.rho;
        obj["per_dim_probs"] = join_full(report.per_dim_probs, '|');
        obj["composed_eps"] = report.composed.epsilon;
        obj["composed_delta"] = report.composed.delta;
        obj["slack_factor"] = report.slack_factor;
        obj["statement"] = report.statement;
        emit(obj.dump(2) + "\n", out_path, "quantify", args, seed);
      } else {
        std::string out;
        out += "rho = " + human(report.rho) + "\n";
        out += "per_dim_probs = " + join_full(report.per_dim_probs, '|') + "\n";
        out += "slack_factor = " + full(report.slack_factor) + "\n";
        out += "composed_eps = " + full(report.composed.epsilon) + "\n";
        out += "composed_delta = " + full(report.composed.delta) + "\n";
        out += report.statement + "\n";
        emit(out, out_path, "quantify", args, seed);
      }
      return 0;
    }

    if (*c_select) {
      const std::vector<double> x = parse_number_list(point_text, "--point");
      if (theta == 0.0 && rect_text_flag.empty()) theta = 0.3;
      const Hyperrectangle rect = resolve_rect(x, theta, rect_text_flag);
      const EpsilonSelection sel =
          select_epsilon(family, target, x, rect, eps_min, eps_max, delta, k);
      if (format == "csv") {
        emit("epsilon,rho\n" + full(sel.epsilon) + "," + full(sel.rho_at_epsilon) + "\n", out_path,
             "select-eps", args, seed);
      } else if (format == "json") {
        ordered_json obj;
        obj["epsilon"] = sel.epsilon;
        obj["rho"] = sel.rho_at_epsilon;
        emit(obj.dump(2) + "\n", out_path, "select-eps", args, seed);
      } else {
        emit("epsilon = " + human(sel.epsilon) + "\nrho = " + human(sel.rho_at_epsilon) + "\n",
             out_path, "select-eps", args, seed);
      }
      return 0;
    }

    if (*c_sweep) {
      const std::vector<double> x = parse_number_list(point_text, "--point");
      const std::vector<std::string> families = split(families_text, ',');
      const std::vector<double> eps_grid = parse_number_list(eps_list_text, "--eps");
      const std::vector<double> theta_grid = parse_number_list(theta_list_text, "--theta");
      const std::vector<SweepRow> rows = sweep(families, eps_grid, theta_grid, x);
      std::string out = format == "csv"    ? sweep_csv(rows)
                        : format == "json" ? sweep_json(rows)
                                           : sweep_human(rows);
      emit(out, out_path, "sweep", args, seed);
      return 0;
    }

    if (*c_emp) {
      const ClassifierModel model = load_model(model_path);
      const std::vector<double> x = parse_number_list(point_text, "--point");
      const MechAssignment assignment =
          parse_assignments(mech_text, static_cast<int>(x.size()));
      const EmpiricalEstimate est =
          empirical_rho(model, x, assignment.mechanisms, assignment.dims, n, seed, joint_delta);
      if (format == "csv") {
        emit("rho_hat,n,halfwidth,t_sample_ms,t_infer_ms\n" + full(est.rho_hat) + "," +
                 std::to_string(est.n) + "," + full(est.hoeffding_halfwidth) + "," +
                 full(est.t_sample_ms) + "," + full(est.t_infer_ms) + "\n",
             out_path, "empirical", args, seed);
      } else if (format == "json") {
        ordered_json obj;
        obj["rho_hat"] = est.rho_hat;
        obj["n"] = est.n;
        obj["halfwidth"] = est.hoeffding_halfwidth;
        obj["t_sample_ms"] = est.t_sample_ms;
        obj["t_infer_ms"] = est.t_infer_ms;
        emit(obj.dump(2) + "\n", out_path, "empirical", args, seed);
      } else {
        std::string out;
        out += "rho_hat = " + human(est.rho_hat) + "\n";
        out += "n = " + std::to_string(est.n) + "\n";
        out += "halfwidth = " + human(est.hoeffding_halfwidth) + "\n";
        out += "t_sample_ms = " + full(est.t_sample_ms) + "\n";
        out += "t_infer_ms = " + full(est.t_infer_ms) + "\n";
        emit(out, out_path, "empirical", args, seed);
      }
      return 0;
    }

    if (*c_cmp) {
      const ClassifierModel model = load_model(model_path);
      const std::vector<double> x = parse_number_list(point_text, "--point");
      const Hyperrectangle rect = resolve_rect(x, theta, rect_text_flag);
      const std::vector<std::string> families = split(families_text, ',');
      const std::vector<double> eps_grid = parse_number_list(eps_list_text, "--eps");
      CompareOptions options;
      options.n = n;
      options.timing_reps = reps;
      options.omega = omega;
      options.tau = tau;
      options.include_slack = !no_slack;
      options.delta = delta;
      options.k = k;
      const std::vector<CompareRow> rows = compare(model, x, families, eps_grid, rect, seed, options);
      std::string out = format == "csv"    ? compare_csv(rows)
                        : format == "json" ? compare_json(rows)
                                           : compare_human(rows);
      emit(out, out_path, "compare", args, seed);
      return 0;
    }

    if (*c_fixtures) {
      const std::vector<std::pair<std::string, ClassifierModel>> fixtures = {
          {"nn2d", fixture_nn_2d()},         {"qda2d", fixture_qda_2d()},
          {"step1d", fixture_step_1d()},     {"linear2d", fixture_linear_2d()},
          {"forest2d", fixture_forest_2d()},
      };
      std::vector<std::string> outputs;
      for (const auto& [name, model] : fixtures) {
        const std::string path = dir_path + "/" + name + ".json";
        save_model(model, path);
        outputs.push_back(path);
        std::cout << "wrote " << path << "\n";
      }
      write_manifest(dir_path + "/fixtures.manifest.json", "fixtures export", args, seed, outputs);
      return 0;
    }

    if (*c_replay) {
      std::ifstream stream(manifest_path);
      if (!stream) throw ValidationError("cannot read manifest '" + manifest_path + "'");
      ordered_json manifest;
      try {
        manifest = ordered_json::parse(stream);
      } catch (const ordered_json::exception& e) {
        throw ValidationError("manifest '" + manifest_path + "' is not valid JSON: " + e.what());
      }
      if (!manifest.contains("argv") || !manifest["argv"].is_array()) {
        throw ValidationError("manifest '" + manifest_path + "' has no argv array");
      }
      std::vector<std::string> replay_args;
      for (const auto& item : manifest["argv"]) {
        if (!item.is_string()) {
          throw ValidationError("manifest argv entries must be strings");
        }
        replay_args.push_back(item.get<std::string>());
      }
      if (!replay_args.empty() && replay_args.front() == "replay") {
        throw ValidationError("refusing to replay a manifest that replays itself");
      }
      return run(replay_args);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::cerr << "error: no subcommand selected\n";
  return 2;
}

}  // namespace ldpu
