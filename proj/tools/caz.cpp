// caz: command-line runner for the zero-statistics experiments.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "caz/diagrams.hpp"
#include "caz/experiment.hpp"
#include "caz/geometry.hpp"
#include "caz/statistics.hpp"
#include "caz/toy.hpp"
#include "caz/verify.hpp"
#include "caz/wick.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitTolerance = 2;
constexpr int kExitUsage = 1;

struct Common {
  std::string family = "flat";
  double L = 100.0;
  std::uint64_t seed = 7;
  int threads = 0;
  std::string out_dir;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("malformed ") + what + " '" + text + "'");
    }
  }
  if (expected != 0 && out.size() != expected) {
    throw UsageError(std::string(what) + " expects " + std::to_string(expected) + " comma-separated numbers");
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text, const char* what) {
  std::vector<int> out;
  for (double x : parse_list(text, 0, what)) {
    if (x != std::floor(x)) throw UsageError(std::string(what) + " must be integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

caz::Complex parse_point(const std::string& text) {
  const auto v = parse_list(text, 2, "point");
  return {v[0], v[1]};
}

// Options given on the command line or in the config file, plus defaults.
// Thread count and output location are excluded so reports do not depend on them.
json effective_config(const CLI::App& app) {
  json out = json::object();
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config" || name == "threads" || name == "out-dir") continue;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      out[name] = r.size() == 1 ? json(r.front()) : json(r);
    } else if (!opt->get_default_str().empty()) {
      out[name] = opt->get_default_str();
    }
  }
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void emit(const json& report, const Common& c, const std::string& csv = {}) {
  std::cout << report.dump(2) << "\n";
  if (c.out_dir.empty()) return;
  fs::create_directories(c.out_dir);
  write_file(fs::path(c.out_dir) / "report.json", report.dump(2) + "\n");
  if (!csv.empty()) write_file(fs::path(c.out_dir) / "trials.csv", csv);
}

void add_model(CLI::App* app, Common& c) {
  app->add_option("--family", c.family, "elliptic | flat | hyperbolic")->capture_default_str();
  app->add_option("--L", c.L, "intensity L (a positive integer for elliptic)")->capture_default_str();
}

void add_seed(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "top-level seed; trial i uses stream (seed, i)")->capture_default_str();
}

void add_output(CLI::App* app, Common& c) {
  app->add_option("--out-dir", c.out_dir, "directory for report.json (and trials.csv)");
}

void add_threads(CLI::App* app, Common& c) {
  app->add_option("--threads", c.threads, "worker threads (0: CAZ_THREADS or hardware count)");
}

caz::ModelSpec model_of(const Common& c) { return caz::ModelSpec(caz::parse_family(c.family), c.L); }

json schema(const std::string& kind, const json& config) {
  return {{"schema_version", 1}, {"kind", kind}, {"config", config}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"caz: zeroes of Gaussian analytic functions with invariant zero sets, their linear statistics, "
               "Wick diagram moments and toy lattice contrasts."};
  app.set_config("--config", "", "INI file; [subcommand] sections supply option values, flags override them");
  app.require_subcommand(1);

  Common c;
  std::string bump = "0,0,1,3";

  // sample
  std::uint64_t trial = 0;
  double radius = 1.0;
  double tol = 1e-10;
  auto* sample = app.add_subcommand("sample",
                                    "Draw psi = sum zeta_k sqrt(coefficient factor) z^k on stream (seed, trial). "
                                    "Flat and hyperbolic series are truncated where the tail bound on |z| <= radius "
                                    "drops below tol.");
  add_model(sample, c);
  add_seed(sample, c);
  add_output(sample, c);
  sample->add_option("--trial", trial, "trial index")->capture_default_str();
  sample->add_option("--radius", radius, "truncation radius (flat, hyperbolic)")->capture_default_str();
  sample->add_option("--tol", tol, "truncation tail tolerance")->capture_default_str();

  // zeros
  std::string region_text;
  auto* zeros = app.add_subcommand("zeros",
                                   "Locate zeroes of one sample (Aberth-Ehrlich with companion-matrix fallback, "
                                   "Newton polish) and certify the count by the argument principle.");
  add_model(zeros, c);
  add_seed(zeros, c);
  add_output(zeros, c);
  zeros->add_option("--trial", trial, "trial index")->capture_default_str();
  zeros->add_option("--region", region_text, "disk x,y,r (default: whole sphere for elliptic, else the bump support)");
  zeros->add_option("--bump", bump, "bump x,y,r,p used for the default region")->capture_default_str();
  zeros->add_option("--tol", tol, "truncation tail tolerance")->capture_default_str();

  // stats
  bool exact_series = false;
  auto* stats = app.add_subcommand("stats",
                                   "Closed-form predictions for Z_L(h) = sum h over zeroes: mean (L/pi) int h dm*, "
                                   "variance (kappa/L) ||Delta* h||^2, optionally the finite-L variance from the "
                                   "log-covariance series.");
  add_model(stats, c);
  add_output(stats, c);
  stats->add_option("--bump", bump, "bump x,y,r,p")->capture_default_str();
  stats->add_flag("--exact-series", exact_series, "also evaluate the finite-L covariance series variance");

  // normality
  int trials = 2000;
  std::string standardize = "theoretical";
  auto* normality = app.add_subcommand("normality",
                                       "Monte Carlo central limit check for Z_L(h): standardize by the predicted "
                                       "mean and variance, Kolmogorov-Smirnov verdict D sqrt(M) < threshold. "
                                       "Exit 2 when the verdict fails.");
  add_model(normality, c);
  add_seed(normality, c);
  add_output(normality, c);
  add_threads(normality, c);
  normality->add_option("--bump", bump, "bump x,y,r,p")->capture_default_str();
  normality->add_option("--trials", trials, "number of trials M (>= 100)")->capture_default_str();
  normality->add_option("--standardize", standardize, "theoretical | empirical")->capture_default_str();
  normality->add_option("--tol", tol, "truncation tail tolerance")->capture_default_str();

  // diagrams
  std::string alphas_text;
  std::string match_text;
  auto* diagrams = app.add_subcommand("diagrams",
                                      "Wick diagrams Gamma(alpha_1..alpha_p): matchings of slots to barred slots of "
                                      "other labels; |Gamma(a,a)| = (a!)^2. Regular diagrams split into pairs.");
  diagrams->require_subcommand(1);
  auto* d_count = diagrams->add_subcommand("count", "Count |Gamma(alphas)| from contingency tables.");
  d_count->add_option("--alphas", alphas_text, "comma-separated multiplicities")->required();
  auto* d_list = diagrams->add_subcommand("list", "List every diagram (sum of alphas <= 14).");
  d_list->add_option("--alphas", alphas_text, "comma-separated multiplicities")->required();
  auto* d_classify = diagrams->add_subcommand("classify", "Regular/irregular classification of one diagram.");
  d_classify->add_option("--alphas", alphas_text, "comma-separated multiplicities")->required();
  d_classify->add_option("--match", match_text, "barred slot matched to each slot, 0-based")->required();

  // toy
  std::string variant = "1";
  double spread = 0.0;
  bool mimic = false;
  auto* toy = app.add_subcommand("toy",
                                 "Perturbed-lattice contrasts: 1 thinned (variance ~ L), 2 Gaussian perturbed "
                                 "(variance ~ 1), 3 scattered clusters (variance ~ 1/L); --mimic sets "
                                 "c = 2 (pi kappa / 3)^{1/4}.");
  toy->add_option("--variant", variant, "1 | 2 | 3")->capture_default_str();
  toy->add_option("--c", spread, "perturbation scale")->capture_default_str();
  toy->add_flag("--mimic", mimic, "use the cluster scale matching the zero-set variance");
  toy->add_option("--L", c.L, "intensity L")->capture_default_str();
  toy->add_option("--bump", bump, "bump x,y,r,p")->capture_default_str();
  toy->add_option("--trials", trials, "number of trials")->capture_default_str();
  add_seed(toy, c);
  add_output(toy, c);
  add_threads(toy, c);

  // geometry
  std::string z1_text = "0,0";
  std::string z2_text = "0.1,0";
  auto* geometry = app.add_subcommand("geometry",
                                      "Coherent-state embedding: kernel, normalized covariance rho, Fubini-Study "
                                      "distance arccos|rho|, Edelman-Kostlan density (1/2pi) Delta log||psi||.");
  add_model(geometry, c);
  add_output(geometry, c);
  geometry->add_option("--z1", z1_text, "point x,y")->capture_default_str();
  geometry->add_option("--z2", z2_text, "point x,y")->capture_default_str();

  // kappa
  double kappa_tol = 1e-12;
  auto* kappa_cmd = app.add_subcommand("kappa",
                                       "kappa = (1/4pi) sum c_{2a}^2 / a over the Wick coefficients of log|zeta|, "
                                       "with the partial sum and the extrapolated tail.");
  kappa_cmd->add_option("--tol", kappa_tol, "stop when the term falls below tol")->capture_default_str();
  add_output(kappa_cmd, c);

  // verify
  std::string level = "exact";
  auto* verify = app.add_subcommand("verify", "Run acceptance criteria AC-1..AC-9 at a tier: exact, fast-mc, full-mc. "
                                              "Exit 2 if any criterion fails.");
  verify->add_option("--level", level, "exact | fast-mc | full-mc")->capture_default_str();
  add_seed(verify, c);
  add_output(verify, c);
  add_threads(verify, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sample) {
      const caz::ModelSpec model = model_of(c);
      std::optional<caz::Truncation> truncation;
      if (model.family() != caz::Family::Elliptic) truncation = caz::plan_truncation(model, radius, tol);
      caz::ComplexGaussianStream stream(c.seed, trial);
      const caz::GafSample s = caz::sample_coefficients(model, stream, truncation);
      json report = schema("sample", effective_config(*sample));
      report["sample"] = s.to_json();
      emit(report, c);
      return 0;
    }
    if (*zeros) {
      const caz::ModelSpec model = model_of(c);
      caz::ZeroPlan plan;
      if (!region_text.empty()) {
        const auto v = parse_list(region_text, 3, "region");
        plan = caz::plan_zero_search(model, caz::Region::disk({v[0], v[1]}, v[2]), tol);
      } else {
        plan = caz::plan_zero_search(model, caz::TestFunction::parse_bump(bump), tol);
      }
      caz::ComplexGaussianStream stream(c.seed, trial);
      const caz::GafSample s = caz::sample_coefficients(model, stream, plan.truncation);
      const caz::ZeroSet z = model.family() == caz::Family::Elliptic && region_text.empty()
                                 ? caz::find_zeros_elliptic(s)
                                 : caz::find_zeros_in_region(s, plan.region);
      json report = schema("zeros", effective_config(*zeros));
      report["zeros"] = z.to_json();
      emit(report, c);
      return z.certified() ? 0 : kExitTolerance;
    }
    if (*stats) {
      const caz::ModelSpec model = model_of(c);
      const caz::TestFunction h = caz::TestFunction::parse_bump(bump);
      json report = schema("stats", effective_config(*stats));
      report["h"] = h.to_json();
      report["expected_mean"] = caz::expected_linear_statistic(model, h);
      report["laplacian_norm_squared"] = caz::laplacian_norm_squared(model, h);
      report["kappa"] = caz::kappa().value;
      report["predicted_variance"] = caz::variance_prediction(model, h);
      if (exact_series) report["series_variance"] = caz::exact_variance_series(model, h);
      emit(report, c);
      return 0;
    }
    if (*normality) {
      caz::ExperimentOptions o;
      o.threads = c.threads;
      o.truncation_tol = tol;
      if (standardize == "empirical") {
        o.standardization = caz::Standardization::Empirical;
      } else if (standardize != "theoretical") {
        throw UsageError("--standardize must be theoretical or empirical");
      }
      o.config = effective_config(*normality);
      if (c.out_dir.empty()) c.out_dir = ".";
      const caz::ExperimentReport rep =
          caz::run_normality_experiment(model_of(c), caz::TestFunction::parse_bump(bump), trials, c.seed, o);
      fs::create_directories(c.out_dir);
      write_file(fs::path(c.out_dir) / "report.json", rep.to_json().dump(2) + "\n");
      write_file(fs::path(c.out_dir) / "trials.csv", rep.trials_csv());
      std::cout << "mean " << rep.moments.mean << " (predicted " << rep.predicted_mean << ")\n"
                << "variance " << rep.moments.variance << " (predicted " << rep.predicted_variance << ", ratio "
                << rep.variance_ratio << ")\n"
                << "KS D*sqrt(M) " << rep.ks_scaled << " threshold " << rep.ks_threshold << "\n"
                << "skewness " << rep.moments.skewness << " bound " << rep.skewness_bound << "\n"
                << "verdict " << (rep.verdict ? "normal" : "rejected") << "\n";
      return rep.verdict ? 0 : kExitTolerance;
    }
    if (*diagrams) {
      const caz::Alphas alphas = parse_ints(alphas_text, "--alphas");
      if (*d_count) {
        std::cout << caz::count_diagrams(alphas).str() << "\n";
      } else if (*d_list) {
        json list = json::array();
        caz::for_each_diagram(alphas, [&](const caz::Diagram& d) { list.push_back(d.to_json()); });
        std::cout << list.dump(2) << "\n";
      } else {
        const caz::Diagram d{alphas, parse_ints(match_text, "--match")};
        const caz::Classification cl = caz::classify(d);
        json out = {{"regular", cl.regular}, {"components", cl.components}};
        if (cl.regular) {
          out["betas"] = cl.betas;
          out["reduced_multiplicity"] = cl.reduced_multiplicity.str();
        }
        std::cout << out.dump(2) << "\n";
      }
      return 0;
    }
    if (*toy) {
      const caz::TestFunction h = caz::TestFunction::parse_bump(bump);
      const caz::ToyVariant v = caz::parse_toy_variant(variant);
      if (mimic) spread = caz::mimic_cluster_scale(caz::kappa().value);
      const caz::ToySpec spec = caz::toy_spec_for(v, spread, c.L, h);
      const caz::ToyExperiment t = caz::run_toy_experiment(spec, h, trials, c.seed, c.threads);
      json report = schema("toy", effective_config(*toy));
      report["variant"] = caz::to_string(v);
      report["c"] = spread;
      report["L"] = c.L;
      report["trials"] = trials;
      report["mean"] = t.moments.mean;
      report["variance"] = t.moments.variance;
      report["predicted_mean"] = t.predicted_mean;
      report["predicted_variance"] = t.predicted_variance;
      std::ostringstream csv;
      csv.precision(17);
      csv << "trial,Z\n";
      for (std::size_t i = 0; i < t.z.size(); ++i) csv << i << "," << t.z[i] << "\n";
      emit(report, c, csv.str());
      return 0;
    }
    if (*geometry) {
      const caz::ModelSpec model = model_of(c);
      const caz::Complex z1 = parse_point(z1_text);
      const caz::Complex z2 = parse_point(z2_text);
      const caz::Complex r = caz::rho(model, z1, z2);
      const caz::Complex k = caz::embedding_inner_product(model, z1, z2);
      json report = schema("geometry", effective_config(*geometry));
      report["kernel"] = {k.real(), k.imag()};
      report["rho"] = {r.real(), r.imag()};
      report["abs_rho"] = caz::abs_rho(model, z1, z2);
      report["fubini_study_distance"] = caz::fubini_study_distance(model, z1, z2);
      report["edelman_kostlan_density_z1"] = caz::edelman_kostlan_density(model, z1);
      report["expected_density_z1"] = model.intensity() / caz::kPi * caz::invariant_measure_density(model, z1);
      emit(report, c);
      return 0;
    }
    if (*kappa_cmd) {
      const caz::KappaResult k = caz::kappa(kappa_tol);
      json report = schema("kappa", effective_config(*kappa_cmd));
      report["kappa"] = k.value;
      report["partial_sum"] = k.partial_sum;
      report["tail_estimate"] = k.tail_estimate;
      report["terms"] = k.terms;
      report["last_increment"] = k.last_increment;
      if (c.out_dir.empty()) {
        std::cout.precision(16);
        std::cout << "kappa " << k.value << "\npartial_sum " << k.partial_sum << " (" << k.terms
                  << " terms)\ntail_estimate " << k.tail_estimate << "\n";
      } else {
        emit(report, c);
      }
      return 0;
    }
    if (*verify) {
      const caz::VerifyLevel lv = caz::parse_verify_level(level);
      caz::VerifyOptions vo;
      vo.seed = c.seed;
      vo.threads = c.threads;
      caz::VerifyContext ctx(vo);
      std::vector<caz::CriterionResult> results;
      bool all = true;
      for (const std::string& id : caz::criteria_for(lv)) {
        results.push_back(caz::run_criterion(id, ctx));
        const auto& r = results.back();
        all = all && r.passed;
        std::cout << r.id << " " << (r.passed ? "PASS" : "FAIL") << "  " << r.title << ": " << r.detail << "\n"
                  << std::flush;
      }
      if (!c.out_dir.empty()) {
        fs::create_directories(c.out_dir);
        write_file(fs::path(c.out_dir) / "report.json", caz::verify_report(lv, vo, results).dump(2) + "\n");
      }
      return all ? 0 : kExitTolerance;
    }
  } catch (const UsageError& e) {
    std::cerr << "caz: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "caz: " << e.what() << "\n";
    return kExitUsage;
  } catch (const caz::TrialFailure& e) {
    std::cerr << "caz: trial " << e.trial() << " failed: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const std::exception& e) {
    std::cerr << "caz: " << e.what() << "\n";
    return kExitTolerance;
  }
  return 0;
}
