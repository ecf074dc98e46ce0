// ballconfig: sections of the forgetful map on ball configuration spaces,
// homotopies between them, planar winding obstructions and a Brouwer-style
// fixed-configuration search. All subcommands emit JSON reports.

#include "ballconfig/json_io.hpp"
#include "ballconfig/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using ballconfig::Configuration;
using nlohmann::json;

// Exit codes shared by all subcommands.
constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSectionFailure = 2;
constexpr int kExitIdentityViolated = 3;
constexpr int kExitCollision = 4;
constexpr int kExitNotConverged = 5;

struct CommonFlags {
  std::string out;
  std::uint64_t seed = 0;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out", flags.out, "Write the JSON result to this path (default: stdout)");
  cmd->add_option("--seed", flags.seed, "RNG seed")->capture_default_str();
  cmd->add_flag("--quiet", flags.quiet, "Suppress the status line on stderr");
}

json make_manifest(const std::string& subcommand, const json& parameters, std::uint64_t seed,
                   double wall_time_s) {
  return json{{"subcommand", subcommand},
              {"parameters", parameters},
              {"seed", seed},
              {"version", ballconfig::kVersion},
              {"wall_time_s", wall_time_s}};
}

void emit(const json& payload, const CommonFlags& flags) {
  if (flags.out.empty()) {
    std::cout << payload.dump(2) << "\n";
  } else {
    std::ofstream out(flags.out);
    if (!out) throw std::runtime_error("cannot write '" + flags.out + "'");
    out << payload.dump(2) << "\n";
  }
}

void status(const CommonFlags& flags, const std::string& line) {
  if (!flags.quiet) std::cerr << line << "\n";
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int run_add(const std::string& section, const std::string& in_path, const CommonFlags& flags) {
  const auto desc = ballconfig::SectionDescriptor::parse(section);
  const Configuration input = ballconfig::load_configuration(in_path);
  const Configuration output = ballconfig::apply_section(desc, input);
  emit(ballconfig::config_to_json(output), flags);
  status(flags, "added 1 point via '" + desc.describe() + "' to " + std::to_string(input.size()) +
                   " existing points");
  return kExitPass;
}

int run_verify(const std::string& section, std::size_t n, Eigen::Index m, std::size_t samples,
               const std::string& equivariance, const CommonFlags& flags) {
  const auto desc = ballconfig::SectionDescriptor::parse(section);
  ballconfig::SectionCheckOptions opts;
  opts.samples = samples;
  opts.seed = flags.seed;
  if (equivariance == "on") {
    opts.equivariance = ballconfig::SectionCheckOptions::Equivariance::On;
  } else if (equivariance == "off") {
    opts.equivariance = ballconfig::SectionCheckOptions::Equivariance::Off;
  } else if (equivariance != "auto") {
    throw CLI::ValidationError("--check-equivariance must be auto, on or off");
  }

  Timer timer;
  const auto rep = ballconfig::verify_section(desc, n, m, opts);
  json payload = ballconfig::report_to_json(rep);
  payload["manifest"] = make_manifest(
      "verify",
      json{{"section", desc.describe()}, {"n", n}, {"m", m}, {"samples", samples},
           {"check_equivariance", equivariance}},
      flags.seed, timer.seconds());
  emit(payload, flags);
  status(flags, rep.passed() ? "verify: PASS" : "verify: FAIL");
  return rep.passed() ? kExitPass : kExitSectionFailure;
}

int run_homotopy(const std::string& section, const std::string& in_path, std::size_t frames,
                 const CommonFlags& flags) {
  const auto desc = ballconfig::SectionDescriptor::parse(section);
  const Configuration input = ballconfig::load_configuration(in_path);

  Timer timer;
  const auto trace = ballconfig::uniqueness_homotopy(desc, input, frames);
  json payload = ballconfig::trace_to_json(trace);
  payload["manifest"] = make_manifest(
      "homotopy", json{{"section", desc.describe()}, {"in", in_path}, {"frames", frames}},
      flags.seed, timer.seconds());
  emit(payload, flags);
  status(flags, "homotopy: " + std::to_string(trace.frames.size()) + " frames down to the midpoint rule");
  return kExitPass;
}

int run_obstruct(const std::string& section, std::size_t n, double radius, std::size_t samples,
                 const CommonFlags& flags) {
  const auto desc = ballconfig::SectionDescriptor::parse(section);
  Timer timer;
  const Configuration base = ballconfig::default_obstruction_base(n, flags.seed);
  const auto rep = ballconfig::measure_coefficients(desc, base, radius, samples);
  json payload = ballconfig::report_to_json(rep);
  payload["base"] = ballconfig::config_to_json(base);
  payload["manifest"] = make_manifest(
      "obstruct",
      json{{"section", desc.describe()}, {"n", n}, {"radius", radius}, {"samples", samples}},
      flags.seed, timer.seconds());
  emit(payload, flags);

  if (rep.collision) {
    status(flags, "obstruct: collision witness on loop '" + rep.collision->loop + "'");
    return kExitCollision;
  }
  status(flags, rep.identity_holds ? "obstruct: identity holds" : "obstruct: identity violated");
  return rep.identity_holds ? kExitPass : kExitIdentityViolated;
}

int run_fixed(const std::string& map_text, std::size_t n, Eigen::Index m, double tol,
              std::size_t restarts, std::size_t budget, const CommonFlags& flags) {
  const auto desc = ballconfig::PointMapDescriptor::parse(map_text, m);
  ballconfig::FixedSearchOptions opts;
  opts.tol = tol;
  opts.restarts = restarts;
  opts.budget = budget;
  opts.seed = flags.seed;

  Timer timer;
  const auto result = ballconfig::find_fixed_configuration(desc, n, m, opts);
  json payload = ballconfig::result_to_json(result);
  payload["map"] = desc.describe();
  payload["n"] = n;
  payload["m"] = m;
  payload["manifest"] = make_manifest(
      "fixed",
      json{{"map", desc.describe()}, {"n", n}, {"m", m}, {"tol", tol}, {"restarts", restarts},
           {"budget", budget}},
      flags.seed, timer.seconds());
  emit(payload, flags);
  status(flags, result.converged ? "fixed: converged" : "fixed: did not converge");
  return result.converged ? kExitPass : kExitNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point addition on configuration spaces of the closed unit ball"};
  app.set_version_flag("--version", ballconfig::kVersion);
  app.require_subcommand(1);

  // add
  auto* add = app.add_subcommand("add", "Apply a section rule to a configuration file");
  std::string add_section;
  std::string add_in;
  CommonFlags add_flags;
  add->add_option("--section", add_section, "midpoint | add-near:i,j | biased:a | registered name")
      ->required();
  add->add_option("--in", add_in, "Input configuration JSON")->required();
  add_common(add, add_flags);

  // verify
  auto* verify = app.add_subcommand("verify", "Sample-check the section contract");
  std::string verify_section_text;
  std::size_t verify_n = 2;
  Eigen::Index verify_m = 2;
  std::size_t verify_samples = 10000;
  std::string verify_eq = "auto";
  CommonFlags verify_flags;
  verify->add_option("--section", verify_section_text, "Section rule")->required();
  verify->add_option("--n", verify_n, "Number of points")->required();
  verify->add_option("--m", verify_m, "Ball dimension")->capture_default_str();
  verify->add_option("--samples", verify_samples, "Sample count")->capture_default_str();
  verify->add_option("--check-equivariance", verify_eq, "auto | on | off")->capture_default_str();
  add_common(verify, verify_flags);

  // homotopy
  auto* homotopy = app.add_subcommand("homotopy", "Deform a section onto the midpoint rule");
  std::string homotopy_section;
  std::string homotopy_in;
  std::size_t homotopy_frames = 64;
  CommonFlags homotopy_flags;
  homotopy->add_option("--section", homotopy_section, "Section rule")->required();
  homotopy->add_option("--in", homotopy_in, "Input 2-point configuration JSON")->required();
  homotopy->add_option("--frames", homotopy_frames, "Frames per phase")->capture_default_str();
  add_common(homotopy, homotopy_flags);

  // obstruct
  auto* obstruct = app.add_subcommand("obstruct", "Measure the winding coefficients of a candidate rule");
  std::string obstruct_section;
  std::size_t obstruct_n = 2;
  double obstruct_radius = 0.1;
  std::size_t obstruct_samples = ballconfig::kDefaultLoopSamples;
  CommonFlags obstruct_flags;
  obstruct->add_option("--section", obstruct_section, "Section rule or registered candidate")->required();
  obstruct->add_option("--n", obstruct_n, "Number of points (m = 2)")->required();
  obstruct->add_option("--radius", obstruct_radius, "Orbit radius")->capture_default_str();
  obstruct->add_option("--samples", obstruct_samples, "Frames per loop")->capture_default_str();
  add_common(obstruct, obstruct_flags);

  // fixed
  auto* fixed = app.add_subcommand("fixed", "Search for an approximately fixed configuration");
  std::string fixed_map;
  std::size_t fixed_n = 1;
  Eigen::Index fixed_m = 2;
  double fixed_tol = 1e-6;
  std::size_t fixed_restarts = 32;
  std::size_t fixed_budget = 100000;
  CommonFlags fixed_flags;
  fixed->add_option("--map", fixed_map, "centroid | constant:x,... | contraction:a,x,... | registered name")
      ->required();
  fixed->add_option("--n", fixed_n, "Number of points")->required();
  fixed->add_option("--m", fixed_m, "Ball dimension")->capture_default_str();
  fixed->add_option("--tol", fixed_tol, "Residual tolerance")->capture_default_str();
  fixed->add_option("--restarts", fixed_restarts, "Multistart count")->capture_default_str();
  fixed->add_option("--budget", fixed_budget, "Total objective evaluations")->capture_default_str();
  add_common(fixed, fixed_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (add->parsed()) return run_add(add_section, add_in, add_flags);
    if (verify->parsed()) {
      return run_verify(verify_section_text, verify_n, verify_m, verify_samples, verify_eq, verify_flags);
    }
    if (homotopy->parsed()) return run_homotopy(homotopy_section, homotopy_in, homotopy_frames, homotopy_flags);
    if (obstruct->parsed()) {
      return run_obstruct(obstruct_section, obstruct_n, obstruct_radius, obstruct_samples, obstruct_flags);
    }
    if (fixed->parsed()) {
      return run_fixed(fixed_map, fixed_n, fixed_m, fixed_tol, fixed_restarts, fixed_budget, fixed_flags);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
