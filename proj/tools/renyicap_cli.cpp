// Copyright 2026 The renyicap developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end. Single results emit JSON, sweeps emit CSV, and
// every run is fully determined by (verb, inputs, flags): identical
// invocations produce byte-identical outputs.
//
// Exit codes: 0 success, 1 property violation, 2 parse error, 3 invariant
// violation, 4 regime/domain error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "renyicap/capacity.hpp"
#include "renyicap/channels.hpp"
#include "renyicap/converse.hpp"
#include "renyicap/divergences.hpp"
#include "renyicap/io.hpp"
#include "renyicap/verify.hpp"

namespace {

using namespace renyicap;
using nlohmann::json;

struct Flags {
  double alpha = 1.5;
  int n = 1;
  double rate = 1.0;
  double p = 0.0;
  int trials = 20;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int restarts = 12;
  std::string out;
  std::string format = "json";
};

std::uint64_t effective_seed(const Flags& flags) {
  if (flags.seed_given) return flags.seed;
  if (const char* env = std::getenv("RENYICAP_SEED"))
    return std::strtoull(env, nullptr, 10);
  return flags.seed;
}

OptimizerConfig config_from(const Flags& flags) {
  OptimizerConfig cfg;
  cfg.restarts = flags.restarts;
  cfg.seed = effective_seed(flags);
  return cfg;
}

void emit(const Flags& flags, const std::string& text) {
  if (flags.out.empty()) {
    std::cout << text;
  } else {
    io::save_text_file(flags.out, text);
  }
}

int run_divergence(const std::string& a_path, const std::string& b_path,
                   const std::string& kind, const Flags& flags) {
  const DensityMatrix a = io::density_from_json(io::load_json_file(a_path));
  const DensityMatrix b = io::density_from_json(io::load_json_file(b_path));
  DivergenceValue v;
  if (kind == "sandwiched")
    v = sandwiched_d(a.op(), b.op(), flags.alpha);
  else if (kind == "traditional")
    v = renyi_d(a.op(), b.op(), flags.alpha);
  else if (kind == "vn")
    v = vn_relative_entropy(a.op(), b.op());
  else
    throw DomainError("unknown divergence kind: " + kind);
  emit(flags, io::dump(io::divergence_to_json(
                  v, kind, kind == "vn" ? 1.0 : flags.alpha)));
  return 0;
}

int run_radius(const std::string& channel_path, const Flags& flags) {
  const KrausChannel ch = io::channel_from_json(io::load_json_file(channel_path));
  const RadiusResult r = info_radius(ch, flags.alpha, config_from(flags));
  json out = io::radius_to_json(r);
  out["alpha"] = flags.alpha;
  emit(flags, io::dump(out));
  return 0;
}

int run_capacity(const std::string& channel_path, const Flags& flags) {
  const KrausChannel ch = io::channel_from_json(io::load_json_file(channel_path));
  const OptimizerConfig cfg = config_from(flags);
  const RadiusResult r = holevo_capacity(ch, cfg);
  json out = io::radius_to_json(r);
  out["c_constant"] = io::number_or_inf(c_constant_at(ch, r.sigma_star, cfg));
  emit(flags, io::dump(out));
  return 0;
}

int run_sweep(const std::string& channel_path, const std::vector<double>& alphas,
              const std::string& quantity, const Flags& flags) {
  const KrausChannel ch = io::channel_from_json(io::load_json_file(channel_path));
  const OptimizerConfig cfg = config_from(flags);
  std::ostringstream csv;
  csv << "alpha,value_bits,converged,restarts_used\n";
  for (double alpha : alphas) {
    double value = 0.0;
    bool converged = true;
    int used = cfg.restarts;
    if (quantity == "radius") {
      const RadiusResult r = info_radius(ch, alpha, cfg);
      value = r.value;
      converged = r.converged;
      used = r.restarts_used;
    } else if (quantity == "holevo") {
      value = alpha_holevo(ch, alpha, cfg);
    } else if (quantity == "min_output_entropy") {
      const OutputOptResult r = min_output_renyi(ch, alpha, cfg);
      value = r.value;
      converged = r.converged;
      used = r.restarts_used;
    } else {
      throw DomainError("unknown sweep quantity: " + quantity);
    }
    csv.precision(12);
    csv << alpha << "," << value << "," << (converged ? 1 : 0) << "," << used
        << "\n";
  }
  emit(flags, csv.str());
  return 0;
}

int run_bound(const std::string& channel_path, const std::string& variant,
              double eps, const Flags& flags) {
  const OptimizerConfig cfg = config_from(flags);
  BoundReport rep;
  if (variant == "generic") {
    const KrausChannel ch =
        io::channel_from_json(io::load_json_file(channel_path));
    const double chi_alpha = alpha_holevo(ch, flags.alpha, cfg);
    rep = generic_bound(flags.n, flags.rate,
                        static_cast<double>(flags.n) * chi_alpha, flags.alpha);
    rep.components["chi_tilde_alpha"] = chi_alpha;
  } else if (variant == "eb") {
    const KrausChannel ch =
        io::channel_from_json(io::load_json_file(channel_path));
    rep = eb_exponent_bound(ch, flags.n, flags.rate, cfg);
  } else if (variant == "sqrtn") {
    const KrausChannel ch =
        io::channel_from_json(io::load_json_file(channel_path));
    rep = sqrt_n_bound(ch, flags.n, flags.rate, cfg);
  } else if (variant == "weak") {
    const KrausChannel ch =
        io::channel_from_json(io::load_json_file(channel_path));
    const double chi = holevo_capacity(ch, cfg).value;
    const double r_max =
        weak_converse_rate(flags.n, eps, static_cast<double>(flags.n) * chi);
    json out{{"variant", "weak"},
             {"n", flags.n},
             {"eps", eps},
             {"chi", chi},
             {"rate_max", r_max}};
    emit(flags, io::dump(out));
    return 0;
  } else {
    throw DomainError("unknown bound variant: " + variant);
  }
  json out = io::bound_to_json(rep);
  out["variant"] = variant;
  emit(flags, io::dump(out));
  return 0;
}

int run_simulate(const std::string& spec_path, const Flags& flags) {
  const CodeSpec spec = io::codespec_from_json(io::load_json_file(spec_path));
  const KrausChannel ch = [&] {
    const json j = io::load_json_file(spec_path);
    if (!j.contains("channel"))
      throw ParseError("simulate: code spec file must embed a \"channel\"");
    return io::channel_from_json(j.at("channel"));
  }();
  const SimulationResult res = simulate_code(ch, spec, flags.trials);
  json out{{"p_succ_mean", res.p_succ_mean},
           {"std_error", res.std_error},
           {"per_codebook", res.per_codebook},
           {"trials", flags.trials},
           {"message_count", spec.message_count()}};
  emit(flags, io::dump(out));
  return 0;
}

int run_verify_cmd(const std::string& suite, const Flags& flags) {
  const verify::SuiteReport report =
      verify::run_suite(suite, effective_seed(flags));
  emit(flags, io::dump(verify::report_to_json(report)));
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sandwiched Renyi divergences, channel capacities, and "
               "strong-converse bounds"};
  app.require_subcommand(1);

  Flags flags;
  std::string a_path, b_path, channel_path, spec_path;
  std::string kind = "sandwiched";
  std::string quantity = "radius";
  std::string variant = "generic";
  std::string suite = "all";
  std::vector<double> alphas{1.1, 1.3, 1.5, 1.7, 2.0};
  double eps = 0.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", flags.alpha, "Renyi order")->capture_default_str();
    cmd->add_option("--n", flags.n, "channel uses")->capture_default_str();
    cmd->add_option("--rate", flags.rate, "bits per use")->capture_default_str();
    cmd->add_option("--p", flags.p, "noise parameter")->capture_default_str();
    cmd->add_option("--trials", flags.trials, "codebook resamples")
        ->capture_default_str();
    cmd->add_option("--seed", flags.seed,
                    "rng seed (falls back to RENYICAP_SEED)")
        ->each([&](const std::string&) { flags.seed_given = true; });
    cmd->add_option("--restarts", flags.restarts, "optimizer restarts")
        ->capture_default_str();
    cmd->add_option("--out", flags.out, "write output to a file");
    cmd->add_option("--format", flags.format, "json or csv")
        ->capture_default_str();
  };

  CLI::App* divergence =
      app.add_subcommand("divergence", "divergence between two states");
  divergence->add_option("--a", a_path, "first state (matrix JSON)")->required();
  divergence->add_option("--b", b_path, "second state (matrix JSON)")->required();
  divergence->add_option("--kind", kind, "sandwiched | traditional | vn")
      ->capture_default_str();
  add_common(divergence);

  CLI::App* radius = app.add_subcommand("radius", "alpha-information radius");
  radius->add_option("--channel", channel_path, "channel JSON")->required();
  add_common(radius);

  CLI::App* capacity =
      app.add_subcommand("capacity", "Holevo capacity and channel constant");
  capacity->add_option("--channel", channel_path, "channel JSON")->required();
  add_common(capacity);

  CLI::App* bound = app.add_subcommand("bound", "success-probability bounds");
  bound->add_option("--channel", channel_path, "channel JSON")->required();
  bound->add_option("--variant", variant, "generic | eb | sqrtn | weak")
      ->capture_default_str();
  bound->add_option("--eps", eps, "error budget for the weak variant")
      ->capture_default_str();
  add_common(bound);

  CLI::App* simulate =
      app.add_subcommand("simulate", "exact success probability of sampled codebooks");
  simulate->add_option("--spec", spec_path, "code spec JSON with embedded channel")
      ->required();
  add_common(simulate);

  CLI::App* sweep = app.add_subcommand("sweep", "quantity across alpha values");
  sweep->add_option("--channel", channel_path, "channel JSON")->required();
  sweep->add_option("--alphas", alphas, "alpha grid")->capture_default_str();
  sweep->add_option("--quantity", quantity,
                    "radius | holevo | min_output_entropy")
      ->capture_default_str();
  add_common(sweep);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run a property-verification suite");
  verify_cmd->add_option("--suite", suite,
                         "divergence-props | channel-props | lemma-equality | "
                         "subadditivity | converse-chain | all")
      ->capture_default_str();
  add_common(verify_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (divergence->parsed()) return run_divergence(a_path, b_path, kind, flags);
    if (radius->parsed()) return run_radius(channel_path, flags);
    if (capacity->parsed()) return run_capacity(channel_path, flags);
    if (bound->parsed()) return run_bound(channel_path, variant, eps, flags);
    if (simulate->parsed()) return run_simulate(spec_path, flags);
    if (sweep->parsed()) return run_sweep(channel_path, alphas, quantity, flags);
    if (verify_cmd->parsed()) return run_verify_cmd(suite, flags);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
