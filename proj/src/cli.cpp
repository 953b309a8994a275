// Copyright 2026 The persistkit authors
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

#include "persistkit/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "persistkit/diffusion.hpp"
#include "persistkit/potential.hpp"
#include "persistkit/verify.hpp"
#include "persistkit/walk.hpp"

namespace persistkit::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string config_path;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = resolve from env / OpenMP default
  std::uint32_t chunk_size = 8192;
  std::string out;
};

void add_common(CLI::App* cmd, Common* c, const std::string& default_out) {
  cmd->add_option("--config", c->config_path,
                  "JSON config file; keys mirror the long option names");
  cmd->add_option("--seed", c->seed, "master seed (mandatory, no wall-clock seeding)");
  cmd->add_option("--threads", c->threads, "worker count (default: PERSISTKIT_THREADS)");
  cmd->add_option("--chunk-size", c->chunk_size, "paths per RNG chunk (determinism contract)");
  c->out = default_out;
  cmd->add_option("--out", c->out, "output path");
}

// Config-file values fill in options the command line left untouched.
void overlay_config(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--config", std::string("bad JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw CLI::ValidationError("--config", "must be a JSON object");
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + it.key());
    if (opt == nullptr) {
      throw CLI::ValidationError("--config", "unknown key \"" + it.key() + "\"");
    }
    if (opt->count() > 0) continue;  // explicit flags win
    std::string text = it.value().is_string() ? it.value().get<std::string>()
                                              : it.value().dump();
    opt->add_result(text);
    opt->run_callback();
  }
}

mc::RunPolicy make_policy(const Common& c) {
  mc::RunPolicy p = mc::default_policy();
  if (c.threads > 0) p.threads = c.threads;
  p.chunk_size = c.chunk_size;
  return p;
}

std::vector<std::uint64_t> parse_ns(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(static_cast<std::uint64_t>(std::llround(std::stod(tok))));
  }
  if (out.empty()) throw CLI::ValidationError("--ns", "empty list");
  return out;
}

harmonic::PlanePoint parse_point(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("--start", "expected \"x,y\"");
  }
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

json meta_json(const std::string& command, std::uint64_t seed, const json& config) {
  return json{{"persistkit", kVersion},
              {"command", command},
              {"rng", rng::kAlgorithmName},
              {"seed", seed},
              {"config", config}};
}

void write_csv(const std::string& path, const std::string& command,
               std::uint64_t seed, const json& config, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# persistkit " << kVersion << "\n";
  out << "# command: " << command << "\n";
  out << "# rng: " << rng::kAlgorithmName << "\n";
  out << "# seed: " << seed << "\n";
  out << "# config: " << config.dump() << "\n";
  out << header << "\n";
  for (const auto& r : rows) out << r << "\n";
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// ---------------------------------------------------------------------------

int run_survival(const std::string& command, const Common& common,
                 const std::string& dist_name, harmonic::PlanePoint start,
                 const std::string& ns_text, double paths) {
  auto d = dist::from_name(dist_name);
  auto ns = parse_ns(ns_text);
  auto n_paths = static_cast<std::uint64_t>(paths);
  mc::RunPolicy policy = make_policy(common);

  json config{{"dist", dist_name},
              {"start", {start.x, start.y}},
              {"ns", ns},
              {"paths", n_paths},
              {"seed", common.seed},
              {"threads", policy.threads},
              {"chunk_size", policy.chunk_size},
              {"out", common.out}};

  walk::SurvivalCurve curve =
      walk::estimate_survival(d, start, ns, n_paths, common.seed, policy);

  std::vector<std::string> rows;
  for (const auto& r : curve.rows) {
    rows.push_back(std::to_string(r.n) + "," + fmt(r.estimate.value) + "," +
                   fmt(r.estimate.stderr_value) + "," +
                   std::to_string(r.estimate.n_samples));
  }
  write_csv(common.out, command, common.seed, config, "n,p_hat,stderr,n_paths", rows);
  std::cout << command << ": wrote " << rows.size() << " rows to " << common.out
            << "\n";
  return 0;
}

int run_vfun(const Common& common, const std::string& dist_name,
             harmonic::PlanePoint start, const std::string& mode, double paths,
             std::uint64_t horizon, const std::string& ns_text, bool fast_h) {
  auto d = dist::from_name(dist_name);
  auto n_paths = static_cast<std::uint64_t>(paths);
  mc::RunPolicy policy = make_policy(common);
  auto spec = potential::make_corrector_spec(
      d, fast_h ? specfun::UPrecision::fast : specfun::UPrecision::full);

  json config{{"dist", dist_name},        {"start", {start.x, start.y}},
              {"mode", mode},             {"paths", n_paths},
              {"horizon", horizon},       {"ns", ns_text},
              {"seed", common.seed},      {"threads", policy.threads},
              {"chunk_size", policy.chunk_size}, {"fast-h", fast_h},
              {"out", common.out}};
  json doc = meta_json("vfun", common.seed, config);

  double series_value = 0.0, series_se = 0.0;
  bool have_series = false;
  if (mode == "series" || mode == "both") {
    auto v = potential::estimate_V_series(spec, start, horizon, n_paths,
                                          common.seed, policy);
    doc["series"] = {{"value", v.estimate.value},
                     {"stderr", v.estimate.stderr_value},
                     {"n_paths", v.estimate.n_samples},
                     {"censored_fraction", v.censored_fraction},
                     {"mean_visited", v.mean_visited}};
    series_value = v.estimate.value;
    series_se = v.estimate.stderr_value;
    have_series = true;
  }
  if (mode == "limit" || mode == "both") {
    auto ns = parse_ns(ns_text);
    auto rows = potential::estimate_V0_limit(spec, start, ns, n_paths,
                                             common.seed + 1, policy);
    json jrows = json::array();
    for (std::size_t i = 0; i < ns.size(); ++i) {
      jrows.push_back({{"n", ns[i]},
                       {"value", rows[i].value},
                       {"stderr", rows[i].stderr_value}});
    }
    doc["limit"] = jrows;
    if (have_series) {
      double lim = rows.back().value, lim_se = rows.back().stderr_value;
      double denom = std::hypot(series_se, lim_se);
      doc["agreement_z"] =
          denom > 0 ? std::fabs(series_value - lim) / denom : 0.0;
    }
  }
  write_json(common.out, doc);
  std::cout << "vfun: wrote " << common.out << "\n";
  return 0;
}

int run_corrector(const Common& common, const std::string& dist_name,
                  const std::string& points_text, const std::string& rays_text) {
  auto d = dist::from_name(dist_name);
  auto spec = potential::make_corrector_spec(d);

  std::vector<harmonic::PlanePoint> points;
  if (!points_text.empty()) {
    std::stringstream ss(points_text);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      if (!tok.empty()) points.push_back(parse_point(tok));
    }
  }
  if (!rays_text.empty()) {
    std::stringstream ss(rays_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      double t = std::stod(tok);
      points.push_back({t * t * t, t});
      points.push_back({t * t * t, 0.0});
      points.push_back({t * t * t, -t});
    }
  }
  if (points.empty()) {
    throw CLI::ValidationError("--points", "no evaluation points given");
  }

  json config{{"dist", dist_name}, {"points", points_text}, {"rays", rays_text},
              {"seed", common.seed}, {"out", common.out}};
  std::vector<std::string> rows;
  for (auto z : points) {
    double f = potential::corrector_f(spec, z);
    double a = harmonic::alpha(z);
    rows.push_back(fmt(z.x) + "," + fmt(z.y) + "," + fmt(f) + "," + fmt(a) + "," +
                   fmt(std::fabs(f) * std::pow(a, 1.5)));
  }
  write_csv(common.out, "corrector", common.seed, config,
            "x,y,f,alpha,abs_f_alpha_3_2", rows);
  std::cout << "corrector: wrote " << rows.size() << " rows to " << common.out
            << "\n";
  return 0;
}

int run_diffusion(const Common& common, const std::string& start_text,
                  const std::string& times_text, double paths,
                  double steps_per_unit) {
  harmonic::PlanePoint start = parse_point(start_text);
  auto n_paths = static_cast<std::uint64_t>(paths);
  mc::RunPolicy policy = make_policy(common);

  std::vector<double> times;
  {
    std::stringstream ss(times_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) times.push_back(std::stod(tok));
    }
  }
  if (times.empty()) throw CLI::ValidationError("--times", "empty list");

  json config{{"start", {start.x, start.y}}, {"times", times},
              {"paths", n_paths},            {"steps_per_unit", steps_per_unit},
              {"seed", common.seed},         {"threads", policy.threads},
              {"chunk_size", policy.chunk_size}, {"out", common.out}};

  std::vector<std::string> rows;
  for (double t : times) {
    auto n_steps = static_cast<std::uint64_t>(std::ceil(steps_per_unit * t));
    auto est = diffusion::mc_bm_survival(start, t, n_steps, n_paths, common.seed,
                                         policy);
    double asym = diffusion::bm_survival_asymptotic(start, t);
    rows.push_back(fmt(t) + "," + fmt(est.estimate.value) + "," +
                   fmt(est.estimate.stderr_value) + "," +
                   std::to_string(est.n_steps) + "," + fmt(asym));
  }
  write_csv(common.out, "diffusion", common.seed, config,
            "t,p_hat,stderr,n_steps,asymptotic", rows);
  std::cout << "diffusion: wrote " << rows.size() << " rows to " << common.out
            << "\n";
  return 0;
}

int run_verify(const Common& common, const std::string& suite_name) {
  std::vector<std::string> names;
  if (suite_name == "all") {
    names = verify::suite_names();
  } else {
    names.push_back(suite_name);
  }

  json config{{"suite", suite_name}, {"out", common.out}};
  json doc = meta_json("verify", common.seed, config);
  json suites = json::array();
  bool all_pass = true;
  for (const auto& name : names) {
    verify::Suite s = verify::run_suite(name);
    json checks = json::array();
    for (const auto& c : s.checks) {
      checks.push_back({{"name", c.name},
                        {"observed", c.observed},
                        {"bound", c.bound},
                        {"pass", c.pass}});
      std::cout << (c.pass ? "  ok   " : "  FAIL ") << name << ": " << c.name
                << " (observed " << c.observed << ", bound " << c.bound << ")\n";
    }
    suites.push_back({{"name", s.name}, {"pass", s.pass}, {"checks", checks}});
    all_pass = all_pass && s.pass;
  }
  doc["suites"] = suites;
  doc["pass"] = all_pass;
  write_json(common.out, doc);
  std::cout << "verify: " << (all_pass ? "PASS" : "FAIL") << ", report in "
            << common.out << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"persistence theory of integrated random walks"};
  app.set_version_flag("--version", std::string("persistkit ") + kVersion);
  app.require_subcommand(1);

  // persist ------------------------------------------------------------
  Common persist_common;
  std::string persist_dist = "gaussian", persist_start = "1,0";
  std::string persist_ns = "64,256,1024,4096";
  double persist_paths = 1e5;
  auto* persist = app.add_subcommand("persist", "survival curve P_z(tau > n)");
  persist->add_option("--dist", persist_dist, "increment law");
  persist->add_option("--start", persist_start, "start point x,y");
  persist->add_option("--ns", persist_ns, "comma-separated horizons");
  persist->add_option("--paths", persist_paths, "number of trajectories");
  add_common(persist, &persist_common, "persist.csv");

  // afun ---------------------------------------------------------------
  Common afun_common;
  std::string afun_dist = "rademacher", afun_ns = "64,256,1024,4096";
  double afun_paths = 1e5;
  auto* afun = app.add_subcommand("afun", "P_0(A_n) from the origin");
  afun->add_option("--dist", afun_dist, "increment law");
  afun->add_option("--ns", afun_ns, "comma-separated horizons");
  afun->add_option("--paths", afun_paths, "number of trajectories");
  add_common(afun, &afun_common, "afun.csv");

  // vfun ---------------------------------------------------------------
  Common vfun_common;
  std::string vfun_dist = "rademacher", vfun_start = "2,1", vfun_mode = "both";
  std::string vfun_ns = "64,256,1024,4096";
  double vfun_paths = 2e4;
  std::uint64_t vfun_horizon = 4096;
  bool vfun_fast = false;
  auto* vfun = app.add_subcommand("vfun", "harmonic function V estimators");
  vfun->add_option("--dist", vfun_dist, "increment law");
  vfun->add_option("--start", vfun_start, "start point x,y");
  vfun->add_option("--mode", vfun_mode, "series | limit | both")
      ->check(CLI::IsMember({"series", "limit", "both"}));
  vfun->add_option("--paths", vfun_paths, "number of trajectories");
  vfun->add_option("--horizon", vfun_horizon, "series truncation horizon");
  vfun->add_option("--ns", vfun_ns, "horizons for the limit estimator");
  vfun->add_flag("--fast-h", vfun_fast, "evaluate h in fast mode");
  add_common(vfun, &vfun_common, "vfun.json");

  // corrector ----------------------------------------------------------
  Common corr_common;
  std::string corr_dist = "rademacher", corr_points, corr_rays;
  auto* corr = app.add_subcommand("corrector", "corrector f along points/rays");
  corr->add_option("--dist", corr_dist, "increment law");
  corr->add_option("--points", corr_points, "semicolon-separated x,y pairs");
  corr->add_option("--rays", corr_rays,
                   "comma-separated t values; evaluates (t^3, +-t) and (t^3, 0)");
  add_common(corr, &corr_common, "corrector.csv");

  // diffusion ----------------------------------------------------------
  Common diff_common;
  std::string diff_start = "1,0", diff_times = "64,256,1024";
  double diff_paths = 1e5, diff_steps = 64.0;
  auto* diff = app.add_subcommand("diffusion", "Kolmogorov diffusion exit Monte Carlo");
  diff->add_option("--start", diff_start, "start point x,y");
  diff->add_option("--times", diff_times, "comma-separated horizons t");
  diff->add_option("--paths", diff_paths, "number of trajectories");
  diff->add_option("--steps-per-unit", diff_steps, "monitoring grid density");
  add_common(diff, &diff_common, "diffusion.csv");

  // verify ---------------------------------------------------------------
  Common verify_common;
  std::string verify_suite = "all";
  auto* verif = app.add_subcommand("verify", "run residual suites");
  verif->add_option("--suite", verify_suite, "specfun | harmonic | diffusion | rng | all")
      ->check(CLI::IsMember({"specfun", "harmonic", "diffusion", "rng", "all"}));
  add_common(verif, &verify_common, "verify.json");

  try {
    app.parse(argc, argv);
    for (auto [cmd, common] :
         {std::pair{persist, &persist_common}, {afun, &afun_common},
          {vfun, &vfun_common}, {corr, &corr_common}, {diff, &diff_common},
          {verif, &verify_common}}) {
      if (cmd->parsed()) overlay_config(cmd, common->config_path);
    }

    // Master seed is mandatory for every sampling command (either on the
    // command line or through the config file).
    for (auto [cmd, name] : {std::pair{persist, "persist"}, {afun, "afun"},
                             {vfun, "vfun"}, {diff, "diffusion"}}) {
      if (cmd->parsed() && cmd->count("--seed") == 0) {
        throw CLI::RequiredError(std::string(name) + " --seed");
      }
    }

    if (persist->parsed()) {
      return run_survival("persist", persist_common, persist_dist,
                          parse_point(persist_start), persist_ns, persist_paths);
    }
    if (afun->parsed()) {
      return run_survival("afun", afun_common, afun_dist, {0.0, 0.0}, afun_ns,
                          afun_paths);
    }
    if (vfun->parsed()) {
      return run_vfun(vfun_common, vfun_dist, parse_point(vfun_start), vfun_mode,
                      vfun_paths, vfun_horizon, vfun_ns, vfun_fast);
    }
    if (corr->parsed()) {
      return run_corrector(corr_common, corr_dist, corr_points, corr_rays);
    }
    if (diff->parsed()) {
      return run_diffusion(diff_common, diff_start, diff_times, diff_paths,
                           diff_steps);
    }
    if (verif->parsed()) {
      return run_verify(verify_common, verify_suite);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace persistkit::cli
