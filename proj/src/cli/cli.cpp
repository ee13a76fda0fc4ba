#include "hubo/cli/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hubo/encoders/instance_json.hpp"
#include "hubo/poly/interchange.hpp"
#include "hubo/qsim/bf_dcqo.hpp"
#include "hubo/resources/resources.hpp"
#include "hubo/solvers/rolling_horizon.hpp"

namespace hubo::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string input;
  std::string out;
  std::string use_case;
  std::string solver = "sa";
  std::string preset;
  std::string oracle;
  std::string inner = "sa";
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  // annealing
  std::optional<std::size_t> sweeps, restarts;
  std::optional<double> t_initial, t_final, target;

  // rolling horizon
  std::size_t n_sub = 4, m_sub = 2, retries = 3;

  // simulation
  std::optional<std::size_t> iterations, shots, steps;
  std::optional<double> alpha_cvar, total_time, hx;

  // estimate
  std::optional<double> e_2q, t_2q, t_reset, depth_alpha, epsilon, delta, n_sweep, t_sweep;
  std::optional<std::uint64_t> trotter_steps;
};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// Tracks files touched by a command for the manifest.
struct RunRecord {
  std::string command;
  Json config = Json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

UseCase resolve_use_case(const Options& o, const Json& j) {
  if (!o.use_case.empty()) {
    try {
      return parse_use_case(o.use_case);
    } catch (const std::exception&) {
      throw ValidationError("--use-case", "expected quest, cvrp or scheduling");
    }
  }
  if (auto u = declared_use_case(j)) return *u;
  throw ValidationError("use_case", "not declared in the instance; pass --use-case");
}

struct LoadedInput {
  Polynomial polynomial;
  std::optional<EncodedProblem> encoded;
  std::optional<Json> instance;
};

LoadedInput load_input(const Options& o, RunRecord& rec) {
  rec.inputs.push_back(o.input);
  LoadedInput in;
  if (ends_with(o.input, ".hubo")) {
    in.polynomial = load_hubo(o.input).polynomial;
    return in;
  }
  in.instance = load_json(o.input);
  in.encoded = build_from_json(resolve_use_case(o, *in.instance), *in.instance);
  in.polynomial = in.encoded->polynomial;
  rec.config["use_case"] = to_string(in.encoded->use_case);
  return in;
}

Json layout_json(const EncodedProblem& ep) {
  Json j;
  j["use_case"] = to_string(ep.use_case);
  j["num_vars"] = ep.num_vars();
  j["variables"] = ep.variable_names();
  j["weights"] = ep.weights;
  j["constant_offset"] = ep.constant_offset();
  Json comp = Json::object();
  for (const auto& [name, p] : ep.components) comp[name] = p.size();
  j["component_terms"] = comp;
  return j;
}

std::optional<double> brute_oracle(const Polynomial& p, std::ostream& err) {
  BruteForceConfig cfg;
  if (p.num_vars() > cfg.max_vars) {
    err << "warning: " << p.num_vars() << " variables exceed the brute-force cap of " << cfg.max_vars
        << "; approximation ratio omitted\n";
    return std::nullopt;
  }
  return brute_force(p, cfg).best_energy;
}

SaConfig sa_config(const Options& o, const std::optional<double>& optimum, Json& config) {
  SaConfig c;
  if (o.preset == "paper-sa") {
    c.sweeps = 1000000;
    c.restarts = 10000;
    if (optimum) c.target_energy = *optimum;
  } else if (o.preset == "cvrp-val") {
    c.sweeps = 10000;
    c.restarts = 100;
    if (optimum) c.target_energy = *optimum;
  }
  if (o.sweeps) c.sweeps = *o.sweeps;
  if (o.restarts) c.restarts = *o.restarts;
  c.t_initial = o.t_initial;
  c.t_final = o.t_final;
  if (o.target) c.target_energy = *o.target;
  c.seed = o.seed;
  c.jobs = o.jobs;
  validate(c);
  config["sweeps"] = c.sweeps;
  config["restarts"] = c.restarts;
  if (c.t_initial) config["t_initial"] = *c.t_initial;
  if (c.t_final) config["t_final"] = *c.t_final;
  if (c.target_energy) config["target_energy"] = *c.target_energy;
  return c;
}

void check_preset(const Options& o, std::initializer_list<const char*> allowed) {
  if (o.preset.empty()) return;
  for (const char* a : allowed) {
    if (o.preset == a) return;
  }
  throw ValidationError("--preset", "'" + o.preset + "' does not apply to this command");
}

void add_decoded(Json& j, const EncodedProblem& ep, const BitString& s) {
  j["decoded"] = to_json(decode(ep, s));
}

void cmd_encode(const Options& o, RunRecord& rec) {
  rec.inputs.push_back(o.input);
  const Json inst = load_json(o.input);
  const UseCase u = resolve_use_case(o, inst);
  const auto ep = build_from_json(u, inst);
  rec.config["use_case"] = to_string(u);

  HuboFile file{ep.polynomial, {}};
  const auto names = ep.variable_names();
  for (std::size_t i = 0; i < names.size(); ++i) file.names[static_cast<VarId>(i)] = names[i];
  write_text(o.out, write_hubo(file));
  rec.outputs.push_back(o.out);

  const std::string layout = o.out + ".layout.json";
  write_text(layout, dump(layout_json(ep)));
  rec.outputs.push_back(layout);
}

void cmd_solve(const Options& o, RunRecord& rec, std::ostream& err) {
  check_preset(o, {"paper-sa", "cvrp-val"});
  const auto in = load_input(o, rec);
  std::optional<double> optimum;
  if (o.oracle == "brute") optimum = brute_oracle(in.polynomial, err);

  Json result;
  result["solver"] = o.solver;
  rec.config["solver"] = o.solver;
  if (o.solver == "hybrid") {
    if (!in.encoded || in.encoded->use_case != UseCase::kScheduling) {
      throw ValidationError("--solver", "hybrid needs a scheduling instance");
    }
    const auto inst = scheduling_from_json(*in.instance);
    HorizonConfig hc;
    hc.n_sub = o.n_sub;
    hc.m_sub = o.m_sub;
    hc.retries = o.retries;
    hc.seed = o.seed;
    if (o.inner == "brute") {
      hc.inner = brute_inner();
    } else {
      hc.inner = sa_inner(sa_config(o, std::nullopt, rec.config));
    }
    rec.config["inner"] = o.inner;
    rec.config["n_sub"] = hc.n_sub;
    rec.config["m_sub"] = hc.m_sub;
    rec.config["retries"] = hc.retries;
    const auto hr = rolling_horizon(inst, hc);
    const auto& a = std::get<ScheduleAssignment>(hr.solution.payload);
    Json windows = Json::array();
    for (const auto& w : hr.windows) {
      windows.push_back({{"first_slot", w.first_slot}, {"jobs", w.jobs}, {"attempts", w.attempts},
                         {"soft_energy", w.soft_energy}});
    }
    result["windows"] = windows;
    result["decoded"] = to_json(hr.solution);
    if (hr.solution.feasible) {
      const auto bits = encode_schedule(*in.encoded, a.job_at_slot, a.lane_at_slot);
      const double e = in.polynomial.evaluate(bits);
      result["best"] = bits_to_string(bits);
      result["best_energy"] = e;
      if (optimum) result["approximation_ratio"] = approximation_ratio(*optimum, e);
    }
  } else {
    SolveResult r;
    if (o.solver == "brute") {
      r = brute_force(in.polynomial);
    } else if (o.solver == "sa") {
      r = simulated_annealing(in.polynomial, sa_config(o, optimum, rec.config));
    } else {
      throw ValidationError("--solver", "expected brute, sa or hybrid");
    }
    if (optimum) r.approximation_ratio = approximation_ratio(*optimum, r.best_energy);
    result["result"] = to_json(r);
    if (in.encoded) add_decoded(result, *in.encoded, r.best);
  }
  if (optimum) result["optimum"] = *optimum;
  write_text(o.out, dump(result));
  rec.outputs.push_back(o.out);
}

BfDcqoConfig dcqo_config(const Options& o, Json& config) {
  BfDcqoConfig c;
  if (o.preset == "quest-small") {
    c.n_iter = 3;
    c.n_shots = 10000;
  } else if (o.preset == "cvrp-val") {
    c.n_iter = 10;
    c.n_shots = 10000;
  }
  if (o.iterations) c.n_iter = *o.iterations;
  if (o.shots) c.n_shots = *o.shots;
  if (o.alpha_cvar) c.alpha_cvar = *o.alpha_cvar;
  if (o.steps) c.steps = *o.steps;
  if (o.total_time) c.total_time = *o.total_time;
  if (o.hx) c.hx = *o.hx;
  c.seed = o.seed;
  validate(c);
  config["n_iter"] = c.n_iter;
  config["n_shots"] = c.n_shots;
  config["alpha_cvar"] = c.alpha_cvar;
  config["steps"] = c.steps;
  config["total_time"] = c.total_time;
  config["hx"] = c.hx;
  return c;
}

void cmd_simulate(const Options& o, RunRecord& rec, std::ostream& err) {
  check_preset(o, {"quest-small", "cvrp-val"});
  const auto in = load_input(o, rec);
  const auto cfg = dcqo_config(o, rec.config);
  std::optional<double> optimum;
  if (o.oracle == "brute") optimum = brute_oracle(in.polynomial, err);

  auto run = bf_dcqo(in.polynomial, cfg);
  if (optimum) run.result.approximation_ratio = approximation_ratio(*optimum, run.result.best_energy);
  Json result;
  result["solver"] = "bf-dcqo";
  result["result"] = to_json(run.result);
  if (optimum) result["optimum"] = *optimum;
  if (in.encoded) add_decoded(result, *in.encoded, run.result.best);
  write_text(o.out, dump(result));
  rec.outputs.push_back(o.out);

  const std::string trace = o.out + ".trace.json";
  write_text(trace, dump(to_json(run.trace)));
  rec.outputs.push_back(trace);
}

void apply_hardware_flags(const Options& o, ScenarioGrid& g) {
  if (o.preset == "fig8") {
    g.hardware.t_2q = 50e-6;
    g.hardware.t_reset = 200e-6;
    g.runtime.n_iter = 2;
    g.fixed_shots = 1000;
  }
  if (o.e_2q) g.e_2q = {*o.e_2q};
  if (o.depth_alpha) g.alpha = {*o.depth_alpha};
  if (o.t_2q) g.hardware.t_2q = *o.t_2q;
  if (o.t_reset) g.hardware.t_reset = *o.t_reset;
  if (o.iterations) g.runtime.n_iter = static_cast<double>(*o.iterations);
  if (o.shots) g.fixed_shots = static_cast<double>(*o.shots);
  if (o.epsilon) g.epsilon = *o.epsilon;
  if (o.delta) g.delta = *o.delta;
  if (o.n_sweep) g.runtime.n_sweep = *o.n_sweep;
  if (o.t_sweep) g.runtime.t_sweep = *o.t_sweep;
  if (o.trotter_steps) g.trotter_steps = *o.trotter_steps;
  HardwareModel probe = g.hardware;
  for (double e : g.e_2q) {
    probe.e_2q = e;
    for (double a : g.alpha) {
      probe.alpha = a;
      validate(probe);
    }
  }
}

void cmd_estimate(const Options& o, RunRecord& rec) {
  check_preset(o, {"fig8"});
  rec.inputs.push_back(o.input);
  std::vector<ScenarioRow> rows;
  ScenarioGrid grid;
  std::optional<Polynomial> exact;
  if (ends_with(o.input, ".hubo")) {
    exact = load_hubo(o.input).polynomial;
  } else {
    const Json j = load_json(o.input);
    if (j.is_object() && j.contains("points")) {
      grid = scenario_grid_from_json(j);
    } else {
      exact = build_from_json(resolve_use_case(o, j), j).polynomial;
    }
  }
  apply_hardware_flags(o, grid);
  if (exact) {
    rec.config["mode"] = "exact";
    const auto n_2q = gate_estimate(exact_histogram(*exact), grid.trotter_steps);
    const std::string label = fs::path(o.input).stem().string();
    for (double e : grid.e_2q) {
      for (double a : grid.alpha) rows.push_back(evaluate_point(grid, label, exact->num_vars(), n_2q, e, a));
    }
  } else {
    rec.config["mode"] = "grid";
    rows = scenario_sweep(grid);
  }
  rec.config["t_2q"] = grid.hardware.t_2q;
  rec.config["t_reset"] = grid.hardware.t_reset;
  rec.config["e_2q"] = grid.e_2q;
  rec.config["alpha"] = grid.alpha;
  rec.config["n_iter"] = grid.runtime.n_iter;
  if (grid.fixed_shots) rec.config["n_shots"] = *grid.fixed_shots;
  rec.config["epsilon"] = grid.epsilon;
  rec.config["delta"] = grid.delta;
  rec.config["trotter_steps"] = grid.trotter_steps;

  std::ostringstream os;
  write_csv(os, rows);
  write_text(o.out, os.str());
  rec.outputs.push_back(o.out);
}

void write_manifest(const Options& o, const RunRecord& rec, const std::vector<std::string>& args,
                    const std::string& started) {
  Json m;
  m["tool"] = "hubo";
  m["version"] = kToolVersion;
  m["command"] = rec.command;
  m["argv"] = args;
  m["cwd"] = fs::current_path().string();
  m["seed"] = o.seed;
  m["config"] = rec.config;
  if (!o.preset.empty()) m["config"]["preset"] = o.preset;
  Json ins = Json::object(), outs = Json::object();
  for (const auto& p : rec.inputs) ins[p] = file_digest(p);
  for (const auto& p : rec.outputs) outs[p] = file_digest(p);
  m["inputs"] = ins;
  m["outputs"] = outs;
  m["started_at"] = started;
  m["finished_at"] = utc_now();
  write_text(manifest_path(o.out), dump(m));
}

int cmd_replay(const std::string& manifest, std::ostream& out, std::ostream& err) {
  const Json m = load_json(manifest);
  if (!m.contains("argv") || !m["argv"].is_array()) throw ValidationError("argv", "missing from manifest");
  const auto args = m["argv"].get<std::vector<std::string>>();
  if (!args.empty() && args.front() == "replay") throw ValidationError("argv", "manifest records a replay");
  const Json expected = m.value("outputs", Json::object());

  const fs::path here = fs::current_path();
  if (m.contains("cwd")) fs::current_path(m["cwd"].get<std::string>());
  const int code = run(args, out, err);
  int status = code;
  if (code == kOk) {
    for (const auto& [path, digest] : expected.items()) {
      const bool same = fs::exists(path) && file_digest(path) == digest.get<std::string>();
      if (!same) {
        err << "replay: " << path << " differs from the recorded output\n";
        status = kRuntimeFailure;
      }
    }
    if (status == kOk) out << "replay: " << expected.size() << " output(s) identical\n";
  }
  fs::current_path(here);
  return status;
}

}  // namespace

std::string file_digest(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (is.read(buf, sizeof(buf)) || is.gcount() > 0) {
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(is.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return "sha256:" + hex.str();
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"HUBO encoding, solving, simulation and resource estimation", "hubo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto add_common = [&](CLI::App* c, bool with_input = true) {
    if (with_input) c->add_option("input", o.input, "input file")->required();
    c->add_option("--out", o.out, "output file")->required();
    c->add_option("--use-case", o.use_case, "quest, cvrp or scheduling")
        ->check(CLI::IsMember({"quest", "cvrp", "scheduling"}));
    c->add_option("--preset", o.preset, "named parameter set")
        ->check(CLI::IsMember({"paper-sa", "quest-small", "cvrp-val", "fig8"}));
    c->add_option("--seed", o.seed, "seed for all randomness");
  };

  auto* encode = app.add_subcommand("encode", "build a HUBO file from an instance");
  add_common(encode);

  auto* solve = app.add_subcommand("solve", "solve a HUBO file or instance classically");
  add_common(solve);
  solve->add_option("--solver", o.solver, "brute, sa or hybrid")->check(CLI::IsMember({"brute", "sa", "hybrid"}));
  solve->add_option("--jobs", o.jobs, "threads for annealing restarts")->check(CLI::PositiveNumber);
  solve->add_option("--oracle", o.oracle, "reference optimum")->check(CLI::IsMember({"brute"}));
  solve->add_option("--sweeps", o.sweeps);
  solve->add_option("--restarts", o.restarts);
  solve->add_option("--t-initial", o.t_initial);
  solve->add_option("--t-final", o.t_final);
  solve->add_option("--target", o.target, "stop after the first restart reaching this energy");
  solve->add_option("--inner", o.inner, "window solver for hybrid")->check(CLI::IsMember({"sa", "brute"}));
  solve->add_option("--n-sub", o.n_sub, "candidate jobs per window");
  solve->add_option("--m-sub", o.m_sub, "slots per window");
  solve->add_option("--retries", o.retries, "reseeded attempts per infeasible window");

  auto* simulate = app.add_subcommand("simulate", "statevector BF-DCQO");
  add_common(simulate);
  simulate->add_option("--oracle", o.oracle, "reference optimum")->check(CLI::IsMember({"brute"}));
  simulate->add_option("--iterations", o.iterations);
  simulate->add_option("--shots", o.shots);
  simulate->add_option("--alpha-cvar", o.alpha_cvar);
  simulate->add_option("--steps", o.steps, "Trotter slices");
  simulate->add_option("--time", o.total_time, "total evolution time");
  simulate->add_option("--hx", o.hx, "transverse field");

  auto* estimate = app.add_subcommand("estimate", "analytic gate, fidelity and runtime estimates");
  add_common(estimate);
  estimate->add_option("--e2q", o.e_2q);
  estimate->add_option("--t2q", o.t_2q, "two-qubit gate time [s]");
  estimate->add_option("--t-reset", o.t_reset, "reset time [s]");
  estimate->add_option("--alpha", o.depth_alpha, "depth reduction factor");
  estimate->add_option("--iterations", o.iterations);
  estimate->add_option("--shots", o.shots);
  estimate->add_option("--epsilon", o.epsilon);
  estimate->add_option("--delta", o.delta);
  estimate->add_option("--n-sweep", o.n_sweep);
  estimate->add_option("--t-sweep", o.t_sweep);
  estimate->add_option("--trotter-steps", o.trotter_steps);

  std::string manifest;
  auto* replay = app.add_subcommand("replay", "re-run a manifest and compare outputs");
  replay->add_option("manifest", manifest)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // help and --version arrive here with a success code
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }

  const std::string started = utc_now();
  RunRecord rec;
  try {
    if (replay->parsed()) return cmd_replay(manifest, out, err);
    if (encode->parsed()) {
      rec.command = "encode";
      cmd_encode(o, rec);
    } else if (solve->parsed()) {
      rec.command = "solve";
      cmd_solve(o, rec, err);
    } else if (simulate->parsed()) {
      rec.command = "simulate";
      cmd_simulate(o, rec, err);
    } else {
      rec.command = "estimate";
      cmd_estimate(o, rec);
    }
    write_manifest(o, rec, args, started);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const FormatError& e) {
    err << "error: " << o.input << ": " << e.what() << "\n";
    return kValidationFailure;
  } catch (const QubitCapError& e) {
    err << "error: " << e.what() << "\n"
        << "hint: run `hubo estimate` for analytic resource figures at this size\n";
    return kRuntimeFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kOk;
}

}  // namespace hubo::cli
