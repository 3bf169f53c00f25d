#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "almostconv/io.hpp"
#include "almostconv/parallel.hpp"

namespace almostconv::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kMaxDefaultWindow = 4096;
constexpr double kDefaultTolerance = 1e-3;
constexpr std::uint64_t kDefaultSeed = 1;

struct RunConfig {
  std::string command;
  std::optional<std::string> input;
  std::optional<std::string> spec;
  std::optional<double> window;
  std::optional<double> tol;
  std::optional<double> floor;
  std::optional<std::string> norm;
  std::optional<std::string> check_limit;
  std::optional<std::string> out_report;
  std::optional<std::string> out_curve;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::optional<double> continuous_step;
  bool plain_mean = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Values from the JSON config fill in whatever the command line left unset.
void merge_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  auto fill = [&](const char* key, auto& field) {
    using T = typename std::decay_t<decltype(field)>::value_type;
    if (!field && j.contains(key)) field = j.at(key).get<T>();
  };
  fill("input", cfg.input);
  fill("window", cfg.window);
  fill("tol", cfg.tol);
  fill("divergence_floor", cfg.floor);
  fill("norm", cfg.norm);
  fill("out_report", cfg.out_report);
  fill("out_curve", cfg.out_curve);
  fill("output", cfg.output);
  fill("seed", cfg.seed);
  fill("continuous_step", cfg.continuous_step);
  if (!cfg.plain_mean && j.contains("plain_mean")) cfg.plain_mean = j.at("plain_mean").get<bool>();
  if (!cfg.spec && j.contains("spec")) {
    const auto& s = j.at("spec");
    cfg.spec = s.is_string() ? s.get<std::string>() : s.dump();
  }
  if (!cfg.check_limit && j.contains("check_limit")) {
    const auto& v = j.at("check_limit");
    cfg.check_limit = v.is_string() ? v.get<std::string>() : v.dump();
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GeneratorSpec load_spec(const RunConfig& cfg) {
  const std::string& s = *cfg.spec;
  const auto first = s.find_first_not_of(" \t\r\n");
  const std::string text = (first != std::string::npos && s[first] == '{') ? s : read_text(s);
  GeneratorSpec spec;
  try {
    spec = io::spec_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw UsageError(std::string("generator spec: ") + e.what());
  }
  if (cfg.seed) spec.seed = *cfg.seed;
  if (cfg.norm) spec.norm = parse_norm(*cfg.norm);
  if (cfg.continuous_step) spec.step = *cfg.continuous_step;
  return spec;
}

Vector parse_vector(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    // bare comma-separated list, e.g. "0.5" or "1,2"
    try {
      j = json::parse("[" + text + "]");
    } catch (const json::exception&) {
      throw UsageError("cannot parse limit vector '" + text + "'");
    }
  }
  return io::vector_from_json(j);
}

struct LoadedSequence {
  SequenceSample sample;
  std::optional<Vector> truth;
  json source;
};

LoadedSequence load_sequence(const RunConfig& cfg) {
  if (cfg.input && cfg.spec) throw UsageError("give either --input or --spec, not both");
  if (cfg.input) {
    auto x = io::read_sequence_file(*cfg.input);
    if (cfg.norm) x = x.with_norm(parse_norm(*cfg.norm));
    return {std::move(x), std::nullopt, {{"input", *cfg.input}}};
  }
  if (cfg.spec) {
    const auto spec = load_spec(cfg);
    auto g = generate_sequence(spec);
    return {std::move(g.sample), g.truth, {{"spec", io::to_json(spec)}}};
  }
  throw UsageError("no input: pass --input FILE or --spec SPEC");
}

std::size_t resolve_window(const RunConfig& cfg, const SequenceSample& x) {
  const std::size_t max_n = max_estimator_window(x);
  if (max_n < 1) throw UsageError("sequence too short for any estimator window");
  if (!cfg.window) return std::min(max_n, kMaxDefaultWindow);
  const double w = *cfg.window;
  if (w < 1 || w != std::floor(w)) throw UsageError("--window must be a positive integer");
  return static_cast<std::size_t>(w);
}

Thresholds resolve_thresholds(const RunConfig& cfg) {
  Thresholds t;
  t.tolerance = cfg.tol.value_or(kDefaultTolerance);
  t.divergence_floor = cfg.floor;
  return t;
}

json parameters(const RunConfig& cfg, const json& source, std::size_t window, std::size_t horizon,
                const Thresholds& t, NormKind norm) {
  json p = source;
  p["command"] = cfg.command;
  p["window"] = window;
  p["horizon"] = horizon;
  p["tolerance"] = t.tolerance;
  p["divergence_floor"] = t.floor();
  p["norm"] = to_string(norm);
  p["seed"] = cfg.seed.value_or(kDefaultSeed);
  p["threads"] = max_threads();
  return p;
}

int exit_code(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::converges: return kConverges;
    case VerdictStatus::diverges: return kDiverges;
    case VerdictStatus::inconclusive: break;
  }
  return kInconclusive;
}

void emit_report(const RunConfig& cfg, const json& report, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (cfg.out_report) {
    io::write_file_atomic(*cfg.out_report, text);
  } else {
    out << text;
  }
}

void emit_curve(const RunConfig& cfg, const SequenceSample& x, const Vector& v, std::size_t window,
                json& report) {
  if (!cfg.out_curve) return;
  const auto residual = subtract_constant(x, v);
  const auto cs = sliding_curve(x, window);
  const auto cb = block_curve(x, window);
  const auto rs = sliding_curve(residual, window);
  const auto rb = block_curve(residual, window);
  std::vector<io::CurveRow> rows;
  for (std::size_t n = 1; n <= window; ++n) rows.push_back({n, cs.at(n), cb.at(n), rs.at(n), rb.at(n)});
  std::ostringstream ss;
  io::write_curve_csv(ss, rows);
  io::write_file_atomic(*cfg.out_curve, ss.str());
  report["curve_file"] = *cfg.out_curve;
}

// Shared body of analyze and check: strong verdict on top, quasi and weak nested.
int run_verdicts(const RunConfig& cfg, bool explicit_limit, std::ostream& out) {
  auto loaded = load_sequence(cfg);
  const SequenceSample& x = loaded.sample;
  const std::size_t window = resolve_window(cfg, x);
  const Thresholds t = resolve_thresholds(cfg);

  Vector v = Vector::zero(x.dim());
  if (explicit_limit) {
    if (!cfg.check_limit) throw UsageError("check needs --check-limit");
    v = parse_vector(*cfg.check_limit);
  } else {
    v = candidate_limit(x, !cfg.plain_mean);
  }

  const Verdict strong = check_strong(x, v, window, t);
  const Verdict quasi = check_quasi(x, v, window, t);
  const auto probes = ProbeSet::with_random(x.dim(), x.norm_kind(), cfg.seed.value_or(kDefaultSeed));
  const Verdict weak = check_weak(x, v, probes, window, t);

  json report = io::to_json(strong);
  report["quasi"] = io::to_json(quasi);
  report["weak"] = io::to_json(weak);
  report["weak"]["probes"] = probes.size();
  if (!explicit_limit) {
    report["candidate_rule"] = cfg.plain_mean ? "grand_mean" : "suffix_mean_3/4";
    const auto p = estimate_p(x, window);
    const auto q = estimate_q(x, window);
    report["p_estimate"] = {{"c_at_N", p.c_at_N}, {"running_min", p.running_min}};
    report["q_estimate"] = {{"tail_max", q.tail_max}};
    if (x.dim() <= 2) report["hull_distance"] = convex_hull_audit(x, v);
  }
  if (loaded.truth) report["truth"] = io::to_json(*loaded.truth);
  report["sup_norm"] = sup_norm(x);
  report["parameters"] = parameters(cfg, loaded.source, window, x.size(), t, x.norm_kind());
  emit_curve(cfg, x, v, window, report);
  emit_report(cfg, report, out);
  return exit_code(strong.status);
}

int run_generate(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.spec) throw UsageError("generate needs --spec");
  const auto spec = load_spec(cfg);
  std::ostringstream ss;
  json extra = {{"generator", io::to_json(spec)}};
  std::visit(
      [&](const auto& g) {
        extra["truth"] = g.truth ? io::to_json(*g.truth) : json(nullptr);
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, GeneratedSequence>) {
          io::write_sequence(ss, g.sample, extra);
        } else {
          io::write_function(ss, g.function, extra);
        }
      },
      generate(spec));
  if (cfg.output) {
    io::write_file_atomic(*cfg.output, ss.str());
  } else {
    out << ss.str();
  }
  return kConverges;
}

int run_fekete(const RunConfig& cfg, std::ostream& out) {
  CesaroCurve curve;
  json source;
  if (cfg.input && std::filesystem::path(*cfg.input).extension() == ".csv") {
    std::ifstream in(*cfg.input);
    if (!in) throw UsageError("cannot open " + *cfg.input);
    curve = io::sliding_curve_from_csv(io::read_curve_csv(in));
    source = {{"input", *cfg.input}, {"bound_rule", "c_1"}};
  } else {
    auto loaded = load_sequence(cfg);
    const std::size_t window = resolve_window(cfg, loaded.sample);
    curve = sliding_curve(loaded.sample, window);
    curve.bound = loaded.sample.bound();
    source = loaded.source;
  }
  const auto audit = fekete_audit(curve);
  json violations = json::array();
  for (const auto& v : audit.violations) violations.push_back({{"m", v.m}, {"n", v.n}, {"slack", v.slack}});
  json report = {{"clean", audit.clean()},
                 {"violations", violations},
                 {"max_slack", audit.max_slack},
                 {"tolerance", audit.tolerance},
                 {"pairs_checked", audit.pairs_checked},
                 {"bound", curve.bound}};
  json p = source;
  p["command"] = cfg.command;
  p["window"] = curve.max_window();
  p["horizon"] = curve.horizon;
  p["norm"] = to_string(curve.norm);
  p["seed"] = cfg.seed.value_or(kDefaultSeed);
  p["threads"] = max_threads();
  report["parameters"] = p;
  emit_report(cfg, report, out);
  return audit.clean() ? kConverges : kDiverges;
}

int run_continuous(const RunConfig& cfg, std::ostream& out) {
  if (cfg.input && cfg.spec) throw UsageError("give either --input or --spec, not both");
  std::optional<SampledFunction> f;
  std::optional<Vector> truth;
  json source;
  if (cfg.input) {
    f = io::read_function_file(*cfg.input, cfg.continuous_step);
    source = {{"input", *cfg.input}};
  } else if (cfg.spec) {
    const auto spec = load_spec(cfg);
    auto g = generate_function(spec);
    f = std::move(g.function);
    truth = g.truth;
    source = {{"spec", io::to_json(spec)}};
  } else {
    throw UsageError("no input: pass --input FILE or --spec SPEC");
  }
  if (cfg.norm && parse_norm(*cfg.norm) != f->norm_kind()) {
    throw UsageError("--norm cannot override the norm of a function file");
  }
  const double t = cfg.window ? *cfg.window : static_cast<double>(f->intervals() / 2) * f->step();
  const Thresholds th = resolve_thresholds(cfg);
  const Vector v = cfg.check_limit ? parse_vector(*cfg.check_limit) : candidate_limit(*f);
  const Verdict verdict = check_strong_cont(*f, v, t, th);

  json report = io::to_json(verdict);
  report["duration"] = t;
  report["offsets"] = "grid";
  if (truth) report["truth"] = io::to_json(*truth);
  json p = parameters(cfg, source, verdict.window, f->intervals(), th, f->norm_kind());
  p["step"] = f->step();
  p["duration"] = t;
  report["parameters"] = p;
  emit_report(cfg, report, out);
  return exit_code(verdict.status);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-horizon almost-convergence estimates for bounded sequences"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<std::string> config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "sequence/function JSON Lines file (or curve CSV for fekete)");
    sub->add_option("--spec", cfg.spec, "generator spec: inline JSON or path to a JSON file");
    sub->add_option("--window", cfg.window, "window length N (duration t for continuous)");
    sub->add_option("--tol", cfg.tol, "convergence tolerance (default 1e-3)");
    sub->add_option("--divergence-floor", cfg.floor, "residual at which to report divergence (default 10*tol)");
    sub->add_option("--norm", cfg.norm, "l1, l2 or linf")->check(CLI::IsMember({"l1", "l2", "linf"}));
    sub->add_option("--check-limit", cfg.check_limit, "limit vector to test, e.g. 0.5 or [1,2]");
    sub->add_option("--out-report", cfg.out_report, "write the JSON report here instead of stdout");
    sub->add_option("--out-curve", cfg.out_curve, "write the c_n curve CSV here");
    sub->add_option("--output", cfg.output, "generate: write the sequence here instead of stdout");
    sub->add_option("--seed", cfg.seed, "seed for probes and random generators");
    sub->add_option("--continuous-step", cfg.continuous_step, "grid step h for functions");
    sub->add_flag("--plain-mean", cfg.plain_mean, "candidate limit from all samples, no head discard");
    sub->add_option("--config", config_path, "JSON config; command-line flags win");
  };
  for (const char* name : {"analyze", "check", "generate", "fekete", "continuous"}) {
    add_common(app.add_subcommand(name));
  }
  app.get_subcommand("analyze")->description("estimate the limit and decide strong/quasi/weak almost convergence");
  app.get_subcommand("check")->description("test a given limit (--check-limit)");
  app.get_subcommand("generate")->description("write a corpus sequence from a generator spec");
  app.get_subcommand("fekete")->description("audit subadditivity of the sliding curve");
  app.get_subcommand("continuous")->description("integral-mean verdict for a sampled function");

  std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kError;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (config_path) merge_config_file(cfg, *config_path);
    if (cfg.command == "generate") return run_generate(cfg, out);
    if (cfg.command == "fekete") return run_fekete(cfg, out);
    if (cfg.command == "continuous") return run_continuous(cfg, out);
    return run_verdicts(cfg, cfg.command == "check", out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

}  // namespace almostconv::cli
