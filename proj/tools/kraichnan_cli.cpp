// Batch front end: evaluate symbols, run ensembles, estimate heat kernels,
// Green's functions and correlation functions, and run the verifier suites.
// All outputs are stamped with a config hash and regenerable from the
// manifest alone.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kraichnan/estimators.hpp"
#include "kraichnan/hopf.hpp"
#include "kraichnan/io.hpp"
#include "kraichnan/verifier.hpp"

using json = nlohmann::json;
using namespace kraichnan;

namespace {

constexpr const char* kVersion = "1.0.0";

const char* kDefaultConfig = R"json({
  "params": {"n": 2, "d": 2, "xi": 1.0},
  "sde": {"dt_base": 0.01, "t_max": 1.0, "adapt_floor": 1e-06, "seed": 1,
          "paths": 1000, "workers": 0, "metric_split_l": -1},
  "forcing": {"kind": "unit_ball", "radius": 1.0},
  "symbol": {"points": [[1.0, 0.0]]},
  "simulate": {"x0": [1.0, 0.0]},
  "heat": {"t": 0.01, "x0": [1.0, 0.0],
           "grid": {"lo": [0.0, -0.5], "hi": [2.0, 0.5], "shape": [8, 4]}},
  "green": {"x0": [1.0, 0.0], "shell_edges": [1.0, 1.3, 1.7, 2.2, 2.9, 3.8, 5.0],
            "rho_exclusion": 0.25},
  "f2": {"r": 2.0},
  "f4": {"points": [[0.0, 0.0], [0.0, 1.0], [2.0, 0.0], [2.0, 1.0]]},
  "verify": {"samples": 1000, "tol": 1e-10},
  "fit": {"series": ""},
  "output_dir": ".",
  "cache_dir": ""
})json";

// ---- strict schema ---------------------------------------------------------

void check_keys(const json& obj, const std::string& where,
                const std::vector<std::string>& allowed) {
  if (!obj.is_object()) throw std::runtime_error(where + ": expected object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw std::runtime_error("config: unknown key '" + where + "." +
                               it.key() + "'");
  }
}

void validate_schema(const json& c) {
  check_keys(c, "", {"params", "sde", "forcing", "symbol", "simulate", "heat",
                     "green", "f2", "f4", "verify", "fit", "output_dir",
                     "cache_dir"});
  check_keys(c.at("params"), "params", {"n", "d", "xi"});
  check_keys(c.at("sde"), "sde",
             {"dt_base", "t_max", "adapt_floor", "seed", "paths", "workers",
              "metric_split_l"});
  check_keys(c.at("forcing"), "forcing", {"kind", "radius"});
  check_keys(c.at("symbol"), "symbol", {"points"});
  check_keys(c.at("simulate"), "simulate", {"x0"});
  check_keys(c.at("heat"), "heat", {"t", "x0", "grid"});
  check_keys(c.at("heat").at("grid"), "heat.grid", {"lo", "hi", "shape"});
  check_keys(c.at("green"), "green", {"x0", "shell_edges", "rho_exclusion"});
  check_keys(c.at("f2"), "f2", {"r"});
  check_keys(c.at("f4"), "f4", {"points"});
  check_keys(c.at("verify"), "verify", {"samples", "tol"});
  check_keys(c.at("fit"), "fit", {"series"});
}

// ---- helpers ---------------------------------------------------------------

SymbolParams params_from(const json& c) {
  const json& p = c.at("params");
  return SymbolParams(p.at("n").get<int>(), p.at("d").get<int>(),
                      p.at("xi").get<double>());
}

SdeConfig sde_from(const json& c) {
  SdeConfig cfg(params_from(c));
  const json& s = c.at("sde");
  cfg.dt_base = s.at("dt_base").get<double>();
  cfg.t_max = s.at("t_max").get<double>();
  cfg.adapt_floor = s.at("adapt_floor").get<double>();
  cfg.seed = s.at("seed").get<std::uint64_t>();
  cfg.paths = s.at("paths").get<int>();
  cfg.workers = s.at("workers").get<int>();
  cfg.metric_split_l = s.at("metric_split_l").get<int>();
  cfg.validate();
  return cfg;
}

ForcingSpec forcing_from(const json& c) {
  ForcingSpec f;
  std::string kind = c.at("forcing").at("kind").get<std::string>();
  if (kind == "unit_ball")
    f.kind = ForcingSpec::Kind::UnitBall;
  else if (kind == "smooth_bump")
    f.kind = ForcingSpec::Kind::SmoothBump;
  else
    throw std::runtime_error("config: forcing.kind must be unit_ball or smooth_bump");
  f.radius = c.at("forcing").at("radius").get<double>();
  return f;
}

Configuration config_point(const json& arr, const SymbolParams& p) {
  auto v = arr.get<std::vector<double>>();
  if (static_cast<int>(v.size()) != p.reduced_dim())
    throw std::runtime_error("config: point has wrong dimension");
  Vec flat = Eigen::Map<const Vec>(v.data(), v.size());
  return Configuration(flat, p.d);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void apply_override(json& c, const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos)
    throw std::runtime_error("--set expects key=value, got " + kv);
  std::string path = kv.substr(0, eq), value = kv.substr(eq + 1);
  json* node = &c;
  size_t pos = 0;
  for (;;) {
    size_t dot = path.find('.', pos);
    std::string key = path.substr(pos, dot - pos);
    if (dot == std::string::npos) {
      json parsed;
      try {
        parsed = json::parse(value);
      } catch (...) {
        parsed = value;
      }
      (*node)[key] = parsed;
      break;
    }
    node = &(*node)[key];
    pos = dot + 1;
  }
}

json report_json(const CheckReport& r) {
  return json{{"name", r.name},         {"samples", r.samples},
              {"max_ratio", r.max_ratio}, {"constant", r.constant},
              {"pass", r.pass},          {"seed", r.seed},
              {"note", r.note}};
}

struct Emitter {
  std::filesystem::path out;
  json manifest;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  Emitter(const json& cfg, const std::string& sub) {
    out = cfg.at("output_dir").get<std::string>();
    std::filesystem::create_directories(out);
    manifest["subcommand"] = sub;
    manifest["version"] = kVersion;
    manifest["config"] = cfg;
    manifest["config_hash"] = fnv1a64(cfg.dump());
    manifest["seed"] = cfg.at("sde").at("seed").get<std::uint64_t>();
    manifest["files"] = json::array();
  }

  std::string path(const std::string& name) {
    manifest["files"].push_back(name);
    return (out / name).string();
  }

  void write_json(const std::string& name, const json& j) {
    std::ofstream f(path(name), std::ios::binary);
    f << j.dump(2) << "\n";
  }

  void finish() {
    manifest["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::ofstream f(out / "manifest.json", std::ios::binary);
    f << manifest.dump(2) << "\n";
  }
};

PathEnsemble cached_ensemble(const json& cfg, const Configuration& x0,
                             SdeConfig sde, const std::string& tag) {
  std::string cache_dir = cfg.at("cache_dir").get<std::string>();
  if (const char* env = std::getenv("KRAICHNAN_CACHE_DIR")) cache_dir = env;
  std::uint64_t hash = fnv1a64(canonical_config_string(sde, x0, tag));
  if (cache_dir.empty()) {
    PathEnsemble e = simulate_ensemble(x0, sde, std::vector<VectorObservable>{});
    e.config_hash = hash;
    return e;
  }
  std::filesystem::create_directories(cache_dir);
  std::ostringstream name;
  name << std::hex << hash << ".bin";
  std::string file = (std::filesystem::path(cache_dir) / name.str()).string();
  PathEnsemble e;
  if (load_ensemble(file, hash, e)) return e;
  e = simulate_ensemble(x0, sde, std::vector<VectorObservable>{});
  e.config_hash = hash;
  save_ensemble(file, e);
  return e;
}

// ---- subcommands -----------------------------------------------------------

int run_symbol(const json& cfg) {
  Emitter em(cfg, "symbol");
  SymbolParams p = params_from(cfg);
  std::vector<std::vector<std::string>> rows;
  for (const json& pt : cfg.at("symbol").at("points")) {
    Configuration x = config_point(pt, p);
    SymbolMatrix S = assemble_symbol(x, p);
    double lmin = min_eigenvalue(S);
    double dist = degeneration_distance(x);
    double tol = 1e-10 * std::max(1.0, S.m.cwiseAbs().maxCoeff());
    int rank = rank_at(x, p, tol);
    rows.push_back({pt.dump(), fmt(lmin), fmt(dist), std::to_string(rank)});
  }
  write_csv(em.path("symbol.csv"),
            {"point", "lambda_min", "dgn_distance", "rank"}, rows);
  em.finish();
  return 0;
}

int run_simulate(const json& cfg) {
  Emitter em(cfg, "simulate");
  SdeConfig sde = sde_from(cfg);
  Configuration x0 = config_point(cfg.at("simulate").at("x0"), sde.params);
  PathEnsemble e = cached_ensemble(cfg, x0, sde, "simulate");
  std::vector<std::string> header = {"path"};
  for (int j = 0; j < x0.dim(); ++j) header.push_back("x" + std::to_string(j));
  header.push_back("sup_distance");
  header.push_back("flagged");
  std::vector<std::vector<std::string>> rows;
  for (int p = 0; p < e.paths(); ++p) {
    std::vector<std::string> row = {std::to_string(p)};
    for (int j = 0; j < x0.dim(); ++j) row.push_back(fmt(e.endpoints(j, p)));
    row.push_back(fmt(e.sup_distance[p]));
    row.push_back(std::to_string(int(e.flagged[p])));
    rows.push_back(std::move(row));
  }
  write_csv(em.path("endpoints.csv"), header, rows);
  em.finish();
  return 0;
}

int run_heat(const json& cfg) {
  Emitter em(cfg, "heat");
  SdeConfig sde = sde_from(cfg);
  const json& h = cfg.at("heat");
  Configuration x0 = config_point(h.at("x0"), sde.params);
  GridSpec grid;
  auto lo = h.at("grid").at("lo").get<std::vector<double>>();
  auto hi = h.at("grid").at("hi").get<std::vector<double>>();
  grid.lo = Eigen::Map<const Vec>(lo.data(), lo.size());
  grid.hi = Eigen::Map<const Vec>(hi.data(), hi.size());
  grid.shape = h.at("grid").at("shape").get<std::vector<int>>();
  DensityGrid dg = heat_kernel_density(x0, h.at("t").get<double>(), sde, grid);
  std::vector<std::string> header;
  for (int j = 0; j < x0.dim(); ++j) header.push_back("y" + std::to_string(j));
  header.push_back("density");
  header.push_back("stderr");
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < dg.values.size(); ++i) {
    std::vector<std::string> row;
    for (int j = 0; j < x0.dim(); ++j) row.push_back(fmt(dg.centers[i][j]));
    row.push_back(fmt(dg.values[i]));
    row.push_back(fmt(dg.stderr_[i]));
    rows.push_back(std::move(row));
  }
  write_csv(em.path("heat.csv"), header, rows);
  em.finish();
  return 0;
}

int run_green(const json& cfg) {
  Emitter em(cfg, "green");
  SdeConfig sde = sde_from(cfg);
  const json& g = cfg.at("green");
  Configuration x0 = config_point(g.at("x0"), sde.params);
  auto edges = g.at("shell_edges").get<std::vector<double>>();
  RadialDensity rd =
      green_density(x0, edges, sde, g.at("rho_exclusion").get<double>());
  std::vector<std::vector<std::string>> rows;
  std::vector<FitPoint> pts;
  for (size_t i = 0; i < rd.values.size(); ++i) {
    rows.push_back({fmt(rd.r_centers[i]), fmt(rd.values[i]), fmt(rd.stderr_[i])});
    if (std::isfinite(rd.values[i]) && rd.values[i] > 0.0)
      pts.push_back({rd.r_centers[i], rd.values[i], rd.stderr_[i]});
  }
  write_csv(em.path("green.csv"), {"r", "density", "stderr"}, rows);
  json summary;
  if (pts.size() >= 4) {
    FitResult fr = fit_exponent(pts);
    summary["fit"] = {{"slope", fr.slope},       {"intercept", fr.intercept},
                      {"stderr", fr.stderr_},     {"r_squared", fr.r_squared},
                      {"window_lo", fr.window_lo}, {"window_hi", fr.window_hi}};
  }
  em.write_json("green_summary.json", summary);
  em.finish();
  return 0;
}

int run_f2(const json& cfg) {
  Emitter em(cfg, "f2");
  SdeConfig sde = sde_from(cfg);
  sde.params = SymbolParams(2, sde.params.d, sde.params.xi);
  ForcingSpec forcing = forcing_from(cfg);
  double r = cfg.at("f2").at("r").get<double>();
  Vec y1 = Vec::Zero(sde.params.d), y2 = Vec::Zero(sde.params.d);
  y1[0] = r;
  ValueWithError oracle = f2_at(y1, y2, forcing, F2Mode::Oracle, sde);
  ValueWithError mc = f2_at(y1, y2, forcing, F2Mode::Mc, sde);
  json out = {{"r", r},
              {"oracle", oracle.value},
              {"mc", mc.value},
              {"mc_stderr", mc.stderr_}};
  em.write_json("f2.json", out);
  std::cout << out.dump(2) << "\n";
  em.finish();
  return 0;
}

int run_f4(const json& cfg) {
  Emitter em(cfg, "f4");
  SdeConfig sde = sde_from(cfg);
  ForcingSpec forcing = forcing_from(cfg);
  std::vector<Vec> pts;
  for (const json& p : cfg.at("f4").at("points")) {
    auto v = p.get<std::vector<double>>();
    pts.push_back(Eigen::Map<const Vec>(v.data(), v.size()));
  }
  CorrelatorResult res = f4_at(pts, forcing, sde);
  json terms = json::array();
  for (const PairTerm& t : res.terms)
    terms.push_back(
        {{"i", t.i}, {"j", t.j}, {"value", t.value}, {"stderr", t.stderr_}});
  json out = {{"value", res.value},
              {"stderr", res.stderr_},
              {"tail_bound", res.tail_bound},
              {"terms", terms}};
  em.write_json("f4.json", out);
  std::cout << out.dump(2) << "\n";
  em.finish();
  return 0;
}

int run_verify(const json& cfg, const std::string& suite) {
  Emitter em(cfg, "verify");
  SymbolParams p = params_from(cfg);
  int samples = cfg.at("verify").at("samples").get<int>();
  double tol = cfg.at("verify").at("tol").get<double>();
  std::uint64_t seed = cfg.at("sde").at("seed").get<std::uint64_t>();
  std::vector<CheckReport> reports;
  if (suite == "degeneration") {
    // calibrated lower constants exist for n >= 3 (n = 2 has no off-set
    // regime distinct from the window structure)
    SymbolParams pd(std::max(p.n, 3), p.d, p.xi);
    reports.push_back(check_degeneration(
        pd, samples, tol, seed, frozen::degeneration_c(pd.n, pd.d, pd.xi)));
  } else if (suite == "symmetry") {
    reports.push_back(check_symmetry(p, samples, seed));
  } else if (suite == "cross") {
    for (CrossLemma id : {CrossLemma::Cro1, CrossLemma::Cro2, CrossLemma::Cro3,
                          CrossLemma::Cro4, CrossLemma::Cro5, CrossLemma::Don}) {
      SymbolParams pl(id == CrossLemma::Cro1 ? std::max(p.n, 3)
                                             : std::max(p.n, 4),
                      p.d, p.xi);
      reports.push_back(
          check_cross_lemma(id, pl, samples, frozen::cross_E(id, p.xi), seed));
    }
  } else if (suite == "structure") {
    SymbolParams p3(3, p.d, p.xi);
    Configuration x3(2, p.d);
    x3.block(2)[0] = 1.0;
    reports.push_back(check_structure(x3, p3, 0.1, samples,
                                      frozen::structure_lambda(3), seed));
    SymbolParams p4(4, p.d, p.xi);
    Configuration x4(3, p.d);
    x4.block(2)[0] = 1.0;
    reports.push_back(check_structure(x4, p4, 0.1, samples,
                                      frozen::structure_lambda(4), seed));
  } else if (suite == "weight") {
    WeightSpec F;
    F.ambient_dim = p.reduced_dim();
    reports.push_back(
        check_weight(F, p.xi, std::min(samples, 100), seed, frozen::weight_C()));
  } else if (suite == "bai") {
    std::vector<Vec> grid;
    for (double r : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      Vec x = Vec::Zero(p.d);
      x[0] = r;
      grid.push_back(x);
    }
    reports.push_back(check_bai(1, p.d, p.xi, grid, frozen::bai_C(1)));
    reports.push_back(check_bai(2, p.d, p.xi, grid, frozen::bai_C(2)));
  } else {
    std::cerr << "unknown verify suite: " << suite << "\n";
    return 2;
  }
  json arr = json::array();
  bool all_pass = true;
  for (const CheckReport& r : reports) {
    arr.push_back(report_json(r));
    all_pass = all_pass && r.pass;
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name
              << "  max_ratio=" << r.max_ratio << "  constant=" << r.constant
              << "\n";
  }
  em.write_json("verify_" + suite + ".json", arr);
  em.finish();
  return all_pass ? 0 : 1;
}

int run_fit(const json& cfg) {
  Emitter em(cfg, "fit");
  std::string series = cfg.at("fit").at("series").get<std::string>();
  if (series.empty()) throw std::runtime_error("fit: config fit.series is empty");
  std::ifstream f(series);
  if (!f) throw std::runtime_error("fit: cannot open " + series);
  std::string line;
  std::getline(f, line);  // header
  std::vector<FitPoint> pts;
  while (std::getline(f, line)) {
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) continue;
    std::getline(ls, c, ',');
    pts.push_back({std::stod(a), std::stod(b), c.empty() ? 0.0 : std::stod(c)});
  }
  FitResult fr = fit_exponent(pts);
  json out = {{"slope", fr.slope},       {"intercept", fr.intercept},
              {"stderr", fr.stderr_},     {"r_squared", fr.r_squared},
              {"window_lo", fr.window_lo}, {"window_hi", fr.window_hi}};
  em.write_json("fit.json", out);
  std::cout << out.dump(2) << "\n";
  em.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kraichnan_lab: numerical laboratory for the operators M_n"};
  app.require_subcommand(1);

  std::string config_path, out_dir, cache_dir, suite = "degeneration";
  std::vector<std::string> overrides;
  std::int64_t seed = -1;
  int workers = -1;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--seed", seed, "override sde.seed");
  app.add_option("--workers", workers, "override sde.workers");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--cache", cache_dir, "ensemble cache directory");
  app.add_option("--set", overrides, "override config entries, key=value");

  auto* sub_symbol = app.add_subcommand("symbol", "evaluate/analyze sigma at points");
  auto* sub_sim = app.add_subcommand("simulate", "run an ensemble");
  auto* sub_heat = app.add_subcommand("heat", "heat-kernel density grid");
  auto* sub_green = app.add_subcommand("green", "Green's density and fits");
  auto* sub_f2 = app.add_subcommand("f2", "two-point function");
  auto* sub_f4 = app.add_subcommand("f4", "four-point function");
  auto* sub_verify = app.add_subcommand("verify", "run a verifier suite");
  sub_verify->add_option("suite", suite,
                         "degeneration|symmetry|cross|structure|weight|bai");
  auto* sub_fit = app.add_subcommand("fit", "re-fit a stored series");

  CLI11_PARSE(app, argc, argv);

  try {
    json cfg = json::parse(std::string(kDefaultConfig));
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw std::runtime_error("cannot open config " + config_path);
      json user = json::parse(f);
      cfg.merge_patch(user);
    }
    for (const std::string& kv : overrides) apply_override(cfg, kv);
    if (seed >= 0) cfg["sde"]["seed"] = static_cast<std::uint64_t>(seed);
    if (workers >= 0) cfg["sde"]["workers"] = workers;
    if (!out_dir.empty()) cfg["output_dir"] = out_dir;
    if (!cache_dir.empty()) cfg["cache_dir"] = cache_dir;
    validate_schema(cfg);

    if (sub_symbol->parsed()) return run_symbol(cfg);
    if (sub_sim->parsed()) return run_simulate(cfg);
    if (sub_heat->parsed()) return run_heat(cfg);
    if (sub_green->parsed()) return run_green(cfg);
    if (sub_f2->parsed()) return run_f2(cfg);
    if (sub_f4->parsed()) return run_f4(cfg);
    if (sub_verify->parsed()) return run_verify(cfg, suite);
    if (sub_fit->parsed()) return run_fit(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
