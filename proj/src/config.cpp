#include "evi/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace evi {

using nlohmann::json;

double ProfileConfig::eval(const Coord& p, const MeshSpec& mesh) const {
  constexpr double pi = 3.14159265358979323846;
  if (kind == "constant") return value;
  if (kind == "sine_bump") {
    double v = amplitude * std::sin(pi * p.x / mesh.extent[0]);
    if (mesh.dim == 2) v *= std::sin(pi * p.y / mesh.extent[1]);
    return offset + v;
  }
  if (kind == "gauss") {
    const double dx = p.x - center[0];
    const double dy = mesh.dim == 2 ? p.y - center[1] : 0.0;
    return offset + amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
  }
  if (kind == "ramp") return offset + amplitude * p.x / mesh.extent[0];
  throw std::invalid_argument("unknown profile kind '" + kind + "'");
}

namespace {

struct Errors {
  std::vector<std::string> list;
  void add(const std::string& path, const std::string& what) {
    list.push_back(path + ": " + what);
  }
};

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed,
                bool strict, Errors& err) {
  if (!j.is_object()) return;
  if (!strict) return;
  for (const auto& [key, v] : j.items()) {
    (void)v;
    if (!allowed.count(key)) err.add(path, "unknown key '" + key + "'");
  }
}

double get_num(const json& j, const std::string& path, const std::string& key, Errors& err,
               bool required, double fallback) {
  if (!j.contains(key)) {
    if (required) err.add(path, "missing required key '" + key + "'");
    return fallback;
  }
  if (!j[key].is_number()) {
    err.add(path + "." + key, "expected a number");
    return fallback;
  }
  return j[key].get<double>();
}

int get_int(const json& j, const std::string& path, const std::string& key, Errors& err,
            bool required, int fallback) {
  if (!j.contains(key)) {
    if (required) err.add(path, "missing required key '" + key + "'");
    return fallback;
  }
  if (!j[key].is_number_integer()) {
    err.add(path + "." + key, "expected an integer");
    return fallback;
  }
  return j[key].get<int>();
}

std::string get_str(const json& j, const std::string& path, const std::string& key, Errors& err,
                    bool required, const std::string& fallback) {
  if (!j.contains(key)) {
    if (required) err.add(path, "missing required key '" + key + "'");
    return fallback;
  }
  if (!j[key].is_string()) {
    err.add(path + "." + key, "expected a string");
    return fallback;
  }
  return j[key].get<std::string>();
}

std::vector<double> get_num_list(const json& j, const std::string& path, const std::string& key,
                                 Errors& err, bool required,
                                 const std::vector<double>& fallback) {
  if (!j.contains(key)) {
    if (required) err.add(path, "missing required key '" + key + "'");
    return fallback;
  }
  if (!j[key].is_array()) {
    err.add(path + "." + key, "expected an array of numbers");
    return fallback;
  }
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) {
      err.add(path + "." + key, "expected an array of numbers");
      return fallback;
    }
    out.push_back(v.get<double>());
  }
  return out;
}

ProfileConfig parse_profile(const json& j, const std::string& path, bool strict, Errors& err) {
  ProfileConfig p;
  if (!j.is_object()) {
    err.add(path, "expected an object");
    return p;
  }
  check_keys(j, path, {"kind", "value", "amplitude", "offset", "center", "width"}, strict, err);
  p.kind = get_str(j, path, "kind", err, true, "constant");
  static const std::set<std::string> kinds{"constant", "sine_bump", "gauss", "ramp"};
  if (!kinds.count(p.kind)) err.add(path + ".kind", "unknown profile kind '" + p.kind + "'");
  p.value = get_num(j, path, "value", err, p.kind == "constant", 0.0);
  p.amplitude = get_num(j, path, "amplitude", err, p.kind != "constant", 0.0);
  p.offset = get_num(j, path, "offset", err, false, 0.0);
  if (j.contains("center")) {
    const auto c = get_num_list(j, path, "center", err, false, {0.0, 0.0});
    for (std::size_t i = 0; i < std::min<std::size_t>(2, c.size()); ++i) p.center[i] = c[i];
  }
  p.width = get_num(j, path, "width", err, false, p.width);
  if (p.kind == "gauss" && !(p.width > 0.0)) err.add(path + ".width", "must be positive");
  return p;
}

json profile_json(const ProfileConfig& p) {
  json j;
  j["kind"] = p.kind;
  if (p.kind == "constant") {
    j["value"] = p.value;
  } else {
    j["amplitude"] = p.amplitude;
    if (p.offset != 0.0) j["offset"] = p.offset;
  }
  if (p.kind == "gauss") {
    j["center"] = {p.center[0], p.center[1]};
    j["width"] = p.width;
  }
  return j;
}

MeshSpec parse_mesh(const json& j, bool strict, Errors& err) {
  MeshSpec mesh;
  const std::string path = "mesh";
  if (!j.is_object()) {
    err.add(path, "expected an object");
    return mesh;
  }
  check_keys(j, path, {"dim", "extent", "nodes", "boundary"}, strict, err);
  mesh.dim = get_int(j, path, "dim", err, true, 1);
  if (mesh.dim != 1 && mesh.dim != 2) err.add(path + ".dim", "must be 1 or 2");
  const auto ext = get_num_list(j, path, "extent", err, true, {1.0});
  const auto nod = get_num_list(j, path, "nodes", err, true, {3.0});
  if (static_cast<int>(ext.size()) != mesh.dim)
    err.add(path + ".extent", "needs exactly dim entries");
  if (static_cast<int>(nod.size()) != mesh.dim)
    err.add(path + ".nodes", "needs exactly dim entries");
  for (std::size_t a = 0; a < std::min<std::size_t>(2, ext.size()); ++a) {
    mesh.extent[a] = ext[a];
    if (!(ext[a] > 0.0)) err.add(path + ".extent", "entries must be positive");
  }
  for (std::size_t a = 0; a < std::min<std::size_t>(2, nod.size()); ++a) {
    mesh.nodes[a] = static_cast<int>(nod[a]);
    if (nod[a] < 3) err.add(path + ".nodes", "entries must be at least 3");
  }
  if (!j.contains("boundary") || !j["boundary"].is_object()) {
    err.add(path, "missing required object 'boundary'");
    return mesh;
  }
  const json& b = j["boundary"];
  const std::set<std::string> faces_1d{"left", "right"};
  const std::set<std::string> faces_2d{"left", "right", "bottom", "top"};
  const auto& faces = mesh.dim == 2 ? faces_2d : faces_1d;
  check_keys(b, path + ".boundary", faces, strict, err);
  auto face_of = [](const std::string& s) {
    if (s == "left") return Face::Left;
    if (s == "right") return Face::Right;
    if (s == "bottom") return Face::Bottom;
    return Face::Top;
  };
  for (const auto& name : faces) {
    const std::string tag = get_str(b, path + ".boundary", name, err, true, "dirichlet");
    if (tag != "dirichlet" && tag != "neumann")
      err.add(path + ".boundary." + name, "must be 'dirichlet' or 'neumann'");
    mesh.boundary[face_of(name)] =
        tag == "neumann" ? BoundaryKind::Neumann : BoundaryKind::Dirichlet;
  }
  return mesh;
}

ForcingConfig parse_forcing(const json& j, bool strict, Errors& err) {
  ForcingConfig fc;
  const std::string path = "forcing";
  if (!j.is_object()) {
    err.add(path, "expected an object");
    return fc;
  }
  fc.preset = get_str(j, path, "preset", err, true, "stationary");
  static const std::set<std::string> presets{"stationary", "linear_drift", "exp_relax",
                                             "sinusoidal", "lowreg", "tabulated"};
  if (!presets.count(fc.preset)) {
    err.add(path + ".preset", "unknown forcing preset '" + fc.preset + "'");
    return fc;
  }
  std::set<std::string> allowed{"preset"};
  if (fc.preset == "stationary") allowed.insert("profile");
  if (fc.preset == "linear_drift") allowed.insert({"base", "slope"});
  if (fc.preset == "exp_relax") allowed.insert({"limit", "bump", "rate"});
  if (fc.preset == "sinusoidal") allowed.insert({"offset", "amplitude", "omega"});
  if (fc.preset == "lowreg") allowed.insert("alpha");
  if (fc.preset == "tabulated") allowed.insert({"times", "values"});
  check_keys(j, path, allowed, strict, err);

  auto sub = [&](const char* key) -> ProfileConfig {
    if (!j.contains(key)) {
      err.add(path, std::string("missing required key '") + key + "'");
      return {};
    }
    return parse_profile(j[key], path + "." + key, strict, err);
  };
  if (fc.preset == "stationary") fc.profile = sub("profile");
  if (fc.preset == "linear_drift") {
    fc.base = sub("base");
    fc.slope = sub("slope");
  }
  if (fc.preset == "exp_relax") {
    fc.limit = sub("limit");
    fc.bump = sub("bump");
    fc.rate = get_num(j, path, "rate", err, true, 1.0);
    if (!(fc.rate > 0.0)) err.add(path + ".rate", "must be positive");
  }
  if (fc.preset == "sinusoidal") {
    fc.offset = sub("offset");
    fc.amplitude = sub("amplitude");
    fc.omega = get_num(j, path, "omega", err, true, 1.0);
  }
  if (fc.preset == "lowreg") {
    fc.alpha = get_num(j, path, "alpha", err, true, 0.75);
    if (!(fc.alpha > 0.5 && fc.alpha < 1.0)) err.add(path + ".alpha", "must be in (1/2, 1)");
  }
  if (fc.preset == "tabulated") {
    fc.times = get_num_list(j, path, "times", err, true, {});
    if (fc.times.size() < 2) err.add(path + ".times", "needs at least two samples");
    for (std::size_t i = 1; i < fc.times.size(); ++i)
      if (fc.times[i] <= fc.times[i - 1]) {
        err.add(path + ".times", "must be strictly increasing");
        break;
      }
    if (!j.contains("values") || !j["values"].is_array()) {
      err.add(path, "missing required array 'values'");
    } else {
      for (std::size_t r = 0; r < j["values"].size(); ++r) {
        const auto& row = j["values"][r];
        if (!row.is_array()) {
          err.add(path + ".values", "expected an array of arrays");
          break;
        }
        Vec vals;
        for (const auto& v : row) {
          if (!v.is_number()) {
            err.add(path + ".values", "entries must be numbers");
            break;
          }
          vals.push_back(v.get<double>());
        }
        fc.values.push_back(std::move(vals));
      }
      if (fc.values.size() != fc.times.size())
        err.add(path + ".values", "needs one row per time sample");
    }
  }
  return fc;
}

InitialConfig parse_initial(const json& j, bool strict, Errors& err) {
  InitialConfig ic;
  const std::string path = "initial";
  if (!j.is_object()) {
    err.add(path, "expected an object");
    return ic;
  }
  ic.preset = get_str(j, path, "preset", err, true, "zero");
  static const std::set<std::string> presets{"zero", "profile", "equilibrium", "values"};
  if (!presets.count(ic.preset)) {
    err.add(path + ".preset", "unknown initial preset '" + ic.preset + "'");
    return ic;
  }
  std::set<std::string> allowed{"preset"};
  if (ic.preset == "profile") allowed.insert("profile");
  if (ic.preset == "values") allowed.insert("values");
  check_keys(j, path, allowed, strict, err);
  if (ic.preset == "profile") {
    if (!j.contains("profile"))
      err.add(path, "missing required key 'profile'");
    else
      ic.profile = parse_profile(j["profile"], path + ".profile", strict, err);
  }
  if (ic.preset == "values") ic.values = get_num_list(j, path, "values", err, true, {});
  return ic;
}

SolverConfig parse_solver(const json& j, bool strict, Errors& err) {
  SolverConfig sc;
  const std::string path = "solver";
  if (j.is_null()) return sc;
  if (!j.is_object()) {
    err.add(path, "expected an object");
    return sc;
  }
  check_keys(j, path, {"method", "omega", "tol", "max_iter"}, strict, err);
  const std::string method = get_str(j, path, "method", err, false, "pdas");
  if (method == "psor") sc.method = ObstacleMethod::PSOR;
  else if (method == "pdas") sc.method = ObstacleMethod::PDAS;
  else err.add(path + ".method", "must be 'psor' or 'pdas'");
  sc.omega = get_num(j, path, "omega", err, false, sc.omega);
  if (!(sc.omega > 0.0 && sc.omega < 2.0)) err.add(path + ".omega", "must be in (0,2)");
  sc.tol = get_num(j, path, "tol", err, false, sc.tol);
  if (!(sc.tol > 0.0)) err.add(path + ".tol", "must be positive");
  sc.max_iter = get_int(j, path, "max_iter", err, false, sc.max_iter);
  if (sc.max_iter < 0) err.add(path + ".max_iter", "must be nonnegative");
  return sc;
}

StudyParams parse_study(const json& j, bool strict, Errors& err) {
  StudyParams sp;
  const std::string path = "study";
  if (j.is_null()) return sp;
  if (!j.is_object()) {
    err.add(path, "expected an object");
    return sp;
  }
  check_keys(j, path,
             {"epsilons", "horizons", "instances", "max_dofs", "trials", "tau_ladder",
              "longtime_tol", "compare_forcing_shift", "compare_initial_shift"},
             strict, err);
  sp.epsilons = get_num_list(j, path, "epsilons", err, false, sp.epsilons);
  for (double e : sp.epsilons)
    if (!(e > 0.0)) err.add(path + ".epsilons", "entries must be positive");
  sp.horizons = get_num_list(j, path, "horizons", err, false, sp.horizons);
  sp.instances = get_int(j, path, "instances", err, false, sp.instances);
  sp.max_dofs = get_int(j, path, "max_dofs", err, false, sp.max_dofs);
  if (sp.max_dofs > 15) err.add(path + ".max_dofs", "oracle cap is 15");
  sp.trials = get_int(j, path, "trials", err, false, sp.trials);
  const auto ladder = get_num_list(j, path, "tau_ladder", err, false, {});
  if (!ladder.empty()) {
    sp.tau_ladder.clear();
    for (double v : ladder) {
      if (v < 1.0) err.add(path + ".tau_ladder", "step counts must be >= 1");
      sp.tau_ladder.push_back(static_cast<int>(v));
    }
  }
  sp.longtime_tol = get_num(j, path, "longtime_tol", err, false, sp.longtime_tol);
  sp.compare_forcing_shift =
      get_num(j, path, "compare_forcing_shift", err, false, sp.compare_forcing_shift);
  sp.compare_initial_shift =
      get_num(j, path, "compare_initial_shift", err, false, sp.compare_initial_shift);
  return sp;
}

}  // namespace

ParseResult parse_config_json(const json& j, bool strict) {
  ParseResult result;
  Errors err;
  if (!j.is_object()) {
    result.errors = {"top level: expected an object"};
    return result;
  }
  check_keys(j, "top level",
             {"mesh", "sigma", "time", "forcing", "initial", "solver", "study", "output",
              "seed"},
             strict, err);

  ScenarioConfig cfg;
  if (j.contains("mesh")) cfg.mesh = parse_mesh(j["mesh"], strict, err);
  else err.add("top level", "missing required key 'mesh'");
  cfg.sigma = get_num(j, "top level", "sigma", err, false, 0.0);
  if (cfg.sigma < 0.0) err.add("sigma", "must be nonnegative");

  if (j.contains("time")) {
    const json& t = j["time"];
    check_keys(t, "time", {"horizon", "steps"}, strict, err);
    cfg.grid.T = get_num(t, "time", "horizon", err, true, 1.0);
    cfg.grid.m = get_int(t, "time", "steps", err, true, 1);
    if (!(cfg.grid.T > 0.0)) err.add("time.horizon", "must be positive");
    if (cfg.grid.m < 1) err.add("time.steps", "must be at least 1");
  } else {
    err.add("top level", "missing required key 'time'");
  }

  if (j.contains("forcing")) cfg.forcing = parse_forcing(j["forcing"], strict, err);
  else err.add("top level", "missing required key 'forcing'");
  cfg.initial = parse_initial(j.contains("initial") ? j["initial"] : json::object(), strict, err);
  cfg.solver = parse_solver(j.contains("solver") ? j["solver"] : json(), strict, err);
  cfg.study = parse_study(j.contains("study") ? j["study"] : json(), strict, err);

  if (j.contains("output")) {
    check_keys(j["output"], "output", {"dir"}, strict, err);
    cfg.out_dir = get_str(j["output"], "output", "dir", err, false, cfg.out_dir);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      err.add("seed", "expected an unsigned integer");
    else
      cfg.seed = j["seed"].get<std::uint64_t>();
  }

  result.errors = err.list;
  if (result.errors.empty()) result.config = std::move(cfg);
  return result;
}

ParseResult parse_config_file(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path);
  if (!in) return {.config = std::nullopt, .errors = {"cannot open config file: " + path.string()}};
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded())
    return {.config = std::nullopt, .errors = {"config is not well-formed JSON: " + path.string()}};
  return parse_config_json(j, strict);
}

ForcingSampler make_sampler(const ForcingConfig& fc, const DiscreteOperators& ops,
                            double horizon_hint) {
  ForcingSampler s;
  const MeshSpec mesh = ops.spec;
  const double T = horizon_hint;

  if (fc.preset == "stationary") {
    const ProfileConfig prof = fc.profile;
    s.eval = [prof, mesh](Coord p, double) { return prof.eval(p, mesh); };
    s.average = [prof, mesh](Coord p, double, double) { return prof.eval(p, mesh); };
    s.dt = [](Coord, double) { return 0.0; };
    s.stationary = true;
    s.envelope = sample_nodal(s, ops, 0.0);
    s.f_infinity = s.envelope;
    return s;
  }
  if (fc.preset == "linear_drift") {
    const ProfileConfig base = fc.base, slope = fc.slope;
    s.eval = [base, slope, mesh](Coord p, double t) {
      return base.eval(p, mesh) + t * slope.eval(p, mesh);
    };
    s.average = [base, slope, mesh](Coord p, double t0, double t1) {
      return base.eval(p, mesh) + 0.5 * (t0 + t1) * slope.eval(p, mesh);
    };
    s.dt = [slope, mesh](Coord p, double) { return slope.eval(p, mesh); };
    s.envelope.resize(ops.n_free());
    for (int i = 0; i < ops.n_free(); ++i) {
      const double b = base.eval(ops.coords[i], mesh);
      const double sl = slope.eval(ops.coords[i], mesh);
      s.envelope[i] = b + std::min(0.0, sl * T);
    }
    return s;
  }
  if (fc.preset == "exp_relax") {
    const ProfileConfig limit = fc.limit, bump = fc.bump;
    const double rate = fc.rate;
    s.eval = [limit, bump, rate, mesh](Coord p, double t) {
      return limit.eval(p, mesh) + bump.eval(p, mesh) * std::exp(-rate * t);
    };
    s.average = [limit, bump, rate, mesh](Coord p, double t0, double t1) {
      return limit.eval(p, mesh) + bump.eval(p, mesh) * (std::exp(-rate * t0) -
                                                         std::exp(-rate * t1)) /
                                       (rate * (t1 - t0));
    };
    s.dt = [bump, rate, mesh](Coord p, double t) {
      return -rate * bump.eval(p, mesh) * std::exp(-rate * t);
    };
    s.envelope.resize(ops.n_free());
    s.f_infinity.resize(ops.n_free());
    for (int i = 0; i < ops.n_free(); ++i) {
      const double lim = limit.eval(ops.coords[i], mesh);
      const double bmp = bump.eval(ops.coords[i], mesh);
      if (bmp < 0.0)
        throw std::invalid_argument("exp_relax bump must be nonnegative (f >= f_infinity)");
      s.envelope[i] = lim;
      s.f_infinity[i] = lim;
    }
    return s;
  }
  if (fc.preset == "sinusoidal") {
    const ProfileConfig offset = fc.offset, amp = fc.amplitude;
    const double w = fc.omega;
    s.eval = [offset, amp, w, mesh](Coord p, double t) {
      return offset.eval(p, mesh) + amp.eval(p, mesh) * std::sin(w * t);
    };
    s.average = [offset, amp, w, mesh](Coord p, double t0, double t1) {
      return offset.eval(p, mesh) +
             amp.eval(p, mesh) * (std::cos(w * t0) - std::cos(w * t1)) / (w * (t1 - t0));
    };
    s.dt = [amp, w, mesh](Coord p, double t) {
      return w * amp.eval(p, mesh) * std::cos(w * t);
    };
    s.envelope.resize(ops.n_free());
    for (int i = 0; i < ops.n_free(); ++i)
      s.envelope[i] = offset.eval(ops.coords[i], mesh) - std::abs(amp.eval(ops.coords[i], mesh));
    return s;
  }
  if (fc.preset == "lowreg") {
    // f(x,t) = -|x - t|^(1-alpha): admissible data of low time regularity;
    // no closed-form averages, quadrature and FD derivatives apply.
    const double expo = 1.0 - fc.alpha;
    s.eval = [expo](Coord p, double t) { return -std::pow(std::abs(p.x - t), expo); };
    const double reach = std::max(mesh.extent[0], T);
    s.envelope.assign(ops.n_free(), -std::pow(reach, expo));
    return s;
  }
  if (fc.preset == "tabulated") {
    const std::vector<double> times = fc.times;
    const std::vector<Vec> rows = fc.values;
    for (const auto& row : rows) ops.require_size(row, "tabulated forcing row");
    const int n = ops.n_free();
    // Piecewise linear in time per node; constant extrapolation beyond the
    // table. dof_of maps a coordinate back to its dof (samplers are
    // coordinate-based).
    auto dof_of = [ops_coords = ops.coords](const Coord& p) {
      for (std::size_t i = 0; i < ops_coords.size(); ++i)
        if (std::abs(ops_coords[i].x - p.x) < 1e-12 && std::abs(ops_coords[i].y - p.y) < 1e-12)
          return static_cast<int>(i);
      throw std::invalid_argument("tabulated forcing queried off the mesh");
    };
    auto value_at = [times, rows, dof_of](const Coord& p, double t) {
      const int d = dof_of(p);
      if (t <= times.front()) return rows.front()[d];
      if (t >= times.back()) return rows.back()[d];
      std::size_t k = 1;
      while (times[k] < t) ++k;
      const double th = (t - times[k - 1]) / (times[k] - times[k - 1]);
      return rows[k - 1][d] + th * (rows[k][d] - rows[k - 1][d]);
    };
    s.eval = value_at;
    s.average = [value_at, times](Coord p, double t0, double t1) {
      // exact integral of the piecewise-linear interpolant: trapezoid over
      // the knots inside [t0, t1] plus the end fragments
      std::vector<double> pts{t0};
      for (double kt : times)
        if (kt > t0 && kt < t1) pts.push_back(kt);
      pts.push_back(t1);
      double acc = 0.0;
      for (std::size_t i = 1; i < pts.size(); ++i)
        acc += 0.5 * (pts[i] - pts[i - 1]) *
               (value_at(p, pts[i - 1]) + value_at(p, pts[i]));
      return acc / (t1 - t0);
    };
    s.envelope.resize(n);
    for (int i = 0; i < n; ++i) {
      double lo = rows.front()[i];
      for (const auto& row : rows) lo = std::min(lo, row[i]);
      s.envelope[i] = lo;
    }
    return s;
  }
  throw std::invalid_argument("unknown forcing preset '" + fc.preset + "'");
}

Vec make_initial(const InitialConfig& ic, const DiscreteOperators& ops, const ForcingSampler& f,
                 const SolverConfig& solver) {
  if (ic.preset == "zero") return Vec(ops.n_free(), 0.0);
  if (ic.preset == "profile") {
    Vec z(ops.n_free());
    for (int i = 0; i < ops.n_free(); ++i) z[i] = ic.profile.eval(ops.coords[i], ops.spec);
    return z;
  }
  if (ic.preset == "equilibrium") {
    ObstacleProblem prob;
    prob.ops = &ops;
    prob.psi.assign(ops.n_free(), 0.0);
    prob.g = sample_nodal(f, ops, 0.0);
    return solve(prob, solver).z;
  }
  if (ic.preset == "values") {
    ops.require_size(ic.values, "initial values");
    return ic.values;
  }
  throw std::invalid_argument("unknown initial preset '" + ic.preset + "'");
}

json to_json(const ScenarioConfig& cfg) {
  json j;
  json mesh;
  mesh["dim"] = cfg.mesh.dim;
  mesh["extent"] = cfg.mesh.dim == 2 ? json{cfg.mesh.extent[0], cfg.mesh.extent[1]}
                                     : json{cfg.mesh.extent[0]};
  mesh["nodes"] = cfg.mesh.dim == 2 ? json{cfg.mesh.nodes[0], cfg.mesh.nodes[1]}
                                    : json{cfg.mesh.nodes[0]};
  json b;
  for (const auto& [face, kind] : cfg.mesh.boundary)
    b[face_name(face)] = kind == BoundaryKind::Dirichlet ? "dirichlet" : "neumann";
  mesh["boundary"] = b;
  j["mesh"] = mesh;
  j["sigma"] = cfg.sigma;
  j["time"] = {{"horizon", cfg.grid.T}, {"steps", cfg.grid.m}};

  json fj;
  fj["preset"] = cfg.forcing.preset;
  if (cfg.forcing.preset == "stationary") fj["profile"] = profile_json(cfg.forcing.profile);
  if (cfg.forcing.preset == "linear_drift") {
    fj["base"] = profile_json(cfg.forcing.base);
    fj["slope"] = profile_json(cfg.forcing.slope);
  }
  if (cfg.forcing.preset == "exp_relax") {
    fj["limit"] = profile_json(cfg.forcing.limit);
    fj["bump"] = profile_json(cfg.forcing.bump);
    fj["rate"] = cfg.forcing.rate;
  }
  if (cfg.forcing.preset == "sinusoidal") {
    fj["offset"] = profile_json(cfg.forcing.offset);
    fj["amplitude"] = profile_json(cfg.forcing.amplitude);
    fj["omega"] = cfg.forcing.omega;
  }
  if (cfg.forcing.preset == "lowreg") fj["alpha"] = cfg.forcing.alpha;
  if (cfg.forcing.preset == "tabulated") {
    fj["times"] = cfg.forcing.times;
    fj["values"] = cfg.forcing.values;
  }
  j["forcing"] = fj;

  json ij;
  ij["preset"] = cfg.initial.preset;
  if (cfg.initial.preset == "profile") ij["profile"] = profile_json(cfg.initial.profile);
  if (cfg.initial.preset == "values") ij["values"] = cfg.initial.values;
  j["initial"] = ij;

  j["solver"] = {{"method", cfg.solver.method == ObstacleMethod::PSOR ? "psor" : "pdas"},
                 {"omega", cfg.solver.omega},
                 {"tol", cfg.solver.tol},
                 {"max_iter", cfg.solver.max_iter}};
  j["study"] = {{"epsilons", cfg.study.epsilons},
                {"horizons", cfg.study.horizons},
                {"instances", cfg.study.instances},
                {"max_dofs", cfg.study.max_dofs},
                {"trials", cfg.study.trials},
                {"tau_ladder", cfg.study.tau_ladder},
                {"longtime_tol", cfg.study.longtime_tol},
                {"compare_forcing_shift", cfg.study.compare_forcing_shift},
                {"compare_initial_shift", cfg.study.compare_initial_shift}};
  j["output"] = {{"dir", cfg.out_dir}};
  j["seed"] = cfg.seed;
  return j;
}

}  // namespace evi
