#include <fstream>
#include <set>
#include <sstream>

#include "jscatter/cli.hpp"

namespace jscatter::cli {

namespace {

using nlohmann::json;

void only_keys(const json& j, const char* where, std::set<std::string> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
}

double number(const json& j, const char* where, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string(where) + "." + key + " is required");
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(std::string(where) + "." + key + " must be finite");
  return x;
}

int integer(const json& j, const char* where, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string(where) + "." + key + " is required");
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string(where) + "." + key + " must be an integer");
  return v.get<int>();
}

std::vector<double> parse_energy(const json& e) {
  only_keys(e, "energy", {"sigma", "sigma_min", "sigma_max", "count"});
  const bool list = e.contains("sigma");
  const bool range = e.contains("sigma_min") || e.contains("sigma_max") || e.contains("count");
  if (list == range) throw ConfigError("energy: give exactly one of {sigma: [...]} or {sigma_min, sigma_max, count}");
  std::vector<double> out;
  if (list) {
    if (!e["sigma"].is_array()) throw ConfigError("energy.sigma must be an array");
    for (const auto& v : e["sigma"]) {
      if (!v.is_number()) throw ConfigError("energy.sigma entries must be numbers");
      out.push_back(v.get<double>());
    }
  } else {
    const double lo = number(e, "energy", "sigma_min");
    const double hi = number(e, "energy", "sigma_max");
    const int count = integer(e, "energy", "count");
    if (count < 0) throw ConfigError("energy.count must be non-negative");
    if (count > 1 && !(hi > lo)) throw ConfigError("energy: sigma_max must exceed sigma_min");
    for (int i = 0; i < count; ++i) out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  }
  for (double s : out)
    if (!(s > 0.0) || !std::isfinite(s)) throw ConfigError("energy: every sigma must be positive and finite");
  return out;
}

}  // namespace

RunConfig parse_config(const json& j) {
  only_keys(j, "config", {"physical", "regularization", "energy", "basis", "potential", "output", "convergence"});
  RunConfig c;
  c.raw = j;
  for (const char* key : {"physical", "regularization", "energy"})
    if (!j.contains(key)) throw ConfigError(std::string("config: missing section '") + key + "'");

  const json& ph = j["physical"];
  only_keys(ph, "physical", {"ell", "A", "lambda"});
  c.physical.ell = integer(ph, "physical", "ell");
  c.physical.A = number(ph, "physical", "A");
  c.physical.lambda = number(ph, "physical", "lambda");

  const json& rg = j["regularization"];
  only_keys(rg, "regularization", {"r0", "A0"});
  c.regularization.r0 = number(rg, "regularization", "r0");
  c.regularization.A0 = number(rg, "regularization", "A0");

  c.sigma = parse_energy(j["energy"]);

  if (j.contains("basis")) {
    only_keys(j["basis"], "basis", {"N"});
    c.N = integer(j["basis"], "basis", "N");
    if (c.N < 10) throw ConfigError("basis.N must be at least 10");
  }

  if (j.contains("potential")) {
    const json& p = j["potential"];
    only_keys(p, "potential", {"kind", "V0", "a"});
    if (!p.contains("kind") || !p["kind"].is_string()) throw ConfigError("potential.kind must be a string");
    c.potential.kind = potential_kind_from_string(p["kind"].get<std::string>());
    if (c.potential.kind != PotentialKind::none) {
      c.potential.V0 = number(p, "potential", "V0");
      c.potential.range_a = number(p, "potential", "a");
      if (!(c.potential.range_a > 0.0)) throw ConfigError("potential.a must be positive");
    }
  }

  if (j.contains("output")) {
    const json& o = j["output"];
    only_keys(o, "output", {"directory", "precision"});
    if (o.contains("directory")) {
      if (!o["directory"].is_string()) throw ConfigError("output.directory must be a string");
      c.directory = o["directory"].get<std::string>();
    }
    if (o.contains("precision")) {
      c.precision = integer(o, "output", "precision");
      if (c.precision < 1 || c.precision > 17) throw ConfigError("output.precision must lie in [1, 17]");
    }
  }

  if (j.contains("convergence")) {
    const json& cv = j["convergence"];
    only_keys(cv, "convergence", {"N_values", "window"});
    if (cv.contains("N_values")) {
      if (!cv["N_values"].is_array() || cv["N_values"].empty())
        throw ConfigError("convergence.N_values must be a non-empty array");
      c.convergence.N_values.clear();
      for (const auto& v : cv["N_values"]) {
        if (!v.is_number_integer() || v.get<int>() < 4) throw ConfigError("convergence.N_values entries must be integers >= 4");
        c.convergence.N_values.push_back(v.get<int>());
      }
    }
    if (cv.contains("window")) {
      const json& w = cv["window"];
      if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
        throw ConfigError("convergence.window must be [lo, hi]");
      Window win{w[0].get<double>(), w[1].get<double>()};
      if (!(win.hi > win.lo)) throw ConfigError("convergence.window: hi must exceed lo");
      c.convergence.window = win;
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

std::vector<DerivedParams> validate(const RunConfig& cfg, Warnings* warnings) {
  if (!(cfg.physical.lambda > 0.0)) throw DomainError("physical.lambda must be positive");
  if (!(cfg.regularization.r0 > 0.0)) throw DomainError("regularization.r0 must be positive");
  std::vector<DerivedParams> out;
  // Validate the sweep-independent parameters even when the sweep is empty.
  PhysicalParams probe = cfg.physical;
  probe.energy = energy_from_sigma(cfg.sigma.empty() ? 1.0 : cfg.sigma.front(), cfg.physical.lambda);
  derive(probe, cfg.regularization, warnings);
  for (double s : cfg.sigma) {
    PhysicalParams p = cfg.physical;
    p.energy = energy_from_sigma(s, p.lambda);
    out.push_back(derive(p, cfg.regularization, nullptr));
  }
  if (auto a0 = check_continuity_option(cfg.physical, cfg.regularization, cfg.potential); a0 && warnings) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "A0 = " << *a0 << " would make the potential continuous at r0";
    warnings->push_back(msg.str());
  }
  return out;
}

}  // namespace jscatter::cli
