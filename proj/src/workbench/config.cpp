#include "airgeom/workbench/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace airgeom::workbench {

using nlohmann::json;

std::vector<double> GridSpec::altitudes() const {
  validate();
  std::vector<double> out;
  const int n = static_cast<int>(std::floor((max - min) / step + 0.5)) + 1;
  for (int i = 0; i < n; ++i) {
    const double h = min + i * step;
    if (h <= max + 1e-9) out.push_back(h);
  }
  return out;
}

void GridSpec::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("grid: step must be > 0");
  if (!(min < max)) throw std::invalid_argument("grid: min must be < max");
}

void RunConfig::validate() const {
  environment.validate();
  pathloss.validate();
  grid.validate();
  model_transition.validate();
  if (!(model_c_eff > 0.0))
    throw std::invalid_argument("model: c_eff must be > 0");
  if (transfer_h1 == transfer_h2)
    throw std::invalid_argument("transfer: h1 and h2 must differ");
  simulation.validate(environment);
  if (shadowing.sigma_db < 0.0)
    throw std::invalid_argument("shadowing: sigma_db must be >= 0");
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> keys,
                    const std::string& section) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys)
      if (key == k) known = true;
    if (!known)
      throw std::invalid_argument("config: unknown key '" + key + "' in " +
                                  section);
  }
}

template <class T>
void maybe(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j = json::parse(json_text);
  RunConfig cfg;
  reject_unknown(j,
                 {"environment", "pathloss", "grid", "fit", "transfer",
                  "simulation", "shadowing", "model"},
                 "top level");
  if (j.contains("environment")) {
    const json& e = j["environment"];
    reject_unknown(e, {"lambda", "r0", "g_t", "g_r", "f_c"}, "environment");
    maybe(e, "lambda", cfg.environment.lambda);
    maybe(e, "r0", cfg.environment.r0);
    maybe(e, "g_t", cfg.environment.g_t);
    maybe(e, "g_r", cfg.environment.g_r);
    maybe(e, "f_c", cfg.environment.f_c);
  }
  if (j.contains("pathloss")) {
    const json& p = j["pathloss"];
    reject_unknown(p, {"alpha_los", "alpha_nlos"}, "pathloss");
    maybe(p, "alpha_los", cfg.pathloss.alpha_los);
    maybe(p, "alpha_nlos", cfg.pathloss.alpha_nlos);
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    reject_unknown(g, {"min", "max", "step"}, "grid");
    maybe(g, "min", cfg.grid.min);
    maybe(g, "max", cfg.grid.max);
    maybe(g, "step", cfg.grid.step);
  }
  if (j.contains("fit")) {
    const json& f = j["fit"];
    reject_unknown(f, {"domain", "beta_min", "beta_max", "h0_min", "h0_max"},
                   "fit");
    if (f.contains("domain")) {
      const std::string d = f["domain"].get<std::string>();
      if (d == "dB" || d == "db") cfg.fit.domain = FitDomain::Db;
      else if (d == "linear") cfg.fit.domain = FitDomain::Linear;
      else throw std::invalid_argument("config: fit.domain must be dB or linear");
    }
    maybe(f, "beta_min", cfg.fit.beta_min);
    maybe(f, "beta_max", cfg.fit.beta_max);
    maybe(f, "h0_min", cfg.fit.h0_min);
    maybe(f, "h0_max", cfg.fit.h0_max);
  }
  if (j.contains("transfer")) {
    const json& t = j["transfer"];
    reject_unknown(t, {"h1", "h2"}, "transfer");
    maybe(t, "h1", cfg.transfer_h1);
    maybe(t, "h2", cfg.transfer_h2);
  }
  if (j.contains("simulation")) {
    const json& s = j["simulation"];
    reject_unknown(s,
                   {"realizations", "rng_seed", "r_max", "noise_floor",
                    "threads", "jitter_db"},
                   "simulation");
    maybe(s, "realizations", cfg.simulation.realizations);
    maybe(s, "rng_seed", cfg.simulation.rng_seed);
    maybe(s, "r_max", cfg.simulation.r_max);
    maybe(s, "noise_floor", cfg.simulation.noise_floor);
    maybe(s, "threads", cfg.simulation.threads);
    maybe(s, "jitter_db", cfg.jitter_db);
  }
  if (j.contains("shadowing")) {
    const json& s = j["shadowing"];
    reject_unknown(s, {"sigma_db"}, "shadowing");
    maybe(s, "sigma_db", cfg.shadowing.sigma_db);
  }
  if (j.contains("model")) {
    const json& m = j["model"];
    reject_unknown(m, {"beta", "h0", "c_eff", "c_tilde"}, "model");
    maybe(m, "beta", cfg.model_transition.beta);
    maybe(m, "h0", cfg.model_transition.h0);
    if (m.contains("c_tilde")) {
      cfg.model_c_eff = activity_from_normalized(m["c_tilde"].get<double>(),
                                                 cfg.environment);
      if (m.contains("c_eff"))
        throw std::invalid_argument(
            "config: model.c_eff and model.c_tilde are mutually exclusive");
    } else {
      maybe(m, "c_eff", cfg.model_c_eff);
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const RunConfig& cfg) {
  json j;
  j["environment"] = {{"lambda", cfg.environment.lambda},
                      {"r0", cfg.environment.r0},
                      {"g_t", cfg.environment.g_t},
                      {"g_r", cfg.environment.g_r},
                      {"f_c", cfg.environment.f_c}};
  j["pathloss"] = {{"alpha_los", cfg.pathloss.alpha_los},
                   {"alpha_nlos", cfg.pathloss.alpha_nlos}};
  j["grid"] = {{"min", cfg.grid.min}, {"max", cfg.grid.max},
               {"step", cfg.grid.step}};
  j["fit"] = {{"domain", cfg.fit.domain == FitDomain::Db ? "dB" : "linear"},
              {"beta_min", cfg.fit.beta_min},
              {"beta_max", cfg.fit.beta_max},
              {"h0_min", cfg.fit.h0_min},
              {"h0_max", cfg.fit.h0_max}};
  j["transfer"] = {{"h1", cfg.transfer_h1}, {"h2", cfg.transfer_h2}};
  j["simulation"] = {{"realizations", cfg.simulation.realizations},
                     {"rng_seed", cfg.simulation.rng_seed},
                     {"r_max", cfg.simulation.r_max},
                     {"noise_floor", cfg.simulation.noise_floor},
                     {"threads", cfg.simulation.threads},
                     {"jitter_db", cfg.jitter_db}};
  j["shadowing"] = {{"sigma_db", cfg.shadowing.sigma_db}};
  j["model"] = {{"beta", cfg.model_transition.beta},
                {"h0", cfg.model_transition.h0},
                {"c_eff", cfg.model_c_eff}};
  return j.dump(2);
}

}  // namespace airgeom::workbench
