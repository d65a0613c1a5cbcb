#include "vlasov/config.hpp"

#include <cstdint>
#include <fstream>
#include <numbers>
#include <set>

#include "vlasov/errors.hpp"

namespace vlasov {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "grid.L",       "grid.vmax",   "grid.nx",    "grid.nv",
      "alpha",        "scheme.method", "scheme.midpoint", "scheme.interpolation",
      "scheme.tau",   "scheme.t_end", "output.dir", "output.snapshot_every"};
  return keys;
}

template <typename T>
T get_or(const nlohmann::json& doc, const std::string& key, T fallback) {
  const auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  try {
    if constexpr (std::is_same_v<T, std::size_t>) {
      if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
        throw ConfigError("config: " + key + " must be a count");
      }
    } else if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw ConfigError("config: " + key + " must be a number");
    } else {
      if (!it->is_string()) throw ConfigError("config: " + key + " must be a string");
    }
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: bad value for " + key + ": " + e.what());
  }
}

}  // namespace

RunConfig default_run_config() { return parse_run_config(nlohmann::json::object()); }

RunConfig parse_run_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  for (const auto& item : doc.items()) {
    if (!known_keys().contains(item.key())) {
      throw ConfigError("config: unknown key '" + item.key() + "'");
    }
  }

  const GridSpec grid(get_or(doc, "grid.L", 4.0 * std::numbers::pi),
                      get_or(doc, "grid.vmax", 6.0), get_or<std::size_t>(doc, "grid.nx", 80),
                      get_or<std::size_t>(doc, "grid.nv", 80));
  const double alpha = get_or(doc, "alpha", 0.01);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("config: alpha must lie in [0, 1]");

  const SchemeConfig scheme(
      parse_method(get_or<std::string>(doc, "scheme.method", "strang")),
      parse_midpoint(get_or<std::string>(doc, "scheme.midpoint", "free-stream")),
      parse_interpolation(get_or<std::string>(doc, "scheme.interpolation", "cubic-spline")),
      get_or(doc, "scheme.tau", 1.0 / 16.0), get_or(doc, "scheme.t_end", 1.0));

  return RunConfig{grid, alpha, scheme, get_or<std::string>(doc, "output.dir", "out"),
                   get_or<std::size_t>(doc, "output.snapshot_every", 0)};
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config: " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_run_config(doc);
}

nlohmann::json to_json(const RunConfig& cfg) {
  return {{"grid.L", cfg.grid.L()},
          {"grid.vmax", cfg.grid.vmax()},
          {"grid.nx", cfg.grid.nx()},
          {"grid.nv", cfg.grid.nv()},
          {"alpha", cfg.alpha},
          {"scheme.method", std::string(to_string(cfg.scheme.method()))},
          {"scheme.midpoint", std::string(to_string(cfg.scheme.midpoint()))},
          {"scheme.interpolation", std::string(to_string(cfg.scheme.interpolation()))},
          {"scheme.tau", cfg.scheme.tau()},
          {"scheme.t_end", cfg.scheme.t_end()},
          {"output.dir", cfg.output_dir.string()},
          {"output.snapshot_every", cfg.snapshot_every}};
}

RunConfig with_scheme(const RunConfig& cfg, SplittingMethod method, double tau) {
  RunConfig out = cfg;
  out.scheme = SchemeConfig(method, cfg.scheme.midpoint(), cfg.scheme.interpolation(), tau,
                            cfg.scheme.t_end());
  return out;
}

}  // namespace vlasov
