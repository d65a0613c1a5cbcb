#pragma once

#include <cstddef>
#include <filesystem>
#include <string>

#include "json.hpp"

#include "vlasov/phase_grid.hpp"
#include "vlasov/splitting.hpp"

namespace vlasov {

// A complete simulation setup. Parsed from a flat JSON object:
//
//   grid.L, grid.vmax, grid.nx, grid.nv, alpha,
//   scheme.method, scheme.midpoint, scheme.interpolation, scheme.tau, scheme.t_end,
//   output.dir, output.snapshot_every
//
// Missing keys take the weak Landau damping defaults (L = 4 pi, vmax = 6,
// 80 x 80 nodes, alpha = 0.01, Strang with the free-streaming predictor and
// cubic splines, tau = 1/16, T = 1).
struct RunConfig {
  GridSpec grid;
  double alpha;
  SchemeConfig scheme;
  std::filesystem::path output_dir;
  std::size_t snapshot_every;  // 0: final snapshot only
};

RunConfig default_run_config();
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& cfg);

// Same configuration with a different method and step size.
RunConfig with_scheme(const RunConfig& cfg, SplittingMethod method, double tau);

}  // namespace vlasov
