#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "heatlab/bounds.hpp"
#include "heatlab/discretization.hpp"
#include "heatlab/fixed_point.hpp"
#include "heatlab/frequency.hpp"
#include "heatlab/geometry.hpp"
#include "heatlab/hum.hpp"
#include "heatlab/initial_data.hpp"
#include "heatlab/nonlinearity.hpp"
#include "heatlab/sweeps.hpp"
#include "heatlab/time_set.hpp"

namespace heatlab {

// Flat, fully defaulted mirror of the JSON config document. Builders hand out
// the validated domain objects; they throw with the offending config key in
// the message, and run_command calls them before any solve starts.
struct RunConfig {
  int dim = 1;
  double r1 = 0.2;
  double r2 = 0.5;
  int m = 16;
  std::vector<long long> sizes = {8};
  double horizon = 1.0;
  int steps = 128;
  std::vector<std::array<double, 2>> intervals = {{{0.0, 1.0}}};
  double potential_value = 0.0;
  std::string f_name = "zero";
  double f_param = 1.0;
  double hum_epsilon = 1e-8;
  double hum_tolerance = 1e-10;
  int hum_max_iterations = 0;
  double fp_tolerance = 1e-6;
  int fp_max_iterations = 50;
  std::string z0_recipe = "bump";
  double z0_radius = 0.0;
  bool power_iteration = true;
  int power_iterations = 30;
  double observability_tolerance = 1e-8;
  std::vector<double> frequency_x0;  // empty = domain center
  double frequency_r = 0.0;          // 0 = largest inscribed ball
  double frequency_lambda = 0.1;
  double bound_c = 1.0;
  double bound_c3 = 1.0;
  double bound_theta = 0.5;
  double bound_c_tilde = 0.0;
  int telescope_terms = 21;
  long long exhaustion_reference = 0;
  double exhaustion_ball_radius = 0.0;
  std::string exhaustion_source = "bump_gated";
  std::string solver_method = "auto";
  double solver_tolerance = 1e-10;
  int solver_max_iterations = 0;
  std::uint64_t seed = 12345;
  bool report_timing = false;

  LatticeSpec lattice() const;
  TimeGrid time_grid() const;
  TimeSet time_set() const;
  Nonlinearity nonlinearity() const;
  InitialDataRecipe initial_data() const;
  HumConfig hum() const;
  FixedPointConfig fixed_point() const;
  LinearSolveConfig linear_solver() const;
  ObservabilityPolicy observability() const;
  BoundConstants bound_constants() const;
  SweepConfig sweep() const;

  // Every key with its effective value, in canonical order; echoed into each
  // CSV comment header so artifacts are self-describing.
  nlohmann::ordered_json resolved() const;
};

// Strict parse: unknown keys are rejected with their full dotted path, type
// mismatches name the key, defaults fill anything absent.
RunConfig parse_config(const nlohmann::json& doc);

// Same, from raw text; parse errors carry nlohmann's byte/line context.
RunConfig parse_config_text(const std::string& text);

// Applies one "dotted.path=value" override onto the raw document. Values are
// parsed as JSON scalars when possible and fall back to plain strings.
void apply_override(nlohmann::json& doc, const std::string& assignment);

}  // namespace heatlab
