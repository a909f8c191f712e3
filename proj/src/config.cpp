#include "heatlab/config.hpp"

#include <limits>
#include <set>
#include <stdexcept>

namespace heatlab {
namespace {

using nlohmann::json;

// Tracks which keys of one JSON object were consumed so finish() can reject
// typos with their full dotted path.
class KeyReader {
 public:
  KeyReader(const json& obj, std::string prefix) : obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) {
      throw std::invalid_argument("config: " + (prefix_.empty() ? "document" : prefix_) +
                                  " must be an object");
    }
  }

  const json* find(const char* key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void number(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) {
        throw std::invalid_argument("config: " + path(key) + " must be a number");
      }
      out = v->get<double>();
    }
  }

  void integer(const char* key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) {
        throw std::invalid_argument("config: " + path(key) + " must be an integer");
      }
      out = v->get<int>();
    }
  }

  void integer(const char* key, long long& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) {
        throw std::invalid_argument("config: " + path(key) + " must be an integer");
      }
      out = v->get<long long>();
    }
  }

  void unsigned64(const char* key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned() &&
          !(v->is_number_integer() && v->get<long long>() >= 0)) {
        throw std::invalid_argument("config: " + path(key) +
                                    " must be a nonnegative integer");
      }
      out = v->get<std::uint64_t>();
    }
  }

  void boolean(const char* key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) {
        throw std::invalid_argument("config: " + path(key) + " must be a boolean");
      }
      out = v->get<bool>();
    }
  }

  void text(const char* key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) {
        throw std::invalid_argument("config: " + path(key) + " must be a string");
      }
      out = v->get<std::string>();
    }
  }

  void integer_list(const char* key, std::vector<long long>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) {
        throw std::invalid_argument("config: " + path(key) + " must be an array of integers");
      }
      out.clear();
      for (const json& item : *v) {
        if (!item.is_number_integer()) {
          throw std::invalid_argument("config: " + path(key) +
                                      " must be an array of integers");
        }
        out.push_back(item.get<long long>());
      }
    }
  }

  void number_list(const char* key, std::vector<double>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) {
        throw std::invalid_argument("config: " + path(key) + " must be an array of numbers");
      }
      out.clear();
      for (const json& item : *v) {
        if (!item.is_number()) {
          throw std::invalid_argument("config: " + path(key) +
                                      " must be an array of numbers");
        }
        out.push_back(item.get<double>());
      }
    }
  }

  void interval_list(const char* key, std::vector<std::array<double, 2>>& out) {
    if (const json* v = find(key)) {
      const auto complain = [&] {
        throw std::invalid_argument("config: " + path(key) +
                                    " must be a list of [a, b] number pairs");
      };
      if (!v->is_array()) {
        complain();
      }
      out.clear();
      for (const json& item : *v) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
            !item[1].is_number()) {
          complain();
        }
        out.push_back({item[0].get<double>(), item[1].get<double>()});
      }
    }
  }

  std::string path(const char* key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (seen_.find(it.key()) == seen_.end()) {
        throw std::invalid_argument("config: unknown key " + path(it.key().c_str()));
      }
    }
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::set<std::string> seen_;
};

}  // namespace

RunConfig parse_config(const nlohmann::json& doc) {
  RunConfig cfg;
  KeyReader top(doc, "");

  if (const json* section = top.find("lattice")) {
    KeyReader r(*section, "lattice");
    r.integer("dim", cfg.dim);
    r.number("r1", cfg.r1);
    r.number("r2", cfg.r2);
    r.integer("m", cfg.m);
    r.finish();
  }
  if (const json* section = top.find("domain")) {
    KeyReader r(*section, "domain");
    r.integer_list("sizes", cfg.sizes);
    r.finish();
  }
  if (const json* section = top.find("time")) {
    KeyReader r(*section, "time");
    r.number("T", cfg.horizon);
    r.integer("K", cfg.steps);
    r.interval_list("E", cfg.intervals);
    r.finish();
  }
  if (const json* section = top.find("potential")) {
    KeyReader r(*section, "potential");
    r.number("value", cfg.potential_value);
    r.finish();
  }
  if (const json* section = top.find("nonlinearity")) {
    KeyReader r(*section, "nonlinearity");
    r.text("name", cfg.f_name);
    r.number("L", cfg.f_param);
    r.finish();
  }
  if (const json* section = top.find("hum")) {
    KeyReader r(*section, "hum");
    r.number("epsilon", cfg.hum_epsilon);
    r.number("tolerance", cfg.hum_tolerance);
    r.integer("max_iterations", cfg.hum_max_iterations);
    r.finish();
  }
  if (const json* section = top.find("fixed_point")) {
    KeyReader r(*section, "fixed_point");
    r.number("tolerance", cfg.fp_tolerance);
    r.integer("max_iterations", cfg.fp_max_iterations);
    r.finish();
  }
  if (const json* section = top.find("z0")) {
    KeyReader r(*section, "z0");
    r.text("recipe", cfg.z0_recipe);
    r.number("radius", cfg.z0_radius);
    r.finish();
  }
  if (const json* section = top.find("observability")) {
    KeyReader r(*section, "observability");
    r.boolean("power_iteration", cfg.power_iteration);
    r.integer("power_iterations", cfg.power_iterations);
    r.number("tolerance", cfg.observability_tolerance);
    r.finish();
  }
  if (const json* section = top.find("frequency")) {
    KeyReader r(*section, "frequency");
    r.number_list("x0", cfg.frequency_x0);
    r.number("r", cfg.frequency_r);
    r.number("lambda", cfg.frequency_lambda);
    r.finish();
  }
  if (const json* section = top.find("bound")) {
    KeyReader r(*section, "bound");
    r.number("c", cfg.bound_c);
    r.number("c3", cfg.bound_c3);
    r.number("theta", cfg.bound_theta);
    r.number("c_tilde", cfg.bound_c_tilde);
    r.finish();
  }
  if (const json* section = top.find("telescope")) {
    KeyReader r(*section, "telescope");
    r.integer("terms", cfg.telescope_terms);
    r.finish();
  }
  if (const json* section = top.find("exhaustion")) {
    KeyReader r(*section, "exhaustion");
    r.integer("reference", cfg.exhaustion_reference);
    r.number("ball_radius", cfg.exhaustion_ball_radius);
    r.text("source", cfg.exhaustion_source);
    r.finish();
  }
  if (const json* section = top.find("solver")) {
    KeyReader r(*section, "solver");
    r.text("method", cfg.solver_method);
    r.number("tolerance", cfg.solver_tolerance);
    r.integer("max_iterations", cfg.solver_max_iterations);
    r.finish();
  }
  top.unsigned64("seed", cfg.seed);
  top.boolean("report_timing", cfg.report_timing);
  top.finish();
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw std::invalid_argument(std::string("config: ") + err.what());
  }
  return parse_config(doc);
}

void apply_override(nlohmann::json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("override must look like key.path=value: " + assignment);
  }
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);

  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) {
    value = text;  // bare words become strings
  }

  json* cursor = &doc;
  std::size_t begin = 0;
  while (true) {
    const auto dot = path.find('.', begin);
    const std::string token = path.substr(begin, dot - begin);
    if (token.empty()) {
      throw std::invalid_argument("override has an empty path segment: " + assignment);
    }
    if (dot == std::string::npos) {
      (*cursor)[token] = std::move(value);
      break;
    }
    cursor = &(*cursor)[token];
    begin = dot + 1;
  }
}

LatticeSpec RunConfig::lattice() const { return LatticeSpec(dim, r1, r2); }

TimeGrid RunConfig::time_grid() const { return TimeGrid(horizon, steps); }

TimeSet RunConfig::time_set() const { return TimeSet(horizon, intervals); }

Nonlinearity RunConfig::nonlinearity() const {
  return Nonlinearity::by_name(f_name, f_param);
}

InitialDataRecipe RunConfig::initial_data() const {
  InitialDataRecipe recipe{z0_recipe, z0_radius};
  recipe.validate();
  return recipe;
}

HumConfig RunConfig::hum() const {
  HumConfig out{hum_epsilon, hum_tolerance, hum_max_iterations};
  out.validate();
  return out;
}

FixedPointConfig RunConfig::fixed_point() const {
  FixedPointConfig out{fp_tolerance, fp_max_iterations, hum()};
  out.validate();
  return out;
}

LinearSolveConfig RunConfig::linear_solver() const {
  LinearSolveConfig out;
  if (solver_method == "auto") {
    out.method = LinearSolveConfig::Method::Auto;
  } else if (solver_method == "direct") {
    out.method = LinearSolveConfig::Method::DirectBanded;
  } else if (solver_method == "cg") {
    out.method = LinearSolveConfig::Method::ConjugateGradient;
  } else {
    throw std::invalid_argument("config: solver.method must be auto, direct, or cg");
  }
  out.tolerance = solver_tolerance;
  out.max_iterations = solver_max_iterations;
  out.validate(1);
  return out;
}

ObservabilityPolicy RunConfig::observability() const {
  ObservabilityPolicy out;
  out.power_iteration = power_iteration;
  out.power_iterations = power_iterations;
  out.inner_tolerance = observability_tolerance;
  out.seed = seed;
  if (out.power_iterations < 1) {
    throw std::invalid_argument("observability.power_iterations must be at least 1");
  }
  if (!(out.inner_tolerance > 0.0) || out.inner_tolerance > 1e-2) {
    throw std::invalid_argument("observability.tolerance must lie in (0, 1e-2]");
  }
  return out;
}

BoundConstants RunConfig::bound_constants() const {
  BoundConstants out{bound_c, bound_c3, bound_theta, bound_c_tilde};
  out.validate();
  return out;
}

SweepConfig RunConfig::sweep() const {
  SweepConfig out{.spec = lattice(),
                  .sizes = sizes,
                  .reference = exhaustion_reference,
                  .m = m,
                  .E = time_set(),
                  .time = time_grid(),
                  .z0 = initial_data(),
                  .f = nonlinearity(),
                  .constant_potential = potential_value,
                  .ball_radius = exhaustion_ball_radius,
                  .fp = fixed_point(),
                  .lin = linear_solver()};
  out.validate();
  return out;
}

nlohmann::ordered_json RunConfig::resolved() const {
  nlohmann::ordered_json j;
  j["lattice"] = {{"dim", dim}, {"r1", r1}, {"r2", r2}, {"m", m}};
  j["domain"] = {{"sizes", sizes}};
  j["time"] = {{"T", horizon}, {"K", steps}, {"E", intervals}};
  j["potential"] = {{"value", potential_value}};
  j["nonlinearity"] = {{"name", f_name}, {"L", f_param}};
  j["hum"] = {{"epsilon", hum_epsilon},
              {"tolerance", hum_tolerance},
              {"max_iterations", hum_max_iterations}};
  j["fixed_point"] = {{"tolerance", fp_tolerance}, {"max_iterations", fp_max_iterations}};
  j["z0"] = {{"recipe", z0_recipe}, {"radius", z0_radius}};
  j["observability"] = {{"power_iteration", power_iteration},
                        {"power_iterations", power_iterations},
                        {"tolerance", observability_tolerance}};
  j["frequency"] = {{"x0", frequency_x0}, {"r", frequency_r}, {"lambda", frequency_lambda}};
  j["bound"] = {{"c", bound_c},
                {"c3", bound_c3},
                {"theta", bound_theta},
                {"c_tilde", bound_c_tilde}};
  j["telescope"] = {{"terms", telescope_terms}};
  j["exhaustion"] = {{"reference", exhaustion_reference},
                     {"ball_radius", exhaustion_ball_radius},
                     {"source", exhaustion_source}};
  j["solver"] = {{"method", solver_method},
                 {"tolerance", solver_tolerance},
                 {"max_iterations", solver_max_iterations}};
  j["seed"] = seed;
  j["report_timing"] = report_timing;
  return j;
}

}  // namespace heatlab
