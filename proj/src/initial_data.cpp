#include "heatlab/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatlab {

void InitialDataRecipe::validate() const {
  if (name != "bump" && name != "sine" && name != "constant" && name != "zero")
    throw std::invalid_argument("z0.recipe must be bump, sine, constant, or zero");
  if (radius < 0.0) throw std::invalid_argument("z0.radius must be >= 0");
}

double bump_profile(double dist, double radius) {
  const double s = dist / radius;
  if (!(s < 1.0)) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

GridVector sample_initial_data(const InitialDataRecipe& recipe, const SpatialGrid& grid,
                               const BoxDomain& support_box) {
  recipe.validate();
  if (!grid.box().contains(support_box))
    throw std::invalid_argument("initial data support box must lie inside the domain");
  const int dim = grid.dim();
  const double side = grid.spec().cube_side();

  Point lo{}, hi{}, center{};
  double min_extent = std::numeric_limits<double>::infinity();
  for (int ax = 0; ax < dim; ++ax) {
    lo[ax] = static_cast<double>(support_box.lo[ax]) * side;
    hi[ax] = static_cast<double>(support_box.hi[ax] + 1) * side;
    center[ax] = 0.5 * (lo[ax] + hi[ax]);
    min_extent = std::min(min_extent, hi[ax] - lo[ax]);
  }

  GridVector z0(grid.node_count());
  if (recipe.name == "zero") {
    z0.setZero();
    return z0;
  }
  if (recipe.name == "bump") {
    const double radius = recipe.radius > 0.0 ? recipe.radius : 0.45 * min_extent;
    if (!(radius <= 0.5 * min_extent))
      throw std::invalid_argument("z0.radius exceeds the support box");
    for (int j = 0; j < grid.node_count(); ++j) {
      const Point p = grid.position(j);
      double d2 = 0.0;
      for (int ax = 0; ax < dim; ++ax) d2 += (p[ax] - center[ax]) * (p[ax] - center[ax]);
      z0[j] = bump_profile(std::sqrt(d2), radius);
    }
    return z0;
  }
  for (int j = 0; j < grid.node_count(); ++j) {
    const Point p = grid.position(j);
    bool inside = true;
    double value = 1.0;
    for (int ax = 0; ax < dim; ++ax) {
      if (p[ax] <= lo[ax] || p[ax] >= hi[ax]) {
        inside = false;
        break;
      }
      if (recipe.name == "sine")
        value *= std::sin(M_PI * (p[ax] - lo[ax]) / (hi[ax] - lo[ax]));
    }
    z0[j] = inside ? value : 0.0;
  }
  return z0;
}

}  // namespace heatlab
