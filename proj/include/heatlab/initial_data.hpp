#pragma once

#include <string>

#include "heatlab/discretization.hpp"
#include "heatlab/geometry.hpp"

namespace heatlab {

// Named initial-data profiles. Profiles are anchored to a support box (the
// smallest box of a sweep, or the domain itself) so that restriction to any
// nested domain is plain sampling:
//   bump      smooth mollifier, support strictly inside the box
//   sine      first Dirichlet mode of the box, zero outside it
//   constant  indicator of the box
//   zero      identically zero (degenerate sweeps and null-input checks)
struct InitialDataRecipe {
  std::string name = "bump";
  double radius = 0.0;  // bump radius; 0 = 45% of the box's smallest extent

  void validate() const;
};

// Smooth compactly supported profile in [0, 1]: exp(1 - 1/(1 - s^2)) for
// s = dist/radius < 1, zero beyond.
double bump_profile(double dist, double radius);

// Sample the recipe anchored at support_box on the nodes of grid. The grid's
// domain must contain support_box.
GridVector sample_initial_data(const InitialDataRecipe& recipe, const SpatialGrid& grid,
                               const BoxDomain& support_box);

}  // namespace heatlab
