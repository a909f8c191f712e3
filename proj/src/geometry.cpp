#include "heatlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace heatlab {

LatticeSpec::LatticeSpec(int dim_, double r1_, double r2_) : dim(dim_), r1(r1_), r2(r2_) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("lattice.dim must be 1 or 2");
  if (!(r1 > 0.0)) throw std::invalid_argument("lattice.r1 must be positive");
  if (!(r1 < r2)) throw std::invalid_argument("lattice.r1 must be < lattice.r2");
}

BoxDomain::BoxDomain(int dim_, std::array<long long, 2> lo_, std::array<long long, 2> hi_)
    : dim(dim_), lo(lo_), hi(hi_) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("domain.dim must be 1 or 2");
  for (int ax = 0; ax < dim; ++ax) {
    if (lo[ax] > hi[ax])
      throw std::invalid_argument("domain bounds: lo > hi on axis " + std::to_string(ax));
  }
}

long long BoxDomain::cell_count() const {
  long long n = 1;
  for (int ax = 0; ax < dim; ++ax) n *= cells(ax);
  return n;
}

bool BoxDomain::contains(const BoxDomain& other) const {
  if (other.dim != dim) return false;
  for (int ax = 0; ax < dim; ++ax) {
    if (other.lo[ax] < lo[ax] || other.hi[ax] > hi[ax]) return false;
  }
  return true;
}

BoxDomain centered_box(int dim, long long n) {
  if (n < 1) throw std::invalid_argument("centered_box: need n >= 1 cells");
  const long long lo = -(n / 2);
  std::array<long long, 2> los{lo, lo};
  std::array<long long, 2> his{lo + n - 1, lo + n - 1};
  return BoxDomain(dim, los, his);
}

std::vector<Point> build_lattice_centers(const LatticeSpec& spec, const BoxDomain& box) {
  if (box.dim != spec.dim) throw std::invalid_argument("lattice/domain dimension mismatch");
  const double side = spec.cube_side();
  std::vector<Point> centers;
  centers.reserve(static_cast<std::size_t>(box.cell_count()));
  const long long ny = (spec.dim == 2) ? box.cells(1) : 1;
  for (long long iy = 0; iy < ny; ++iy) {
    for (long long ix = 0; ix < box.cells(0); ++ix) {
      Point p{};
      p[0] = (static_cast<double>(box.lo[0] + ix) + 0.5) * side;
      if (spec.dim == 2) p[1] = (static_cast<double>(box.lo[1] + iy) + 0.5) * side;
      centers.push_back(p);
    }
  }
  return centers;
}

SpatialGrid::SpatialGrid(const LatticeSpec& spec, const BoxDomain& box, int m)
    : spec_(spec), box_(box), m_(m) {
  if (box.dim != spec.dim) throw std::invalid_argument("lattice/domain dimension mismatch");
  if (m < 2) throw std::invalid_argument("grid.m must be >= 2");
  h_ = spec.cube_side() / static_cast<double>(m);
  weight_ = (spec.dim == 2) ? h_ * h_ : h_;
  for (int ax = 0; ax < spec.dim; ++ax) {
    const long long intervals = static_cast<long long>(m) * box.cells(ax);
    if (intervals - 1 > 1'000'000)
      throw std::invalid_argument("grid too large on axis " + std::to_string(ax));
    axis_nodes_[ax] = static_cast<int>(intervals - 1);
    origin_[ax] = box.lo[ax] * static_cast<long long>(m);
  }
  if (spec.dim == 1) {
    axis_nodes_[1] = 1;
    origin_[1] = 0;
  }
  count_ = axis_nodes_[0] * axis_nodes_[1];
}

Point SpatialGrid::position(int idx) const {
  Point p{};
  const int ix = idx % axis_nodes_[0];
  p[0] = coord(0, ix);
  if (dim() == 2) p[1] = coord(1, idx / axis_nodes_[0]);
  return p;
}

std::vector<int> SpatialGrid::restriction_indices(const SpatialGrid& sub) const {
  if (sub.dim() != dim() || sub.m() != m_ || sub.spec().r2 != spec_.r2)
    throw std::invalid_argument("restriction: grids use different lattices");
  if (!box_.contains(sub.box()))
    throw std::invalid_argument("restriction: sub-box not contained in this box");
  std::vector<int> map;
  map.reserve(static_cast<std::size_t>(sub.node_count()));
  const int ny = (dim() == 2) ? sub.axis_nodes(1) : 1;
  for (int iy = 0; iy < ny; ++iy) {
    const long long gy = (dim() == 2) ? sub.axis_origin(1) + iy + 1 : 0;
    for (int ix = 0; ix < sub.axis_nodes(0); ++ix) {
      const long long gx = sub.axis_origin(0) + ix + 1;
      const int lx = static_cast<int>(gx - origin_[0] - 1);
      const int ly = (dim() == 2) ? static_cast<int>(gy - origin_[1] - 1) : 0;
      map.push_back(index(lx, ly));
    }
  }
  return map;
}

NodeMask control_mask(const SpatialGrid& grid) {
  const LatticeSpec& spec = grid.spec();
  const BoxDomain& box = grid.box();
  const double side = spec.cube_side();
  NodeMask mask;
  mask.w.assign(static_cast<std::size_t>(grid.node_count()), 0);

  // Centers form a full lattice over the box, so the nearest center is found
  // per axis: clamp the node's cell to the box and compare with the adjacent
  // cells.
  auto axis_dist = [&](int ax, double x) {
    const double u = x / side;  // position in cell units
    const long long k0 = static_cast<long long>(std::floor(u));
    double best = std::numeric_limits<double>::infinity();
    for (long long k = k0 - 1; k <= k0 + 1; ++k) {
      const long long kc = std::min(std::max(k, box.lo[ax]), box.hi[ax]);
      const double c = (static_cast<double>(kc) + 0.5) * side;
      best = std::min(best, std::abs(x - c));
    }
    return best;
  };

  const int ny = (grid.dim() == 2) ? grid.axis_nodes(1) : 1;
  for (int iy = 0; iy < ny; ++iy) {
    const double dy = (grid.dim() == 2) ? axis_dist(1, grid.coord(1, iy)) : 0.0;
    for (int ix = 0; ix < grid.axis_nodes(0); ++ix) {
      const double dx = axis_dist(0, grid.coord(0, ix));
      const double dist = std::sqrt(dx * dx + dy * dy);
      if (dist <= spec.r1) {
        mask.w[static_cast<std::size_t>(grid.index(ix, iy))] = 1;
        ++mask.marked;
      }
    }
  }
  return mask;
}

}  // namespace heatlab
