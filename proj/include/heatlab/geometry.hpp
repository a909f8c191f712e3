#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace heatlab {

// Equidistributed control lattice: space is tiled by closed cubes of side
// 2*r2 and each cube carries a control ball of radius r1 < r2 around its
// center. dim is 1 or 2.
struct LatticeSpec {
  int dim;
  double r1;
  double r2;

  LatticeSpec(int dim, double r1, double r2);
  double cube_side() const { return 2.0 * r2; }
};

// Axis-aligned union of lattice cubes: cell index i along an axis covers
// [i*2*r2, (i+1)*2*r2]. Bounds are inclusive and lo <= hi per axis.
struct BoxDomain {
  int dim;
  std::array<long long, 2> lo{};
  std::array<long long, 2> hi{};

  BoxDomain(int dim, std::array<long long, 2> lo, std::array<long long, 2> hi);

  long long cells(int ax) const { return hi[ax] - lo[ax] + 1; }
  long long cell_count() const;
  // true iff other is contained in this box (axis-wise bound inclusion)
  bool contains(const BoxDomain& other) const;
  double extent(int ax, const LatticeSpec& spec) const {
    return static_cast<double>(cells(ax)) * spec.cube_side();
  }
};

// Centered box with n cells per axis; consecutive n produce nested boxes
// (lo is nonincreasing, hi nondecreasing in n).
BoxDomain centered_box(int dim, long long n);

using Point = std::array<double, 2>;

// Cube centers ((i+0.5)*2*r2 per axis) enumerated with axis 0 fastest.
std::vector<Point> build_lattice_centers(const LatticeSpec& spec, const BoxDomain& box);

// Uniform grid with m >= 2 subdivisions per cube edge, so h = 2*r2/m divides
// the lattice exactly and grids over nested boxes share node coordinates
// bitwise. Only interior nodes (homogeneous Dirichlet boundary excluded) are
// stored.
class SpatialGrid {
 public:
  SpatialGrid(const LatticeSpec& spec, const BoxDomain& box, int m);

  const LatticeSpec& spec() const { return spec_; }
  const BoxDomain& box() const { return box_; }
  int dim() const { return spec_.dim; }
  int m() const { return m_; }
  double h() const { return h_; }
  double cell_weight() const { return weight_; }  // h^dim, quadrature weight

  int axis_nodes(int ax) const { return axis_nodes_[ax]; }
  int node_count() const { return count_; }

  // Interior node i = 0..axis_nodes(ax)-1 sits at (axis_origin + i + 1) * h;
  // the integer index is shared across nested grids, which keeps coordinates
  // bitwise identical.
  long long axis_origin(int ax) const { return origin_[ax]; }
  double coord(int ax, int i) const {
    return static_cast<double>(origin_[ax] + i + 1) * h_;
  }

  int index(int ix, int iy = 0) const { return ix + axis_nodes_[0] * iy; }
  Point position(int idx) const;

  // For a nested grid (same spec and m, box contained in ours): index of each
  // of sub's interior nodes in this grid, in sub's node order.
  std::vector<int> restriction_indices(const SpatialGrid& sub) const;

 private:
  LatticeSpec spec_;
  BoxDomain box_;
  int m_;
  double h_;
  double weight_;
  std::array<int, 2> axis_nodes_{};
  std::array<long long, 2> origin_{};
  int count_;
};

// Indicator weights of the control region on interior nodes.
struct NodeMask {
  std::vector<std::uint8_t> w;
  int marked = 0;

  bool empty() const { return marked == 0; }
};

// Marks a node iff its Euclidean distance to the nearest in-domain cube
// center is <= r1 (ties inside). May be empty when r1 < h/2 and centers fall
// off-grid; callers must treat an empty mask as an unobservable configuration.
NodeMask control_mask(const SpatialGrid& grid);

}  // namespace heatlab
