#include "mwave/phantom.hpp"

#include <cmath>

#include "mwave/errors.hpp"

namespace mwave {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PhantomSpec PhantomSpec::without_tumor() const {
  PhantomSpec s = *this;
  s.tumor.reset();
  return s;
}

void PhantomSpec::validate() const {
  if (!(breast_radius > 0.0)) throw GeometryError("phantom: breast_radius must be > 0");
  if (!(skin_thickness > 0.0) || !(skin_thickness < breast_radius))
    throw GeometryError("phantom: need 0 < skin_thickness < breast_radius");
  if (tumor) {
    if (!(tumor->diameter > 0.0)) throw GeometryError("phantom: tumor_diameter must be > 0");
    if (!(tumor->depth >= 0.0)) throw GeometryError("phantom: tumor_depth must be >= 0");
    if (tumor->depth + tumor->diameter > 2.0 * breast_radius)
      throw GeometryError("phantom: tumor does not fit inside the fat region");
  }
}

Phantom::Phantom(const PhantomSpec& spec) : spec_(spec) {
  spec_.validate();
  if (spec_.tumor) {
    const double a = spec_.tumor->angle_deg * kPi / 180.0;
    const double r = spec_.breast_radius - spec_.tumor->depth - 0.5 * spec_.tumor->diameter;
    tumor_center_ = spec_.center + r * Vec2{std::cos(a), std::sin(a)};
    tumor_radius_ = 0.5 * spec_.tumor->diameter;
  }
}

const std::string& Phantom::tissue_at(Vec2 p) const {
  const double r = distance(p, spec_.center);
  if (r >= spec_.breast_radius + spec_.skin_thickness) return spec_.materials.background;
  if (r >= spec_.breast_radius) return spec_.materials.skin;
  if (tumor_center_ && distance(p, *tumor_center_) <= tumor_radius_)
    return spec_.materials.tumor;
  return spec_.materials.fat;
}

std::optional<Vec2> Phantom::tumor_center() const { return tumor_center_; }

Phantom build_phantom(const PhantomSpec& spec) { return Phantom(spec); }

Vec2 cell_center(const GridSpec& grid, CellIndex c) {
  return {(c.i + 0.5) * grid.dx, (c.j + 0.5) * grid.dx};
}

CellIndex nearest_cell(const GridSpec& grid, Vec2 p) {
  return {static_cast<int>(std::lround(p.x / grid.dx - 0.5)),
          static_cast<int>(std::lround(p.y / grid.dx - 0.5))};
}

MaterialGrid rasterize(const Phantom& phantom, const GridSpec& grid, const TissueCatalog& catalog,
                       int usable_margin_cells) {
  const double margin = usable_margin_cells * grid.dx;
  const double r_out = phantom.outer_radius();
  const Vec2 c = phantom.spec().center;
  if (c.x - r_out < margin || c.y - r_out < margin || c.x + r_out > grid.width() - margin ||
      c.y + r_out > grid.height() - margin)
    throw GeometryError("phantom: scene exceeds the usable grid area");

  MaterialGrid out{Grid2D(grid.nx, grid.ny), Grid2D(grid.nx, grid.ny), Grid2D(grid.nx, grid.ny)};
  // Catalog lookups are hoisted per tissue name; the per-cell work is a pure
  // region test.
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const std::string& name = phantom.tissue_at(cell_center(grid, {i, j}));
      const MaterialProperties& m = catalog.lookup_tissue(name, 6e9);
      out.eps_r(i, j) = m.eps_r;
      out.sigma(i, j) = m.sigma;
      out.rho(i, j) = m.rho;
    }
  }
  return out;
}

std::vector<CellIndex> ArrayGeometry::cells(const GridSpec& grid) const {
  std::vector<CellIndex> out;
  out.reserve(elements.size());
  for (const Vec2& p : elements) out.push_back(nearest_cell(grid, p));
  return out;
}

ArrayGeometry make_arc_array(const Phantom& phantom, const GridSpec& grid, int n_elements,
                             double standoff, double arc_span_deg, double arc_center_deg,
                             int usable_margin_cells) {
  if (n_elements < 2) throw GeometryError("array: need at least 2 elements");
  if (!(standoff > 0.0)) throw GeometryError("array: standoff must be > 0");

  const double r = phantom.outer_radius() + standoff;
  const Vec2 c = phantom.spec().center;
  const double margin = usable_margin_cells * grid.dx;

  ArrayGeometry array;
  array.standoff = standoff;
  const bool full_ring = arc_span_deg >= 360.0 - 1e-9;
  const double span = arc_span_deg * kPi / 180.0;
  const double center = arc_center_deg * kPi / 180.0;
  for (int k = 0; k < n_elements; ++k) {
    // A full ring spaces elements evenly without duplicating the seam.
    const double a = full_ring ? center + span * k / n_elements
                               : center - span / 2.0 + span * k / (n_elements - 1);
    const Vec2 ideal = c + r * Vec2{std::cos(a), std::sin(a)};
    const Vec2 p = cell_center(grid, nearest_cell(grid, ideal));
    if (p.x < margin || p.y < margin || p.x > grid.width() - margin ||
        p.y > grid.height() - margin)
      throw GeometryError("array: element outside the usable grid area");
    if (distance(p, c) <= phantom.outer_radius())
      throw GeometryError("array: element inside the skin shell");
    for (const Vec2& q : array.elements)
      if (distance(p, q) < 0.5 * grid.dx)
        throw GeometryError("array: two elements snapped to the same cell");
    array.elements.push_back(p);
  }
  return array;
}

}  // namespace mwave
