#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwave/fdtd.hpp"
#include "mwave/grid2d.hpp"
#include "mwave/materials.hpp"

namespace mwave {

// Circular 2D breast scene: fat disk of breast_radius, skin annulus of
// skin_thickness outside it, matching medium beyond, and an optional circular
// tumor inside the fat. Region materials are tissue labels resolved through
// the catalog, so a region can be remapped (e.g. everything set to
// matching_medium gives a tumor immersed in coupling liquid).
struct TumorSpec {
  double diameter = 0.010;  // m
  double depth = 0.026;     // inner skin surface to the tumor's nearest edge, m
  double angle_deg = 90.0;  // direction from the breast center to the tumor
};

struct RegionMaterials {
  std::string background = "matching_medium";
  std::string skin = "skin";
  std::string fat = "fat";
  std::string tumor = "tumor";
};

struct PhantomSpec {
  double breast_radius = 0.078;   // fat region radius, m
  double skin_thickness = 0.002;  // m
  std::optional<TumorSpec> tumor = TumorSpec{};
  Vec2 center{0.0, 0.0};
  RegionMaterials materials{};

  PhantomSpec without_tumor() const;
  void validate() const;
};

class Phantom {
 public:
  explicit Phantom(const PhantomSpec& spec);

  const PhantomSpec& spec() const { return spec_; }
  const std::string& tissue_at(Vec2 p) const;
  std::optional<Vec2> tumor_center() const;
  double outer_radius() const { return spec_.breast_radius + spec_.skin_thickness; }

 private:
  PhantomSpec spec_;
  std::optional<Vec2> tumor_center_;
  double tumor_radius_ = 0.0;
};

Phantom build_phantom(const PhantomSpec& spec);

// Cell-center sampling of the phantom through the catalog; no sub-cell
// averaging. usable_margin_cells is the band (absorbing layers plus guard)
// that must stay clear of the breast.
MaterialGrid rasterize(const Phantom& phantom, const GridSpec& grid, const TissueCatalog& catalog,
                       int usable_margin_cells = 0);

// Cell center of (i, j) with the domain spanning [0, nx*dx] x [0, ny*dx].
Vec2 cell_center(const GridSpec& grid, CellIndex c);
CellIndex nearest_cell(const GridSpec& grid, Vec2 p);

// Transceiver positions on an arc conformal to the skin, standoff into the
// matching medium. Positions are snapped to cell centers so simulation and
// focusing agree on the geometry exactly.
struct ArrayGeometry {
  std::vector<Vec2> elements;
  double standoff = 0.0;

  std::vector<CellIndex> cells(const GridSpec& grid) const;
  friend bool operator==(const ArrayGeometry&, const ArrayGeometry&) = default;
};

ArrayGeometry make_arc_array(const Phantom& phantom, const GridSpec& grid, int n_elements,
                             double standoff, double arc_span_deg = 360.0,
                             double arc_center_deg = 90.0, int usable_margin_cells = 0);

}  // namespace mwave
