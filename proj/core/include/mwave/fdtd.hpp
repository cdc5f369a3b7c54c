#pragma once

#include <functional>
#include <vector>

#include "mwave/grid2d.hpp"
#include "mwave/pulse.hpp"

namespace mwave {

struct GridSpec {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;  // cell size, m
  double dt = 0.0;  // time step, s

  double courant() const;
  double width() const { return nx * dx; }
  double height() const { return ny * dx; }
};

// dt = courant * dx / c0; enforces the 2D stability bound S <= 1/sqrt(2).
GridSpec make_grid(int nx, int ny, double dx, double courant = 0.7);

// Resolution rule dx <= lambda_min/20 at the configured source bandwidth,
// with lambda_min evaluated in the densest medium on the grid.
void validate_resolution(const GridSpec& grid, double f_max_hz, double max_eps_r);

enum class BoundaryKind {
  cpml,  // absorbing layer inside this edge
  pec,   // reflecting wall (Ez pinned to zero on the edge ring)
  pmc,   // magnetic wall (mirror symmetry; tangential H zero at the edge)
};

struct Boundaries {
  BoundaryKind x_lo = BoundaryKind::cpml;
  BoundaryKind x_hi = BoundaryKind::cpml;
  BoundaryKind y_lo = BoundaryKind::cpml;
  BoundaryKind y_hi = BoundaryKind::cpml;

  static Boundaries all(BoundaryKind k) { return {k, k, k, k}; }
};

struct SolverOptions {
  Boundaries boundaries{};
  int pml_cells = 10;
  int pml_order = 3;
  double pml_sigma_scale = 0.8;  // sigma_max = scale * (order+1) / (eta0 * dx)
  double pml_alpha_max = 0.05;   // CFS shift, S/m; graded to zero at the wall
  double divergence_limit = 1e30;
};

// Per-cell material raster. rho is carried for dosimetry; the field update
// uses eps_r and sigma only.
struct MaterialGrid {
  Grid2D eps_r;
  Grid2D sigma;
  Grid2D rho;

  double max_eps_r() const;
};

MaterialGrid uniform_material(int nx, int ny, double eps_r = 1.0, double sigma = 0.0,
                              double rho = 1000.0);

struct CellIndex {
  int i = 0;
  int j = 0;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

// Soft source: waveform(t) is added into Ez at one cell after each update.
struct SourceTerm {
  CellIndex cell;
  std::function<double(double)> waveform;
  double quiet_after = 0.0;  // time after which the waveform is negligible
};

SourceTerm make_pulse_source(CellIndex cell, const PulseSpec& pulse);

// Steps for a round trip across the grid diagonal in the slowest medium,
// plus a source tail.
long minimum_run_steps(const GridSpec& grid, double max_eps_r, double source_tail_s);

// Yee-grid TMz state: Ez at integer nodes, Hx at (i, j+1/2), Hy at (i+1/2, j).
struct FieldState {
  Grid2D ez;
  Grid2D hx;
  Grid2D hy;
  long step_index = 0;
};

struct ProbeTraces {
  double dt = 0.0;
  std::vector<std::vector<double>> ez;  // per probe; sample k holds Ez at t = (k+1)*dt
  std::vector<double> tx_waveform;      // injected source samples on the same clock
};

// One 2D TMz simulation over a fixed raster. Lossy Ez update:
//   ca = (1 - sigma*dt/(2 eps)) / (1 + sigma*dt/(2 eps))
//   cb = (dt / (eps*dx))        / (1 + sigma*dt/(2 eps))
// Absorbing edges use a convolutional PML (recursive-convolution form with
// graded conductivity and a CFS alpha term).
class Simulation {
 public:
  Simulation(const MaterialGrid& materials, const GridSpec& grid, const SolverOptions& opts = {});

  void add_source(SourceTerm src);
  void add_source(CellIndex cell, const PulseSpec& pulse);

  // Advances one dt; throws Diverged when |Ez| exceeds the divergence limit.
  void step();

  // Steps from the current state, recording Ez at each probe cell.
  // n_steps == 0 selects minimum_steps(); an explicit count is taken as-is
  // (callers that only need a shorter record opt out of the full bound).
  ProbeTraces run(long n_steps, const std::vector<CellIndex>& probes);

  // Steps for a round trip across the grid diagonal in the slowest medium on
  // the raster, plus the source tail.
  long minimum_steps() const;

  double time() const { return state_.step_index * grid_.dt; }
  const FieldState& state() const { return state_; }
  const GridSpec& grid() const { return grid_; }
  const Grid2D& ez() const { return state_.ez; }
  const Grid2D& hx() const { return state_.hx; }
  const Grid2D& hy() const { return state_.hy; }
  const Grid2D& eps_r() const { return eps_r_; }
  const Grid2D& sigma() const { return sigma_; }

  // Instantaneous 0.5*eps*E^2 + 0.5*mu0*H^2 summed over the grid (J/m along z).
  double field_energy() const;

 private:
  struct AxisPml {
    // Recursive-convolution coefficients at integer (E) and half (H) nodes.
    std::vector<double> b_e, c_e, b_h, c_h;
    int lo_e_begin = 0, lo_e_end = 0;  // [begin, end) strips for E-node psi work
    int hi_e_begin = 0, hi_e_end = 0;
    int lo_h_begin = 0, lo_h_end = 0;
    int hi_h_begin = 0, hi_h_end = 0;
  };

  void build_coefficients(const MaterialGrid& materials);
  AxisPml build_axis_pml(int n_e_nodes, BoundaryKind lo, BoundaryKind hi) const;
  void update_h();
  void update_e();
  void apply_sources();

  GridSpec grid_;
  SolverOptions opts_;
  FieldState state_;
  Grid2D eps_r_, sigma_;
  Grid2D ca_, cb_;
  double chh_ = 0.0;  // dt / (mu0 * dx)
  double max_eps_r_ = 1.0;

  AxisPml pml_x_, pml_y_;
  Grid2D psi_ez_x_, psi_ez_y_;  // convolution terms entering the Ez update
  Grid2D psi_hy_x_, psi_hx_y_;  // convolution terms entering the H updates

  std::vector<SourceTerm> sources_;
};

}  // namespace mwave
