#include "mwave/fdtd.hpp"

#include <algorithm>
#include <cmath>

#include "mwave/constants.hpp"
#include "mwave/errors.hpp"

namespace mwave {

using constants::c0;
using constants::eps0;
using constants::eta0;
using constants::mu0;

double GridSpec::courant() const { return c0 * dt / dx; }

GridSpec make_grid(int nx, int ny, double dx, double courant) {
  if (nx < 3 || ny < 3) throw InvariantViolation("grid: nx and ny must be >= 3");
  if (!(dx > 0.0)) throw InvariantViolation("grid: dx must be > 0");
  const double limit = 1.0 / std::sqrt(2.0) - 1e-12;
  if (!(courant > 0.0) || courant > limit)
    throw InvariantViolation("grid: courant number must be in (0, 1/sqrt(2))");
  return GridSpec{nx, ny, dx, courant * dx / c0};
}

void validate_resolution(const GridSpec& grid, double f_max_hz, double max_eps_r) {
  if (!(f_max_hz > 0.0)) throw InvariantViolation("grid: f_max must be > 0");
  const double lambda_min = c0 / (f_max_hz * std::sqrt(max_eps_r));
  if (grid.dx > lambda_min / 20.0 + 1e-15)
    throw InvariantViolation("grid: dx exceeds lambda_min/20 for the configured bandwidth");
}

double MaterialGrid::max_eps_r() const {
  double m = 1.0;
  for (int j = 0; j < eps_r.ny(); ++j)
    for (int i = 0; i < eps_r.nx(); ++i) m = std::max(m, eps_r(i, j));
  return m;
}

MaterialGrid uniform_material(int nx, int ny, double eps_r, double sigma, double rho) {
  return MaterialGrid{Grid2D(nx, ny, eps_r), Grid2D(nx, ny, sigma), Grid2D(nx, ny, rho)};
}

SourceTerm make_pulse_source(CellIndex cell, const PulseSpec& pulse) {
  pulse.validate();
  return SourceTerm{cell, [pulse](double t) { return pulse_value(pulse, t); },
                    pulse.t0 + 3.0 * pulse.fwhm};
}

Simulation::Simulation(const MaterialGrid& materials, const GridSpec& grid,
                       const SolverOptions& opts)
    : grid_(grid), opts_(opts) {
  if (materials.eps_r.nx() != grid.nx || materials.eps_r.ny() != grid.ny ||
      materials.sigma.nx() != grid.nx || materials.sigma.ny() != grid.ny)
    throw InvariantViolation("simulation: material raster does not match the grid");
  if (opts.pml_cells < 1) throw InvariantViolation("simulation: pml_cells must be >= 1");

  const int x_pml = (opts.boundaries.x_lo == BoundaryKind::cpml ? opts.pml_cells : 0) +
                    (opts.boundaries.x_hi == BoundaryKind::cpml ? opts.pml_cells : 0);
  const int y_pml = (opts.boundaries.y_lo == BoundaryKind::cpml ? opts.pml_cells : 0) +
                    (opts.boundaries.y_hi == BoundaryKind::cpml ? opts.pml_cells : 0);
  if (grid.nx <= x_pml + 4 || grid.ny <= y_pml + 4)
    throw InvariantViolation("simulation: grid too small for the absorbing layers");

  state_.ez = Grid2D(grid.nx, grid.ny);
  state_.hx = Grid2D(grid.nx, grid.ny - 1);
  state_.hy = Grid2D(grid.nx - 1, grid.ny);
  eps_r_ = materials.eps_r;
  sigma_ = materials.sigma;
  max_eps_r_ = materials.max_eps_r();
  build_coefficients(materials);

  pml_x_ = build_axis_pml(grid.nx, opts.boundaries.x_lo, opts.boundaries.x_hi);
  pml_y_ = build_axis_pml(grid.ny, opts.boundaries.y_lo, opts.boundaries.y_hi);
  psi_ez_x_ = Grid2D(grid.nx, grid.ny);
  psi_ez_y_ = Grid2D(grid.nx, grid.ny);
  psi_hy_x_ = Grid2D(grid.nx - 1, grid.ny);
  psi_hx_y_ = Grid2D(grid.nx, grid.ny - 1);
}

void Simulation::build_coefficients(const MaterialGrid& materials) {
  ca_ = Grid2D(grid_.nx, grid_.ny);
  cb_ = Grid2D(grid_.nx, grid_.ny);
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const double eps = eps0 * materials.eps_r(i, j);
      const double loss = materials.sigma(i, j) * grid_.dt / (2.0 * eps);
      ca_(i, j) = (1.0 - loss) / (1.0 + loss);
      cb_(i, j) = (grid_.dt / (eps * grid_.dx)) / (1.0 + loss);
    }
  }
  chh_ = grid_.dt / (mu0 * grid_.dx);
}

Simulation::AxisPml Simulation::build_axis_pml(int n_e_nodes, BoundaryKind lo,
                                               BoundaryKind hi) const {
  AxisPml p;
  const int n = opts_.pml_cells;
  const int m = opts_.pml_order;
  const double sigma_max = opts_.pml_sigma_scale * (m + 1) / (eta0 * grid_.dx);

  p.b_e.assign(n_e_nodes, 1.0);
  p.c_e.assign(n_e_nodes, 0.0);
  p.b_h.assign(n_e_nodes - 1, 1.0);
  p.c_h.assign(n_e_nodes - 1, 0.0);

  auto coeff = [&](double depth, double& b, double& c) {
    // depth in (0, 1]: 0 at the PML interface, 1 at the outer wall.
    const double sp = sigma_max * std::pow(depth, m);
    const double al = opts_.pml_alpha_max * (1.0 - depth);
    b = std::exp(-(sp + al) * grid_.dt / eps0);
    c = (sp + al > 0.0) ? sp * (b - 1.0) / (sp + al) : 0.0;
  };

  if (lo == BoundaryKind::cpml) {
    p.lo_e_begin = 1;
    p.lo_e_end = n + 1;
    for (int i = 1; i <= n; ++i) coeff(double(n - i) / n, p.b_e[i], p.c_e[i]);
    p.lo_h_begin = 0;
    p.lo_h_end = n;
    for (int i = 0; i < n; ++i) coeff((n - i - 0.5) / n, p.b_h[i], p.c_h[i]);
  }
  if (hi == BoundaryKind::cpml) {
    const int iface = n_e_nodes - 1 - n;
    p.hi_e_begin = iface;
    p.hi_e_end = n_e_nodes - 1;
    for (int i = iface; i <= n_e_nodes - 2; ++i)
      coeff(double(i - iface) / n, p.b_e[i], p.c_e[i]);
    p.hi_h_begin = iface;
    p.hi_h_end = n_e_nodes - 1;
    for (int i = iface; i <= n_e_nodes - 2; ++i)
      coeff((i + 0.5 - iface) / n, p.b_h[i], p.c_h[i]);
  }
  return p;
}

void Simulation::update_h() {
  const int nx = grid_.nx;
  const int ny = grid_.ny;
  Grid2D& ez = state_.ez;
  Grid2D& hx = state_.hx;
  Grid2D& hy = state_.hy;

  // hx(i, j+1/2) -= chh * dEz/dy
  for (int j = 0; j < ny - 1; ++j) {
    const double* ez0 = ez.row(j);
    const double* ez1 = ez.row(j + 1);
    double* h = hx.row(j);
    for (int i = 0; i < nx; ++i) h[i] -= chh_ * (ez1[i] - ez0[i]);
  }
  // hy(i+1/2, j) += chh * dEz/dx
  for (int j = 0; j < ny; ++j) {
    const double* e = ez.row(j);
    double* h = hy.row(j);
    for (int i = 0; i < nx - 1; ++i) h[i] += chh_ * (e[i + 1] - e[i]);
  }

  // Convolution corrections inside the absorbing strips.
  auto hx_strip = [&](int j_begin, int j_end) {
    for (int j = j_begin; j < j_end; ++j) {
      const double b = pml_y_.b_h[j];
      const double c = pml_y_.c_h[j];
      const double* ez0 = ez.row(j);
      const double* ez1 = ez.row(j + 1);
      double* psi = psi_hx_y_.row(j);
      double* h = hx.row(j);
      for (int i = 0; i < nx; ++i) {
        psi[i] = b * psi[i] + c * (ez1[i] - ez0[i]);
        h[i] -= chh_ * psi[i];
      }
    }
  };
  hx_strip(pml_y_.lo_h_begin, pml_y_.lo_h_end);
  hx_strip(pml_y_.hi_h_begin, pml_y_.hi_h_end);

  auto hy_strip = [&](int i_begin, int i_end) {
    if (i_begin >= i_end) return;
    for (int j = 0; j < ny; ++j) {
      const double* e = ez.row(j);
      double* psi = psi_hy_x_.row(j);
      double* h = hy.row(j);
      for (int i = i_begin; i < i_end; ++i) {
        psi[i] = pml_x_.b_h[i] * psi[i] + pml_x_.c_h[i] * (e[i + 1] - e[i]);
        h[i] += chh_ * psi[i];
      }
    }
  };
  hy_strip(pml_x_.lo_h_begin, pml_x_.lo_h_end);
  hy_strip(pml_x_.hi_h_begin, pml_x_.hi_h_end);
}

void Simulation::update_e() {
  const int nx = grid_.nx;
  const int ny = grid_.ny;
  Grid2D& ez = state_.ez;
  const Grid2D& hx = state_.hx;
  const Grid2D& hy = state_.hy;
  double max_abs = 0.0;

  const bool pmc_xlo = opts_.boundaries.x_lo == BoundaryKind::pmc;
  const bool pmc_xhi = opts_.boundaries.x_hi == BoundaryKind::pmc;
  const bool pmc_ylo = opts_.boundaries.y_lo == BoundaryKind::pmc;
  const bool pmc_yhi = opts_.boundaries.y_hi == BoundaryKind::pmc;

  auto update_cell = [&](int i, int j, double dhy, double dhx) {
    const double v = ca_(i, j) * ez(i, j) + cb_(i, j) * (dhy - dhx);
    ez(i, j) = v;
    max_abs = std::max(max_abs, std::fabs(v));
  };

  // Interior rows: straight curl, no ghost handling.
  for (int j = 1; j < ny - 1; ++j) {
    const double* hxr = hx.row(j);
    const double* hxm = hx.row(j - 1);
    const double* hyr = hy.row(j);
    const double* car = ca_.row(j);
    const double* cbr = cb_.row(j);
    double* ezr = ez.row(j);
    double m = 0.0;
    for (int i = 1; i < nx - 1; ++i) {
      const double v = car[i] * ezr[i] + cbr[i] * ((hyr[i] - hyr[i - 1]) - (hxr[i] - hxm[i]));
      ezr[i] = v;
      m = std::max(m, std::fabs(v));
    }
    max_abs = std::max(max_abs, m);
    if (pmc_xlo) update_cell(0, j, hyr[0], hxr[0] - hxm[0]);
    if (pmc_xhi) update_cell(nx - 1, j, -hyr[nx - 2], hxr[nx - 1] - hxm[nx - 1]);
  }
  if (pmc_ylo) {
    const double* hxr = hx.row(0);
    const double* hyr = hy.row(0);
    for (int i = 1; i < nx - 1; ++i) update_cell(i, 0, hyr[i] - hyr[i - 1], hxr[i]);
    if (pmc_xlo) update_cell(0, 0, hyr[0], hxr[0]);
    if (pmc_xhi) update_cell(nx - 1, 0, -hyr[nx - 2], hxr[nx - 1]);
  }
  if (pmc_yhi) {
    const double* hxm = hx.row(ny - 2);
    const double* hyr = hy.row(ny - 1);
    for (int i = 1; i < nx - 1; ++i) update_cell(i, ny - 1, hyr[i] - hyr[i - 1], -hxm[i]);
    if (pmc_xlo) update_cell(0, ny - 1, hyr[0], -hxm[0]);
    if (pmc_xhi) update_cell(nx - 1, ny - 1, -hyr[nx - 2], -hxm[nx - 1]);
  }

  // Absorbing-strip convolution corrections (x strips sweep all updated rows,
  // y strips sweep all updated columns; overlap regions get both).
  const int j_begin = pmc_ylo ? 0 : 1;
  const int j_end = pmc_yhi ? ny : ny - 1;
  auto ez_x_strip = [&](int i_begin, int i_end) {
    if (i_begin >= i_end) return;
    for (int j = j_begin; j < j_end; ++j) {
      const double* hyr = hy.row(j);
      const double* cbr = cb_.row(j);
      double* psi = psi_ez_x_.row(j);
      double* ezr = ez.row(j);
      for (int i = i_begin; i < i_end; ++i) {
        psi[i] = pml_x_.b_e[i] * psi[i] + pml_x_.c_e[i] * (hyr[i] - hyr[i - 1]);
        const double v = ezr[i] + cbr[i] * psi[i];
        ezr[i] = v;
        max_abs = std::max(max_abs, std::fabs(v));
      }
    }
  };
  ez_x_strip(pml_x_.lo_e_begin, pml_x_.lo_e_end);
  ez_x_strip(pml_x_.hi_e_begin, pml_x_.hi_e_end);

  const int i_begin = pmc_xlo ? 0 : 1;
  const int i_end = pmc_xhi ? nx : nx - 1;
  auto ez_y_strip = [&](int j_lo, int j_hi) {
    for (int j = j_lo; j < j_hi; ++j) {
      const double b = pml_y_.b_e[j];
      const double c = pml_y_.c_e[j];
      const double* hxr = hx.row(j);
      const double* hxm = hx.row(j - 1);
      const double* cbr = cb_.row(j);
      double* psi = psi_ez_y_.row(j);
      double* ezr = ez.row(j);
      for (int i = i_begin; i < i_end; ++i) {
        psi[i] = b * psi[i] + c * (hxr[i] - hxm[i]);
        const double v = ezr[i] - cbr[i] * psi[i];
        ezr[i] = v;
        max_abs = std::max(max_abs, std::fabs(v));
      }
    }
  };
  ez_y_strip(pml_y_.lo_e_begin, pml_y_.lo_e_end);
  ez_y_strip(pml_y_.hi_e_begin, pml_y_.hi_e_end);

  if (!(max_abs <= opts_.divergence_limit))
    throw Diverged("fdtd: field magnitude exceeded " + std::to_string(opts_.divergence_limit) +
                   " at step " + std::to_string(state_.step_index + 1));
}

void Simulation::apply_sources() {
  const double t = (state_.step_index + 1) * grid_.dt;
  for (const auto& s : sources_) state_.ez(s.cell.i, s.cell.j) += s.waveform(t);
}

void Simulation::add_source(SourceTerm src) {
  // Edge rows/columns are live cells only for magnetic-wall sides.
  const int i_min = opts_.boundaries.x_lo == BoundaryKind::pmc ? 0 : 1;
  const int i_max = grid_.nx - (opts_.boundaries.x_hi == BoundaryKind::pmc ? 1 : 2);
  const int j_min = opts_.boundaries.y_lo == BoundaryKind::pmc ? 0 : 1;
  const int j_max = grid_.ny - (opts_.boundaries.y_hi == BoundaryKind::pmc ? 1 : 2);
  if (src.cell.i < i_min || src.cell.i > i_max || src.cell.j < j_min || src.cell.j > j_max)
    throw InvariantViolation("simulation: source must lie on updated cells");
  sources_.push_back(std::move(src));
}

void Simulation::add_source(CellIndex cell, const PulseSpec& pulse) {
  add_source(make_pulse_source(cell, pulse));
}

void Simulation::step() {
  update_h();
  update_e();
  apply_sources();
  ++state_.step_index;
}

long minimum_run_steps(const GridSpec& grid, double max_eps_r, double source_tail_s) {
  const double diag = std::hypot(grid.width(), grid.height());
  const double v_min = c0 / std::sqrt(max_eps_r);
  return static_cast<long>(std::ceil((2.0 * diag / v_min + source_tail_s) / grid.dt));
}

long Simulation::minimum_steps() const {
  double tail = 0.0;
  for (const auto& s : sources_) tail = std::max(tail, s.quiet_after);
  return minimum_run_steps(grid_, max_eps_r_, tail);
}

ProbeTraces Simulation::run(long n_steps, const std::vector<CellIndex>& probes) {
  for (const auto& p : probes)
    if (p.i < 0 || p.i >= grid_.nx || p.j < 0 || p.j >= grid_.ny)
      throw InvariantViolation("simulation: probe outside the grid");
  if (n_steps == 0) n_steps = minimum_steps();
  if (n_steps < 1) throw InvariantViolation("simulation: n_steps must be >= 1");

  ProbeTraces out;
  out.dt = grid_.dt;
  out.ez.assign(probes.size(), {});
  for (auto& t : out.ez) t.reserve(n_steps);
  out.tx_waveform.reserve(n_steps);

  for (long k = 0; k < n_steps; ++k) {
    step();
    for (size_t p = 0; p < probes.size(); ++p)
      out.ez[p].push_back(state_.ez(probes[p].i, probes[p].j));
    out.tx_waveform.push_back(sources_.empty() ? 0.0 : sources_[0].waveform(time()));
  }
  return out;
}

double Simulation::field_energy() const {
  const double cell_area = grid_.dx * grid_.dx;
  double e_sum = 0.0;
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx; ++i) {
      const double e = state_.ez(i, j);
      e_sum += 0.5 * eps0 * eps_r_(i, j) * e * e;
    }
  double h_sum = 0.0;
  for (int j = 0; j < grid_.ny - 1; ++j)
    for (int i = 0; i < grid_.nx; ++i) h_sum += 0.5 * mu0 * state_.hx(i, j) * state_.hx(i, j);
  for (int j = 0; j < grid_.ny; ++j)
    for (int i = 0; i < grid_.nx - 1; ++i) h_sum += 0.5 * mu0 * state_.hy(i, j) * state_.hy(i, j);
  return (e_sum + h_sum) * cell_area;
}

}  // namespace mwave
