#pragma once

#include <span>
#include <string>
#include <vector>

#include "admnet/partition.hpp"
#include "admnet/vector_field.hpp"

namespace admnet {

/// Ring of van der Pol type oscillators, each coupled to its neighbours at
/// distance one and two.
struct VdpParams {
  double b = 1.0;
  double omega0 = 1.0;
  double alpha1 = 0.1;
  double alpha2 = 0.01;
  double eps = 0.3;
  double eta = 0.2;
  int n_osc = 6;
};

/// State layout (x1, y1, ..., xn, yn); cell i owns (xi, yi).
///   xi' = yi
///   yi' = b(1 - xi^2) yi - (omega0^2 + alpha1 xi^2 + alpha2 xi^4) xi
///         + eps (sum_j yj / 4 - yi) + eta (sum_j xj / 4 - xi),  j = i+-1, i+-2
/// Parameters enter as exact rationals of their shortest decimal form.
VectorFieldSpec vdp_network_field(const VdpParams& p);

/// Parses "b=1,eps=0.3,..." on top of the defaults.
VdpParams parse_vdp_params(const std::string& text);

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
};

/// Classical fourth-order Runge-Kutta. The last step is shortened so the
/// final sample sits at t_end. Every `stride`-th step is recorded, plus the
/// final one. Throws Error on a non-finite state.
Trajectory integrate_rk4(const VectorFieldSpec& f, std::vector<double> x0, double t_end, double dt,
                         int stride = 1);

/// Blockwise average onto the polydiagonal of p. `dims` gives the cell sizes
/// (cells are contiguous); empty means scalar cells.
std::vector<double> project_polydiagonal(std::span<const double> x, const Partition& p,
                                         std::span<const int> dims = {});

/// Largest spread of a coordinate within a block, over all samples.
double sync_deviation(const Trajectory& traj, const Partition& p, std::span<const int> dims = {});

/// Header "t,<names...>", one row per sample, '.' decimal point.
std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& names);

}  // namespace admnet
