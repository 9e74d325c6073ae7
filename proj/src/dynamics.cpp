#include "admnet/dynamics.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "admnet/error.hpp"

namespace admnet {

VectorFieldSpec vdp_network_field(const VdpParams& p) {
  if (p.n_osc < 5) throw ValidationError("the ring needs at least 5 oscillators");
  for (double v : {p.b, p.omega0, p.alpha1, p.alpha2, p.eps, p.eta}) {
    if (!std::isfinite(v)) throw ValidationError("parameters must be finite");
  }
  const int n = p.n_osc;
  const int dim = 2 * n;
  const Rational b = rational_from_double(p.b);
  const Rational w = rational_from_double(p.omega0);
  const Rational a1 = rational_from_double(p.alpha1);
  const Rational a2 = rational_from_double(p.alpha2);
  const Rational eps = rational_from_double(p.eps);
  const Rational eta = rational_from_double(p.eta);
  const Rational quarter(1, 4);
  auto x = [&](int i) { return Polynomial::variable(dim, 2 * (((i % n) + n) % n)); };
  auto y = [&](int i) { return Polynomial::variable(dim, 2 * (((i % n) + n) % n) + 1); };
  auto c = [&](const Rational& q) { return Polynomial::constant(dim, q); };

  std::vector<std::string> names;
  std::vector<std::vector<int>> cells;
  std::vector<Polynomial> comps;
  for (int i = 0; i < n; ++i) {
    names.push_back("x" + std::to_string(i + 1));
    names.push_back("y" + std::to_string(i + 1));
    cells.push_back({2 * i, 2 * i + 1});
    Polynomial xs(dim), ys(dim);
    for (int d : {-2, -1, 1, 2}) {
      xs += x(i + d);
      ys += y(i + d);
    }
    const Polynomial xi = x(i), yi = y(i);
    Polynomial ydot = (c(1) - xi * xi) * yi * b - (c(w * w) + xi * xi * a1 + xi.pow(4) * a2) * xi +
                      (ys * quarter - yi) * eps + (xs * quarter - xi) * eta;
    comps.push_back(yi);
    comps.push_back(std::move(ydot));
  }
  return VectorFieldSpec::make(std::move(names), std::move(cells), std::move(comps));
}

VdpParams parse_vdp_params(const std::string& text) {
  VdpParams p;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    item = item.substr(first, item.find_last_not_of(" \t") - first + 1);
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in '" + item + "'", 0);
    std::string key = item.substr(0, eq);
    std::string val = item.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    double v = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size()) {
      throw ParseError("bad number '" + val + "' for " + key, eq + 1);
    }
    if (key == "b") p.b = v;
    else if (key == "omega0") p.omega0 = v;
    else if (key == "alpha1") p.alpha1 = v;
    else if (key == "alpha2") p.alpha2 = v;
    else if (key == "eps") p.eps = v;
    else if (key == "eta") p.eta = v;
    else if (key == "n_osc" || key == "n") p.n_osc = static_cast<int>(v);
    else throw ParseError("unknown parameter '" + key + "'", 0);
  }
  return p;
}

Trajectory integrate_rk4(const VectorFieldSpec& f, std::vector<double> x0, double t_end, double dt,
                         int stride) {
  const int n = f.dimension();
  if (static_cast<int>(x0.size()) != n) throw ValidationError("initial state has wrong dimension");
  if (!(dt > 0) || !(t_end >= 0)) throw ValidationError("need dt > 0 and t_end >= 0");
  if (stride < 1) stride = 1;
  std::vector<CompiledPolynomial> rhs;
  for (const auto& p : f.components) rhs.emplace_back(p);
  auto eval = [&](const std::vector<double>& x, std::vector<double>& out) {
    for (int i = 0; i < n; ++i) out[i] = rhs[i](x);
  };
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  std::vector<double>& x = x0;
  double t = 0.0;
  long step = 0;
  while (t < t_end) {
    const double h = std::min(dt, t_end - t);
    if (h <= 1e-12 * dt) break;
    eval(x, k1);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    eval(tmp, k2);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    eval(tmp, k3);
    for (int i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    eval(tmp, k4);
    for (int i = 0; i < n; ++i) x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    ++step;
    t = (h < dt) ? t_end : step * dt;
    for (double v : x) {
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite state at t = " << t;
        throw Error(msg.str());
      }
    }
    if (step % stride == 0 || t >= t_end) {
      traj.times.push_back(t);
      traj.states.push_back(x);
    }
  }
  return traj;
}

namespace {

std::vector<int> offsets(int ncells, std::span<const int> dims, std::size_t total) {
  std::vector<int> off(ncells + 1, 0);
  for (int c = 0; c < ncells; ++c) off[c + 1] = off[c] + (dims.empty() ? 1 : dims[c]);
  if (!dims.empty() && static_cast<int>(dims.size()) != ncells) {
    throw ValidationError("dims length does not match the partition");
  }
  if (static_cast<std::size_t>(off[ncells]) != total) {
    throw ValidationError("state dimension does not match the cells");
  }
  return off;
}

}  // namespace

std::vector<double> project_polydiagonal(std::span<const double> x, const Partition& p,
                                         std::span<const int> dims) {
  const auto off = offsets(p.size(), dims, x.size());
  std::vector<double> out(x.begin(), x.end());
  for (const auto& b : p.blocks()) {
    const int d = off[b.front() + 1] - off[b.front()];
    for (int c : b) {
      if (off[c + 1] - off[c] != d) throw ValidationError("block joins cells of different dimension");
    }
    for (int k = 0; k < d; ++k) {
      bool equal = true;
      for (int c : b) equal = equal && x[off[c] + k] == x[off[b.front()] + k];
      if (equal) continue;
      double sum = 0;
      for (int c : b) sum += x[off[c] + k];
      const double mean = sum / static_cast<double>(b.size());
      for (int c : b) out[off[c] + k] = mean;
    }
  }
  return out;
}

double sync_deviation(const Trajectory& traj, const Partition& p, std::span<const int> dims) {
  double worst = 0.0;
  for (const auto& x : traj.states) {
    const auto off = offsets(p.size(), dims, x.size());
    for (const auto& b : p.blocks()) {
      const int d = off[b.front() + 1] - off[b.front()];
      for (int k = 0; k < d; ++k) {
        double lo = x[off[b.front()] + k], hi = lo;
        for (int c : b) {
          lo = std::min(lo, x[off[c] + k]);
          hi = std::max(hi, x[off[c] + k]);
        }
        worst = std::max(worst, hi - lo);
      }
    }
  }
  return worst;
}

namespace {

void put_double(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ec == std::errc() ? ptr : buf);
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj, const std::vector<std::string>& names) {
  std::string out = "t";
  for (const auto& n : names) out += "," + n;
  out += '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    put_double(out, traj.times[i]);
    for (double v : traj.states[i]) {
      out += ',';
      put_double(out, v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace admnet
