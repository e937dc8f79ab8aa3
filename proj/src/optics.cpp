#include "qmirror/optics.hpp"

#include <cmath>

#include "qmirror/errors.hpp"
#include "qmirror/kernels.hpp"

namespace qm {

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
          a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
}

Amp2 apply(const Mat2& m, const Amp2& v) {
  return {m.m00 * v.left + m.m01 * v.right, m.m10 * v.left + m.m11 * v.right};
}

Mat2 splitter_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {complexd(c, 0.0), complexd(0.0, s), complexd(0.0, s), complexd(c, 0.0)};
}

complexd kick_phase(const InterferometerConfig& c, double x, Port side) {
  const double p = c.kick_momentum();
  const double arg = side == Port::left ? p * x : -p * x;
  return std::polar(1.0, arg);
}

Mat2 kick_matrix(const InterferometerConfig& c, double x) {
  const double theta = c.splitter_angle();
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  return {ct * kick_phase(c, x, Port::left), complexd(0.0, st),
          complexd(0.0, st), ct * kick_phase(c, x, Port::right)};
}

Mat2 phase_plate(double phi) {
  return {std::polar(1.0, -phi / 2.0), complexd(0.0, 0.0),
          complexd(0.0, 0.0), std::polar(1.0, phi / 2.0)};
}

Mat2 transfer_matrix(const InterferometerConfig& c, double x) {
  const Mat2 b = splitter_matrix(std::atan(1.0) /* pi/4 */);
  const Mat2 k = kick_matrix(c, x);
  Mat2 chain = b;
  for (int j = 0; j < c.bounces; ++j) chain = k * chain;
  return b * (phase_plate(c.phase) * chain);
}

Amp2 exit_amplitude_at(const InterferometerConfig& c, double x) {
  const Mat2 t = transfer_matrix(c, x);
  return c.entry == Port::left ? Amp2{t.m00, t.m10} : Amp2{t.m01, t.m11};
}

ExitAmplitudes exit_amplitudes(const InterferometerConfig& c, const SpatialGrid& g) {
  ExitAmplitudes out;
  out.grid = g;
  out.left.resize(static_cast<std::size_t>(g.n_points));
  out.right.resize(static_cast<std::size_t>(g.n_points));
  kernels::amplitude_grid_omp(c, g, out.left.data(), out.right.data());
  return out;
}

complexd closed_form_kernel_N1(const InterferometerConfig& c, double x, double xi, Port port) {
  if (c.bounces != 1 || c.incidence != 0.0)
    throw config_error("the closed-form kernel covers a single bounce at normal incidence only");
  const double theta = c.splitter_angle();
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  const double k = c.wavenumber();
  const double phi = port == Port::left ? c.phase : c.phase - std::acos(-1.0);
  const complexd ax(st * std::cos(phi / 2.0), -ct * std::sin(2.0 * k * x - phi / 2.0));
  const complexd axi(st * std::cos(phi / 2.0), ct * std::sin(2.0 * k * xi - phi / 2.0));
  return ax * axi;
}

}  // namespace qm
