#include "qmirror/states.hpp"

#include <cmath>

#include "qmirror/errors.hpp"
#include "qmirror/kernels.hpp"

namespace qm {

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw config_error(std::string("state parameter '") + name +
                                            "' must be finite");
}

void require_span(const SpatialGrid& g, double lo, double hi, const char* what) {
  const double slack = 1e-12 * (hi - lo);
  if (g.x_min > lo + slack || g.x_max < hi - slack)
    throw config_error(std::string("grid does not span the ") + what +
                       " support; widen it or use the automatic grid builder");
}

// Divide by the quadrature trace so the stored weight is exactly 1; the
// conditional-update chain then partitions unity to rounding error.
void normalize(MirrorState& s) {
  const double w = state_weight(s);
  if (w <= 0.0) throw config_error("initial state has non-positive quadrature trace");
  if (s.is_full())
    for (complexd& v : s.full) v /= w;
  else
    for (double& v : s.diag) v /= w;
  s.weight = 1.0;
}

}  // namespace

void StateSpec::validate() const {
  require_finite(center, "center");
  switch (kind) {
    case StateKind::gaussian:
      require_finite(sigma, "sigma");
      require_finite(momentum, "momentum");
      if (sigma <= 0.0) throw config_error("state parameter 'sigma' must be positive");
      break;
    case StateKind::thermal:
      require_finite(sigma, "sigma");
      require_finite(coherence_length, "coherence_length");
      if (sigma <= 0.0) throw config_error("state parameter 'sigma' must be positive");
      if (coherence_length <= 0.0)
        throw config_error("state parameter 'coherence_length' must be positive");
      break;
    case StateKind::top_hat:
      require_finite(width, "width");
      if (width <= 0.0) throw config_error("state parameter 'width' must be positive");
      break;
  }
}

double StateSpec::envelope_halfwidth() const {
  return kind == StateKind::top_hat ? width / 2.0 : sigma;
}

MirrorState gaussian_pure(const SpatialGrid& g, const StateSpec& spec) {
  spec.validate();
  if (spec.kind != StateKind::gaussian)
    throw config_error("gaussian_pure requires a gaussian state description");
  require_span(g, spec.center - 4.0 * spec.sigma, spec.center + 4.0 * spec.sigma, "wave-packet");

  const std::size_t n = static_cast<std::size_t>(g.n_points);
  const double norm = std::pow(std::acos(-1.0) * spec.sigma * spec.sigma, -0.25);
  std::vector<complexd> psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.x(static_cast<int>(i));
    const double u = (x - spec.center) / spec.sigma;
    psi[i] = norm * std::exp(-0.5 * u * u) * std::polar(1.0, spec.momentum * x);
  }

  MirrorState s;
  s.grid = g;
  s.repr = Representation::full_matrix;
  s.full.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s.full[i * n + j] = psi[i] * std::conj(psi[j]);
  normalize(s);
  return s;
}

MirrorState thermal_gaussian(const SpatialGrid& g, const StateSpec& spec) {
  spec.validate();
  if (spec.kind != StateKind::thermal)
    throw config_error("thermal_gaussian requires a thermal state description");
  require_span(g, spec.center - 4.0 * spec.sigma, spec.center + 4.0 * spec.sigma, "thermal-state");
  if (g.spacing() > spec.coherence_length / 4.0)
    throw config_error("grid spacing is too coarse to resolve the coherence length; need at "
                       "least four points per coherence length");

  const std::size_t n = static_cast<std::size_t>(g.n_points);
  MirrorState s;
  s.grid = g;
  s.repr = Representation::full_matrix;
  s.full.resize(n * n);
  const double inv2s2 = 1.0 / (2.0 * spec.sigma * spec.sigma);
  const double inv2l2 = 1.0 / (2.0 * spec.coherence_length * spec.coherence_length);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = g.x(static_cast<int>(i)) - spec.center;
    for (std::size_t j = 0; j < n; ++j) {
      const double xj = g.x(static_cast<int>(j)) - spec.center;
      const double d = xi - xj;
      s.full[i * n + j] = std::exp(-(xi * xi + xj * xj) * inv2s2 - d * d * inv2l2);
    }
  }
  normalize(s);
  return s;
}

MirrorState top_hat(const SpatialGrid& g, const StateSpec& spec) {
  spec.validate();
  if (spec.kind != StateKind::top_hat)
    throw config_error("top_hat requires a flat state description");
  const double lo = spec.center - spec.width / 2.0;
  const double hi = spec.center + spec.width / 2.0;
  require_span(g, lo, hi, "flat-state");

  const std::size_t n = static_cast<std::size_t>(g.n_points);
  const double edge_eps = 1e-9 * g.spacing();
  MirrorState s;
  s.grid = g;
  s.repr = Representation::diagonal;
  s.diag.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.x(static_cast<int>(i));
    if (std::abs(x - lo) <= edge_eps || std::abs(x - hi) <= edge_eps)
      s.diag[i] = 0.5 / spec.width;  // half value on a jump keeps the trapezoid trace exact
    else if (x > lo && x < hi)
      s.diag[i] = 1.0 / spec.width;
  }
  s.weight = state_weight(s);
  return s;
}

MirrorState make_state(const SpatialGrid& g, const StateSpec& spec, Representation repr) {
  spec.validate();
  if (spec.kind == StateKind::top_hat) {
    if (repr == Representation::full_matrix)
      throw representation_error(
          "a fully mixed flat state has no dense matrix form on the grid; use the diagonal "
          "representation");
    return top_hat(g, spec);
  }
  if (repr == Representation::full_matrix)
    return spec.kind == StateKind::gaussian ? gaussian_pure(g, spec) : thermal_gaussian(g, spec);

  // Diagonal route: the position density of both gaussian kinds is the same
  // normalized envelope; momentum and coherence length live off the diagonal.
  require_span(g, spec.center - 4.0 * spec.sigma, spec.center + 4.0 * spec.sigma, "state");
  const std::size_t n = static_cast<std::size_t>(g.n_points);
  MirrorState s;
  s.grid = g;
  s.repr = Representation::diagonal;
  s.diag.resize(n);
  const double norm = 1.0 / (spec.sigma * std::sqrt(std::acos(-1.0)));
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (g.x(static_cast<int>(i)) - spec.center) / spec.sigma;
    s.diag[i] = norm * std::exp(-u * u);
  }
  normalize(s);
  return s;
}

}  // namespace qm
