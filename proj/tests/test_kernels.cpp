#include <omp.h>

#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "qmirror/grid.hpp"
#include "qmirror/kernels.hpp"

namespace {

using qm::complexd;
namespace ker = qm::kernels;

struct Fixture {
  qm::SpatialGrid grid;
  qm::InterferometerConfig config;
  std::vector<double> diag;
  std::vector<complexd> amp_left, amp_right;

  explicit Fixture(int n) : grid(qm::make_grid(-4.0, 4.0, n)) {
    config.wavelength = 0.37;
    config.phase = 1.1;
    config.reflectivity = 0.73;
    config.bounces = 2;
    std::mt19937_64 eng(20240817);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    diag.resize(static_cast<std::size_t>(n));
    for (double& v : diag) v = uni(eng);
    amp_left.resize(static_cast<std::size_t>(n));
    amp_right.resize(static_cast<std::size_t>(n));
    ker::amplitude_grid_serial(config, grid, amp_left.data(), amp_right.data());
  }
};

}  // namespace

TEST_CASE("parallel amplitude grid matches the serial reference bit for bit") {
  const Fixture f(10007);
  std::vector<complexd> al(f.amp_left.size()), ar(f.amp_right.size());
  ker::amplitude_grid_omp(f.config, f.grid, al.data(), ar.data());
  CHECK(al == f.amp_left);
  CHECK(ar == f.amp_right);
}

TEST_CASE("parallel intensity scaling matches the serial reference bit for bit") {
  const Fixture f(9001);
  std::vector<double> a = f.diag, b = f.diag;
  ker::scale_by_intensity_serial(a.data(), f.amp_left.data(), a.size());
  ker::scale_by_intensity_omp(b.data(), f.amp_left.data(), b.size());
  CHECK(a == b);
}

TEST_CASE("parallel kernel scaling matches the serial reference bit for bit") {
  const Fixture f(257);
  const std::size_t n = f.diag.size();
  std::vector<complexd> rho(n * n);
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (auto& v : rho) v = complexd(uni(eng), uni(eng));
  std::vector<complexd> a = rho, b = rho;
  ker::scale_by_kernel_serial(a.data(), f.amp_right.data(), n);
  ker::scale_by_kernel_omp(b.data(), f.amp_right.data(), n);
  CHECK(a == b);
}

TEST_CASE("parallel reductions match the serial reference bit for bit") {
  const Fixture f(130001);  // spans many reduction blocks, last one partial
  const double s = ker::weighted_sum_serial(f.grid, f.diag.data());
  const double p = ker::weighted_sum_omp(f.grid, f.diag.data());
  CHECK(s == p);
  const double si = ker::intensity_projection_serial(f.grid, f.amp_left.data(), f.diag.data());
  const double pi_ = ker::intensity_projection_omp(f.grid, f.amp_left.data(), f.diag.data());
  CHECK(si == pi_);
}

TEST_CASE("parallel matrix norm matches the serial reference bit for bit") {
  const Fixture f(401);
  const std::size_t n = f.diag.size();
  std::vector<complexd> rho(n * n);
  std::mt19937_64 eng(99);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (auto& v : rho) v = complexd(uni(eng), uni(eng));
  CHECK(ker::hs_norm_sq_serial(f.grid, rho.data()) == ker::hs_norm_sq_omp(f.grid, rho.data()));
}

TEST_CASE("reduction results are independent of the thread count") {
  const Fixture f(50021);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = ker::weighted_sum_omp(f.grid, f.diag.data());
  const double one_proj = ker::intensity_projection_omp(f.grid, f.amp_left.data(), f.diag.data());
  omp_set_num_threads(4);
  const double four = ker::weighted_sum_omp(f.grid, f.diag.data());
  const double four_proj = ker::intensity_projection_omp(f.grid, f.amp_left.data(), f.diag.data());
  omp_set_num_threads(saved);
  CHECK(one == four);
  CHECK(one_proj == four_proj);
}

TEST_CASE("blocked reduction agrees with naive summation to rounding error") {
  const Fixture f(30011);
  double naive = 0.0;
  for (std::size_t i = 0; i < f.diag.size(); ++i)
    naive += qm::quad_weight(f.grid, static_cast<int>(i)) * f.diag[i];
  CHECK(ker::weighted_sum_serial(f.grid, f.diag.data()) ==
        doctest::Approx(naive).epsilon(1e-12));
}
