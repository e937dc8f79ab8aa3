#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qmirror/errors.hpp"
#include "qmirror/state.hpp"
#include "qmirror/states.hpp"

namespace {

qm::MirrorState unit_gaussian_full(int n = 321) {
  qm::StateSpec spec;  // gaussian, sigma 1, centered
  return qm::gaussian_pure(qm::make_grid(-5.0, 5.0, n), spec);
}

}  // namespace

TEST_CASE("normalized gaussian peak density is 1/sqrt(pi)") {
  const qm::MirrorState s = unit_gaussian_full();
  const int mid = s.n() / 2;
  CHECK(s.grid.x(mid) == doctest::Approx(0.0));
  CHECK(s.diag_at(mid) == doctest::Approx(1.0 / std::sqrt(oracle::pi)).epsilon(1e-9));
  CHECK(qm::state_weight(s) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.weight == 1.0);
}

TEST_CASE("pure states have unit purity") {
  CHECK(qm::purity(unit_gaussian_full()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("purity requires the full representation") {
  qm::StateSpec spec;
  const qm::MirrorState s =
      qm::make_state(qm::make_grid(-5.0, 5.0, 161), spec, qm::Representation::diagonal);
  CHECK_THROWS_AS(qm::purity(s), qm::representation_error);
}

TEST_CASE("thermal purity follows the coherence-length law") {
  qm::StateSpec spec;
  spec.kind = qm::StateKind::thermal;
  spec.coherence_length = 0.25;
  const qm::MirrorState s = qm::thermal_gaussian(qm::make_grid(-5.0, 5.0, 481), spec);
  CHECK(qm::purity(s) == doctest::Approx(oracle::thermal_purity(1.0, 0.25)).epsilon(1e-4));
  CHECK(oracle::thermal_purity(1.0, 0.25) == doctest::Approx(0.1740777).epsilon(1e-5));
}

TEST_CASE("projecting to the diagonal keeps weight, history and density") {
  qm::MirrorState s = unit_gaussian_full(161);
  s.history = "LR";
  const qm::MirrorState d = qm::to_diagonal(s);
  CHECK_FALSE(d.is_full());
  CHECK(d.history == "LR");
  CHECK(d.weight == s.weight);
  REQUIRE(d.diag.size() == static_cast<std::size_t>(s.n()));
  for (int i = 0; i < s.n(); i += 7) CHECK(d.diag_at(i) == s.diag_at(i));
  CHECK(qm::to_diagonal(d).diag == d.diag);
}

TEST_CASE("state validation accepts healthy states") {
  CHECK_NOTHROW(qm::validate_state(unit_gaussian_full(161)));
  CHECK_NOTHROW(qm::validate_state(qm::to_diagonal(unit_gaussian_full(161))));
}

TEST_CASE("state validation rejects storage that does not match the grid") {
  qm::MirrorState s = qm::to_diagonal(unit_gaussian_full(161));
  s.diag.resize(80);
  CHECK_THROWS_AS(qm::validate_state(s), qm::config_error);
}

TEST_CASE("state validation rejects non-hermitian matrices") {
  qm::MirrorState s = unit_gaussian_full(81);
  s.full[1 * 81 + 0] += qm::complexd(0.0, 1e-3);
  CHECK_THROWS_AS(qm::validate_state(s), qm::config_error);
}

TEST_CASE("state validation rejects negative densities") {
  qm::MirrorState s = qm::to_diagonal(unit_gaussian_full(81));
  s.diag[40] = -1e-3;
  CHECK_THROWS_AS(qm::validate_state(s), qm::config_error);
}

TEST_CASE("state validation rejects weights that disagree with the trace") {
  qm::MirrorState s = qm::to_diagonal(unit_gaussian_full(81));
  s.weight = 0.9;
  CHECK_THROWS_AS(qm::validate_state(s), qm::config_error);
}
