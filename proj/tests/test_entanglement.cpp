#include <doctest.h>

#include <cmath>
#include <random>

#include "rpsim/entanglement.hpp"
#include "rpsim/errors.hpp"
#include "rpsim/evolve.hpp"
#include "rpsim/spin_space.hpp"

using namespace rpsim;

namespace {

Matrix random_density4(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix rho = a * a.adjoint();
  return rho / rho.trace().real();
}

Vector random_pure4(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector psi(4);
  for (int i = 0; i < 4; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
  return psi / psi.norm();
}

Trajectory synthetic_eof_trajectory(const std::vector<double>& eof) {
  Trajectory traj;
  traj.has_entanglement = true;
  traj.norm_valid_count = eof.size();
  for (std::size_t i = 0; i < eof.size(); ++i) {
    traj.times.push_back(static_cast<double>(i));
    traj.rho.push_back(Matrix::Identity(4, 4) / 4.0);
    TrajectoryPoint p;
    p.t = static_cast<double>(i);
    p.trace = 1.0;
    p.eof_norm = eof[i];
    traj.observables.push_back(p);
  }
  return traj;
}

}  // namespace

TEST_CASE("the singlet is maximally entangled") {
  const Matrix rho = singlet_state() * singlet_state().adjoint();
  CHECK(concurrence(rho) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a product state carries no entanglement") {
  Vector up_down = Vector::Zero(4);
  up_down(1) = 1.0;  // |+->
  const Matrix rho = up_down * up_down.adjoint();
  CHECK(concurrence(rho) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(concurrence_pure(up_down) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("the even S/T0 mixture is separable") {
  // Bell-diagonal state with largest weight 1/2: concurrence max(0, 2*1/2 - 1) = 0
  const Matrix rho = 0.5 * singlet_state() * singlet_state().adjoint() +
                     0.5 * triplet_zero_state() * triplet_zero_state().adjoint();
  CHECK(concurrence(rho) < 1e-12);
}

TEST_CASE("the closed-form state stays maximally entangled at all times") {
  for (double phase : {0.0, 0.3, 1.0, M_PI / 2, M_PI, 2.5, 5.9}) {
    const Vector psi = closed_form_two_spin(phase / 0.1, 0.1);
    CHECK(std::abs(concurrence_pure(psi) - 1.0) < 1e-10);
    CHECK(std::abs(concurrence(psi * psi.adjoint()) - 1.0) < 1e-10);
  }
}

TEST_CASE("concurrence validates its input") {
  CHECK_THROWS_AS(concurrence(Matrix::Identity(4, 4)), ValidationError);  // trace 4
  Matrix non_psd = Matrix::Zero(4, 4);
  non_psd.diagonal() << 1.5, -0.5, 0.0, 0.0;
  CHECK_THROWS_AS(concurrence(non_psd), ValidationError);
  CHECK_THROWS_AS(concurrence(Matrix::Identity(3, 3) / 3.0), ValidationError);
}

TEST_CASE("dual concurrence routes agree on random pure states") {
  std::mt19937 rng(101);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Vector psi = random_pure4(rng);
    worst = std::max(worst, std::abs(concurrence(psi * psi.adjoint()) - concurrence_pure(psi)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("concurrence and EoF stay inside [0,1] on random mixed states") {
  std::mt19937 rng(103);
  for (int i = 0; i < 10000; ++i) {
    const double c = concurrence(random_density4(rng));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0 + 1e-12);
    const double e = entanglement_of_formation(c);
    CHECK(e >= 0.0);
    CHECK(e <= 1.0 + 1e-12);
  }
}

TEST_CASE("entanglement of formation endpoints and midpoint") {
  CHECK(entanglement_of_formation(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entanglement_of_formation(0.0) == 0.0);
  // binary entropy of (1 + sqrt(3)/2)/2
  CHECK(entanglement_of_formation(0.5) == doctest::Approx(0.35457).epsilon(1.5e-3));
}

TEST_CASE("entanglement of formation is monotone and zero only at C = 0") {
  double prev = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double value = entanglement_of_formation(i / 1000.0);
    CHECK(value >= prev);
    CHECK(value > 0.0);
    prev = value;
  }
}

TEST_CASE("entanglement of formation rejects out-of-range concurrence") {
  CHECK_THROWS_AS(entanglement_of_formation(-0.1), ValidationError);
  CHECK_THROWS_AS(entanglement_of_formation(1.1), ValidationError);
  // values inside the 1e-9 guard band are clamped
  CHECK(entanglement_of_formation(1.0 + 1e-10) == doctest::Approx(1.0));
  CHECK(entanglement_of_formation(-1e-10) == 0.0);
}

TEST_CASE("entanglement lifetime: sustained crossing semantics") {
  const auto never = synthetic_eof_trajectory({1.0, 0.9, 0.8, 0.7});
  CHECK(!entanglement_lifetime(never, 0.5).has_value());

  const auto sustained = synthetic_eof_trajectory({1.0, 0.6, 0.4, 0.3, 0.2});
  const auto t = entanglement_lifetime(sustained, 0.5);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(2.0));

  // a dip that recovers does not count; the later crossing does
  const auto dip = synthetic_eof_trajectory({1.0, 0.2, 0.8, 0.3, 0.1});
  const auto t2 = entanglement_lifetime(dip, 0.5);
  REQUIRE(t2.has_value());
  CHECK(*t2 == doctest::Approx(3.0));

  // below threshold from the start
  const auto instant = synthetic_eof_trajectory({0.001, 0.0005});
  CHECK(*entanglement_lifetime(instant, 0.5) == doctest::Approx(0.0));

  // ends above threshold after dipping: never sustained
  const auto recovers = synthetic_eof_trajectory({1.0, 0.2, 0.8});
  CHECK(!entanglement_lifetime(recovers, 0.5).has_value());
}

TEST_CASE("entanglement lifetime input validation") {
  const auto traj = synthetic_eof_trajectory({1.0, 0.5});
  CHECK_THROWS_AS(entanglement_lifetime(traj, 0.0), ValidationError);
  CHECK_THROWS_AS(entanglement_lifetime(traj, 1.0), ValidationError);
  Trajectory bare;
  bare.has_entanglement = false;
  CHECK_THROWS_AS(entanglement_lifetime(bare, 0.5), ValidationError);
}
