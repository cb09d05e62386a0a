#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cqnp/error.hpp"
#include "cqnp/nonlinearity.hpp"
#include "cqnp/solver1d.hpp"
#include "oracles.hpp"

using namespace cqnp;

TEST_CASE("np_general examples") {
  CHECK(np_general({0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(np_general({1.0, 0.0}) == doctest::Approx(5.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-13));
  // s from oracle::width_bisection(1, 1), then the bracket form.
  CHECK(std::abs(np_general({1.0, 1.0}) - 2.090609795770734) < 1e-11);
  CHECK_THROWS_AS(np_general({-1.0, 0.0}), CollapseError);
  CHECK_THROWS_AS(np_general_radical({-0.5, -0.5}), CollapseError);
}

TEST_CASE("np_cubic examples") {
  CHECK(np_cubic(0.0) == 1.0);
  CHECK(np_cubic(1.0) == doctest::Approx(2.5 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(np_cubic(3.0) == doctest::Approx(2.75).epsilon(1e-15));
  CHECK_THROWS_AS(np_cubic(-1.0), CollapseError);
  CHECK_THROWS_AS(np_cubic(-2.0), CollapseError);
}

TEST_CASE("np_poly examples") {
  CHECK(np_poly({0.0, 0.0}) == 1.0);
  CHECK(np_poly({1.0, 1.0}) == 3.0);
  CHECK(np_poly({0.1, 0.1}) == doctest::Approx(1.2).epsilon(1e-15));
}

TEST_CASE("matched_g3 examples") {
  CHECK(matched_g3(1.0, 0.0) == 0.0);
  CHECK(matched_g3(1.0, 0.3) == doctest::Approx(-0.4).epsilon(1e-15));
  CHECK(matched_g3(-0.75, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(matched_g3(1.0, -0.1), InvalidArgument);
}

TEST_CASE("radical and bracket forms agree on random valid points") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int checked = 0;
  while (checked < 10000) {
    const DensityArgs args{u(rng), u(rng)};
    if (classify_region(args) != WidthStatus::Valid) continue;
    ++checked;
    CHECK(std::abs(np_general_radical(args) - np_general(args)) <= 1e-10);
  }
}

TEST_CASE("cubic reduction") {
  for (int i = 0; i <= 2000; ++i) {
    const double a3 = -0.9 + 10.9 * i / 2000.0;
    if (a3 >= 10.0) break;
    CHECK(std::abs(np_general({a3, 0.0}) - np_cubic(a3)) <= 1e-10);
  }
}

TEST_CASE("weak-coupling reduction is second order") {
  const double ratios[] = {1.0, -0.5, 2.0};
  for (double r : ratios) {
    double prev = 0.0;
    for (double eps : {0.08, 0.04, 0.02, 0.01}) {
      const DensityArgs args{eps, r * eps};
      const double err = std::abs(np_general(args) - np_poly(args));
      if (prev > 0.0) {
        CHECK(prev / err > 3.3);
        CHECK(prev / err < 4.7);
      }
      prev = err;
    }
  }
}

TEST_CASE("width cubic is the stationarity condition of the transverse energy") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.8, 2.0);
  for (int i = 0; i < 500; ++i) {
    const DensityArgs args{u(rng), u(rng)};
    const WidthSolution w = solve_width(args);
    if (!w.valid()) continue;
    const double h = 1e-6;
    const double deriv = (transverse_energy(args, w.s + h) - transverse_energy(args, w.s - h)) / (2.0 * h);
    CHECK(std::abs(deriv) < 1e-6);
  }
}

TEST_CASE("model energy density differentiates to the multiplier") {
  for (ModelKind kind : {ModelKind::NPGeneral, ModelKind::CQPolynomial}) {
    const NonlinearModel model(kind, 0.7, 0.4);
    for (double rho : {0.05, 0.3, 0.9}) {
      const double h = 1e-6;
      const double d = (model.energy_density(rho + h) - model.energy_density(rho - h)) / (2.0 * h);
      CHECK(d == doctest::Approx(model.multiplier(rho)).epsilon(1e-7));
    }
  }
  const NonlinearModel cubic(ModelKind::NPSECubic, 0.7, 0.0);
  const double h = 1e-6;
  CHECK((cubic.energy_density(0.3 + h) - cubic.energy_density(0.3 - h)) / (2.0 * h) ==
        doctest::Approx(cubic.multiplier(0.3)).epsilon(1e-7));
}

TEST_CASE("model construction") {
  CHECK_THROWS_AS(NonlinearModel(ModelKind::NPSECubic, 1.0, 0.5), InvalidArgument);
  CHECK_NOTHROW(NonlinearModel(ModelKind::NPSECubic, 1.0, 0.0));
  CHECK_THROWS_AS(NonlinearModel(ModelKind::CQPolynomial, INFINITY, 0.0), InvalidArgument);
  CHECK(to_string(ModelKind::NPGeneral) == "np");
  CHECK(to_string(ModelKind::NPSECubic) == "npse-cubic");
  CHECK(to_string(ModelKind::CQPolynomial) == "cq-poly");
}

TEST_CASE("energy_1d of the unit Gaussian without interactions") {
  const Grid1D g(20.0, 1025);
  const Wavefunction1D phi = harmonic_guess_1d(g, 1.0);
  const NonlinearModel free_model(ModelKind::NPGeneral, 0.0, 0.0);
  CHECK(energy_1d(phi, free_model, 0.0) == doctest::Approx(1.25).epsilon(1e-8));
}

TEST_CASE("energy_1d of the harmonic ground state") {
  const Grid1D g(20.0, 513);
  const Wavefunction1D phi = harmonic_guess_1d(g, 0.1);
  for (ModelKind kind : {ModelKind::NPGeneral, ModelKind::NPSECubic, ModelKind::CQPolynomial}) {
    CHECK(std::abs(energy_1d(phi, NonlinearModel(kind, 0.0, 0.0), 0.1) - 1.05) < 1e-8);
  }
}

TEST_CASE("energy_1d is invariant under a global phase") {
  const Grid1D g(20.0, 257);
  Wavefunction1D phi = harmonic_guess_1d(g, 0.1);
  const NonlinearModel model(ModelKind::NPGeneral, 1.0, 1.0);
  const double e0 = energy_1d(phi, model, 0.1);
  for (Complex& v : phi.values()) v *= std::polar(1.0, 0.83);
  CHECK(energy_1d(phi, model, 0.1) == doctest::Approx(e0).epsilon(1e-14));
}

TEST_CASE("energy_1d reports the collapse location") {
  const Grid1D g(10.0, 101);
  const Wavefunction1D phi = harmonic_guess_1d(g, 1.0);
  const NonlinearModel model(ModelKind::NPSECubic, -20.0, 0.0);
  try {
    energy_1d(phi, model, 0.0);
    FAIL("expected collapse");
  } catch (const CollapseError& e) {
    REQUIRE(e.location().has_value());
    CHECK(std::abs(*e.location()) < 3.0);
  }
}
