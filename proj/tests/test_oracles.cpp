#include "spie/oracles.hpp"

#include "doctest.h"
#include "spie/errors.hpp"

using namespace spie;
using doctest::Approx;

TEST_CASE("sphere capacitance") {
  CHECK(oracles::sphere_capacitance(50e-6) == Approx(5.5633e-15).epsilon(1e-4));
  CHECK(oracles::sphere_capacitance(1.0) == Approx(1.11265e-10).epsilon(1e-4));
  CHECK_THROWS_AS(oracles::sphere_capacitance(0.0), InputError);
  CHECK_THROWS_AS(oracles::sphere_capacitance(-1.0), InputError);
}

TEST_CASE("concentric capacitance") {
  CHECK(oracles::concentric_capacitance(1e-3, 1.425e-3) ==
        Approx(0.3730e-12).epsilon(1e-3));
  // b -> infinity limit approaches the isolated sphere
  CHECK(oracles::concentric_capacitance(1e-3, 1e6) ==
        Approx(oracles::sphere_capacitance(1e-3)).epsilon(1e-6));
  CHECK_THROWS_AS(oracles::concentric_capacitance(1e-3, 1e-3), InputError);
  CHECK_THROWS_AS(oracles::concentric_capacitance(2e-3, 1e-3), InputError);
}

TEST_CASE("pouillet resistance") {
  CHECK(oracles::pouillet_resistance(0.4e-3, 5.8e7, 4e-10) ==
        Approx(17.2414e-3).epsilon(1e-4));
  CHECK(oracles::pouillet_resistance(0.5e-3, 5.8e7, 5e-9) ==
        Approx(1.7241e-3).epsilon(1e-4));
  CHECK(oracles::pouillet_resistance(0.4e-3, 10.0, 400e-12) ==
        Approx(100e3).epsilon(1e-9));
  CHECK_THROWS_AS(oracles::pouillet_resistance(0.0, 1.0, 1.0), InputError);
  CHECK_THROWS_AS(oracles::pouillet_resistance(1.0, -5.0, 1.0), InputError);
}

TEST_CASE("parallel plate capacitance") {
  CHECK(oracles::parallel_plate_capacitance(0.25e-6, 0.05e-3) ==
        Approx(0.0443e-12).epsilon(1e-3));
  const double c1 = oracles::parallel_plate_capacitance(1e-6, 1e-4);
  const double c2 = oracles::parallel_plate_capacitance(1e-6, 2e-4);
  CHECK(c1 == Approx(2.0 * c2).epsilon(1e-12));
  CHECK_THROWS_AS(oracles::parallel_plate_capacitance(1e-6, 0.0), InputError);
}

TEST_CASE("uniform geometric scaling laws") {
  // C scales with length, R with 1/length.
  for (double s : {0.5, 2.0, 130.0}) {
    CHECK(oracles::sphere_capacitance(s * 1e-3) ==
          Approx(s * oracles::sphere_capacitance(1e-3)).epsilon(1e-12));
    CHECK(oracles::concentric_capacitance(s * 1e-3, s * 2e-3) ==
          Approx(s * oracles::concentric_capacitance(1e-3, 2e-3)).epsilon(1e-12));
    CHECK(oracles::pouillet_resistance(s * 1e-3, 7.0, s * s * 1e-8) ==
          Approx(oracles::pouillet_resistance(1e-3, 7.0, 1e-8) / s).epsilon(1e-12));
  }
}
