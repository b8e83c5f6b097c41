#include <cmath>
#include <doctest.h>

#include "levylab/levy_model.hpp"

using namespace levylab;

namespace {
LevyLaw jd1() { return jump_diffusion_law(-2.0, 1.0, {{1.0, 3.0, +1}}); }
LevyLaw bm(double d) { return brownian_law(d, 1.0); }

ModelErrorKind kind_of(const LevyLaw& law) {
  try {
    validate_model(law);
  } catch (const ModelError& e) {
    return e.kind();
  }
  FAIL("model unexpectedly valid");
  return ModelErrorKind::domain;
}
}  // namespace

TEST_SUITE("levy_model") {
  TEST_CASE("cumulant closed forms") {
    CHECK(cumulant(bm(-1), 0.0) == doctest::Approx(0.0));
    CHECK(cumulant(bm(-1), 1.0) == doctest::Approx(-0.5));
    CHECK(cumulant(jd1(), 2.0) == doctest::Approx(0.0).epsilon(1e-12));
    // -2s + s^2/2 + s/(3-s) at s = 1
    CHECK(cumulant(jd1(), 1.0) == doctest::Approx(-2.0 + 0.5 + 0.5));
    CHECK(cumulant_derivative(jd1(), 2.0) == doctest::Approx(3.0));
  }

  TEST_CASE("cumulant is convex on its domain") {
    const auto law = jd1();
    for (double s = -2.0; s < 2.9; s += 0.1) {
      const double mid = cumulant(law, s + 0.05);
      CHECK(mid <= 0.5 * (cumulant(law, s) + cumulant(law, s + 0.1)) + 1e-12);
    }
  }

  TEST_CASE("Cramer exponent") {
    CHECK(validate_model(bm(-1)).theta() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(validate_model(bm(-0.5)).theta() == doctest::Approx(1.0).epsilon(1e-12));
    const LevyModel m = validate_model(jd1());
    CHECK(m.theta() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m.tilted_mean() == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(m.mean() == doctest::Approx(-5.0 / 3.0));

    // brute-force scan for the positive root as an independent oracle
    double root = 0.0;
    for (double s = 1e-3; s < 2.999; s += 1e-4)
      if (cumulant(jd1(), s) < 0.0 && cumulant(jd1(), s + 1e-4) >= 0.0) root = s;
    CHECK(m.theta() == doctest::Approx(root).epsilon(1e-3));
  }

  TEST_CASE("Esscher tilt") {
    const LevyLaw tb = esscher_tilt(validate_model(bm(-1)));
    CHECK(tb.drift == doctest::Approx(1.0));
    CHECK(tb.sigma == doctest::Approx(1.0));
    CHECK(tb.jumps.empty());

    const LevyModel m = validate_model(jd1());
    const LevyLaw t = esscher_tilt(m);
    CHECK(t.drift == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(t.jumps.size() == 1);
    CHECK(t.jumps[0].rate == doctest::Approx(3.0));
    CHECK(t.jumps[0].beta == doctest::Approx(1.0));
    CHECK(t.jumps[0].sign == 1);
    // psi~(s) = psi(s + theta)
    for (double s : {-1.5, -0.7, 0.0, 0.4})
      CHECK(cumulant(t, s) == doctest::Approx(cumulant(jd1(), s + m.theta())).epsilon(1e-10));
    CHECK(cumulant(t, -m.theta()) == doctest::Approx(0.0));
  }

  TEST_CASE("dual model") {
    const LevyModel db = dual_model(validate_model(bm(-1)));
    CHECK(db.law().drift == doctest::Approx(-1.0));
    CHECK(db.theta() == doctest::Approx(2.0));
    const LevyModel dj = dual_model(validate_model(jd1()));
    CHECK(dj.law().drift == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(dj.law().jumps.size() == 1);
    CHECK(dj.law().jumps[0].rate == doctest::Approx(3.0));
    CHECK(dj.law().jumps[0].beta == doctest::Approx(1.0));
    CHECK(dj.law().jumps[0].sign == -1);
    CHECK(dj.theta() == doctest::Approx(2.0).epsilon(1e-10));
  }

  TEST_CASE("Laplace exponent of the dual") {
    const LevyModel d = dual_model(validate_model(bm(-1)));
    CHECK(phi_exponent(d, 0.0) == doctest::Approx(2.0));
    CHECK(phi_exponent(d, 1.0) == doctest::Approx(1.0 + std::sqrt(3.0)).epsilon(1e-10));
    CHECK(d.theta() / phi_exponent(d, 1.0) == doctest::Approx(0.732051).epsilon(1e-6));
    // for a spectrally negative jump model, psi(Phi(a)) = a
    const LevyModel dj = dual_model(validate_model(jd1()));
    for (double a : {0.3, 1.0, 5.0}) CHECK(cumulant(dj.law(), phi_exponent(dj, a)) == doctest::Approx(a));
  }

  TEST_CASE("validation failures") {
    CHECK(kind_of(bm(1.0)) == ModelErrorKind::no_downward_drift);
    CHECK(kind_of(brownian_law(-1.0, 0.0)) == ModelErrorKind::non_regular);
    CHECK(kind_of(jump_diffusion_law(-1.0, 1.0, {{-1.0, 1.0, 1}})) == ModelErrorKind::invalid_jump);
    CHECK(kind_of(jump_diffusion_law(-1.0, 1.0, {{1.0, 0.0, 1}})) == ModelErrorKind::invalid_jump);
    CHECK(kind_of(jump_diffusion_law(-1.0, 1.0, {{1.0, 1.0, 2}})) == ModelErrorKind::invalid_jump);
    // positive jumps with beta = 1.5 and a weak drift: psi has its pole before a root
    CHECK_THROWS_AS(validate_model(jump_diffusion_law(-0.1, 0.1, {{1.0, 1.5, 1}})), ModelError);
    // spectrally negative dual operations are rejected for two-sided jumps
    const LevyModel two = validate_model(jump_diffusion_law(-2.0, 1.0, {{1.0, 3.0, 1}, {1.0, 3.0, -1}}));
    CHECK_THROWS_AS(phi_exponent(two, 1.0), ModelError);
  }

  TEST_CASE("zero-rate jumps mean no jumps") {
    const LevyModel m = validate_model(jump_diffusion_law(-1.0, 1.0, {{0.0, 2.0, 1}}));
    CHECK(m.theta() == doctest::Approx(2.0));
    CHECK(m.law().total_jump_rate() == 0.0);
  }

  TEST_CASE("JSON round trip") {
    const LevyLaw law = jd1();
    CHECK(law_from_json(to_json(law)) == law);
    CHECK_THROWS(law_from_json(nlohmann::json::parse(R"({"sigma": 1})")));
  }
}
