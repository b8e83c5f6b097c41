#include <doctest.h>
#include <set>

#include "levylab/ensemble.hpp"
#include "levylab/random.hpp"

using namespace levylab;

TEST_SUITE("path_engine") {
  TEST_CASE("substreams") {
    RandomStream a = RandomStream::derive(1, stream_tag("x"), 0);
    RandomStream b = RandomStream::derive(1, stream_tag("x"), 0);
    RandomStream c = RandomStream::derive(1, stream_tag("x"), 1);
    RandomStream d = RandomStream::derive(1, stream_tag("y"), 0);
    const auto first = a();
    CHECK(first == b());
    CHECK(first != c());
    CHECK(first != d());
  }

  TEST_CASE("uniform draws are open and roughly uniform") {
    RandomStream r(2);
    double s = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double u = r.uniform();
      CHECK_UNARY(u > 0.0 && u < 1.0);
      s += u;
    }
    CHECK(s / 1e5 == doctest::Approx(0.5).epsilon(0.01));
    double n1 = 0.0, n2 = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double z = r.normal();
      n1 += z;
      n2 += z * z;
    }
    CHECK(std::abs(n1 / 1e5) < 0.015);
    CHECK(n2 / 1e5 == doctest::Approx(1.0).epsilon(0.015));
  }
}
