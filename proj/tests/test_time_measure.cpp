#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "heatlab/time_set.hpp"

using namespace heatlab;

TEST_CASE("measure sums interval lengths") {
  CHECK(measure(TimeSet(1.0, {{0.0, 1.0}})) == 1.0);
  CHECK(measure(TimeSet(1.0, {{0.0, 0.2}, {0.5, 1.0}})) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(measure(TimeSet(1.0, {{0.3, 0.3 + 1e-6}})) == doctest::Approx(1e-6).epsilon(1e-9));
}

TEST_CASE("intersect_measure clips each component") {
  const TimeSet full(1.0, {{0.0, 1.0}});
  CHECK(intersect_measure(full, 0.25, 0.5) == doctest::Approx(0.25).epsilon(1e-15));

  const TimeSet split(1.0, {{0.0, 0.2}, {0.5, 1.0}});
  // (0.1,0.2) contributes 0.1 and (0.5,0.6) contributes 0.1.
  CHECK(intersect_measure(split, 0.1, 0.6) == doctest::Approx(0.2).epsilon(1e-15));

  const TimeSet late(1.0, {{0.5, 1.0}});
  CHECK(intersect_measure(late, 0.0, 0.5) == 0.0);
}

TEST_CASE("measures are additive over disjoint splits") {
  const TimeSet E(2.0, {{0.1, 0.4}, {0.7, 1.1}, {1.5, 1.9}});
  const double whole = intersect_measure(E, 0.0, 2.0);
  CHECK(whole == doctest::Approx(measure(E)).epsilon(1e-15));
  for (double cut : {0.05, 0.4, 0.75, 1.3, 1.7}) {
    const double left = intersect_measure(E, 0.0, cut);
    const double right = intersect_measure(E, cut, 2.0);
    CHECK(left + right == doctest::Approx(whole).epsilon(1e-14));
  }
}

TEST_CASE("active steps follow the midpoint rule") {
  const TimeSet full(1.0, {{0.0, 1.0}});
  for (int K : {1, 4, 7, 128}) {
    const auto mask = active_step_mask(full, K);
    REQUIRE(static_cast<int>(mask.size()) == K);
    for (auto s : mask) CHECK(s == 1);
  }

  const TimeSet half(1.0, {{0.0, 0.5}});
  const auto mask = active_step_mask(half, 4);
  // Midpoints 0.125, 0.375, 0.625, 0.875 against (0, 0.5).
  CHECK(mask[0] == 1);
  CHECK(mask[1] == 1);
  CHECK(mask[2] == 0);
  CHECK(mask[3] == 0);

  // An interval that overlaps step 0 of K=2 but misses its midpoint 0.25.
  const TimeSet sliver(1.0, {{0.3, 0.45}});
  const auto missed = active_step_mask(sliver, 2);
  CHECK(missed[0] == 0);
  CHECK(missed[1] == 0);
}

TEST_CASE("density anchor picks the longest component, earliest on ties") {
  const auto full = choose_density_anchor(TimeSet(1.0, {{0.0, 1.0}}));
  CHECK(full.first == 0.0);
  CHECK(full.second == doctest::Approx(0.9).epsilon(1e-15));

  const auto split = choose_density_anchor(TimeSet(1.0, {{0.0, 0.2}, {0.5, 1.0}}));
  CHECK(split.first == 0.5);
  CHECK(split.second == doctest::Approx(0.95).epsilon(1e-15));

  // Dyadic endpoints so both lengths are exactly 0.25 in floating point.
  const auto tie = choose_density_anchor(TimeSet(1.0, {{0.125, 0.375}, {0.5, 0.75}}));
  CHECK(tie.first == 0.125);
  CHECK(tie.second == doctest::Approx(0.125 + 0.9 * 0.25).epsilon(1e-15));
}

TEST_CASE("telescope terms and gaps on the full interval") {
  const TimeSet E(1.0, {{0.0, 1.0}});
  const TelescopeSequence seq = build_telescope(E, 0.0, 0.5, 2.0, 3);
  REQUIRE(seq.terms.size() == 3);
  CHECK(seq.terms[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(seq.terms[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(seq.terms[2] == doctest::Approx(0.125).epsilon(1e-15));
  REQUIRE(seq.gaps.size() == 2);
  CHECK(seq.gaps[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(seq.gaps[1] == doctest::Approx(0.125).epsilon(1e-15));
  REQUIRE(seq.intersections.size() == 2);
  CHECK(seq.intersections[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(seq.intersections[1] == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(seq.all_pass);
}

TEST_CASE("telescope passes when the anchor segment lies inside E") {
  const TimeSet E(1.0, {{0.0, 0.2}, {0.5, 1.0}});
  const TelescopeSequence seq = build_telescope(E, 0.5, 0.9, 2.0, 4);
  for (double t : seq.terms) {
    CHECK(t >= 0.5);
    CHECK(t <= 0.9);
  }
  CHECK(seq.all_pass);
  for (auto ok : seq.condition) CHECK(ok == 1);
}

TEST_CASE("telescope reports violations for a disjoint anchor") {
  const TimeSet E(1.0, {{0.5, 1.0}});
  const TelescopeSequence seq = build_telescope(E, 0.0, 0.4, 2.0, 4);
  CHECK_FALSE(seq.all_pass);
  for (std::size_t i = 0; i < seq.condition.size(); ++i) {
    CHECK(seq.intersections[i] == 0.0);
    CHECK(seq.condition[i] == 0);
  }
}

TEST_CASE("gap sizes match the geometric closed form") {
  const TimeSet E(1.0, {{0.0, 1.0}});
  for (double kappa : {1.2, std::sqrt(1.5), 2.0, 3.0}) {
    const double l = 0.05;
    const double l1 = 0.85;
    const TelescopeSequence seq = build_telescope(E, l, l1, kappa, 12);
    for (std::size_t i = 0; i < seq.gaps.size(); ++i) {
      const double m = static_cast<double>(i) + 1.0;
      const double exact = (kappa - 1.0) * (l1 - l) / std::pow(kappa, m);
      CHECK(seq.gaps[i] == doctest::Approx(exact).epsilon(1e-9));
    }
    CHECK(seq.all_pass);  // (l, l1) inside E, so the condition holds for any kappa > 1
  }
}

TEST_CASE("time set construction rejects malformed interval unions") {
  CHECK_THROWS_AS(TimeSet(1.0, {}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSet(1.0, {{0.4, 0.4}}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSet(1.0, {{0.5, 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSet(1.0, {{-0.1, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSet(1.0, {{0.0, 0.6}, {0.5, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid(1.0, 0), std::invalid_argument);
}

TEST_CASE("telescope construction rejects bad anchors") {
  const TimeSet E(1.0, {{0.0, 1.0}});
  CHECK_THROWS_AS(build_telescope(E, 0.5, 0.4, 2.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_telescope(E, 0.0, 0.5, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_telescope(E, 0.0, 0.5, 2.0, 0), std::invalid_argument);
}
