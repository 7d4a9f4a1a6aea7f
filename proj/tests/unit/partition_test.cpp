#include <doctest.h>

#include <cmath>

#include "alpha_luroth/partition.hpp"
#include "alpha_luroth/partition_config.hpp"

using namespace alpha_luroth;

TEST_CASE("Luroth values") {
  const Partition p(generator::Luroth{});
  for (Index n = 1; n <= 50; ++n) {
    CHECK(p.t_exact(n) == Rational(1, n));
    CHECK(p.t(n) == 1.0 / static_cast<double>(n));
    CHECK(p.rho(n) == doctest::Approx(static_cast<double>(n) / (n + 1)));
  }
  CHECK(p.is_luroth());
  CHECK(p.has_exact_values());
  CHECK(p.t_exact(100000) == Rational(1, 100000));
}

TEST_CASE("geometric and dyadic tables") {
  const Partition dy(generator::Dyadic{});
  CHECK(dy.t(11) == std::ldexp(1.0, -10));
  CHECK(dy.a_exact(3) == Rational(1, 8));
  const Partition geo(generator::Geometric{Rational(2, 5)});
  CHECK(geo.t_exact(4) == Rational(8, 125));
  CHECK(geo.rho(7) == doctest::Approx(0.4));
  CHECK(geo.t(geo.max_index() + 1) >= std::numeric_limits<double>::min());
  REQUIRE(geo.geometric_tail().has_value());
}

TEST_CASE("two-periodic ratios alternate") {
  const Partition p(generator::TwoPeriodic{Rational(1, 3), Rational(21, 40)});
  CHECK(p.t_exact(2) == Rational(21, 40));
  CHECK(p.t_exact(3) == Rational(1, 3));
  CHECK(p.t_exact(4) == Rational(7, 40));
  CHECK(p.rho(1) == doctest::Approx(21.0 / 40.0));
  CHECK(p.rho(2) == doctest::Approx(40.0 / 63.0));
  const TailStats s = p.tail_stats(5, 100);
  CHECK(s.certified);
  CHECK(s.s_k == doctest::Approx(40.0 / 63.0));
  CHECK(s.m_k == doctest::Approx(21.0 / 40.0));
}

TEST_CASE("table generator with geometric tail") {
  const Partition p(generator::Table{{1.0, 0.5, 0.3}, 0.25});
  CHECK(p.t(3) == 0.3);
  CHECK(p.t(4) == doctest::Approx(0.075));
  CHECK(p.t(6) == doctest::Approx(0.3 / 64));
  const TailStats s = p.tail_stats(4, 10);
  CHECK(s.certified);
  CHECK(s.sup_bound() == doctest::Approx(0.25));
}

TEST_CASE("closed form generator is sampled only") {
  const Partition p(generator::ClosedForm{[](Index n) { return 1.0 / (static_cast<double>(n) * n); }, 10000, "inv_sq"});
  CHECK_FALSE(p.has_exact_values());
  CHECK(p.t(3) == 1.0 / 9.0);
  const TailStats s = p.tail_stats(2, 500);
  CHECK_FALSE(s.certified);
  CHECK(s.sup_bound() == 1.0);
  CHECK(s.inf_bound() == 0.0);
}

TEST_CASE("Luroth tail stats") {
  const Partition p(generator::Luroth{});
  const TailStats s = p.tail_stats(10, 1000);
  CHECK(s.inf_certified);
  CHECK_FALSE(s.sup_certified);
  CHECK(s.m_k == doctest::Approx(11.0 / 12.0));
  CHECK(s.sup_bound() == 1.0);
  CHECK_THROWS_AS(p.tail_stats(10, 10), std::invalid_argument);
}

TEST_CASE("digit_of uses half-open cells") {
  const Partition lu(generator::Luroth{});
  CHECK(lu.digit_of(1.0) == 1);
  CHECK(lu.digit_of(0.5) == 2);
  CHECK(lu.digit_of(0.5000001) == 1);
  CHECK(lu.digit_of(0.0) == kInfiniteDigit);
  CHECK(lu.digit_of(1e-7) == 10000000);
  const Partition geo(generator::Geometric{Rational(2, 5)});
  for (Index n = 1; n < 200; ++n) {
    CHECK(geo.digit_of(geo.t(n)) == n);
    CHECK(geo.digit_of(std::nextafter(geo.t(n + 1), 1.0)) == n);
  }
}

TEST_CASE("invalid generators are rejected") {
  CHECK_THROWS_AS(Partition(generator::Geometric{Rational(1)}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(generator::Geometric{Rational(0)}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(generator::TwoPeriodic{Rational(1, 2), Rational(1, 3)}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(generator::Table{{0.9, 0.5}, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(generator::Table{{1.0, 0.5, 0.6}, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(generator::Table{{1.0, 0.5}, 1.5}), std::invalid_argument);
}

TEST_CASE("partition specs and JSON config") {
  CHECK(parse_partition("luroth").is_luroth());
  CHECK(parse_partition("geometric:2/5").t_exact(3) == Rational(4, 25));
  CHECK(parse_partition("geometric:0.4").t_exact(3) == Rational(4, 25));
  CHECK(parse_partition("two-periodic:1/2,3/5").t_exact(2) == Rational(3, 5));
  CHECK(parse_partition(R"({"generator":{"geometric":0.3}})").t_exact(2) == Rational(3, 10));
  CHECK(parse_partition(R"({"generator":{"two_periodic":{"ratio":"1/4","even_factor":"1/3"}}})").t_exact(3) ==
        Rational(1, 4));
  CHECK(parse_partition(R"({"generator":{"table":[1,0.6,0.2]},"tail_ratio":0.5})").t(4) == doctest::Approx(0.1));
  CHECK_THROWS_AS(parse_partition("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(parse_partition("{bad json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_partition(R"({"generator":"cubic"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_partition("two-periodic:1/2"), std::invalid_argument);
}
