#include "support.hpp"

#include <random>

#include "aispart/core.hpp"
#include "aispart/errors.hpp"
#include "aispart/rational.hpp"

using namespace aispart;
using testutil::w;

namespace {

Instance g8() { return Instance(w({39, 39, 11, 11, 11, 11, 11, 11})); }

// Naive recomputation used as an oracle.
Weight slow_makespan(const Instance& inst, const Assignment& x) {
  Weight a = 0, b = 0;
  for (std::size_t i = 0; i < inst.n(); ++i) (x[i] ? b : a) += inst.p(i);
  return std::max(a, b);
}

// Local optimality by trying every flip.
bool slow_local_optimum(const Instance& inst, const Assignment& x) {
  const Weight f = slow_makespan(inst, x);
  for (std::size_t i = 0; i < inst.n(); ++i) {
    Assignment y = x;
    y.flip(inst, i);
    if (slow_makespan(inst, y) < f) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("weight formatting and parsing") {
  CHECK(to_string(Weight{0}) == "0");
  CHECK(to_string(Weight{-42}) == "-42");
  const Weight big = Weight{1} << 100;
  CHECK(to_string(big) == "1267650600228229401496703205376");
  CHECK(parse_weight("1267650600228229401496703205376") == big);
  CHECK(parse_weight("-7") == Weight{-7});
  CHECK_FALSE(parse_weight(""));
  CHECK_FALSE(parse_weight("12a"));
  CHECK_FALSE(parse_weight("999999999999999999999999999999999999999999"));
  CHECK_THROWS_AS(checked_add(big << 26, big << 26, "sum"), ValidationError);
  CHECK_THROWS_AS(checked_mul(big, big, "product"), ValidationError);
  CHECK(gcd(12, 18) == 6);
}

TEST_CASE("rational arithmetic is exact") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK(Rational::parse("1/4") == Rational(1, 4));
  CHECK(Rational::parse("3") == Rational(3, 1));
  CHECK(Rational::parse("1.25") == Rational(5, 4));
  CHECK(Rational(1, 3) - Rational(1, 4) / Rational(4, 1) == Rational(13, 48));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(7, 3).to_string() == "7/3");
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational::parse("1/"));
  CHECK_THROWS(Rational::parse("abc"));
}

TEST_CASE("instance validation and ordering") {
  const Instance inst(w({1, 3, 2}));
  CHECK(inst.n() == 3);
  CHECK(inst.p(0) == 3);
  CHECK(inst.p(2) == 1);
  CHECK(inst.total() == 6);
  CHECK(inst.meta().resorted);
  CHECK_FALSE(Instance(w({3, 2, 1})).meta().resorted);
  CHECK(inst.lower_bound() == 3);
  CHECK(Instance(w({3, 2})).lower_bound() == 3);
  CHECK_THROWS_AS(Instance(w({3, 0, 1})), ValidationError);
  CHECK_THROWS_AS(Instance(w({})), ValidationError);
  const Weight huge = (Weight{1} << 125);
  CHECK_THROWS_AS(Instance({huge, huge, huge, huge}), ValidationError);
}

TEST_CASE("makespan examples") {
  const Instance inst = g8();
  CHECK(inst.total() == 144);
  CHECK(makespan(inst, Assignment::zeros(inst)) == 144);
  CHECK(makespan(inst, Assignment::from_string(inst, "01000111")) == 72);
  const auto both_large = Assignment::from_string(inst, "00111111");
  CHECK(makespan(inst, both_large) == 78);
  CHECK(both_large.discrepancy() == 12);
  CHECK_THROWS_AS(makespan(inst, Assignment::zeros(Instance(w({1, 1})))), ContractViolation);
  CHECK_THROWS_AS(Assignment::from_string(inst, "0102"), ContractViolation);
  CHECK_THROWS_AS(Assignment::from_bits(inst, {0, 1}), ContractViolation);
}

TEST_CASE("flip keeps cached loads exact") {
  const Instance inst = g8();
  Assignment x = Assignment::zeros(inst);
  flip_in_place(inst, x, 0);
  CHECK(x.load1() == 105);
  CHECK(x.load2() == 39);
  flip_in_place(inst, x, 0);
  CHECK(x == Assignment::zeros(inst));
  CHECK_THROWS_AS(flip_in_place(inst, x, 8), ContractViolation);

  Rng rng(11);
  std::uniform_int_distribution<long long> pdist(1, 1000);
  for (int round = 0; round < 200; ++round) {
    std::vector<Weight> ps(1 + rng() % 40);
    for (auto& p : ps) p = pdist(rng);
    const Instance r(ps);
    Assignment y = Assignment::random(r, rng);
    for (int k = 0; k < 50; ++k) {
      flip_in_place(r, y, uniform_index(rng, r.n()));
      REQUIRE(y.makespan() == slow_makespan(r, y));
      REQUIRE(y.load1() == recompute_load1(r, y.bits()));
      REQUIRE(y.load1() + y.load2() == r.total());
    }
  }
}

TEST_CASE("local optimality") {
  const Instance inst = g8();
  CHECK(is_local_optimum(inst, Assignment::from_string(inst, "01000111")));
  CHECK(is_local_optimum(inst, Assignment::from_string(inst, "00111111")));
  // fuller machine holds small jobs, discrepancy 144 - 2*11 = 122 > 22
  CHECK_FALSE(is_local_optimum(inst, Assignment::from_string(inst, "00000001")));
  CHECK_FALSE(is_local_optimum(inst, Assignment::zeros(inst)));

  Rng rng(5);
  std::uniform_int_distribution<long long> pdist(1, 30);
  for (int round = 0; round < 2000; ++round) {
    std::vector<Weight> ps(1 + rng() % 12);
    for (auto& p : ps) p = pdist(rng);
    const Instance r(ps);
    const Assignment y = Assignment::random(r, rng);
    REQUIRE(is_local_optimum(r, y) == slow_local_optimum(r, y));
  }
}

TEST_CASE("complement symmetry") {
  const Instance inst = g8();
  const Assignment z = Assignment::zeros(inst);
  const Assignment c = complement(z);
  CHECK(c.to_string() == "11111111");
  CHECK(c.makespan() == 144);
  CHECK(complement(c) == z);
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const Assignment y = Assignment::random(inst, rng);
    CHECK(complement(y).makespan() == y.makespan());
  }
}

TEST_CASE("random assignments are unbiased per bit") {
  const Instance inst(std::vector<Weight>(200, 1));
  Rng rng(99);
  std::size_t ones = 0;
  for (int k = 0; k < 500; ++k) ones += Assignment::random(inst, rng).ones();
  const double frac = static_cast<double>(ones) / (200.0 * 500.0);
  CHECK(frac == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("evaluation counter ledger") {
  const Instance inst = g8();
  std::vector<std::pair<std::uint64_t, Weight>> seen;
  EvaluationCounter counter(3, Weight{72}, [&](std::uint64_t e, Weight f) { seen.emplace_back(e, f); });
  CHECK_FALSE(counter.has_best());
  counter.evaluate(Assignment::zeros(inst));
  CHECK(counter.best() == 144);
  CHECK_FALSE(counter.should_stop());
  counter.evaluate(Assignment::from_string(inst, "00111111"));
  CHECK(counter.best() == 78);
  CHECK(counter.best_assignment().to_string() == "00111111");
  counter.evaluate(Assignment::from_string(inst, "01000111"));
  CHECK(counter.used() == 3);
  CHECK(counter.target_reached());
  CHECK(counter.exhausted());
  REQUIRE(seen.size() == 3);
  CHECK(seen[0].first == 1);
  CHECK(seen[2].second == 72);
}

TEST_CASE("derived seeds differ across indices and masters") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}
