#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "seqlab/sequence.hpp"

using namespace seqlab;

namespace {

std::vector<Int> to_std(const IntVector& v) {
  return std::vector<Int>(v.data(), v.data() + v.size());
}

bool agree(const Sequence& u, const Sequence& v, Index horizon) {
  for (Index n = 0; n < horizon; ++n) {
    if (u(n) != v(n)) return false;
  }
  return true;
}

// Small random sequences for property tests.
Sequence random_sequence(std::mt19937& rng, int depth = 2) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 4);
  std::uniform_int_distribution<int> small(-3, 3);
  switch (pick(rng)) {
    case 0: return constant(small(rng));
    case 1: return identity();
    case 2: return thue_morse();
    case 3: return chi_pow2();
    case 4: {
      std::uniform_int_distribution<int> len(1, 4);
      std::vector<Int> cycle;
      for (int i = len(rng); i > 0; --i) cycle.push_back(small(rng));
      return periodic(std::move(cycle));
    }
    case 5: return shift(random_sequence(rng, depth - 1), pick(rng));
    case 6: return add(random_sequence(rng, depth - 1),
                       random_sequence(rng, depth - 1));
    default: return scale(small(rng), random_sequence(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("eval of the builtin fixtures") {
  CHECK(eval(chi_pow2(), 4) == 1);
  CHECK(eval(chi_pow2(), 0) == 0);
  CHECK(eval(chi_pow2(), 1) == 1);
  CHECK(eval(thue_morse(), 5) == 0);
  CHECK(eval(chi_pow2(), 8) == 1);
  CHECK_THROWS_AS(eval(chi_pow2(), -1), std::invalid_argument);
}

TEST_CASE("prefix windows") {
  CHECK(to_std(prefix(chi_pow2(), 5).values) ==
        std::vector<Int>{0, 1, 1, 0, 1});
  CHECK(to_std(prefix(constant(3), 3).values) == std::vector<Int>{3, 3, 3});
  CHECK(to_std(prefix(identity(), 4).values) == std::vector<Int>{0, 1, 2, 3});
  CHECK(prefix(identity(), 4).origin == "identity");
  CHECK_THROWS_AS(prefix(identity(), 0), std::invalid_argument);
}

TEST_CASE("pointwise ring operations") {
  CHECK(combine(RingOp::add, chi_pow2(), chi_pow2())(2) == 2);
  CHECK(combine(RingOp::mul, thue_morse(), thue_morse())(3) == 0);
  CHECK(add(identity(), constant(1))(4) == 5);
  CHECK(scale(-1, constant(1))(0) == -1);
  CHECK(scale(0, identity())(7) == 0);
  CHECK(scale(2, chi_pow2())(8) == 2);
}

TEST_CASE("shift semantics") {
  CHECK(to_std(prefix(shift(chi_pow2(), 1), 4).values) ==
        std::vector<Int>{1, 1, 0, 1});
  CHECK(agree(shift(thue_morse(), 0), thue_morse(), 64));
  CHECK(shift(identity(), 3)(2) == 5);
  CHECK_THROWS_AS(shift(identity(), -1), std::invalid_argument);
}

TEST_CASE("sequence polynomials") {
  const SequencePolynomial x = SequencePolynomial::constants({0, 1});
  CHECK(agree(apply_poly(x, chi_pow2()), chi_pow2(), 256));

  const SequencePolynomial negx_plus1 = SequencePolynomial::constants({1, -1});
  CHECK(apply_poly(negx_plus1, thue_morse())(1) == 0);

  const SequencePolynomial xsq = SequencePolynomial::constants({0, 0, 1});
  CHECK(apply_poly(xsq, identity())(3) == 9);
}

TEST_CASE("builtin lookup") {
  BuiltinParams p;
  p.base = 2;
  CHECK(builtin("digit_sum", p)(7) == 3);
  CHECK(to_std(prefix(builtin("thue_morse"), 8).values) ==
        std::vector<Int>{0, 1, 1, 0, 1, 0, 0, 1});
  BuiltinParams per;
  per.cycle = {1, 1, -1, -1};
  CHECK(builtin("periodic", per)(6) == -1);
  CHECK_THROWS_AS(builtin("no_such_sequence"), DefinitionError);
  CHECK_THROWS_AS(digit_sum(1), DefinitionError);
  CHECK_THROWS_AS(periodic({}), DefinitionError);
}

TEST_CASE("builtins against independent definitions") {
  for (Index n = 0; n < 2048; ++n) {
    CAPTURE(n);
    REQUIRE(thue_morse()(n) == testing::thue_morse_recursive(n));
    REQUIRE(chi_pow2()(n) == testing::chi_pow2_enumerated(n));
    REQUIRE(digit_sum(2)(n) == testing::digit_sum_legendre(n, 2));
    REQUIRE(digit_sum(3)(n) == testing::digit_sum_legendre(n, 3));
    REQUIRE(digit_sum(10)(n) == testing::digit_sum_legendre(n, 10));
  }
}

TEST_CASE("ring laws hold pointwise on random sequences") {
  std::mt19937 rng(20240811);
  const Index horizon = 64;
  for (int round = 0; round < 40; ++round) {
    const Sequence u = random_sequence(rng);
    const Sequence v = random_sequence(rng);
    const Sequence w = random_sequence(rng);
    CHECK(agree(add(u, v), add(v, u), horizon));
    CHECK(agree(add(add(u, v), w), add(u, add(v, w)), horizon));
    CHECK(agree(mul(u, v), mul(v, u), horizon));
    CHECK(agree(mul(u, add(v, w)), add(mul(u, v), mul(u, w)), horizon));
  }
}

TEST_CASE("shift composition") {
  std::mt19937 rng(7);
  for (int round = 0; round < 20; ++round) {
    const Sequence u = random_sequence(rng);
    std::uniform_int_distribution<Index> d(0, 9);
    const Index a = d(rng), b = d(rng);
    CHECK(agree(shift(shift(u, a), b), shift(u, a + b), 64));
  }
}

TEST_CASE("degree-1 polynomial application equals ring composition") {
  std::mt19937 rng(99);
  for (int round = 0; round < 20; ++round) {
    const Sequence a = random_sequence(rng);
    const Sequence b = random_sequence(rng);
    const Sequence u = random_sequence(rng);
    const SequencePolynomial f({b, a});  // a x + b
    CHECK(agree(apply_poly(f, u), add(mul(a, u), b), 64));
  }
}

TEST_CASE("evaluation is referentially transparent and memoization invisible") {
  const Sequence u = add(thue_morse(), scale(3, chi_pow2()));
  const Sequence m = memoize(u);
  CHECK(u.descriptor() == m.descriptor());
  for (Index n = 0; n < 128; ++n) {
    CHECK(u(n) == m(n));
    CHECK(m(n) == m(n));
  }
}

TEST_CASE("concurrent evaluation of a memoized sequence") {
  const Sequence m = memoize(add(digit_sum(2), thue_morse()));
  std::vector<std::thread> workers;
  std::vector<int> bad(4, 0);
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      for (Index n = 0; n < 512; ++n) {
        if (m(n) != digit_sum(2)(n) + thue_morse()(n)) bad[t] = 1;
      }
    });
  }
  for (auto& w : workers) w.join();
  CHECK(bad == std::vector<int>(4, 0));
}
