#include <doctest.h>

#include <cmath>

#include "almostconv/corpus.hpp"
#include "almostconv/parallel.hpp"
#include "almostconv/seminorms.hpp"
#include "oracles.hpp"

using namespace almostconv;

namespace {

SequenceSample from_rows(const oracle::Rows& rows, double bound, NormKind kind = NormKind::l2) {
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return SequenceSample(std::move(flat), rows.front().size(), bound, kind);
}

oracle::Rows to_rows(const SequenceSample& x) {
  oracle::Rows rows;
  for (std::size_t k = 1; k <= x.size(); ++k) rows.emplace_back(x[k].begin(), x[k].end());
  return rows;
}

int oracle_kind(NormKind k) { return k == NormKind::l1 ? 1 : k == NormKind::l2 ? 2 : 0; }

SequenceSample random_sequence(std::uint64_t seed, std::size_t m) {
  SplitMix64 rng(seed);
  return generate_sequence(random_spec(rng, m)).sample;
}

}  // namespace

TEST_CASE("c_sliding examples") {
  const auto rows = oracle::alternating(30);
  const auto x = from_rows(rows, 1.0);
  // every length-2 window holds one 1 and one 0
  CHECK(oracle::window_sup(rows, 2, {0.0}, 2) == 0.5);
  CHECK(c_sliding(x, 2) == 0.5);
  CHECK(c_sliding(x, 1) == sup_norm(x));
  const Vector v{2.0, -1.0, 0.5};
  const auto c = constant_sequence(v, 50, NormKind::l1);
  for (std::size_t n : {1u, 7u, 25u, 50u}) CHECK(c_sliding(c, n) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK_THROWS_AS(c_sliding(x, 0), std::invalid_argument);
  CHECK_THROWS_AS(c_sliding(x, 31), std::invalid_argument);
}

TEST_CASE("c_block examples") {
  const auto rows = oracle::alternating(20);
  const auto x = from_rows(rows, 1.0);
  CHECK(oracle::window_sup(rows, 2, {0.0}, 2, true) == 0.5);
  CHECK(c_block(x, 2) == 0.5);
  // odd block length: blocks start at jn and alternate between (k+1)/n and k/n
  CHECK(c_block(x, 3) == doctest::Approx(oracle::window_sup(rows, 3, {0.0}, 2, true)));
  const auto c = constant_sequence(Vector{-4.0}, 33, NormKind::l2);
  CHECK(c_block(c, 5) == 4.0);
  CHECK_THROWS_AS(c_block(x, 11), std::invalid_argument);  // 2n - 1 > M
  CHECK_NOTHROW(c_block(x, 10));
}

TEST_CASE("curves agree with the brute-force oracle") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto x = random_sequence(seed, 120);
    const auto rows = to_rows(x);
    const std::vector<double> zero(x.dim(), 0.0);
    const auto s = sliding_curve(x, 60);
    const auto b = block_curve(x, 60);
    for (std::size_t n = 1; n <= 60; ++n) {
      CHECK(s.at(n) == doctest::Approx(oracle::window_sup(rows, n, zero, oracle_kind(x.norm_kind()))).epsilon(1e-12));
      CHECK(b.at(n) == doctest::Approx(oracle::window_sup(rows, n, zero, oracle_kind(x.norm_kind()), true)).epsilon(1e-12));
    }
  }
}

TEST_CASE("estimate_p examples") {
  SUBCASE("shift difference is null up to 2||x||/N") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const auto x = random_sequence(seed, 400);
      const auto y = shift_difference(x);
      for (std::size_t n : {8u, 64u, 199u}) {
        CHECK(estimate_p(y, n).c_at_N <= 2.0 * sup_norm(x) / double(n) + 1e-9 * y.bound());
      }
    }
  }
  SUBCASE("alternating minus one half") {
    const auto x = subtract_constant(from_rows(oracle::alternating(64), 1.0), Vector{0.5});
    for (std::size_t big_n = 2; big_n <= 32; ++big_n) {
      const auto est = estimate_p(x, big_n);
      CHECK(est.running_min == 0.0);
      CHECK(est.running_min <= est.c_at_N);
      CHECK(est.c_at_N == (big_n % 2 == 0 ? 0.0 : 0.5 / double(big_n)));
    }
  }
  SUBCASE("constant") {
    const auto c = constant_sequence(Vector{3.0, 4.0}, 100, NormKind::l2);
    const auto est = estimate_p(c, 50);
    CHECK(est.c_at_N == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(est.running_min == doctest::Approx(5.0).epsilon(1e-15));
  }
  const auto x = from_rows(oracle::alternating(10), 1.0);
  CHECK_THROWS_AS(estimate_p(x, 6), std::invalid_argument);
  CHECK_THROWS_AS(estimate_p(x, 0), std::invalid_argument);
  CHECK_NOTHROW(estimate_p(x, 5));
}

TEST_CASE("estimate_q examples") {
  const auto x = subtract_constant(from_rows(oracle::alternating(200), 1.0), Vector{0.5});
  const auto q = estimate_q(x, 100);
  for (std::size_t n = 1; n <= 100; ++n) {
    if (n % 2 == 0) CHECK(q.curve.at(n) == 0.0);
    else CHECK(q.curve.at(n) <= 0.5 / double(n));
  }
  CHECK(q.tail_max <= 0.5 / 51.0);
  CHECK(q.tail_max <= *std::max_element(q.curve.values.begin(), q.curve.values.end()));

  const auto c = constant_sequence(Vector{-0.25}, 40, NormKind::linf);
  CHECK(estimate_q(c, 20).tail_max == 0.25);
}

TEST_CASE("block curve never exceeds the sliding curve") {
  for (std::uint64_t seed = 20; seed < 40; ++seed) {
    const auto x = random_sequence(seed, 500);
    const auto p = estimate_p(x, 250);
    const auto q = estimate_q(x, 250);
    for (std::size_t n = 1; n <= 250; ++n) CHECK(q.curve.at(n) <= p.curve.at(n));
  }
}

TEST_CASE("fekete audit") {
  SUBCASE("constant is the equality case") {
    const auto c = constant_sequence(Vector{1.0, 2.0}, 80, NormKind::l2);
    const auto audit = fekete_audit(sliding_curve(c, 40));
    CHECK(audit.clean());
    CHECK(audit.max_slack == 0.0);
    CHECK(audit.pairs_checked == 400);
  }
  SUBCASE("alternating and random samples") {
    CHECK(fekete_audit(sliding_curve(from_rows(oracle::alternating(300), 1.0), 150)).clean());
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
      const auto x = random_sequence(seed, 600);
      CHECK(fekete_audit(estimate_p(x, 300).curve).clean());
    }
  }
  SUBCASE("corrupted curve is flagged") {
    auto curve = sliding_curve(from_rows(oracle::alternating(40), 1.0), 20);
    curve.values[9] = 0.9;  // c_10 far above c_5 + c_5
    const auto audit = fekete_audit(curve);
    REQUIRE_FALSE(audit.clean());
    bool found = false;
    for (const auto& v : audit.violations) {
      if (v.m == 5 && v.n == 5) {
        found = true;
        // c_5 of {1,0,1,0,...} is 3/5
        CHECK(v.slack == doctest::Approx(10 * 0.9 - 10 * 0.6).epsilon(1e-12));
      }
    }
    CHECK(found);
  }
  SUBCASE("block mode rejected") {
    const auto b = block_curve(from_rows(oracle::alternating(40), 1.0), 10);
    CHECK_THROWS_AS(fekete_audit(b), std::invalid_argument);
  }
}

TEST_CASE("seminorm properties at fixed n") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = random_sequence(rng.next(), 300);
    GeneratorSpec ys;
    ys.kind = GeneratorKind::random_bounded;
    ys.length = 300;
    ys.dim = x.dim();
    ys.norm = x.norm_kind();
    ys.bound = 2.0;
    ys.seed = rng.next();
    const auto y = generate_sequence(ys).sample;
    const double lambda = 5.0 * rng.symmetric();
    const auto lx = combine(lambda, x, 0.0, x);
    const auto sum = combine(1.0, x, 1.0, y);
    for (std::size_t n : {1u, 2u, 9u, 64u, 150u}) {
      const double cx = c_sliding(x, n);
      CHECK(std::abs(c_sliding(lx, n) - std::abs(lambda) * cx) <= 1e-12 * std::abs(lambda) * cx);
      CHECK(c_sliding(sum, n) <= cx + c_sliding(y, n) + 1e-9 * sum.bound());
      CHECK(cx <= sup_norm(x) * (1.0 + 1e-12));
      if (n == 1) CHECK(cx == sup_norm(x));
      // fewer windows on a shorter horizon
      std::vector<double> first(x.rows().begin(), x.rows().begin() + 200 * x.dim());
      const SequenceSample shorter(std::move(first), x.dim(), x.bound(), x.norm_kind());
      CHECK(c_sliding(shorter, n) <= cx);
    }
  }
}

TEST_CASE("parallel and sequential curves are bit-identical") {
  const auto x = random_sequence(123, 5000);
  set_max_threads(1);
  const auto seq = estimate_p(x, 300);
  const double c_seq = c_sliding(x, 777);
  set_max_threads(4);
  const auto par = estimate_p(x, 300);
  const double c_par = c_sliding(x, 777);
  set_max_threads(0);
  CHECK(seq.curve.values == par.curve.values);
  CHECK(c_seq == c_par);
}
