#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace weaklog;
using namespace testutil;

TEST_CASE("table validation rejects malformed algebras") {
  auto sig = Signature::l_int();
  CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{"and", {0, 0, 0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteAlgebra(sig, 2,
                                {{"and", {0, 0, 0}},  // wrong length
                                 {"or", {0, 1, 1, 1}},
                                 {"imp", {1, 1, 0, 1}},
                                 {"bot", {0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FiniteAlgebra(sig, 2,
                                {{"and", {0, 0, 0, 5}},  // out of range
                                 {"or", {0, 1, 1, 1}},
                                 {"imp", {1, 1, 0, 1}},
                                 {"bot", {0}}}),
                  std::invalid_argument);
}

TEST_CASE("evaluation over the two-element Boolean algebra") {
  auto b2 = boolean2();
  Formula f = land(lvar(0), lvar(1));
  CHECK(b2.eval(f, {{0, 1}, {1, 0}}) == 0);
  CHECK(b2.eval(f, {{0, 1}, {1, 1}}) == 1);
  CHECK(b2.eval(lnot(lnot(lvar(0))), {{0, 1}}) == 1);
  CHECK(b2.eval(lbot(), {}) == 0);
  CHECK_THROWS_AS(b2.eval(lvar(3), {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(b2.eval(Formula::meta("phi"), {}), std::invalid_argument);
}

TEST_CASE("compiled terms agree with recursive evaluation") {
  std::mt19937_64 rng(42);
  auto sig = Signature::l_inq();
  for (int trial = 0; trial < 30; ++trial) {
    auto alg = random_algebra(rng, sig, 2 + static_cast<int>(rng() % 4));
    for (int i = 0; i < 20; ++i) {
      Formula f = parse_formula("(p0 -> p1 * p2) & ~(p2 | p0)", sig);
      std::vector<int> order{0, 1, 2};
      CompiledTerm ct(alg, f, order);
      std::vector<int> assign(3);
      for (auto& v : assign) v = static_cast<int>(rng() % alg.size());
      CHECK(ct.eval(assign) ==
            alg.eval(f, {{0, assign[0]}, {1, assign[1]}, {2, assign[2]}}));
    }
  }
}

TEST_CASE("subuniverse generation always contains constants") {
  auto b4 = product(std::vector<FiniteAlgebra>{boolean2(), boolean2()});
  // empty seed: bot and bot->bot close the set
  CHECK(generate_subalgebra(b4, std::vector<int>{}) == std::vector<int>{0, 3});
  // adding one projection-like element generates everything
  CHECK(generate_subalgebra(b4, std::vector<int>{1}) == std::vector<int>{0, 1, 2, 3});
  auto c3 = chain_algebra(3);
  CHECK(generate_subalgebra(c3, std::vector<int>{}) == std::vector<int>{0, 2});
  CHECK(generate_subalgebra(c3, std::vector<int>{1}) == std::vector<int>{0, 1, 2});
}

TEST_CASE("products are componentwise with lexicographic element order") {
  auto b2 = boolean2();
  auto b4 = product(std::vector<FiniteAlgebra>{b2, b2});
  REQUIRE(b4.size() == 4);
  // index of (a, b) is 2a + b
  std::vector<int> sizes{2, 2};
  CHECK(product_tuple_index(std::vector<int>{1, 0}, sizes) == 2);
  CHECK(product_index_tuple(3, sizes) == std::vector<int>{1, 1});

  std::mt19937_64 rng(5);
  auto sig = Signature::l_int();
  Formula f = parse_formula("(p0 -> p1) & ~p1 | p0", sig);
  for (int i = 0; i < 50; ++i) {
    int a0 = static_cast<int>(rng() % 4), a1 = static_cast<int>(rng() % 4);
    auto t0 = product_index_tuple(a0, sizes), t1 = product_index_tuple(a1, sizes);
    int got = b4.eval(f, {{0, a0}, {1, a1}});
    std::vector<int> want{b2.eval(f, {{0, t0[0]}, {1, t1[0]}}),
                          b2.eval(f, {{0, t0[1]}, {1, t1[1]}})};
    CHECK(got == product_tuple_index(want, sizes));
  }

}

TEST_CASE("product cap raises cap_exceeded") {
  auto b2 = boolean2();
  std::vector<FiniteAlgebra> many(10, b2);
  CHECK_THROWS_AS(product(many, 1000), cap_exceeded);
  CHECK_NOTHROW(product(many, 1024));
}

TEST_CASE("projections of a product are homomorphisms") {
  auto b2 = boolean2();
  auto b4 = product(std::vector<FiniteAlgebra>{b2, b2});
  auto homs = find_homomorphisms(b4, b2);
  // exactly the two projections
  REQUIRE(homs.size() == 2);
  CHECK(homs[0] == std::vector<int>{0, 0, 1, 1});  // first coordinate
  CHECK(homs[1] == std::vector<int>{0, 1, 0, 1});  // second coordinate
}

TEST_CASE("homomorphism core modes: strong versus strict") {
  auto b2 = boolean2();
  auto t1 = trivial_algebra();
  std::vector<int> src_core{1};      // proper subset of the universe
  std::vector<int> dst_core{0};      // the whole trivial universe
  auto strong = find_homomorphisms(b2, t1, HomMode::strong, src_core, dst_core);
  REQUIRE(strong.size() == 1);       // the collapse map exists and is strong
  CHECK(strong[0] == std::vector<int>{0, 0});
  auto strict = find_homomorphisms(b2, t1, HomMode::strict, src_core, dst_core);
  CHECK(strict.empty());             // 0 is not in the source core but lands in the target core
  auto all = find_homomorphisms(b2, t1, HomMode::all);
  CHECK(all.size() == 1);
}

TEST_CASE("identity endomorphism is always found") {
  auto c3 = chain_algebra(3);
  auto homs = find_homomorphisms(c3, c3);
  std::vector<int> id{0, 1, 2};
  CHECK(std::find(homs.begin(), homs.end(), id) != homs.end());
}

TEST_CASE("partition utilities") {
  Partition p;
  p.block = {2, 0, 2, 1};
  p.normalize();
  CHECK(p.block == std::vector<int>{0, 1, 0, 2});
  CHECK(p.num_blocks() == 3);
  CHECK(p.refines(Partition::one_block(4)));
  CHECK(Partition::discrete(4).refines(p));
  CHECK_FALSE(p.refines(Partition::discrete(4)));
  auto blocks = p.blocks();
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0] == std::vector<int>{0, 2});
}

TEST_CASE("identity init refines to the identity partition") {
  auto c3 = chain_algebra(3);
  auto out = coarsest_stable_partition(c3, Partition::discrete(3));
  CHECK(out == Partition::discrete(3));
}

TEST_CASE("one-block init is already a congruence") {
  // The total relation is compatible with every operation, so the greatest
  // congruence below the one-block partition is the one-block partition.
  auto c2 = chain_algebra(2);
  CHECK(is_congruence(c2, Partition::one_block(2)));
  CHECK(coarsest_stable_partition(c2, Partition::one_block(2)) == Partition::one_block(2));
}

TEST_CASE("refinement splits blocks that operations can separate") {
  auto c3 = chain_algebra(3);
  // truth-style init {2 | 0,1}: collapsing 0,1 would need imp(0,0)=2 ~ imp(1,0)=0
  Partition init;
  init.block = {0, 0, 1};
  CHECK(coarsest_stable_partition(c3, init) == Partition::discrete(3));
  // init {0 | 1,2}: collapsing the top pair is a congruence of the chain
  Partition init2;
  init2.block = {0, 1, 1};
  auto out = coarsest_stable_partition(c3, init2);
  CHECK(out.block == std::vector<int>{0, 1, 1});
  CHECK(is_congruence(c3, out));
}

TEST_CASE("refinement matches the brute-force greatest congruence") {
  std::mt19937_64 rng(2026);
  auto sig = Signature::l_int();
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);  // up to 5
    auto alg = random_algebra(rng, sig, n);
    auto parts = all_partitions(n);
    const Partition& init = parts[rng() % parts.size()];
    auto fast = coarsest_stable_partition(alg, init);
    auto slow = brute_force_largest_congruence(alg, init);
    CAPTURE(n, trial);
    CHECK(fast == slow);
    CHECK(is_congruence(alg, fast));
    CHECK(fast.refines(init));
  }
}

TEST_CASE("quotient by a congruence is a well-defined algebra") {
  auto c3 = chain_algebra(3);
  Partition theta;
  theta.block = {0, 1, 1};
  auto [q, proj] = quotient_algebra(c3, theta);
  CHECK(q.size() == 2);
  CHECK(proj == std::vector<int>{0, 1, 1});
  // the projection is a homomorphism
  for (const auto& [name, arity] : c3.sig().ops()) {
    if (arity != 2) continue;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(proj[c3.apply(name, std::vector<int>{a, b})] ==
              q.apply(name, std::vector<int>{proj[a], proj[b]}));
  }
  CHECK(proj[c3.constant("bot")] == q.constant("bot"));
  CHECK(q == boolean2());
}
