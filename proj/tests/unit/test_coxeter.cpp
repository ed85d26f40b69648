#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "weylchar/coxeter.hpp"
#include "weylchar/error.hpp"

using namespace weylchar;

namespace {

const std::vector<std::string> kDatums = {"a1aff", "a2aff", "c2aff", "g2aff"};

}  // namespace

TEST_CASE("node sets parse and print") {
  CHECK(NodeSet::parse("{0,2}") == NodeSet{0, 2});
  CHECK(NodeSet::parse("1, 2") == NodeSet{1, 2});
  CHECK(NodeSet::parse("{}").empty());
  CHECK(NodeSet{2, 0}.to_string() == "{0,2}");
  CHECK(NodeSet{1}.is_subset_of(NodeSet{0, 1}));
  CHECK_THROWS_AS(NodeSet::parse("x"), DataError);
}

TEST_CASE("words parse and print") {
  CHECK(parse_word("s0s1s0") == Word{0, 1, 0});
  CHECK(parse_word("0 1") == Word{0, 1});
  CHECK(parse_word("e").empty());
  CHECK(word_to_string({}) == "e");
  CHECK(word_to_string({1, 2}) == "s1s2");
}

TEST_CASE("affine G2 structure") {
  const AffineDatum g2 = AffineDatum::builtin("g2aff");
  CHECK(g2.rank() == 2);
  CHECK(g2.node_count() == 3);
  CHECK(g2.bond(1, 2) == 6);
  CHECK(g2.bond(0, 1) == 3);
  CHECK(g2.bond(0, 2) == 2);
  CHECK(g2.positive_roots().size() == 6);
  CHECK(g2.highest_root() == IntVector{2, 3});
  CHECK(g2.omega_group().size() == 1);
  CHECK(g2.parabolic_elements(NodeSet{1, 2}).size() == 12);
  CHECK(g2.parabolic_elements(NodeSet{0, 1}).size() == 6);
  CHECK(g2.parabolic_elements(NodeSet{0, 2}).size() == 4);
  CHECK(g2.is_finite_type(NodeSet{0, 1}));
  CHECK_FALSE(g2.is_finite_type(NodeSet{0, 1, 2}));
  CHECK_THROWS_AS(g2.parabolic_elements(NodeSet{0, 1, 2}), DataError);
}

TEST_CASE("Omega for the adjoint lattices") {
  CHECK(AffineDatum::builtin("a1aff").omega_group().size() == 2);
  CHECK(AffineDatum::builtin("a2aff").omega_group().size() == 3);
  CHECK(AffineDatum::builtin("c2aff").omega_group().size() == 2);
  const AffineDatum a2 = AffineDatum::builtin("a2aff");
  for (const auto& w : a2.omega_group()) CHECK(a2.length(w) == 0);
  const AffineDatum a2sc = AffineDatum::from_type("a2sc", "A2", TranslationLattice::coroot);
  CHECK(a2sc.omega_group().size() == 1);
}

TEST_CASE("builtin datums are shared") {
  CHECK(AffineDatum::builtin("g2aff").id() == AffineDatum::builtin("g2aff").id());
  CHECK_THROWS_AS(AffineDatum::builtin("nonsense"), DataError);
}

TEST_CASE("lengths agree with breadth-first word length") {
  for (const auto& name : kDatums) {
    const AffineDatum d = AffineDatum::builtin(name);
    const auto bfs = oracle::bfs_lengths(d, 8);
    for (const auto& [w, len] : bfs) REQUIRE(d.length(w) == len);
    CHECK(d.elements_up_to_length(8, false).size() == bfs.size());
  }
}

TEST_CASE("ball sizes of affine A1 and G2") {
  // affine A1 is infinite dihedral: 2k+1 elements of length <= k
  CHECK(AffineDatum::builtin("a1aff").elements_up_to_length(5, false).size() == 11);
  // Bott's formula for affine G2 gives 1, 3, 5, 7, 9 elements of length 0..4
  CHECK(oracle::bfs_lengths(AffineDatum::builtin("g2aff"), 4).size() == 25);
  CHECK(AffineDatum::builtin("g2aff").elements_up_to_length(4, false).size() == 25);
}

TEST_CASE("reduced words rebuild the element") {
  std::mt19937 rng(2024);
  for (const auto& name : kDatums) {
    const AffineDatum d = AffineDatum::builtin(name);
    std::uniform_int_distribution<int> node(0, d.node_count() - 1);
    for (int trial = 0; trial < 300; ++trial) {
      Word word(static_cast<std::size_t>(rng() % 14));
      for (auto& s : word) s = node(rng);
      const WeylElement w = d.from_word(word);
      const ReducedWord rw = d.reduced_word(w);
      REQUIRE(d.from_word(rw.word, rw.omega) == w);
      REQUIRE(static_cast<int>(rw.word.size()) == d.length(w));
      REQUIRE(d.length(rw.omega) == 0);
    }
  }
}

TEST_CASE("descents and the exchange condition") {
  std::mt19937 rng(99);
  for (const auto& name : kDatums) {
    const AffineDatum d = AffineDatum::builtin(name);
    std::uniform_int_distribution<int> node(0, d.node_count() - 1);
    for (int trial = 0; trial < 200; ++trial) {
      Word word(static_cast<std::size_t>(rng() % 12));
      for (auto& s : word) s = node(rng);
      const WeylElement w = d.from_word(word);
      const Word red = d.reduced_word(w).word;
      for (int s = 0; s < d.node_count(); ++s) {
        const WeylElement sw = d.multiply(d.generator(s), w);
        const int diff = d.length(sw) - d.length(w);
        REQUIRE((diff == 1 || diff == -1));
        REQUIRE(d.descents(w, Side::left).contains(s) == (diff == -1));
        if (diff == -1) {
          bool found = false;
          for (std::size_t k = 0; k < red.size() && !found; ++k) {
            Word dropped = red;
            dropped.erase(dropped.begin() + static_cast<std::ptrdiff_t>(k));
            found = d.from_word(dropped) == sw;
          }
          REQUIRE(found);
        }
      }
    }
  }
}

TEST_CASE("group laws") {
  const AffineDatum c2 = AffineDatum::builtin("c2aff");
  const WeylElement a = c2.from_word({0, 1, 2, 1});
  const WeylElement b = c2.from_word({2, 0, 1});
  CHECK(c2.multiply(a, c2.inverse(a)) == c2.identity());
  CHECK(c2.inverse(c2.multiply(a, b)) == c2.multiply(c2.inverse(b), c2.inverse(a)));
  CHECK(c2.length(c2.inverse(a)) == c2.length(a));
  CHECK(c2.element_order(c2.from_word({1, 2})) == 4);
  CHECK_FALSE(c2.element_order(c2.from_word({0, 1, 2})).has_value());
  CHECK(c2.in_affine_subgroup(a));
}

TEST_CASE("elements from different datums do not mix") {
  const AffineDatum a2 = AffineDatum::builtin("a2aff");
  const AffineDatum g2 = AffineDatum::builtin("g2aff");
  CHECK_THROWS_AS(a2.multiply(a2.generator(0), g2.generator(0)), DataError);
}

TEST_CASE("good coset representatives for affine G2") {
  const AffineDatum g2 = AffineDatum::builtin("g2aff");
  for (std::uint32_t mask = 0; mask < 7; ++mask) {
    const NodeSet j = NodeSet::from_mask(mask);
    const auto reps = g2.good_coset_reps(j, 8);
    const auto wj = oracle::parabolic_closure(g2, j);
    for (const auto& x : reps) {
      REQUIRE(g2.normalizes(x, j));
      const auto coset = oracle::double_coset(g2, wj, x);
      for (const auto& y : coset)
        if (!(y == x)) REQUIRE(g2.length(y) > g2.length(x));
    }
  }
  // J = {} : every element is its own good coset
  CHECK(g2.good_coset_reps(NodeSet{}, 3).size() == g2.elements_up_to_length(3, true).size());
}
