#include <doctest.h>

#include <algorithm>
#include <random>

#include "kshift/decomposition.hpp"
#include "kshift/oracle.hpp"
#include "support.hpp"

using namespace kshift;
using testing::pt;
using testing::te;

TEST_CASE("decompose_pure cases") {
  auto g = testing::lamp();

  SUBCASE("all-unit tensor lies in H") {
    auto d = decompose_pure(PureTensor{});
    CHECK(d.witness.is_zero());
    CHECK(d.h.unit_mult == 1);
    CHECK(d.h.tail.is_zero());
  }
  SUBCASE("support starting at slot 1") {
    auto d = decompose_pure(pt(g, {{1, "v"}}));
    CHECK(d.witness == te(g, {{0, "v"}}, -1));
    CHECK(d.h.tail == te(g, {{0, "v"}}));
    CHECK(d.h.unit_mult == 0);
  }
  SUBCASE("support starting at slot -2") {
    auto d = decompose_pure(pt(g, {{-2, "v"}}));
    CHECK(d.witness == te(g, {{-2, "v"}}) + te(g, {{-1, "v"}}));
    CHECK(d.h.tail == te(g, {{0, "v"}}));
  }
  SUBCASE("already in H") {
    auto d = decompose_pure(pt(g, {{0, "v"}, {3, "v"}}));
    CHECK(d.witness.is_zero());
    CHECK(d.h.tail == te(g, {{0, "v"}, {3, "v"}}));
  }
}

TEST_CASE("decompose strips the all-unit part of the witness") {
  auto g = testing::lamp();
  auto t = TensorElement::unit_tensor(5) + te(g, {{1, "v"}});
  auto d = decompose(t);
  CHECK(d.witness == te(g, {{0, "v"}}, -1));
  CHECK(d.h.unit_mult == 5);
  CHECK(d.h.tail == te(g, {{0, "v"}}));
  CHECK(reassembles(t, d));
}

TEST_CASE("H membership and kernel test") {
  auto g = testing::three_symbol();
  CHECK(is_in_H(TensorElement::unit_tensor()));
  CHECK(is_in_H(te(g, {{0, "v"}, {5, "w"}})));
  CHECK_FALSE(is_in_H(te(g, {{1, "v"}})));
  CHECK_FALSE(is_in_H(te(g, {{-1, "v"}, {0, "v"}})));
  CHECK_THROWS_AS(as_h_element(te(g, {{1, "v"}})), Error);
  CHECK(kernel_test(TensorElement::unit_tensor(-4)) == -4);
  CHECK(kernel_test(TensorElement{}) == 0);
  CHECK_FALSE(kernel_test(te(g, {{0, "v"}})));
}

TEST_CASE("round trip, idempotence and shift invariance") {
  for (auto g : {testing::lamp(), testing::three_symbol(), testing::z1()}) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 500; ++i) {
      auto t = testing::random_element(g, rng);
      auto d = decompose(t);
      CHECK(t == id_minus_shift(d.witness) + d.h.to_tensor());
      CHECK(d.witness.coeff(PureTensor{}) == 0);
      CHECK(is_in_H(d.h.to_tensor()));
      auto again = decompose(d.h.to_tensor());
      CHECK(again.witness.is_zero());
      CHECK(again.h == d.h);
      CHECK(decompose(shift(t, 1)).h == d.h);
      CHECK(decompose(shift(t, -3)).h == d.h);
      CHECK(kernel_test(t).has_value() == id_minus_shift(t).is_zero());
    }
  }
}

TEST_CASE("H-component does not depend on term order") {
  auto g = testing::three_symbol();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto t = testing::random_element(g, rng);
    std::vector<std::pair<PureTensor, Integer>> terms(t.terms().begin(), t.terms().end());
    std::shuffle(terms.begin(), terms.end(), rng);
    Decomposition sum;
    for (const auto& [p, c] : terms) {
      auto d = decompose_pure(p);
      d.witness = c * d.witness;
      d.h.unit_mult *= c;
      d.h.tail = c * d.h.tail;
      sum += d;
    }
    CHECK(sum.h == decompose(t).h);
  }
}

TEST_CASE("H-component agrees with the SNF cokernel representative") {
  auto g = testing::lamp();
  WindowBasis window(-2, 2, g.rank());
  std::vector<PureTensor> fs;
  for (std::size_t i = 0; i < window.size(); ++i) fs.push_back(window.tensor(i, g.unit()));
  auto oracle = oracle_h_components(g, fs, -2, 4);
  REQUIRE(oracle.size() == fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) CHECK(oracle[i] == decompose(TensorElement(fs[i])).h);
}

TEST_CASE("image meets H trivially") {
  // (id - shift) of anything supported in [-2, 2] that lands in H is zero.
  auto g = testing::lamp();
  auto map = windowed_id_minus_shift(g, -2, 2);
  auto h = h_basis_indices(g, map.codomain);
  IntegerMatrix block(map.matrix.rows(), map.matrix.cols() + static_cast<Eigen::Index>(h.size()));
  block.leftCols(map.matrix.cols()) = map.matrix;
  block.rightCols(static_cast<Eigen::Index>(h.size())).setZero();
  for (std::size_t j = 0; j < h.size(); ++j)
    block(static_cast<Eigen::Index>(h[j]), map.matrix.cols() + static_cast<Eigen::Index>(j)) = 1;
  CHECK(integer_rank(block) == integer_rank(map.matrix) + static_cast<Eigen::Index>(h.size()));
}

TEST_CASE("report json") {
  auto g = testing::lamp();
  auto t = te(g, {{1, "v"}});
  auto j = to_json(g, decompose(t), true);
  CHECK(j["verified"] == true);
  CHECK(tensor_from_json(g, j["witness"]) == te(g, {{0, "v"}}, -1));
  CHECK(tensor_from_json(g, j["h"]) == te(g, {{0, "v"}}));
}
