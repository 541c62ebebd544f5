#include <doctest.h>

#include <algorithm>

#include "kshift/ktheory.hpp"
#include "support.hpp"

using namespace kshift;
using testing::pt;

TEST_CASE("H basis enumeration") {
  auto g = testing::lamp();
  auto w0 = enumerate_H_basis(g, 0, 0);
  REQUIRE(w0.size() == 2);
  CHECK(w0[0].is_all_unit());
  CHECK(w0[1] == pt(g, {{0, "v"}}));
  CHECK(enumerate_H_basis(g, 0, 2).size() == 5);
  CHECK(enumerate_H_basis(g, 1, 0).empty());
  CHECK(enumerate_H_basis(testing::z1(), 0, 5).size() == 1);
  auto sorted = enumerate_H_basis(testing::three_symbol(), 1, 2);
  CHECK(std::is_sorted(sorted.begin(), sorted.end()));
}

TEST_CASE("enumeration matches the SNF cokernel, split by degree") {
  for (auto g : {testing::lamp(), testing::three_symbol()}) {
    for (int n = 0; n <= 3; ++n) {
      for (Degree d : {0, 1}) {
        auto basis = enumerate_H_basis(g, d, static_cast<std::size_t>(n));
        auto cok = half_line_cokernel(g, n, d);
        CHECK(basis.size() == cok.rank);
        CHECK(cok.torsion.empty());
        for (const auto& t : basis) {
          CHECK(tensor_degree(g, t) == d);
          CHECK(is_in_H(TensorElement(t)));
        }
      }
    }
  }
}

TEST_CASE("rank additivity and monotone windows") {
  auto g = testing::three_symbol();
  auto r = crossed_product_ktheory(g, 3);
  for (std::size_t n = 0; n <= 4; ++n) {
    std::size_t tails = (g.rank() - 1);
    for (std::size_t k = 0; k < n; ++k) tails *= g.rank();
    CHECK(r.free_rank_k0(n) + r.free_rank_k1(n) == 1 + tails + 1);
    auto small = enumerate_H_basis(g, 0, n);
    auto large = enumerate_H_basis(g, 0, n + 1);
    for (const auto& t : small) CHECK(std::binary_search(large.begin(), large.end(), t));
  }
}

TEST_CASE("crossed product K-theory") {
  SUBCASE("circle algebra") {
    auto r = crossed_product_ktheory(testing::z1(), 4);
    CHECK(r.k0.rank() == 1);
    CHECK(r.k1.rank() == 1);
    CHECK(r.k1.psi_summand);
    CHECK(r.corollary_applies);
  }
  SUBCASE("lamplighter window 2") {
    auto r = crossed_product_ktheory(testing::lamp(), 2);
    CHECK(r.k0.rank() == 5);
    CHECK(r.k1.rank() == 1);
    CHECK(r.k1.h_generators.empty());
    REQUIRE(r.positivity);
    CHECK(r.positivity->size() == 5);
    for (const auto& p : *r.positivity) CHECK(p.membership.status == MembershipStatus::kCertified);
  }
  SUBCASE("degree-one symbol") {
    auto g = testing::three_symbol();
    auto r = crossed_product_ktheory(g, 2);
    CHECK_FALSE(r.corollary_applies);
    CHECK(r.k1.rank() == enumerate_H_basis(g, 1, 2).size() + 1);
    CHECK(r.k1.rank() == half_line_cokernel(g, 2, 1).rank + 1);
    for (const auto& t : r.k1.h_generators) CHECK(tensor_degree(g, t) == 1);
    CHECK_FALSE(r.positivity);
  }
}

TEST_CASE("corollary check") {
  CHECK(corollary_check(testing::lamp()));
  CHECK(corollary_check(testing::z1()));
  CHECK_FALSE(corollary_check(testing::three_symbol()));
}

TEST_CASE("lamplighter demo") {
  auto report = lamplighter_demo(3);
  CHECK(report.ktheory.k0.rank() == 9);
  CHECK(report.ktheory.k1.rank() == 1);
  REQUIRE(report.torsion.size() == 4);
  for (const auto& t : report.torsion) {
    CHECK(t.torsion_free());
    CHECK(t.matches());
  }
  REQUIRE(report.samples.size() == 4);
  CHECK(report.samples[0].membership.status == MembershipStatus::kCertified);
  CHECK(report.samples[1].membership.status == MembershipStatus::kCertified);
  CHECK(report.samples[2].membership.status == MembershipStatus::kCertified);
  CHECK(report.samples[3].membership.status == MembershipStatus::kRejected);
  auto j = to_json(report);
  CHECK(j["k0"]["rank"] == 9);
  CHECK(j["k1"]["psi_summand"] == true);
  CHECK(j["corollary_applies"] == true);
  CHECK_FALSE(to_text(report).empty());
}
