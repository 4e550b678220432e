#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "xfam/rng.hpp"
#include "xfam/set_family.hpp"

using xfam::full_mask;
using xfam::Mask;
using xfam::mask_of;
using xfam::Rational;
using xfam::SetFamily;

namespace {

SetFamily make(int n, const std::vector<std::vector<int>>& sets) {
  std::vector<Mask> members;
  for (const auto& s : sets) members.push_back(xfam::mask_from_elements(s, n));
  return SetFamily(n, std::move(members));
}

SetFamily random_family(xfam::SplitMix64& rng, int n, int max_members) {
  std::vector<Mask> members;
  int count = static_cast<int>(rng.below(max_members + 1));
  for (int i = 0; i < count; ++i)
    members.push_back(static_cast<Mask>(rng.below(std::uint64_t{1} << n)));
  return SetFamily(n, std::move(members));
}

}  // namespace

TEST_CASE("families are stored sorted and deduplicated") {
  SetFamily fam(3, {6, 3, 3, 6});
  CHECK(fam.members() == std::vector<Mask>{3, 6});
  CHECK(fam.size() == 2);
  CHECK(fam.contains(3));
  CHECK_FALSE(fam.contains(5));
  CHECK(SetFamily::empty_family(4).empty());
}

TEST_CASE("construction validates the ground set") {
  CHECK_THROWS_AS(SetFamily(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(SetFamily(25, {}), std::invalid_argument);
  CHECK_THROWS_AS(SetFamily(2, {4}), std::invalid_argument);
  CHECK_NOTHROW(SetFamily(24, {full_mask(24)}));
}

TEST_CASE("membership works beyond the dense-indicator limit") {
  SetFamily fam(22, {1, 5, full_mask(22)});
  CHECK(fam.contains(5));
  CHECK(fam.contains(full_mask(22)));
  CHECK_FALSE(fam.contains(2));
}

TEST_CASE("principal family lists all supersets of the core") {
  CHECK(xfam::principal_family(3, mask_of({1, 2})) == make(3, {{1, 2}, {1, 2, 3}}));
  CHECK(xfam::principal_family(2, 0).size() == 4);
  CHECK(xfam::principal_family(3, full_mask(3)) == make(3, {{1, 2, 3}}));
  CHECK_THROWS_AS(xfam::principal_family(2, mask_of({3})), std::invalid_argument);
}

TEST_CASE("frankl family construction") {
  CHECK(xfam::frankl_family(4, 1, 0) == xfam::principal_family(4, mask_of({1})));
  SetFamily a1 = xfam::frankl_family(4, 1, 1);
  CHECK(a1.size() == 8);
  for (Mask m : a1.members()) CHECK(xfam::popcount(m & mask_of({1, 2, 3})) >= 2);
  CHECK(xfam::is_t_intersecting(a1, 1));
  CHECK_THROWS_AS(xfam::frankl_family(3, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(xfam::frankl_family(4, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(xfam::frankl_family(4, 1, -1), std::invalid_argument);
}

TEST_CASE("katona family construction") {
  CHECK(xfam::katona_family(4, 2).members() == std::vector<Mask>{7, 11, 13, 14, 15});
  CHECK(xfam::katona_family(4, 1).members() ==
        std::vector<Mask>{3, 5, 6, 7, 11, 13, 14, 15});
  CHECK(xfam::katona_family(4, 4) == make(4, {{1, 2, 3, 4}}));
  CHECK_THROWS_AS(xfam::katona_family(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(xfam::katona_family(4, 5), std::invalid_argument);
}

TEST_CASE("katona family sizes match the by-hand grid") {
  std::vector<std::vector<std::size_t>> expected{
      {1}, {2, 1}, {4, 2, 1}, {8, 5, 2, 1}, {16, 10, 6, 2, 1}};
  for (int n = 1; n <= 5; ++n)
    for (int t = 1; t <= n; ++t)
      CHECK(xfam::katona_family(n, t).size() == expected[n - 1][t - 1]);
}

TEST_CASE("katona family is t-intersecting across the grid") {
  for (int n = 1; n <= 6; ++n)
    for (int t = 1; t <= n; ++t)
      CHECK(xfam::is_t_intersecting(xfam::katona_family(n, t), t));
}

TEST_CASE("measure of named families") {
  CHECK(xfam::measure(xfam::principal_family(3, mask_of({1, 2})), Rational(1, 3)) ==
        Rational(1, 9));
  CHECK(xfam::measure(xfam::principal_family(4, 0), Rational(1, 3)) == Rational(1));
  CHECK(xfam::measure(xfam::katona_family(4, 1), Rational(1, 2)) == Rational(1, 2));
}

TEST_CASE("measure of a principal family is a power of p") {
  for (int size = 0; size <= 6; ++size) {
    Mask core = full_mask(size);
    CHECK(xfam::measure(xfam::principal_family(24, core), Rational(2, 7)) ==
          Rational(2, 7).pow(size));
  }
}

TEST_CASE("measure rejects degenerate biases") {
  SetFamily fam = make(2, {{1}});
  CHECK_THROWS_AS(xfam::measure(fam, Rational(0)), std::domain_error);
  CHECK_THROWS_AS(xfam::measure(fam, Rational(1)), std::domain_error);
  CHECK_THROWS_AS(xfam::measure(fam, Rational(7, 5)), std::domain_error);
  CHECK_THROWS_AS(xfam::measure(fam, Rational(-1, 2)), std::domain_error);
}

TEST_CASE("measure of complementary families sums to one") {
  xfam::SplitMix64 rng(0xabc01ULL);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng.below(7));
    SetFamily fam = random_family(rng, n, 20);
    std::vector<Mask> rest;
    for (Mask m = 0; m < (Mask{1} << n); ++m)
      if (!fam.contains(m)) rest.push_back(m);
    SetFamily other(n, std::move(rest));
    Rational p(1 + static_cast<long long>(rng.below(5)), 7);
    CHECK(xfam::measure(fam, p) + xfam::measure(other, p) == Rational(1));
  }
}

TEST_CASE("intersection predicates") {
  CHECK(xfam::is_t_intersecting(make(3, {{1, 2}, {1, 3}}), 1));
  CHECK_FALSE(xfam::is_t_intersecting(make(3, {{1, 2}, {1, 3}}), 2));
  CHECK(xfam::is_t_intersecting(SetFamily::empty_family(3), 2));
  CHECK(xfam::is_t_intersecting(make(3, {{1}, {1, 2}}), 0));
  // A member must also meet itself, so small sets fail large thresholds.
  CHECK_FALSE(xfam::is_t_intersecting(make(3, {{1, 2}}), 3));
  CHECK_THROWS_AS(xfam::is_t_intersecting(make(3, {{1}}), 4), std::invalid_argument);
  CHECK_THROWS_AS(xfam::is_t_intersecting(make(3, {{1}}), -1), std::invalid_argument);
}

TEST_CASE("cross intersection predicates") {
  CHECK(xfam::is_cross_t_intersecting(make(3, {{1, 2}}), make(3, {{2, 3}}), 1));
  CHECK_FALSE(xfam::is_cross_t_intersecting(make(3, {{1, 2}}), make(3, {{2, 3}}), 2));
  SetFamily principal = xfam::principal_family(4, mask_of({1, 2}));
  CHECK(xfam::is_cross_t_intersecting(principal, principal, 2));
  CHECK(xfam::is_cross_t_intersecting(SetFamily::empty_family(3), make(3, {{1}}), 2));
  CHECK_THROWS_AS(xfam::is_cross_t_intersecting(make(3, {{1}}), make(4, {{1}}), 1),
                  std::invalid_argument);
}

TEST_CASE("up closure examples") {
  CHECK(xfam::up_closure(make(2, {{1}})) == make(2, {{1}, {1, 2}}));
  CHECK(xfam::up_closure(SetFamily::empty_family(3)) == SetFamily::empty_family(3));
  SetFamily closed = xfam::katona_family(4, 2);
  CHECK(xfam::up_closure(closed) == closed);
}

TEST_CASE("up closure equals the direct superset sweep") {
  xfam::SplitMix64 rng(0xabc02ULL);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng.below(6));
    SetFamily fam = random_family(rng, n, 10);
    SetFamily closed = xfam::up_closure(fam);
    std::vector<Mask> expected;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      bool has_subset = false;
      for (Mask f : fam.members()) has_subset |= (s & f) == f;
      if (has_subset) expected.push_back(s);
    }
    CHECK(closed == SetFamily(n, std::move(expected)));
    CHECK(xfam::up_closure(closed) == closed);
  }
}

TEST_CASE("dual examples") {
  CHECK(xfam::t_dual(make(2, {{1}}), 1) == make(2, {{1}, {1, 2}}));
  SetFamily principal = xfam::principal_family(4, mask_of({1, 2}));
  CHECK(xfam::t_dual(principal, 2) == principal);
  CHECK(xfam::t_dual(make(2, {{}}), 1) == SetFamily::empty_family(2));
  // Convention: the empty family constrains nothing.
  CHECK(xfam::t_dual(SetFamily::empty_family(2), 1) == xfam::principal_family(2, 0));
}

TEST_CASE("dual is the maximal cross-intersecting partner") {
  xfam::SplitMix64 rng(0xabc03ULL);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng.below(4));
    int t = static_cast<int>(rng.below(n + 1));
    SetFamily fam = random_family(rng, n, 6);
    SetFamily dual = xfam::t_dual(fam, t);
    CHECK(xfam::is_cross_t_intersecting(fam, dual, t));
    SetFamily probe = random_family(rng, n, 6);
    bool inside = true;
    for (Mask m : probe.members()) inside &= dual.contains(m);
    CHECK(xfam::is_cross_t_intersecting(fam, probe, t) == inside);
    bool self_contained = true;
    for (Mask m : fam.members()) self_contained &= dual.contains(m);
    CHECK(xfam::is_t_intersecting(fam, t) == self_contained);
  }
}

TEST_CASE("dual of any family is an up-set") {
  xfam::SplitMix64 rng(0xabc04ULL);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng.below(5));
    SetFamily dual = xfam::t_dual(random_family(rng, n, 8), 1 + static_cast<int>(rng.below(n)));
    CHECK(xfam::up_closure(dual) == dual);
  }
}
