#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <unordered_set>

#include "helpers.hpp"
#include "weyl/root_system.hpp"

using namespace weyl;
using testutil::Lcg;
using testutil::random_interior;
using testutil::rel_close;

TEST_CASE("root counts and group orders") {
  auto a3 = build_root_system(Family::A, 3);
  CHECK(a3.num_positive_roots_m == 3);
  CHECK(a3.group_order == 6);

  auto b2 = build_root_system(Family::B, 2);
  CHECK(b2.num_positive_roots_m == 4);
  CHECK(b2.group_order == 8);

  auto d3 = build_root_system(Family::D, 3);
  CHECK(d3.num_positive_roots_m == 6);
  CHECK(d3.group_order == 24);

  for (int n = 1; n <= 5; ++n) {
    auto a = build_root_system(Family::A, n);
    CHECK(a.num_positive_roots_m == n * (n - 1) / 2);
    auto b = build_root_system(Family::B, n);
    CHECK(b.num_positive_roots_m == n * n);
    if (n >= 2) {
      auto d = build_root_system(Family::D, n);
      CHECK(d.num_positive_roots_m == n * n - n);
    }
  }
  CHECK_THROWS_AS(build_root_system(Family::D, 1), validation_error);
  CHECK_THROWS_AS(build_root_system(Family::A, 0), validation_error);
}

TEST_CASE("delta prime scale is (2 pi)^m") {
  auto b2 = build_root_system(Family::B, 2);
  CHECK(rel_close(b2.delta_prime_scale, std::pow(2 * kPi, 4), 1e-13));
}

TEST_CASE("positive roots evaluate positively on an interior point") {
  for (auto fam : {Family::A, Family::B, Family::D}) {
    for (int n = (fam == Family::D ? 2 : 1); n <= 4; ++n) {
      if (fam == Family::A && n < 2) continue;
      auto rs = build_root_system(fam, n);
      auto x = interior_point(rs);
      CHECK(chamber_contains(rs, x, true));
      for (const auto& a : rs.positive_roots) CHECK(detail::dot(a, x) > 0.0);
    }
  }
}

TEST_CASE("group enumeration: counts, identity, sign sum") {
  auto a2 = build_root_system(Family::A, 2);
  auto els = enumerate_group(a2);
  REQUIRE(els.size() == 2);
  CHECK(els[0].det == 1);
  CHECK(els[0].perm == std::vector<int>{0, 1});
  CHECK(els[1].det == -1);

  auto b1 = build_root_system(Family::B, 1);
  auto eb = enumerate_group(b1);
  REQUIRE(eb.size() == 2);
  CHECK(eb[0].det == 1);
  CHECK(eb[1].sign[0] == -1);
  CHECK(eb[1].det == -1);

  auto d2 = build_root_system(Family::D, 2);
  auto ed = enumerate_group(d2);
  REQUIRE(ed.size() == 4);
  std::multiset<int> dets;
  for (auto& w : ed) dets.insert(w.det);
  CHECK(dets == std::multiset<int>{-1, -1, 1, 1});

  for (auto fam : {Family::A, Family::B, Family::D}) {
    for (int n = (fam == Family::D ? 2 : 1); n <= 4; ++n) {
      auto rs = build_root_system(fam, n);
      long long count = 0, signsum = 0;
      for_each_group_element(rs, [&](const GroupElement& w) {
        ++count;
        signsum += w.det;
      });
      CHECK(count == rs.group_order);
      if (rs.group_order > 1) CHECK(signsum == 0);
    }
  }
}

TEST_CASE("enumeration cap produces a helpful error") {
  auto b4 = build_root_system(Family::B, 4);
  CHECK_THROWS_AS(enumerate_group(b4, 100), validation_error);
}

namespace {
std::string element_key(const GroupElement& w) {
  std::string k;
  for (std::size_t i = 0; i < w.perm.size(); ++i) {
    k += char('0' + w.perm[i]);
    k += (w.sign[i] > 0 ? '+' : '-');
  }
  return k;
}
}  // namespace

TEST_CASE("group closure under composition (exhaustive for order <= 384)") {
  for (auto fam : {Family::A, Family::B, Family::D}) {
    for (int n = (fam == Family::D ? 2 : 1); n <= 4; ++n) {
      auto rs = build_root_system(fam, n);
      if (rs.group_order > 384) continue;
      auto els = enumerate_group(rs);
      std::unordered_set<std::string> keys;
      for (auto& w : els) keys.insert(element_key(w));
      REQUIRE(keys.size() == els.size());  // all distinct
      for (auto& u : els)
        for (auto& v : els) {
          auto c = compose(u, v);
          CHECK(keys.count(element_key(c)) == 1);
        }
    }
  }
}

TEST_CASE("apply, compose and inverse are consistent") {
  SECTION("examples") {
    GroupElement swap01{{1, 0}, {1, 1}, -1};
    CHECK(apply_element(swap01, {5, 3}) == Vec{3, 5});
    GroupElement neg0{{0, 1}, {-1, 1}, -1};
    CHECK(apply_element(neg0, {5, 3}) == Vec{-5, 3});
    auto id = identity_element(2);
    CHECK(apply_element(id, {2.5, -1}) == Vec{2.5, -1});
  }
  SECTION("w composed with its inverse is the identity action") {
    Lcg rng(42);
    for (auto fam : {Family::A, Family::B, Family::D}) {
      auto rs = build_root_system(fam, 3);
      auto els = enumerate_group(rs);
      for (auto& w : els) {
        Vec x = {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        auto y = apply_element(inverse(w), apply_element(w, x));
        CHECK(y == x);  // exact: only permutations and sign flips
        auto c = compose(inverse(w), w);
        CHECK(c == identity_element(3));
        CHECK(c.det == 1);
      }
    }
  }
  SECTION("determinant matches sgn(perm) * prod(signs) under composition") {
    auto rs = build_root_system(Family::B, 3);
    auto els = enumerate_group(rs);
    for (std::size_t i = 0; i < els.size(); i += 7)
      for (std::size_t j = 0; j < els.size(); j += 11) {
        auto c = compose(els[i], els[j]);
        CHECK(c.det == detail::perm_sign(c.perm) *
                           (c.sign[0] * c.sign[1] * c.sign[2]));
      }
  }
}

TEST_CASE("chamber membership") {
  auto a3 = build_root_system(Family::A, 3);
  CHECK(chamber_contains(a3, {3, 2, 1}, true));
  auto b2 = build_root_system(Family::B, 2);
  CHECK_FALSE(chamber_contains(b2, {2, 0}, true));
  CHECK(chamber_contains(b2, {2, 0}, false));
  auto d2 = build_root_system(Family::D, 2);
  CHECK(chamber_contains(d2, {1, -0.5}, true));
  CHECK_FALSE(chamber_contains(d2, {1, -1.5}, false));
  CHECK_THROWS_AS(chamber_contains(a3, {1, 0}, false), validation_error);
}

TEST_CASE("h product values") {
  auto a3 = build_root_system(Family::A, 3);
  CHECK(h_product(a3, {2, 1, 0}) == 2.0);
  auto b2 = build_root_system(Family::B, 2);
  CHECK(h_product(b2, {2, 1}) == 6.0);
  auto d2 = build_root_system(Family::D, 2);
  CHECK(h_product(d2, {2, 1}) == 3.0);
}

TEST_CASE("h is antisymmetric: h(w x) = det(w) h(x)") {
  Lcg rng(7);
  for (auto fam : {Family::A, Family::B, Family::D}) {
    for (int n : {2, 3, 4}) {
      auto rs = build_root_system(fam, n);
      auto els = enumerate_group(rs);
      for (int trial = 0; trial < 100; ++trial) {
        Vec x(n);
        for (auto& v : x) v = rng.uniform(-2, 2);
        const auto& w = els[rng.next() % els.size()];
        const double lhs = h_product(rs, apply_element(w, x));
        const double rhs = w.det * h_product(rs, x);
        CHECK(rel_close(lhs, rhs, 1e-12));
      }
    }
  }
}

TEST_CASE("stabilizer size") {
  auto b1 = build_root_system(Family::B, 1);
  CHECK(stabilizer_size(b1, {0.0}) == 2);
  CHECK(stabilizer_size(b1, {1.0}) == 1);
  auto a3 = build_root_system(Family::A, 3);
  CHECK(stabilizer_size(a3, {2, 2, 0}) == 2);
  CHECK(stabilizer_size(a3, {1, 1, 1}) == 6);
  CHECK(stabilizer_size(a3, {3, 2, 1}) == 1);
}

TEST_CASE("canonicalize maps arbitrary points into the chamber") {
  Lcg rng(99);
  for (auto fam : {Family::A, Family::B, Family::D}) {
    auto rs = build_root_system(fam, 3);
    for (int trial = 0; trial < 50; ++trial) {
      Vec x(3);
      for (auto& v : x) v = rng.uniform(-3, 3);
      auto [y, changed] = canonicalize(rs, x);
      CHECK(chamber_contains(rs, y, false));
      // representative stays in the W-orbit: |h| preserved
      CHECK(rel_close(std::abs(h_product(rs, y)), std::abs(h_product(rs, x)), 1e-12));
    }
    auto x0 = interior_point(rs);
    auto [y0, changed0] = canonicalize(rs, x0);
    CHECK(y0 == x0);
    CHECK_FALSE(changed0);
  }
}
