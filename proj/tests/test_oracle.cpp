#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "helpers.hpp"
#include "weyl/oracle.hpp"

using namespace weyl;
using namespace weyl::oracle;
using testutil::Lcg;
using testutil::rel_close;

namespace {

// brute force: enumerate every k-step sequence (test-only, k small)
BigInt brute_force_walks(const RootSystem& rs, const IVec& start, const IVec& end,
                         int k, const StepSet& ss) {
  if (!oracle::detail::strictly_inside(rs, start)) return 0;
  BigInt count = 0;
  std::function<void(const IVec&, int)> rec = [&](const IVec& pos, int left) {
    if (left == 0) {
      if (pos == end) ++count;
      return;
    }
    for (const auto& s : ss.steps) {
      IVec q = pos;
      for (std::size_t i = 0; i < q.size(); ++i) q[i] += s[i];
      if (oracle::detail::strictly_inside(rs, q)) rec(q, left - 1);
    }
  };
  rec(start, k);
  return count;
}

}  // namespace

TEST_CASE("step sets: symmetry validation and reflectability") {
  auto a2 = build_root_system(Family::A, 2);
  CHECK_NOTHROW(unit_step_set(a2));
  CHECK_THROWS_AS(make_step_set(a2, {{1, 0}, {-1, 0}}), validation_error);

  auto b2 = build_root_system(Family::B, 2);
  auto diag = make_step_set(
      b2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  CHECK(is_reflectable(b2, unit_step_set(b2)));
  CHECK_FALSE(is_reflectable(b2, diag));  // (e1+e2, (1,1)) = 2 jumps the wall
  CHECK_THROWS_AS(lattice_walk_reflection(b2, {2, 1}, {2, 1}, 2, diag),
                  validation_error);
}

TEST_CASE("lattice DP basics") {
  auto a2 = build_root_system(Family::A, 2);
  auto steps = unit_step_set(a2);
  CHECK(lattice_walk_dp(a2, {1, 0}, {1, 0}, 2, steps) == 2);
  CHECK(lattice_walk_dp(a2, {1, 0}, {1, 0}, 0, steps) == 1);
  CHECK(lattice_walk_dp(a2, {1, 0}, {2, 0}, 0, steps) == 0);
  CHECK(lattice_walk_dp(a2, {1, 0}, {0, 1}, 3, steps) == 0);  // end outside
  CHECK_THROWS_AS(lattice_walk_dp(a2, {1, 0}, {1, 0}, 31, steps), validation_error);

  auto b1 = build_root_system(Family::B, 1);
  CHECK(lattice_walk_dp(b1, {2}, {2}, 4, unit_step_set(b1)) == 5);
}

TEST_CASE("lattice DP equals exhaustive enumeration") {
  Lcg rng(61);
  auto a2 = build_root_system(Family::A, 2);
  auto steps = unit_step_set(a2);
  for (int k = 0; k <= 6; ++k)
    for (int trial = 0; trial < 4; ++trial) {
      IVec start{int(rng.next() % 4) + 2, int(rng.next() % 2)};
      IVec end{int(rng.next() % 4) + 2, int(rng.next() % 2)};
      if (!oracle::detail::strictly_inside(a2, start) || !oracle::detail::strictly_inside(a2, end))
        continue;
      CHECK(lattice_walk_dp(a2, start, end, k, steps) ==
            brute_force_walks(a2, start, end, k, steps));
    }
}

TEST_CASE("signed reflection count equals the DP exactly") {
  struct Cfg {
    Family fam;
    int n;
    IVec start, end;
  };
  const std::vector<Cfg> cfgs = {
      {Family::A, 2, {1, 0}, {1, 0}},   {Family::A, 2, {3, 1}, {2, 0}},
      {Family::A, 3, {4, 2, 0}, {4, 2, 0}}, {Family::A, 3, {5, 2, 0}, {4, 3, 1}},
      {Family::B, 1, {2}, {2}},         {Family::B, 2, {3, 1}, {3, 1}},
      {Family::B, 2, {4, 2}, {2, 1}},   {Family::D, 2, {2, 0}, {2, 0}},
      {Family::D, 2, {3, -1}, {2, 1}}};
  for (const auto& cfg : cfgs) {
    auto rs = build_root_system(cfg.fam, cfg.n);
    auto steps = unit_step_set(rs);
    for (int k = 0; k <= 8; ++k) {
      CHECK(lattice_walk_reflection(rs, cfg.start, cfg.end, k, steps) ==
            lattice_walk_dp(rs, cfg.start, cfg.end, k, steps));
    }
  }
}

TEST_CASE("reflection sum vanishes for a start on a wall") {
  auto a2 = build_root_system(Family::A, 2);
  CHECK(lattice_walk_reflection(a2, {1, 1}, {2, 1}, 3, unit_step_set(a2)) == 0);
  auto b2 = build_root_system(Family::B, 2);
  CHECK(lattice_walk_reflection(b2, {2, 0}, {2, 1}, 2, unit_step_set(b2)) == 0);
}

TEST_CASE("harmonicity of h: symbolic Laplacian is the zero polynomial") {
  // A up to n=5, B and D up to n=4
  for (int n = 2; n <= 5; ++n) {
    auto rs = build_root_system(Family::A, n);
    auto rep = check_harmonic_continuous(rs, {interior_point(rs)});
    CHECK(rep.symbolic_checked);
    CHECK(rep.symbolic_zero);
  }
  for (int n = 1; n <= 4; ++n) {
    auto rs = build_root_system(Family::B, n);
    auto rep = check_harmonic_continuous(rs, {interior_point(rs)});
    CHECK(rep.symbolic_checked);
    CHECK(rep.symbolic_zero);
  }
  for (int n = 2; n <= 4; ++n) {
    auto rs = build_root_system(Family::D, n);
    auto rep = check_harmonic_continuous(rs, {interior_point(rs)});
    CHECK(rep.symbolic_checked);
    CHECK(rep.symbolic_zero);
  }
}

TEST_CASE("harmonicity of h: finite differences at random interior points") {
  Lcg rng(71);
  for (auto fam : {Family::A, Family::B, Family::D}) {
    auto rs = build_root_system(fam, 3);
    std::vector<Vec> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(testutil::random_interior(rs, rng));
    auto rep = check_harmonic_continuous(rs, pts, 1e-6);
    CHECK(rep.fd_pass);
    CHECK(rep.pass());
  }
}

TEST_CASE("non-harmonic control: h^2 fails the finite-difference check") {
  // guards against a vacuous FD criterion
  auto b2 = build_root_system(Family::B, 2);
  const double hstep = 1.0 / 64.0;
  Vec x{2.3, 1.1};
  double stencil = 0.0;
  for (int i = 0; i < 2; ++i) {
    Vec p = x, m = x;
    p[i] += hstep;
    m[i] -= hstep;
    stencil += sq(h_product(b2, p)) - 2 * sq(h_product(b2, x)) + sq(h_product(b2, m));
  }
  CHECK(std::abs(stencil) / (hstep * hstep) > 1.0);  // clearly nonzero Laplacian
}

TEST_CASE("discrete harmonicity is exact on integer grids") {
  auto a2 = build_root_system(Family::A, 2);
  auto a3 = build_root_system(Family::A, 3);
  auto b2 = build_root_system(Family::B, 2);
  auto d3 = build_root_system(Family::D, 3);

  std::vector<IVec> grid2, grid3;
  for (int x = -5; x <= 5; x += 2)
    for (int y = -5; y <= 5; y += 2) {
      grid2.push_back({x, y});
      for (int z = -5; z <= 5; z += 5) grid3.push_back({x, y, z});
    }

  CHECK(check_harmonic_discrete(a2, unit_step_set(a2), grid2).exact_zero);
  CHECK(check_harmonic_discrete(a3, unit_step_set(a3), grid3).exact_zero);
  CHECK(check_harmonic_discrete(d3, unit_step_set(d3), grid3).exact_zero);

  auto bsteps = make_step_set(
      b2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  CHECK(check_harmonic_discrete(b2, bsteps, grid2).exact_zero);
  CHECK(check_harmonic_discrete(b2, unit_step_set(b2), grid2).exact_zero);

  // asymmetric step set is rejected
  StepSet bad{{{1, 0}, {-1, 0}}};
  CHECK_THROWS_AS(check_harmonic_discrete(a2, bad, grid2), validation_error);
}

TEST_CASE("quadrature survival benchmarks") {
  auto b1 = build_root_system(Family::B, 1);
  CHECK(rel_close(quadrature_survival(b1, {1}, 1), 0.6826894921370859, 1e-6));

  auto a2 = build_root_system(Family::A, 2);
  CHECK(rel_close(quadrature_survival(a2, {1, 0}, 1), 0.5204998778130465, 1e-6));

  CHECK(rel_close(quadrature_survival(b1, {1}, 1e-4), 1.0, 1e-8));

  auto a4 = build_root_system(Family::A, 4);
  CHECK_THROWS_AS(quadrature_survival(a4, {3, 2, 1, 0}, 1), validation_error);
}

TEST_CASE("quadrature survival for n = 3 matches the A-family exact product") {
  // for A n=3 there is no elementary closed form, but D n=3's cousin:
  // use B n=1 cross-product structure instead -- here simply check
  // consistency between quadrature and the asymptotic law at deep t
  auto a3 = build_root_system(Family::A, 3);
  const double t = 225.0;
  const double p = quadrature_survival(a3, {2, 1, 0}, t, 1e-9);
  const auto law = survival_asymptote(Family::A, {2, 1, 0});
  CHECK(rel_close(p, law.evaluate(t), 0.05));
}
