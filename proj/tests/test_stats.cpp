#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "weyl/stats.hpp"

using namespace weyl;
using testutil::rel_close;

TEST_CASE("regularized incomplete gamma") {
  // P(1, x) = 1 - exp(-x); P(1/2, x) = erf(sqrt(x))
  for (double x : {0.1, 0.5, 1.0, 2.3, 7.0, 20.0}) {
    CHECK(rel_close(reg_lower_gamma(1.0, x), 1.0 - std::exp(-x), 1e-12));
    CHECK(rel_close(reg_lower_gamma(0.5, x), std::erf(std::sqrt(x)), 1e-12));
  }
  CHECK(reg_lower_gamma(2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(reg_lower_gamma(-1.0, 1.0), validation_error);
}

TEST_CASE("chi distribution CDF closed forms") {
  for (double x : {0.2, 0.7, 1.0, 1.9, 3.1}) {
    CHECK(rel_close(chi_cdf(x, 1), std::erf(x / std::sqrt(2.0)), 1e-12));
    CHECK(rel_close(chi_cdf(x, 2), 1.0 - std::exp(-x * x / 2), 1e-12));
    const double c3 = std::erf(x / std::sqrt(2.0)) -
                      std::sqrt(2.0 / kPi) * x * std::exp(-x * x / 2);
    CHECK(rel_close(chi_cdf(x, 3), c3, 1e-12));
  }
  CHECK(chi_cdf(-1.0, 3) == 0.0);
  CHECK(chi_cdf(50.0, 9) > 1.0 - 1e-12);
}

TEST_CASE("KS one-sample accepts matching and rejects wrong distributions") {
  std::vector<double> q;
  for (int i = 0; i < 2000; ++i) q.push_back((i + 0.5) / 2000.0);
  auto unif = [](double x) { return std::clamp(x, 0.0, 1.0); };
  auto r = ks_one_sample(q, unif);
  CHECK(r.statistic < 1e-3);
  CHECK(r.p_value > 0.99);

  auto wrong = [](double x) { return std::clamp(x * x, 0.0, 1.0); };
  auto rw = ks_one_sample(q, wrong);
  CHECK(rw.p_value < 1e-8);
  CHECK_THROWS_AS(ks_one_sample({}, unif), validation_error);
}

TEST_CASE("KS two-sample") {
  std::vector<double> a, b, c;
  for (int i = 0; i < 1500; ++i) {
    a.push_back((i + 0.5) / 1500.0);
    b.push_back((i + 0.25) / 1500.0);
    c.push_back(0.3 + 0.4 * (i + 0.5) / 1500.0);
  }
  CHECK(ks_two_sample(a, b).p_value > 0.99);
  CHECK(ks_two_sample(a, c).p_value < 1e-8);
}
