#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <unordered_set>

#include "weyl/common.hpp"
#include "weyl/rng.hpp"
#include "weyl/root_system.hpp"
#include "weyl/stats.hpp"

namespace weyl::mc {

struct SimConfig {
  RootSystem rs;
  Vec eta;
  double horizon_t = 1.0;
  double dt = 1e-3;
  long long n_paths = 1;
  std::uint64_t seed = 0;
  bool bridge_correction = true;
};

struct SurvivalEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  long long n_paths = 0;
  double t = 0.0;
  std::vector<Vec> endpoint_samples;        // survivors only, in path order
  std::vector<std::uint8_t> survived_flags; // one per path
  std::string warning;
};

struct DriftSpec {
  std::function<Vec(const Vec&)> mu;
  double sigma_diag = 1.0;
};

/// mu(x) = sum_{alpha > 0} alpha / (alpha, x): the drift of the
/// h-transformed motion, diverging at every reflecting hyperplane.
inline DriftSpec make_chamber_drift(const RootSystem& rs) {
  return DriftSpec{[rs](const Vec& x) {
    Vec mu(x.size(), 0.0);
    for (const auto& a : rs.positive_roots) {
      const double d = detail::dot(a, x);
      for (std::size_t i = 0; i < x.size(); ++i)
        if (a[i] != 0) mu[i] += a[i] / d;
    }
    return mu;
  }, 1.0};
}

namespace detail_mc {

inline void parallel_for(long long n, const std::function<void(long long, long long)>& run_range) {
  const unsigned workers =
      static_cast<unsigned>(std::min<long long>(hardware_workers(), std::max<long long>(n, 1)));
  if (workers <= 1) {
    run_range(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const long long lo = n * w / workers;
    const long long hi = n * (w + 1) / workers;
    pool.emplace_back([=, &run_range] { run_range(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

struct Walls {
  std::vector<std::vector<int>> roots;  // simple roots
  std::vector<double> inv_norm;
};

inline Walls chamber_walls(const RootSystem& rs) {
  Walls w;
  w.roots = rs.simple_roots;
  for (const auto& a : w.roots) w.inv_norm.push_back(1.0 / weyl::detail::norm(a));
  return w;
}

struct PathOutcome {
  bool survived = false;
  long long exit_step = -1;  // step index at which the path died
};

/// One absorbed Euler path: i.i.d. Gaussian increments (exact for Brownian
/// motion), killed on leaving the chamber; with bridge_correction also
/// killed with the within-step wall-crossing probability
/// exp(-2 d0 d1 / dt) per wall.
inline PathOutcome run_absorbed_path(const Walls& walls, Vec& x, long long n_steps,
                                     double dt, bool bridge, RngStream& rng) {
  const int n = static_cast<int>(x.size());
  const int nw = static_cast<int>(walls.roots.size());
  const double sdt = std::sqrt(dt);
  std::vector<double> dist_before(nw);
  for (long long step = 0; step < n_steps; ++step) {
    for (int k = 0; k < nw; ++k)
      dist_before[k] =
          weyl::detail::dot(walls.roots[k], x) * walls.inv_norm[k];
    for (int i = 0; i < n; ++i) x[i] += sdt * rng.gauss();
    double survive = 1.0;
    for (int k = 0; k < nw; ++k) {
      const double d1 = weyl::detail::dot(walls.roots[k], x) * walls.inv_norm[k];
      if (d1 <= 0.0) return {false, step};
      if (!bridge) continue;
      const double q = 2.0 * dist_before[k] * d1 / dt;
      if (q < 40.0) survive *= 1.0 - std::exp(-q);
    }
    if (survive < 1.0 && rng.uniform() > survive) return {false, step};
  }
  return {true, n_steps};
}

}  // namespace detail_mc

/// Absorbed Brownian motion started at eta; p_hat is the surviving
/// fraction at horizon_t and endpoint_samples holds the survivors.
inline SurvivalEstimate simulate_absorbed(const SimConfig& cfg) {
  if (!(cfg.dt > 0.0) || cfg.dt > cfg.horizon_t + 1e-15)
    throw validation_error("simulate_absorbed requires 0 < dt <= horizon_t");
  if (cfg.n_paths < 1) throw validation_error("n_paths must be >= 1");
  SurvivalEstimate est;
  est.n_paths = cfg.n_paths;
  est.t = cfg.horizon_t;
  if (!chamber_contains(cfg.rs, cfg.eta, /*strict=*/true)) {
    if (!chamber_contains(cfg.rs, cfg.eta, /*strict=*/false))
      throw validation_error("eta must lie in the chamber");
    est.warning = "eta lies on a wall: the process is absorbed immediately";
    return est;
  }
  const long long n_steps =
      std::max<long long>(1, llround(std::ceil(cfg.horizon_t / cfg.dt - 1e-12)));
  const double dt = cfg.horizon_t / double(n_steps);
  const auto walls = detail_mc::chamber_walls(cfg.rs);
  std::vector<std::uint8_t> survived(cfg.n_paths, 0);
  std::vector<Vec> ends(cfg.n_paths);
  detail_mc::parallel_for(cfg.n_paths, [&](long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i) {
      RngStream rng = make_stream(cfg.seed, 1, std::uint64_t(i));
      Vec x = cfg.eta;
      auto out = detail_mc::run_absorbed_path(walls, x, n_steps, dt,
                                              cfg.bridge_correction, rng);
      survived[i] = out.survived ? 1 : 0;
      if (out.survived) ends[i] = std::move(x);
    }
  });
  long long alive = 0;
  for (long long i = 0; i < cfg.n_paths; ++i)
    if (survived[i]) {
      ++alive;
      est.endpoint_samples.push_back(std::move(ends[i]));
    }
  est.survived_flags.assign(survived.begin(), survived.end());
  est.p_hat = double(alive) / double(cfg.n_paths);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / double(cfg.n_paths));
  return est;
}

/// Survival estimates at each grid time from one ensemble of paths
/// (first-exit times recorded in a single pass to max(t_grid)).
inline std::vector<SurvivalEstimate> survival_curve(const SimConfig& cfg,
                                                    const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw validation_error("empty time grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw validation_error("time grid must be strictly increasing");
  if (!chamber_contains(cfg.rs, cfg.eta, /*strict=*/true))
    throw validation_error("eta must be strictly interior");
  const double horizon = t_grid.back();
  const long long n_steps =
      std::max<long long>(1, llround(std::ceil(horizon / cfg.dt - 1e-12)));
  const double dt = horizon / double(n_steps);
  const auto walls = detail_mc::chamber_walls(cfg.rs);
  std::vector<long long> exit_step(cfg.n_paths);
  std::vector<Vec> ends(cfg.n_paths);
  detail_mc::parallel_for(cfg.n_paths, [&](long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i) {
      RngStream rng = make_stream(cfg.seed, 1, std::uint64_t(i));
      Vec x = cfg.eta;
      auto out = detail_mc::run_absorbed_path(walls, x, n_steps, dt,
                                              cfg.bridge_correction, rng);
      exit_step[i] = out.survived ? n_steps : out.exit_step;
      if (out.survived) ends[i] = std::move(x);
    }
  });
  std::vector<SurvivalEstimate> curve;
  for (double tg : t_grid) {
    SurvivalEstimate e;
    e.t = tg;
    e.n_paths = cfg.n_paths;
    long long alive = 0;
    const double steps_needed = tg / dt - 1e-9;
    for (long long i = 0; i < cfg.n_paths; ++i)
      if (double(exit_step[i]) >= steps_needed) ++alive;
    e.p_hat = double(alive) / double(cfg.n_paths);
    e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / double(cfg.n_paths));
    curve.push_back(std::move(e));
  }
  for (long long i = 0; i < cfg.n_paths; ++i)
    if (exit_step[i] == n_steps)
      curve.back().endpoint_samples.push_back(std::move(ends[i]));
  return curve;
}

struct ConditionedRun {
  std::vector<Vec> endpoints;  // valid paths only
  long long n_invalid = 0;
};

/// Euler-Maruyama for dX = mu(X) dt + dW with the theta-guard:
/// the local step is halved while |mu| h > theta * (distance to the
/// nearest wall). A proposed exit is redrawn up to 100 times, then the
/// step is halved; below dt_min = dt 2^-20 the path is flagged invalid.
inline ConditionedRun simulate_conditioned(
    const SimConfig& cfg, const DriftSpec& drift,
    const std::function<void(long long, double, const Vec&)>& observer = {}) {
  if (!chamber_contains(cfg.rs, cfg.eta, /*strict=*/true))
    throw validation_error("eta must be strictly interior");
  if (!(cfg.dt > 0.0)) throw validation_error("dt must be positive");
  constexpr double kTheta = 0.25;
  const double dt_min = cfg.dt * 0x1.0p-20;
  const RootSystem& rs = cfg.rs;
  std::vector<std::uint8_t> valid(cfg.n_paths, 0);
  std::vector<Vec> ends(cfg.n_paths);
  detail_mc::parallel_for(cfg.n_paths, [&](long long lo, long long hi) {
    for (long long p = lo; p < hi; ++p) {
      RngStream rng = make_stream(cfg.seed, 2, std::uint64_t(p));
      Vec x = cfg.eta;
      Vec prop(x.size());
      double t = 0.0;
      bool ok = true;
      while (t < cfg.horizon_t - 1e-15 * cfg.horizon_t) {
        const Vec mu = drift.mu(x);
        const double mu_norm = norm2(mu);
        const double dwall = min_wall_distance(rs, x);
        double h = std::min(cfg.dt, cfg.horizon_t - t);
        while (mu_norm * h > kTheta * dwall && h > dt_min) h *= 0.5;
        // at the substep floor the guard may still be violated; clamp the
        // drift displacement to theta * dwall so it cannot overshoot a wall
        // (no effect when the guard was satisfiable)
        const double clamp =
            (mu_norm * h > kTheta * dwall && mu_norm > 0.0)
                ? kTheta * dwall / (mu_norm * h)
                : 1.0;
        bool accepted = false;
        while (!accepted) {
          const double sh = std::sqrt(h);
          for (int attempt = 0; attempt < 100; ++attempt) {
            for (std::size_t i = 0; i < x.size(); ++i)
              prop[i] = x[i] + clamp * mu[i] * h + sh * rng.gauss();
            if (chamber_contains(rs, prop, /*strict=*/true)) {
              accepted = true;
              break;
            }
          }
          if (!accepted) {
            h *= 0.5;
            if (h < dt_min) break;
          }
        }
        if (!accepted) {
          ok = false;
          break;
        }
        x = prop;
        t += h;
        if (observer) observer(p, t, x);
      }
      valid[p] = ok ? 1 : 0;
      if (ok) ends[p] = std::move(x);
    }
  });
  ConditionedRun run;
  for (long long p = 0; p < cfg.n_paths; ++p)
    if (valid[p])
      run.endpoints.push_back(std::move(ends[p]));
    else
      ++run.n_invalid;
  if (double(run.n_invalid) > 0.001 * double(cfg.n_paths))
    throw numeric_error("more than 0.1% of conditioned paths hit the substep floor");
  return run;
}

/// Two-sided KS of |sample| / sqrt(t) against the chi distribution.
inline KsResult radial_compare(const std::vector<Vec>& samples, int dof, double t) {
  if (samples.size() < 1000)
    throw validation_error("radial_compare needs at least 1000 samples");
  std::vector<double> r;
  r.reserve(samples.size());
  const double s = std::sqrt(t);
  for (const auto& x : samples) r.push_back(norm2(x) / s);
  return ks_one_sample(r, [dof](double v) { return chi_cdf(v, dof); });
}

struct MultilevelCurve {
  std::vector<double> times;
  std::vector<double> p;       // cumulative survival estimate at each time
  std::vector<double> log_se;  // approximate standard error of log p
  std::vector<Vec> final_samples;
  std::vector<std::uint64_t> final_clans;  // ancestor labels for thinning
};

/// Multilevel-splitting survival estimator for deep t: the population of
/// survivors is deterministically resampled back to n_paths at each grid
/// time, and the survival probability is the product of the per-stage
/// survival fractions. Clan labels are frozen at the last grid time
/// <= clan_mark_fraction * t_final so nearly independent survivors can be
/// thinned out of the final population.
inline MultilevelCurve survival_multilevel(const SimConfig& cfg,
                                           const std::vector<double>& t_grid,
                                           int steps_per_stage = 256,
                                           double clan_mark_fraction = 1.0 / 16) {
  if (t_grid.empty()) throw validation_error("empty time grid");
  if (!chamber_contains(cfg.rs, cfg.eta, /*strict=*/true))
    throw validation_error("eta must be strictly interior");
  const long long N = cfg.n_paths;
  const auto walls = detail_mc::chamber_walls(cfg.rs);
  std::vector<Vec> population(N, cfg.eta);
  std::vector<std::uint64_t> clans(N, 0);
  MultilevelCurve out;
  double logp = 0.0, logvar = 0.0, t_prev = 0.0;
  const double t_mark = clan_mark_fraction * t_grid.back();
  for (std::size_t stage = 0; stage < t_grid.size(); ++stage) {
    const double t_next = t_grid[stage];
    if (!(t_next > t_prev)) throw validation_error("time grid must increase");
    const double span = t_next - t_prev;
    const long long n_steps = steps_per_stage;
    const double dt = span / double(n_steps);
    std::vector<std::uint8_t> survived(N, 0);
    std::vector<Vec> ends(N);
    detail_mc::parallel_for(N, [&](long long lo, long long hi) {
      for (long long i = lo; i < hi; ++i) {
        RngStream rng = make_stream(cfg.seed, 100 + stage, std::uint64_t(i));
        Vec x = population[i];
        auto o = detail_mc::run_absorbed_path(walls, x, n_steps, dt,
                                              cfg.bridge_correction, rng);
        survived[i] = o.survived ? 1 : 0;
        if (o.survived) ends[i] = std::move(x);
      }
    });
    std::vector<Vec> surv;
    std::vector<std::uint64_t> surv_clans;
    for (long long i = 0; i < N; ++i)
      if (survived[i]) {
        surv.push_back(std::move(ends[i]));
        surv_clans.push_back(clans[i]);
      }
    if (surv.empty())
      throw numeric_error("multilevel population died out at t = " +
                          std::to_string(t_next));
    const double f = double(surv.size()) / double(N);
    logp += std::log(f);
    logvar += (1.0 - f) / (double(N) * f);
    out.times.push_back(t_next);
    out.p.push_back(std::exp(logp));
    out.log_se.push_back(std::sqrt(logvar));
    // deterministic resampling back to N members
    for (long long i = 0; i < N; ++i) {
      population[i] = surv[i % surv.size()];
      clans[i] = surv_clans[i % surv.size()];
    }
    if (t_prev < t_mark && t_next >= t_mark)
      for (long long i = 0; i < N; ++i) clans[i] = std::uint64_t(i) + 1;
    t_prev = t_next;
  }
  out.final_samples = std::move(population);
  out.final_clans = std::move(clans);
  return out;
}

/// Keeps at most one sample per clan (ancestor label), up to cap.
inline std::vector<Vec> thin_by_clan(const std::vector<Vec>& samples,
                                     const std::vector<std::uint64_t>& clans,
                                     std::size_t cap) {
  std::vector<Vec> out;
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < samples.size() && out.size() < cap; ++i) {
    if (!seen.insert(clans[i]).second) continue;
    out.push_back(samples[i]);
  }
  return out;
}

/// Geometric time grid t0, t0*r, ..., capped at t_end (t_end appended).
inline std::vector<double> geometric_grid(double t0, double t_end, double ratio = 2.0) {
  std::vector<double> g;
  for (double t = t0; t < t_end * (1.0 - 1e-12); t *= ratio) g.push_back(t);
  g.push_back(t_end);
  return g;
}

}  // namespace weyl::mc
