#pragma once

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weyl/asymptotics.hpp"
#include "weyl/density.hpp"
#include "weyl/io.hpp"
#include "weyl/montecarlo.hpp"
#include "weyl/oracle.hpp"
#include "weyl/randmat.hpp"

namespace weyl::cli {

using io::Json;

namespace detail_cli {

inline Vec parse_coords(const std::string& s) {
  Vec v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw validation_error("bad coordinate '" + tok + "'");
    }
    if (used != tok.size()) throw validation_error("bad coordinate '" + tok + "'");
    v.push_back(x);
  }
  if (v.empty()) throw validation_error("empty coordinate list");
  return v;
}

inline std::string coords_str(const Vec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += io::format_double(v[i]);
  }
  return s;
}

/// Sorts an input point into the chamber representative, warning instead
/// of erroring on unordered coordinates.
inline Vec canonical_input(const RootSystem& rs, const Vec& x, const char* name) {
  if (static_cast<int>(x.size()) != rs.rank_n)
    throw validation_error(std::string(name) + " has " +
                           std::to_string(x.size()) + " coordinates, expected " +
                           std::to_string(rs.rank_n));
  auto [y, changed] = canonicalize(rs, x);
  if (changed)
    std::cerr << "warning: " << name
              << " was not a chamber representative; reordered to ("
              << coords_str(y) << ")\n";
  return y;
}

inline Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

struct Emitter {
  std::string out_path;
  std::string timestamp;
  io::RunManifest manifest;

  Json with_manifest(Json payload) const {
    payload["manifest"] = io::to_json(manifest);
    return payload;
  }
  // scalar commands: JSON to stdout, optionally to --out
  int emit_json(Json payload) const {
    const std::string text = with_manifest(std::move(payload)).dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) io::write_text_file(out_path, text);
    return 0;
  }
  // sample commands: CSV to --out, summary JSON to stdout and sibling file
  int emit_csv_with_summary(const std::string& csv, Json summary) const {
    if (out_path.empty())
      throw validation_error("this subcommand requires --out <path.csv>");
    io::write_text_file(out_path, csv);
    Json s = with_manifest(std::move(summary));
    s["output_csv"] = out_path;
    const std::string text = s.dump(2) + "\n";
    io::write_text_file(io::summary_path_for(out_path), text);
    std::cout << text;
    return 0;
  }
};

}  // namespace detail_cli

/// Entry point shared by the binary and the in-process tests.
/// Exit codes: 0 success, 2 validation error, 3 numeric failure.
inline int run(std::vector<std::string> args) {
  CLI::App app{"Brownian motion in Weyl chambers: densities, asymptotics, "
               "simulation, random matrices, and exact oracles"};
  app.require_subcommand(1);

  std::string family_s = "A", eta_s, lam_s, out_path, format = "json";
  std::string boundary_s = "absorbing", method_s = "sum", suite, timestamp;
  int n = 2, kmax = 6;
  double t = 1.0, dt = 1e-3;
  long long paths = 0;
  std::uint64_t seed = 0;
  bool bridge_off = false;
  bool have_seed = false;

  auto add_common = [&](CLI::App* sub, bool needs_eta) {
    sub->add_option("--family", family_s, "root-system family: A, B or D")
        ->required();
    sub->add_option("--n", n, "rank (number of coordinates)")->required();
    auto* eta_opt = sub->add_option("--eta", eta_s, "start point, comma-separated");
    if (needs_eta) eta_opt->required();
    sub->add_option("--out", out_path, "output file path");
    sub->add_option("--format", format, "json or csv");
    sub->add_option("--timestamp", timestamp,
                    "override the manifest timestamp (reproducible runs)");
  };

  auto* density = app.add_subcommand("density", "constrained transition density");
  add_common(density, true);
  density->add_option("--lambda", lam_s, "end point, comma-separated")->required();
  density->add_option("--t", t, "time")->required();
  density->add_option("--boundary", boundary_s, "absorbing or reflecting");
  density->add_option("--method", method_s, "sum or det");

  auto* survival = app.add_subcommand("survival", "survival probability");
  add_common(survival, true);
  survival->add_option("--t", t, "time")->required();
  survival->add_option("--paths", paths, "Monte Carlo paths (default: quadrature)");
  survival->add_option("--dt", dt, "Euler step for Monte Carlo");
  survival->add_option("--seed", seed, "RNG seed")->each([&](const std::string&) {
    have_seed = true;
  });
  survival->add_flag("--no-bridge", bridge_off, "disable bridge correction");

  auto* asymptote = app.add_subcommand("asymptote", "survival law coefficient * t^exponent");
  add_common(asymptote, true);

  auto* simulate = app.add_subcommand("simulate", "absorbed Brownian paths");
  add_common(simulate, true);
  simulate->add_option("--t", t, "horizon")->required();
  simulate->add_option("--dt", dt, "Euler step")->required();
  simulate->add_option("--paths", paths, "number of paths")->required();
  simulate->add_option("--seed", seed, "RNG seed")->required();
  simulate->add_flag("--no-bridge", bridge_off, "disable bridge correction");

  auto* conditioned = app.add_subcommand("conditioned", "h-transformed (repelling) paths");
  add_common(conditioned, true);
  conditioned->add_option("--t", t, "horizon")->required();
  conditioned->add_option("--dt", dt, "base Euler step")->required();
  conditioned->add_option("--paths", paths, "number of paths")->required();
  conditioned->add_option("--seed", seed, "RNG seed")->required();

  auto* rmt_cmd = app.add_subcommand("rmt", "matrix-ensemble eigenvalue samples");
  add_common(rmt_cmd, false);
  rmt_cmd->add_option("--t", t, "time")->required();
  rmt_cmd->add_option("--paths", paths, "number of samples")->required();
  rmt_cmd->add_option("--seed", seed, "RNG seed")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "independent validation suites");
  add_common(oracle_cmd, false);
  oracle_cmd->add_option("--suite", suite, "harmonic, lattice or quadrature")
      ->required();
  oracle_cmd->add_option("--t", t, "time for the quadrature suite");
  oracle_cmd->add_option("--k", kmax, "max walk length for the lattice suite");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 2;
  }

  // sample-emitting subcommands default to CSV output
  for (CLI::App* sub : {simulate, conditioned, rmt_cmd})
    if (*sub && sub->count("--format") == 0) format = "csv";

  try {
    if (format != "json" && format != "csv")
      throw validation_error("--format must be json or csv");
    const Family family = parse_family(family_s);
    auto rs = build_root_system(family, n);

    detail_cli::Emitter em;
    em.out_path = out_path;
    em.manifest.seed = seed;
    em.manifest.timestamp = timestamp.empty() ? io::utc_timestamp_now() : timestamp;
    auto param = [&](const std::string& k, const std::string& v) {
      em.manifest.parameters[k] = v;
    };
    param("family", family_s);
    param("n", std::to_string(n));

    if (*density) {
      em.manifest.command = "density";
      const Vec eta = detail_cli::canonical_input(rs, detail_cli::parse_coords(eta_s), "eta");
      const Vec lam = detail_cli::canonical_input(rs, detail_cli::parse_coords(lam_s), "lambda");
      param("eta", detail_cli::coords_str(eta));
      param("lambda", detail_cli::coords_str(lam));
      param("t", io::format_double(t));
      param("boundary", boundary_s);
      param("method", method_s);
      const bool reflecting = (boundary_s == "reflecting");
      if (!reflecting && boundary_s != "absorbing")
        throw validation_error("--boundary must be absorbing or reflecting");
      double value = 0.0;
      std::string method_used;
      if (method_s == "sum") {
        DensityRequest req{rs, eta, lam, t,
                           reflecting ? Boundary::reflecting : Boundary::absorbing,
                           Method::group_sum};
        value = reflection_density(req);
        method_used = "group_sum";
      } else if (method_s == "det") {
        if (reflecting) {
          value = permanent_density(family, eta, lam, t);
          method_used = "permanent";
        } else {
          value = determinant_density(rs, eta, lam, t);
          method_used = "determinant";
        }
      } else {
        throw validation_error("--method must be sum or det");
      }
      return em.emit_json(Json{{"value", value},
                               {"method", method_used},
                               {"boundary", boundary_s},
                               {"inputs",
                                Json{{"family", family_s},
                                     {"n", n},
                                     {"eta", detail_cli::vec_json(eta)},
                                     {"lambda", detail_cli::vec_json(lam)},
                                     {"t", t}}}});
    }

    if (*survival) {
      em.manifest.command = "survival";
      const Vec eta = detail_cli::canonical_input(rs, detail_cli::parse_coords(eta_s), "eta");
      param("eta", detail_cli::coords_str(eta));
      param("t", io::format_double(t));
      if (paths > 0) {
        if (!have_seed)
          throw validation_error("Monte Carlo survival requires --seed");
        param("paths", std::to_string(paths));
        param("dt", io::format_double(dt));
        param("bridge", bridge_off ? "off" : "on");
        mc::SimConfig cfg{rs, eta, t, dt, paths, seed, !bridge_off};
        auto est = mc::simulate_absorbed(cfg);
        Json j{{"p", est.p_hat},
               {"std_err", est.std_err},
               {"estimator", "monte_carlo"},
               {"n_paths", est.n_paths}};
        if (!est.warning.empty()) j["warning"] = est.warning;
        return em.emit_json(j);
      }
      const double p = oracle::quadrature_survival(rs, eta, t);
      return em.emit_json(Json{{"p", p}, {"estimator", "quadrature"}});
    }

    if (*asymptote) {
      em.manifest.command = "asymptote";
      const Vec eta = detail_cli::canonical_input(rs, detail_cli::parse_coords(eta_s), "eta");
      param("eta", detail_cli::coords_str(eta));
      auto law = survival_asymptote(family, eta);
      Json j{{"coefficient", law.coefficient}, {"exponent", law.exponent}};
      if (!law.warning.empty()) j["warning"] = law.warning;
      return em.emit_json(j);
    }

    if (*simulate) {
      em.manifest.command = "simulate";
      const Vec eta = detail_cli::canonical_input(rs, detail_cli::parse_coords(eta_s), "eta");
      param("eta", detail_cli::coords_str(eta));
      param("t", io::format_double(t));
      param("dt", io::format_double(dt));
      param("paths", std::to_string(paths));
      param("bridge", bridge_off ? "off" : "on");
      mc::SimConfig cfg{rs, eta, t, dt, paths, seed, !bridge_off};
      auto est = mc::simulate_absorbed(cfg);
      Json summary{{"p_hat", est.p_hat},
                   {"std_err", est.std_err},
                   {"n_paths", est.n_paths},
                   {"survivors", Json::number_integer_t(est.endpoint_samples.size())}};
      if (!est.warning.empty()) summary["warning"] = est.warning;
      if (format == "json") {
        Json samples = Json::array();
        for (const auto& x : est.endpoint_samples)
          samples.push_back(detail_cli::vec_json(x));
        summary["survivor_endpoints"] = samples;
        return em.emit_json(summary);
      }
      return em.emit_csv_with_summary(
          io::endpoint_csv(est.endpoint_samples, est.survived_flags, n),
          std::move(summary));
    }

    if (*conditioned) {
      em.manifest.command = "conditioned";
      const Vec eta = detail_cli::canonical_input(rs, detail_cli::parse_coords(eta_s), "eta");
      param("eta", detail_cli::coords_str(eta));
      param("t", io::format_double(t));
      param("dt", io::format_double(dt));
      param("paths", std::to_string(paths));
      mc::SimConfig cfg{rs, eta, t, dt, paths, seed, true};
      auto run = mc::simulate_conditioned(cfg, mc::make_chamber_drift(rs));
      Json summary{{"n_paths", paths},
                   {"n_invalid", run.n_invalid},
                   {"endpoints", Json::number_integer_t(run.endpoints.size())}};
      if (format == "json") {
        Json samples = Json::array();
        for (const auto& x : run.endpoints) samples.push_back(detail_cli::vec_json(x));
        summary["endpoints_list"] = samples;
        return em.emit_json(summary);
      }
      return em.emit_csv_with_summary(io::samples_csv(run.endpoints, n),
                                      std::move(summary));
    }

    if (*rmt_cmd) {
      em.manifest.command = "rmt";
      param("t", io::format_double(t));
      param("paths", std::to_string(paths));
      const auto algebra = rmt::algebra_for(family, n);
      const int size = rmt::matrix_size(family, n);
      auto samples = rmt::ensemble_eigen_samples(algebra, size, t, paths, seed);
      Json summary{{"algebra", family == Family::A
                                   ? "su_" + std::to_string(size)
                                   : "so_" + std::to_string(size)},
                   {"matrix_size", size},
                   {"n_samples", Json::number_integer_t(samples.size())}};
      if (format == "json") {
        Json arr = Json::array();
        for (const auto& x : samples) arr.push_back(detail_cli::vec_json(x));
        summary["samples"] = arr;
        return em.emit_json(summary);
      }
      return em.emit_csv_with_summary(io::samples_csv(samples, n), std::move(summary));
    }

    if (*oracle_cmd) {
      em.manifest.command = "oracle";
      param("suite", suite);
      Json checks = Json::array();
      bool all_pass = true;
      auto add_check = [&](const std::string& name, bool pass,
                           const std::string& detail) {
        checks.push_back(Json{{"name", name}, {"pass", pass}, {"detail", detail}});
        all_pass = all_pass && pass;
      };

      if (suite == "harmonic") {
        std::vector<Vec> pts;
        Vec base = interior_point(rs);
        pts.push_back(base);
        Vec scaled = base;
        for (auto& v : scaled) v *= 1.3;
        pts.push_back(scaled);
        Vec shifted = base;
        shifted[0] += 0.35;
        pts.push_back(shifted);
        auto rep = oracle::check_harmonic_continuous(rs, pts);
        add_check("laplacian_h_symbolic_zero",
                  rep.symbolic_checked ? rep.symbolic_zero : true,
                  rep.symbolic_checked
                      ? ("h expanded to " + std::to_string(rep.h_terms) + " terms")
                      : "skipped: term cap exceeded, finite differences only");
        add_check("laplacian_h_finite_difference", rep.fd_pass,
                  "max relative residual " + io::format_double(rep.max_fd_residual));
        std::vector<oracle::IVec> grid;
        const int lo_g = -3, hi_g = 3;
        std::vector<oracle::IVec> stack{{}};
        for (int d = 0; d < n; ++d) {
          std::vector<oracle::IVec> nxt;
          for (const auto& p : stack)
            for (int v = lo_g; v <= hi_g; v += 2) {
              auto q = p;
              q.push_back(v);
              nxt.push_back(q);
            }
          stack.swap(nxt);
        }
        grid = stack;
        auto drep = oracle::check_harmonic_discrete(rs, oracle::unit_step_set(rs), grid);
        add_check("discrete_laplacian_unit_steps", drep.exact_zero,
                  std::to_string(drep.n_points) + " integer points, exact arithmetic");
      } else if (suite == "lattice") {
        if (kmax < 0 || kmax > 12)
          throw validation_error("--k must be between 0 and 12");
        auto steps = oracle::unit_step_set(rs);
        oracle::IVec start(n);
        for (int i = 0; i < n; ++i) start[i] = 2 * (n - i);
        std::vector<oracle::IVec> ends{start};
        auto end2 = start;
        end2[0] += 2;
        ends.push_back(end2);
        auto end3 = start;
        end3[n - 1] += 1;
        end3[0] += 1;
        ends.push_back(end3);
        long long compared = 0;
        bool equal = true;
        std::string mismatch;
        for (int k = 0; k <= kmax; ++k)
          for (const auto& end : ends) {
            const auto dp = oracle::lattice_walk_dp(rs, start, end, k, steps);
            const auto rf = oracle::lattice_walk_reflection(rs, start, end, k, steps);
            ++compared;
            if (dp != rf) {
              equal = false;
              mismatch = "k=" + std::to_string(k);
            }
          }
        add_check("reflection_equals_dp", equal,
                  equal ? std::to_string(compared) + " (start,end,k) combinations"
                        : ("mismatch at " + mismatch));
      } else if (suite == "quadrature") {
        if (n > 3)
          throw validation_error("quadrature suite supports n <= 3");
        Vec eta = eta_s.empty()
                      ? interior_point(rs)
                      : detail_cli::canonical_input(
                            rs, detail_cli::parse_coords(eta_s), "eta");
        param("eta", detail_cli::coords_str(eta));
        param("t", io::format_double(t));
        if (family == Family::B && n == 1) {
          const double q = oracle::quadrature_survival(rs, {1.0}, 1.0);
          add_check("survival_benchmark_one_wall",
                    std::abs(q - 0.6826894921370859) < 1e-6,
                    "survival(eta=1, t=1) = " + io::format_double(q));
        }
        if (family == Family::A && n == 2) {
          const double q = oracle::quadrature_survival(rs, {1.0, 0.0}, 1.0);
          add_check("survival_benchmark_one_wall",
                    std::abs(q - 0.5204998778130465) < 1e-6,
                    "survival(eta=(1,0), t=1) = " + io::format_double(q));
        }
        if (n == 2) {
          double lo = 0.0, hi = 10.0 * std::sqrt(t);
          for (double v : eta) hi = std::max(hi, std::abs(v) + 10.0 * std::sqrt(t));
          if (family == Family::A) lo = -hi;
          const double mass = chamber_integrate(
              rs,
              [&](const Vec& lam) { return conditioned_density(rs, eta, lam, t); },
              lo, hi, 1e-8);
          add_check("conditioned_mass_is_one", std::abs(mass - 1.0) < 1e-6,
                    "integral = " + io::format_double(mass));
          const double rmass = chamber_integrate(
              rs,
              [&](const Vec& lam) { return permanent_density(family, eta, lam, t); },
              lo, hi, 1e-8);
          add_check("reflecting_mass_is_one", std::abs(rmass - 1.0) < 1e-6,
                    "integral = " + io::format_double(rmass));
        }
        if (n <= 2 || family == Family::A) {
          const double td = 225.0;
          const double q = oracle::quadrature_survival(rs, eta, td, 1e-10);
          const auto law = survival_asymptote(family, eta);
          const double ratio = q / law.evaluate(td);
          add_check("survival_matches_asymptote_deep_t",
                    std::abs(ratio - 1.0) < 0.08,
                    "quadrature/law at t=225: " + io::format_double(ratio));
        }
      } else {
        throw validation_error("--suite must be harmonic, lattice or quadrature");
      }
      const int rc = all_pass ? 0 : 3;
      em.emit_json(Json{{"suite", suite}, {"checks", checks}, {"all_pass", all_pass}});
      return rc;
    }

    throw validation_error("no subcommand given");
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace weyl::cli
