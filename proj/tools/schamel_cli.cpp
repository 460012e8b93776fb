// Command-line driver for the cnoidal-wave family of the regularized
// Schamel equation: construction, analytic and numeric spectrum of the
// linearized operator, the orbital-stability functional, pseudospectral
// time evolution, and the invariant verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include "schamel/collocation.hpp"
#include "schamel/evolution.hpp"
#include "schamel/lame.hpp"
#include "schamel/stability.hpp"
#include "schamel/verify.hpp"
#include "schamel/wave.hpp"

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string manifest_path(const std::string& out) {
  const auto dot = out.find_last_of('.');
  return (dot == std::string::npos ? out : out.substr(0, dot)) + ".manifest.json";
}

void write_manifest(const std::string& command, const json& parameters,
                    const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["parameters"] = parameters;
  m["artifact_version"] = "1.0.0";
  m["outputs"] = outputs;
  std::ofstream f(manifest_path(outputs.front()));
  f << m.dump(2) << "\n";
}

json wave_params_json(const schamel::WaveParams& p) {
  return json{{"L", p.L},         {"k", p.k},         {"k_max", p.k_max},
              {"c", p.c},         {"A", p.A},         {"B", p.B},
              {"beta1", p.beta1}, {"beta2", p.beta2}, {"beta3", p.beta3},
              {"a", p.a},         {"b", p.b},         {"eta", p.eta}};
}

int run_wave(double L, double k, int n, const std::string& out) {
  const schamel::WaveParams p = schamel::params_from_modulus(L, k);
  std::ofstream f(out);
  f << "x,phi,psi,dphi_dx\n";
  for (int j = 0; j < n; ++j) {
    const double x = L * j / n;
    const auto v = schamel::profile(p, x);
    f << num(x) << ',' << num(v.phi) << ',' << num(v.psi) << ','
      << num(schamel::profile_derivative(p, x)) << "\n";
  }
  json params{{"period", L}, {"modulus", k}, {"samples", n}};
  params["wave"] = wave_params_json(p);
  write_manifest("wave", params, {out});
  std::cout << "wrote " << n << " samples to " << out << "\n";
  return 0;
}

struct FamilyRow {
  double k, c, A, b1, b2, b3, Q, V, phi;
  bool ok;
};

int run_family(double L, double kmin, double kmax, int steps, const std::string& out) {
  if (steps < 1) throw std::domain_error("steps must be positive");
  const double kl = schamel::max_modulus(L);
  if (!(kmin > 0.01 && kmax < std::min(0.99, kl) && kmin <= kmax)) {
    throw std::domain_error("modulus range must lie inside (0.01, min(0.99, k_L))");
  }
  std::vector<std::future<FamilyRow>> jobs;
  for (int i = 0; i < steps; ++i) {
    const double k = steps == 1 ? kmin : kmin + (kmax - kmin) * i / (steps - 1.0);
    jobs.push_back(std::async(std::launch::async, [L, k]() {
      const schamel::WaveParams p = schamel::params_from_modulus(L, k);
      const auto g = schamel::stability::g_functions(L, schamel::elliptic::Modulus(k));
      const auto f = schamel::stability::f_and_r(p);
      const double phi = schamel::stability::phi_analytic(p);
      const double M = schamel::stability::M_functional(p);
      FamilyRow row{};
      row.k = k;
      row.c = p.c;
      row.A = p.A;
      row.b1 = p.beta1;
      row.b2 = p.beta2;
      row.b3 = p.beta3;
      row.Q = p.c * p.c * p.c * p.c * g.g2;
      row.V = p.c * p.c * g.g1;
      row.phi = phi;
      row.ok = phi < 0.0 && f.f1 > 0.0 && f.f2 > 0.0 && f.f3 > 0.0 && M > 0.0;
      return row;
    }));
  }
  std::ofstream f(out);
  f << "k,c,A,beta1,beta2,beta3,Q,V,Phi,verdict\n";
  bool all_ok = true;
  for (auto& job : jobs) {
    const FamilyRow row = job.get();
    all_ok = all_ok && row.ok;
    f << num(row.k) << ',' << num(row.c) << ',' << num(row.A) << ',' << num(row.b1)
      << ',' << num(row.b2) << ',' << num(row.b3) << ',' << num(row.Q) << ','
      << num(row.V) << ',' << num(row.phi) << ',' << (row.ok ? 1 : 0) << "\n";
  }
  write_manifest("family",
                 json{{"period", L}, {"k_min", kmin}, {"k_max", kmax}, {"steps", steps}},
                 {out});
  std::cout << "wrote " << steps << " rows to " << out << "\n";
  return all_ok ? 0 : 1;
}

int run_spectrum(double L, double k, int n, const std::string& out) {
  const schamel::WaveParams p = schamel::params_from_modulus(L, k);
  const auto rep = schamel::spectrum_report(p, schamel::Grid::uniform(n, L));
  std::ofstream f(out);
  f << "index,lambda_analytic,lambda_numeric,abs_gap,rel_gap\n";
  for (const auto& row : rep.rows) {
    f << row.index << ',' << num(row.analytic) << ',' << num(row.numeric) << ','
      << num(row.abs_gap) << ',' << num(row.rel_gap) << "\n";
    std::cout << "lambda_" << row.index << ": analytic " << num(row.analytic)
              << "  numeric " << num(row.numeric) << "  rel_gap " << num(row.rel_gap)
              << "\n";
  }
  write_manifest("spectrum", json{{"period", L}, {"modulus", k}, {"grid", n}}, {out});
  if (!rep.pattern_ok) {
    std::cerr << "spectral pattern check failed (negative count "
              << rep.negative_count << ", zero mode " << num(rep.numeric_lambda1)
              << ")\n";
    return 1;
  }
  std::cout << "unique negative eigenvalue and simple zero mode confirmed\n";
  return 0;
}

int run_stability(double L, double k, const std::string& out) {
  const schamel::WaveParams p = schamel::params_from_modulus(L, k);
  const auto rep = schamel::stability::report(p);
  json j{{"g1", rep.g1},
         {"g2", rep.g2},
         {"g3", rep.g3},
         {"s1", rep.s1},
         {"s2", rep.s2},
         {"dg1", rep.dg1},
         {"dg2", rep.dg2},
         {"dg3", rep.dg3},
         {"ds1", rep.ds1},
         {"ds2", rep.ds2},
         {"f1", rep.f1},
         {"f2", rep.f2},
         {"f3", rep.f3},
         {"r", rep.r},
         {"m1", rep.m1},
         {"m2", rep.m2},
         {"m3", rep.m3},
         {"m4", rep.m4},
         {"phi_analytic", rep.phi_analytic},
         {"phi_numeric", rep.phi_numeric},
         {"M_value", rep.M_value},
         {"E_val", rep.E_val},
         {"Q_val", rep.Q_val},
         {"V_val", rep.V_val},
         {"verdicts",
          json{{"phi_negative", rep.phi_negative},
               {"f_positive", rep.f_positive},
               {"r_negative", rep.r_negative},
               {"m1_negative", rep.m1_negative},
               {"M_positive", rep.M_positive}}}};
  std::ofstream f(out);
  f << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
  write_manifest("stability", json{{"period", L}, {"modulus", k}}, {out});
  return rep.all_ok() ? 0 : 1;
}

int run_evolve(double L, double k, double eps, double tmax, double dt,
               const std::string& scheme, int n, std::uint64_t seed, int record_every,
               const std::string& out) {
  const schamel::WaveParams p = schamel::params_from_modulus(L, k);
  schamel::evolution::EvolveConfig cfg;
  cfg.dt = dt;
  cfg.t_max = tmax;
  cfg.record_every = record_every;
  if (scheme == "rk4") {
    cfg.scheme = schamel::evolution::Scheme::Rk4;
  } else if (scheme == "picard") {
    cfg.scheme = schamel::evolution::Scheme::Picard;
  } else {
    throw std::domain_error("scheme must be rk4 or picard");
  }
  const auto trace = schamel::evolution::run_experiment(p, eps, cfg, n, seed);
  std::ofstream f(out);
  f << "t,rho,E,Q,V\n";
  double rho_max = 0.0;
  for (const auto& rec : trace) {
    rho_max = std::max(rho_max, rec.rho);
    f << num(rec.t) << ',' << num(rec.rho) << ',' << num(rec.E) << ',' << num(rec.Q)
      << ',' << num(rec.V) << "\n";
  }
  write_manifest("evolve",
                 json{{"period", L},
                      {"modulus", k},
                      {"perturb", eps},
                      {"tmax", tmax},
                      {"dt", dt},
                      {"scheme", scheme},
                      {"grid", n},
                      {"seed", seed},
                      {"record_every", record_every}},
                 {out});
  std::cout << "max orbit distance " << num(rho_max) << " over t <= " << num(tmax)
            << ", " << trace.size() << " records in " << out << "\n";
  return 0;
}

int run_verify(bool quick) {
  const auto results = schamel::verify::run_all(quick);
  int failures = 0;
  for (const auto& res : results) {
    if (res.pass) {
      std::cout << "PASS " << res.name << "\n";
    } else {
      ++failures;
      std::cout << "FAIL " << res.name << ": " << res.detail << "\n";
    }
  }
  std::cout << results.size() - failures << "/" << results.size() << " checks passed\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cnoidal traveling waves of the regularized Schamel equation"};
  app.require_subcommand(1);

  double L = 16.0, k = 0.3, kmin = 0.1, kmax = 0.8, eps = 1e-3, tmax = 10.0, dt = 1e-3;
  int samples = 1024, grid_spec = 512, grid_evo = 256, steps = 16, record_every = 100;
  std::uint64_t seed = 0x5eed0001u;
  std::string out, scheme = "rk4";
  bool quick = false;

  auto* wave = app.add_subcommand("wave", "sample one wave profile to CSV");
  wave->add_option("--period", L, "spatial period (> 4*pi)")->required();
  wave->add_option("--modulus", k, "elliptic modulus")->required();
  wave->add_option("--samples", samples, "grid size");
  wave->add_option("--out", out, "output CSV path");

  auto* family = app.add_subcommand("family", "sweep the wave family over k");
  family->add_option("--period", L)->required();
  family->add_option("--k-min", kmin)->required();
  family->add_option("--k-max", kmax)->required();
  family->add_option("--steps", steps)->required();
  family->add_option("--out", out);

  auto* spectrum = app.add_subcommand("spectrum", "analytic vs collocation spectrum");
  spectrum->add_option("--period", L)->required();
  spectrum->add_option("--modulus", k)->required();
  spectrum->add_option("--grid", grid_spec);
  spectrum->add_option("--out", out);

  auto* stability = app.add_subcommand("stability", "stability functional report");
  stability->add_option("--period", L)->required();
  stability->add_option("--modulus", k)->required();
  stability->add_option("--out", out);

  auto* evolve = app.add_subcommand("evolve", "pseudospectral time evolution");
  evolve->add_option("--period", L)->required();
  evolve->add_option("--modulus", k)->required();
  evolve->add_option("--perturb", eps)->required();
  evolve->add_option("--tmax", tmax)->required();
  evolve->add_option("--dt", dt)->required();
  evolve->add_option("--scheme", scheme);
  evolve->add_option("--grid", grid_evo);
  evolve->add_option("--seed", seed);
  evolve->add_option("--record-every", record_every);
  evolve->add_option("--out", out);

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_flag("--quick", quick, "smaller grids and horizons");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (wave->parsed()) return run_wave(L, k, samples, out.empty() ? "wave.csv" : out);
    if (family->parsed())
      return run_family(L, kmin, kmax, steps, out.empty() ? "family.csv" : out);
    if (spectrum->parsed())
      return run_spectrum(L, k, grid_spec, out.empty() ? "spectrum.csv" : out);
    if (stability->parsed()) return run_stability(L, k, out.empty() ? "stability.json" : out);
    if (evolve->parsed())
      return run_evolve(L, k, eps, tmax, dt, scheme, grid_evo, seed, record_every,
                        out.empty() ? "evolve.csv" : out);
    if (verify->parsed()) return run_verify(quick);
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
