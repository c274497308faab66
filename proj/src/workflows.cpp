#include "gpesym/workflows.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "gpesym/csv.hpp"
#include "gpesym/errors.hpp"

namespace gpesym {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::Config, "cannot write " + path.string());
  return f;
}

fs::path prepare(const std::string& out_dir) {
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::Config, "cannot create output directory " + out_dir + ": " + ec.message());
  return dir;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_point_fields(std::ostream& os, const PointResult& r) {
  os << fmt17(r.omega) << ',' << fmt17(r.omega_bar) << ',' << fmt17(r.kappa_tilde) << ',' << fmt17(r.phase_rate)
     << ',' << fmt17(r.phase_rate_rel_error) << ',' << fmt17(r.residual_psi_nu) << ','
     << fmt17(r.residual_displaced) << ',' << fmt17(r.moment_error_first) << ',' << fmt17(r.moment_error_second)
     << ',' << fmt17(r.norm_drift);
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::InvalidArgument: return kExitConfig;
    case ErrorCode::NonOscillatoryRegime: return kExitRegime;
    default: return kExitNumerical;
  }
}

std::vector<std::string> run_exact(const RunConfig& cfg, const std::string& out_dir) {
  const fs::path dir = prepare(out_dir);
  const QuadraticModel& m = cfg.model;
  const EffectiveParams eff = cfg.effective();
  std::vector<std::string> files;
  std::ostringstream manifest;
  manifest << "generated=" << utc_timestamp() << '\n';
  manifest << "omega=" << fmt17(eff.omega) << '\n' << "omega_bar=" << fmt17(eff.omega_bar) << '\n';
  manifest << "kappa_tilde=" << fmt17(eff.kappa_tilde) << '\n';
  for (int nu : cfg.nus) {
    for (std::size_t ia = 0; ia < cfg.alphas.size(); ++ia) {
      const cplx alpha = cfg.alphas[ia];
      const Displacement d = displacement_params(alpha, nu, eff, m);
      const Grid grid = cfg.grid_or(grid_for_orbit(d.constants, eff, m));
      for (std::size_t it = 0; it < cfg.times.size(); ++it) {
        const double t = cfg.times[it];
        const WaveFunction psi = alpha == cplx(0.0, 0.0) ? exact_psi_nu(nu, t, eff, m, grid)
                                                         : displaced_solution(nu, alpha, t, eff, m, grid);
        const std::string stem = "nu" + std::to_string(nu) + "_a" + std::to_string(ia) + "_t" + std::to_string(it);
        const std::string wf = "psi_" + stem + ".csv", dn = "density_" + stem + ".csv";
        {
          auto f = open_out(dir / wf);
          write_wavefunction_csv(f, psi);
        }
        {
          auto f = open_out(dir / dn);
          write_density_csv(f, psi);
        }
        const MomentState orbit = hes_analytic_1d(t, d.constants, eff, m);
        manifest << "file=" << wf << " density=" << dn << " nu=" << nu << " alpha=" << fmt_complex(alpha)
                 << " t=" << fmt17(t) << " orbit_x=" << fmt17(orbit.x) << " orbit_p=" << fmt17(orbit.p)
                 << " points=" << grid.n << '\n';
        files.push_back(wf);
      }
    }
  }
  auto f = open_out(dir / "manifest.txt");
  f << manifest.str();
  return files;
}

std::vector<std::pair<std::string, std::string>> run_evolve(const RunConfig& cfg, const std::string& out_dir) {
  const fs::path dir = prepare(out_dir);
  const QuadraticModel& m = cfg.model;
  const EffectiveParams eff = cfg.effective();
  const int nu = cfg.nus.front();
  const cplx alpha = cfg.alphas.front();
  const Displacement d = displacement_params(alpha, nu, eff, m);
  const Grid grid = cfg.grid_or(grid_for_orbit(d.constants, eff, m));
  const WaveFunction psi0 = displaced_solution(nu, alpha, 0.0, eff, m, grid);
  const auto snaps = split_step_evolve(psi0, cfg.evolution, m);

  {
    auto f = open_out(dir / "snapshots.csv");
    f << "t,x,re,im\n";
    for (const auto& s : snaps) {
      for (std::size_t j = 0; j < s.psi.size(); ++j) {
        f << fmt17(s.t) << ',' << fmt17(grid.x(j)) << ',' << fmt17(s.psi.samples[j].real()) << ','
          << fmt17(s.psi.samples[j].imag()) << '\n';
      }
    }
  }
  std::vector<TrajectoryPoint> evolved;
  for (const auto& s : snaps) evolved.push_back({s.t, moments_from_wavefunction(s.psi, m).first});
  {
    auto f = open_out(dir / "moments.csv");
    write_trajectory_csv(f, evolved);
  }
  const MomentComparison cmp = compare_moments(snaps, d.constants, eff, m);
  const double n0 = norm_sq(psi0);
  double drift = 0.0;
  for (const auto& s : snaps) drift = std::max(drift, std::abs(norm_sq(s.psi) - n0) / n0);

  std::vector<std::pair<std::string, std::string>> report = {
      {"nu", std::to_string(nu)},
      {"alpha", fmt_complex(alpha)},
      {"grid_points", std::to_string(grid.n)},
      {"grid_half_width", fmt17(-grid.x_min)},
      {"snapshots", std::to_string(snaps.size())},
      {"t_final", fmt17(snaps.back().t)},
      {"relative_norm_drift", fmt17(drift)},
      {"moment_error_p", fmt17(cmp.max.p)},
      {"moment_error_x", fmt17(cmp.max.x)},
      {"moment_error_d11", fmt17(cmp.max.d11)},
      {"moment_error_d12", fmt17(cmp.max.d12)},
      {"moment_error_d22", fmt17(cmp.max.d22)},
  };
  auto f = open_out(dir / "report.txt");
  for (const auto& [k, v] : report) f << k << '=' << v << '\n';
  return report;
}

int run_verify(const RunConfig& cfg, const std::string& out_dir, std::ostream& log) {
  const fs::path dir = prepare(out_dir);
  const std::vector<Check> checks = run_checks(cfg);
  bool all = true;
  std::ostringstream body;
  for (const Check& c : checks) {
    all = all && c.passed();
    body << (c.passed() ? "PASS " : "FAIL ") << c.name << " value=" << fmt17(c.value)
         << (c.lower_bound ? " min=" : " max=") << fmt17(c.threshold) << '\n';
  }
  body << "result=" << (all ? "pass" : "fail") << '\n';
  auto f = open_out(dir / "verify_report.txt");
  f << body.str();
  log << body.str();
  return all ? kExitOk : kExitCheckFailed;
}

void set_model_param(QuadraticModel& m, const std::string& name, double v) {
  if (name == "mu") m.mu = v;
  else if (name == "rho") m.rho = v;
  else if (name == "sigma") m.sigma = v;
  else if (name == "a") m.a = v;
  else if (name == "b") m.b = v;
  else if (name == "c") m.c = v;
  else if (name == "kappa") m.kappa = v;
  else if (name == "hbar") m.hbar = v;
  else fail(ErrorCode::Config, "unknown sweep parameter '" + name + "'");
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg, const std::string& out_dir, int workers) {
  const fs::path dir = prepare(out_dir);
  std::vector<SweepRow> rows(cfg.sweep_values.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      row.value = cfg.sweep_values[i];
      RunConfig point = cfg;
      try {
        set_model_param(point.model, cfg.sweep_param, row.value);
        row.result = evaluate_point(point);
        row.status = "ok";
      } catch (const Error& e) {
        row.status = std::string(to_string(e.code()));
        row.message = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(rows.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  auto f = open_out(dir / "sweep.csv");
  f << cfg.sweep_param
    << ",status,omega,omega_bar,kappa_tilde,phase_rate,phase_rate_rel_error,residual_psi_nu,residual_displaced,"
       "moment_error_first,moment_error_second,norm_drift\n";
  for (const SweepRow& r : rows) {
    f << fmt17(r.value) << ',' << r.status << ',';
    if (r.status == "ok") {
      write_point_fields(f, r.result);
    } else {
      f << ",,,,,,,,,";
    }
    f << '\n';
  }
  return rows;
}

}  // namespace gpesym
