// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "csv.hpp"
#include "mfunclab/error.hpp"
#include "mfunclab/halfspace/symbols.hpp"
#include "mfunclab/odelab/essential.hpp"
#include "mfunclab/odelab/resolvent.hpp"
#include "mfunclab/odelab/twins.hpp"
#include "mfunclab/triplet/engine.hpp"

namespace mfunclab::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

void write_text(const RunOptions& opts, const std::string& name, const std::string& text) {
  if (!opts.write_files) return;
  std::filesystem::create_directories(opts.out_dir);
  const auto path = opts.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandError(kExitConfig, fmt::format("cannot write '{}'", path.string()));
  out << text;
  spdlog::info("wrote {}", path.string());
}

void write_json(const RunOptions& opts, const std::string& name, const json& j) {
  write_text(opts, name, j.dump(2) + "\n");
}

const odelab::Coefficients& need_coefficients(const ScanConfig& cfg) {
  if (!cfg.coefficients) throw CommandError(kExitConfig, "config has no coefficients");
  return *cfg.coefficients;
}

const triplet::LambdaWindow& need_window(const ScanConfig& cfg) {
  if (!cfg.window) throw CommandError(kExitConfig, "config has no window");
  return *cfg.window;
}

odelab::OdeBackendOptions backend_options(const ScanConfig& cfg) {
  odelab::OdeBackendOptions o;
  o.kernel.ivp.tol = cfg.tolerances.ivp_tol;
  o.kernel.den_eps = cfg.tolerances.den_eps;
  o.tube_eps = cfg.tolerances.tube_eps;
  return o;
}

std::size_t grid_points(const ScanConfig& cfg, const RunOptions& opts) {
  const std::size_t n = opts.grid_n.value_or(cfg.grid_n);
  if (n < 5 || n % 2 == 0) throw CommandError(kExitConfig, "grid n must be odd and >= 5");
  return n;
}

json conventions() {
  return {
      {"gamma0", "(u1(1), u1(0))"},
      {"gamma1", "(-u1'(1) + a(1) u2(1), u1'(0) - a(0) u2(0))"},
      {"m_function", "(P_lambda - B)^-1; reduced (selY P_lambda selX - L1)^-1"},
      {"determinant", "det R [Y0; Y1], R the realization's condition rows"},
      {"reference_realization", "Gamma_0 u = 0"},
  };
}

json window_json(const triplet::LambdaWindow& w) {
  return {{"re_min", w.re_min}, {"re_max", w.re_max}, {"im_min", w.im_min},
          {"im_max", w.im_max}, {"n_re", w.n_re},     {"n_im", w.n_im}};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

odelab::OdeBackend make_backend(const ScanConfig& cfg, const RunOptions& opts) {
  const odelab::Coefficients& coeffs = need_coefficients(cfg);
  const std::size_t n = grid_points(cfg, opts);
  try {
    odelab::validate(coeffs);
    return odelab::OdeBackend(coeffs, Grid(n), backend_options(cfg));
  } catch (const Error& e) {
    throw CommandError(kExitBackend, fmt::format("backend construction failed: {}", e.what()));
  }
}

ScanResult run_scan(const ScanConfig& cfg, const RunOptions& opts) {
  const triplet::LambdaWindow& window = need_window(cfg);
  const odelab::OdeBackend backend = make_backend(cfg, opts);
  const triplet::BoundaryRealization& real = *cfg.realization;
  const odelab::EssSpecCurve ess = odelab::ess_spectrum_curve(backend.coefficients(), 1024);

  triplet::ScanOptions so;
  so.excluded = [&](Complex l) { return backend.in_tube(l); };
  so.workers = std::max<std::size_t>(1, opts.workers);
  so.flag_rel = cfg.tolerances.flag_rel;

  const std::vector<Complex> lambdas = window.points();
  spdlog::info("scanning {} lambda points on {} worker(s)", lambdas.size(), so.workers);
  ScanResult res;
  res.scan = triplet::eig_scan(backend, real, lambdas, so);
  res.detected = triplet::detect_spectral_points(backend, real, window, res.scan, so);
  spdlog::info("detected {} spectral point(s)", res.detected.size());

  std::ostringstream csv;
  CsvWriter w(csv);
  w.row({"re", "im", "det_re", "det_im", "inv_norm", "ess_dist", "status"});
  std::map<std::string, std::size_t> counts;
  for (const auto& s : {triplet::PointStatus::Ok, triplet::PointStatus::Spectral,
                        triplet::PointStatus::EssTube, triplet::PointStatus::DirichletSpectrum,
                        triplet::PointStatus::CoeffSingular}) {
    counts[std::string(triplet::to_string(s))] = 0;
  }
  for (const auto& p : res.scan.points) {
    const double d = odelab::distance_to_curve(ess, p.lambda);
    res.ess_dist.push_back(d);
    const std::string status(triplet::to_string(p.status));
    ++counts[status];
    w.row({CsvWriter::number(p.lambda.real()), CsvWriter::number(p.lambda.imag()),
           CsvWriter::number(p.char_det.real()), CsvWriter::number(p.char_det.imag()),
           CsvWriter::number(p.inv_norm), CsvWriter::number(d), status});
  }

  json detected = json::array();
  for (const auto& d : res.detected) {
    detected.push_back({{"re", d.lambda.real()},
                        {"im", d.lambda.imag()},
                        {"abs_det", d.abs_det},
                        {"in_ess_tube", d.excluded}});
  }
  json polyline = json::array();
  for (std::size_t k = 0; k < ess.samples.size(); k += 2) {
    polyline.push_back(complex_to_json(ess.samples[k]));
  }
  polyline.push_back(complex_to_json(ess.samples.back()));

  res.summary = {
      {"schema", "mfunclab.scan-summary/1"},
      {"version", kVersion},
      {"conventions", conventions()},
      {"grid_n", backend.grid().size()},
      {"window", window_json(window)},
      {"coefficients", cfg.coefficients_descriptor},
      {"realization", cfg.realization_descriptor},
      {"tolerances",
       {{"ivp_tol", cfg.tolerances.ivp_tol},
        {"den_eps", cfg.tolerances.den_eps},
        {"tube_eps", cfg.tolerances.tube_eps},
        {"flag_rel", cfg.tolerances.flag_rel}}},
      {"flag_threshold", res.scan.flag_threshold},
      {"status_counts", counts},
      {"detected", detected},
      {"ess_polyline", polyline},
  };
  write_text(opts, cfg.output.csv, csv.str());
  write_json(opts, cfg.output.summary, res.summary);
  return res;
}

json run_compare_twins(const ScanConfig& cfg, const RunOptions& opts) {
  if (!cfg.twins) throw CommandError(kExitConfig, "config has no twins section");
  const TwinsSection& tw = *cfg.twins;
  const triplet::LambdaWindow& window = need_window(cfg);
  const odelab::OdeBackend base_backend = make_backend(cfg, opts);

  odelab::TwinPair pair{base_backend.coefficients(), base_backend.coefficients()};
  try {
    pair = odelab::twin_counterexample(base_backend.coefficients(), tw.x_lo, tw.x_hi,
                                       tw.bump_height);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::HypothesisViolated) throw CommandError(kExitHypothesis, e.what());
    throw CommandError(kExitConfig, e.what());
  }
  const odelab::OdeBackendOptions bo = backend_options(cfg);
  const odelab::OdeBackend twin_backend(pair.twin, base_backend.grid(), bo);
  odelab::ExclusionTube tube(pair.base, bo.tube_eps);
  tube.add(pair.twin);

  const triplet::BoundaryRealization& real = *cfg.realization;
  std::size_t in_tube = 0, compared = 0, singular = 0, mismatched = 0;
  double max_diff = 0.0;
  for (Complex lambda : window.points()) {
    if (tube.contains(lambda)) {
      ++in_tube;
      continue;
    }
    CMatrix mb, mt;
    bool ok_b = true, ok_t = true;
    try {
      mb = triplet::mfunction(base_backend, real, lambda).m;
    } catch (const Error&) {
      ok_b = false;
    }
    try {
      mt = triplet::mfunction(twin_backend, real, lambda).m;
    } catch (const Error&) {
      ok_t = false;
    }
    if (!ok_b && !ok_t) {
      ++singular;
    } else if (ok_b != ok_t) {
      ++mismatched;
    } else {
      ++compared;
      max_diff = std::max(max_diff, (mb - mt).norm_inf());
    }
  }
  const auto curve_b = odelab::ess_spectrum_curve(pair.base, 1024);
  const auto curve_t = odelab::ess_spectrum_curve(pair.twin, 1024);
  const double hausdorff = odelab::hausdorff_distance(curve_b, curve_t);
  double max_symbol_diff = 0.0;
  for (std::size_t k = 0; k < curve_b.samples.size(); ++k) {
    max_symbol_diff = std::max(max_symbol_diff, std::abs(curve_b.samples[k] - curve_t.samples[k]));
  }
  const bool pass = compared > 0 && mismatched == 0 && max_diff < tw.m_tol &&
                    hausdorff > tw.hausdorff_threshold;
  json report = {
      {"schema", "mfunclab.twins-report/1"},
      {"version", kVersion},
      {"interval", {tw.x_lo, tw.x_hi}},
      {"bump_height", complex_to_json(tw.bump_height)},
      {"window", window_json(window)},
      {"grid_n", base_backend.grid().size()},
      {"points_total", window.size()},
      {"points_in_tube", in_tube},
      {"points_compared", compared},
      {"points_singular", singular},
      {"points_mismatched", mismatched},
      {"max_M_diff", max_diff},
      {"m_tol", tw.m_tol},
      {"hausdorff", hausdorff},
      {"hausdorff_threshold", tw.hausdorff_threshold},
      {"max_symbol_diff", max_symbol_diff},
      {"pass", pass},
  };
  spdlog::info("twins: max_M_diff = {:.3e}, hausdorff = {:.4f}, pass = {}", max_diff, hausdorff,
               pass);
  write_json(opts, cfg.output.twins, report);
  return report;
}

GridFunction random_trig_field(const Grid& grid, std::mt19937_64& rng) {
  constexpr int kDegree = 8;
  std::normal_distribution<double> normal;
  // [component][cos/sin][k]
  Complex coef[2][2][kDegree + 1];
  double norm2 = 0.0;
  for (auto& comp : coef) {
    for (auto& kind : comp) {
      for (auto& c : kind) {
        const double re = normal(rng);
        const double im = normal(rng);
        c = {re, im};
        norm2 += re * re + im * im;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(norm2);
  return GridFunction::sample(grid, [&](double x) {
    C2 v{};
    for (int comp = 0; comp < 2; ++comp) {
      for (int k = 0; k <= kDegree; ++k) {
        const double t = k * std::numbers::pi * x;
        v[comp] += scale * (coef[comp][0][k] * std::cos(t) + coef[comp][1][k] * std::sin(t));
      }
    }
    return v;
  });
}

json run_krein_verify(const ScanConfig& cfg, const RunOptions& opts) {
  if (!cfg.krein) throw CommandError(kExitConfig, "config has no krein section");
  const KreinSection& kr = *cfg.krein;
  const odelab::OdeBackend backend = make_backend(cfg, opts);
  const triplet::BoundaryRealization& real = *cfg.realization;
  const std::uint64_t seed = opts.seed.value_or(cfg.seed);
  std::mt19937_64 rng(seed);

  odelab::DirectResolventOptions dro;
  dro.den_eps = cfg.tolerances.den_eps;

  auto usable = [&](Complex lambda) {
    if (backend.in_tube(lambda)) return false;
    try {
      (void)triplet::mfunction(backend, real, lambda);
      return true;
    } catch (const Error&) {
      return false;
    }
  };

  json trials = json::array();
  std::vector<double> discrepancies;
  if (kr.trials > 0) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (Complex requested : kr.lambdas) {
      Complex lambda = requested;
      int attempt = 0;
      while (!usable(lambda)) {
        if (++attempt > 3) {
          throw CommandError(kExitSpectral,
                             fmt::format("lambda = {}{:+}i stays spectral after 3 resamples",
                                         requested.real(), requested.imag()));
        }
        lambda = requested + 0.05 * attempt * std::polar(1.0, angle(rng));
        spdlog::warn("resampling lambda near {}{:+}i", requested.real(), requested.imag());
      }
      for (std::size_t t = 0; t < kr.trials; ++t) {
        const GridFunction f = random_trig_field(backend.grid(), rng);
        double disc = std::numeric_limits<double>::infinity();
        double estimate = std::numeric_limits<double>::quiet_NaN();
        try {
          const GridFunction uk = triplet::krein_apply(backend, real, lambda, f);
          const auto direct = odelab::direct_resolvent_solve(backend.coefficients(), real, lambda, f, dro);
          disc = l2_norm(uk - direct.u) / l2_norm(direct.u);
          estimate = direct.error_estimate;
        } catch (const Error& e) {
          const bool spectral = e.code() == ErrorCode::SpectralPoint ||
                                e.code() == ErrorCode::DirichletSpectrum ||
                                e.code() == ErrorCode::SingularMatrix;
          throw CommandError(spectral ? kExitSpectral : kExitBackend,
                             fmt::format("trial failed: {}", e.what()));
        }
        discrepancies.push_back(disc);
        trials.push_back({{"requested_lambda", complex_to_json(requested)},
                          {"lambda", complex_to_json(lambda)},
                          {"trial", t},
                          {"discrepancy", disc},
                          {"richardson_estimate", estimate}});
      }
    }
  }
  json report = {
      {"schema", "mfunclab.krein-report/1"},
      {"version", kVersion},
      {"seed", seed},
      {"grid_n", backend.grid().size()},
      {"tol", kr.tol},
      {"trials", trials},
      {"count", discrepancies.size()},
  };
  if (discrepancies.empty()) {
    report["max"] = nullptr;
    report["median"] = nullptr;
    report["pass"] = true;
  } else {
    const double mx = *std::max_element(discrepancies.begin(), discrepancies.end());
    report["max"] = mx;
    report["median"] = median(discrepancies);
    report["pass"] = mx < kr.tol;
    spdlog::info("krein: {} trial(s), max discrepancy {:.3e}", discrepancies.size(), mx);
  }
  write_json(opts, cfg.output.krein, report);
  return report;
}

std::string run_halfspace(const ScanConfig& cfg, const RunOptions& opts) {
  if (!cfg.halfspace) throw CommandError(kExitConfig, "config has no halfspace section");
  const HalfspaceSection& hs = *cfg.halfspace;

  std::vector<halfspace::HalfspaceParams> samples;
  try {
    for (double rho : hs.rho.values()) {
      for (double arg : hs.arg_mu.values()) {
        for (double mod : hs.abs_mu.values()) {
          const Complex mu = std::polar(mod, arg);
          samples.push_back(hs.c ? halfspace::HalfspaceParams::scalar(rho, mu, *hs.c)
                                 : halfspace::HalfspaceParams::from_bvec(rho, mu, hs.bvec,
                                                                          hs.direction));
        }
      }
    }
  } catch (const Error& e) {
    throw CommandError(kExitConfig, fmt::format("halfspace grid: {}", e.what()));
  }

  std::ostringstream csv;
  CsvWriter w(csv);
  w.row({"rho", "mu_re", "mu_im", "p11_re", "p11_im", "p12_re", "p12_im", "p21_re", "p21_im",
         "p22_re", "p22_im", "m_re", "m_im", "det_p_check"});
  for (const auto& prm : samples) {
    const CMatrix p = halfspace::dtn_symbol(prm);
    Complex m;
    try {
      m = halfspace::m_symbol(prm);
    } catch (const Error&) {
      m = {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    }
    const Complex detp = p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0);
    std::vector<std::string> row{CsvWriter::number(prm.rho), CsvWriter::number(prm.mu.real()),
                                 CsvWriter::number(prm.mu.imag())};
    for (Complex z : p.entries()) {
      row.push_back(CsvWriter::number(z.real()));
      row.push_back(CsvWriter::number(z.imag()));
    }
    row.push_back(CsvWriter::number(m.real()));
    row.push_back(CsvWriter::number(m.imag()));
    row.push_back(CsvWriter::number(std::abs(detp - prm.lambda() / 4.0)));
    w.row(row);
  }
  write_text(opts, cfg.output.halfspace, csv.str());
  return csv.str();
}

}  // namespace mfunclab::cli
