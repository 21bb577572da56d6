// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nanonmr/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace nanonmr {

std::vector<double> Spectrum::gain_curve(int qubit, char observable,
                                         double baseline, double sign) const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Expectations& e : points) {
    double v = 0.0;
    switch (observable) {
      case 'x': v = e.x[qubit]; break;
      case 'y': v = e.y[qubit]; break;
      case 'z': v = e.z[qubit]; break;
      default: throw std::invalid_argument("observable must be x, y or z");
    }
    out.push_back(sign * (v - baseline));
  }
  return out;
}

Spectrum sweep(const SweepSettings& settings) {
  if (settings.n_points < 2) {
    throw std::invalid_argument("sweep needs a grid of at least 2 points");
  }
  if (settings.to <= settings.from) {
    throw std::invalid_argument("sweep grid must be increasing");
  }
  Spectrum spec;
  spec.grid.resize(settings.n_points);
  spec.points.resize(settings.n_points);
  const double step =
      (settings.to - settings.from) / (settings.n_points - 1);
  for (int i = 0; i < settings.n_points; ++i) {
    spec.grid[i] = settings.from + i * step;
  }

  auto run_point = [&](int index) {
    Drive drive = settings.drive;
    drive.omega = spec.grid[index];
    const Circuit logical = build_protocol(settings.system, drive, settings.plan,
                                           settings.init, settings.term_order);
    Circuit to_run = logical;
    if (settings.topology) {
      to_run = route(logical, *settings.topology, has_internuclear(settings.system))
                   .circuit;
    }
    RunOptions opts;
    opts.seed = derive_seed(settings.seed, static_cast<std::uint64_t>(index));
    opts.ou = settings.ou;
    opts.samples = settings.samples;
    opts.init = settings.init_spec;
    if (opts.init.random_qubits.empty()) {
      for (int k = 0; k < settings.system.n_nuclei; ++k) {
        opts.init.random_qubits.push_back(settings.system.n_nv + k);
      }
    }
    const RunResult result = run(to_run, settings.noise, opts);
    // measurement point: the pre-reset snapshot of the final cycle
    const int cycles = settings.plan.cycles;
    if (cycles >= 1 && static_cast<int>(result.at_barriers.size()) >= cycles) {
      spec.points[index] = result.at_barriers[cycles - 1];
    } else {
      spec.points[index] = result.final_exp;
    }
  };

  const int threads = std::max(1, settings.threads);
  if (threads == 1) {
    for (int i = 0; i < settings.n_points; ++i) run_point(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&]() {
        for (int i = next.fetch_add(1); i < settings.n_points;
             i = next.fetch_add(1)) {
          run_point(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return spec;
}

bool has_internuclear(const SpinSystem& sys) {
  for (int a = 0; a < sys.n_nuclei; ++a)
    for (int b = a + 1; b < sys.n_nuclei; ++b)
      if (sys.g_between(a, b) != 0.0) return true;
  return false;
}

namespace {

struct FitState {
  double h, w0, sigma, b;
};

double gauss_model(const FitState& p, double x) {
  const double u = (x - p.w0) / p.sigma;
  return p.b + p.h * std::exp(-0.5 * u * u);
}

double chi2(const FitState& p, const std::vector<double>& x,
            const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - gauss_model(p, x[i]);
    acc += r * r;
  }
  return acc;
}

}  // namespace

PeakFit gaussian_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 5) {
    throw std::invalid_argument("gaussian_fit needs at least 5 samples");
  }
  const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
  const double span = *ymax_it - *ymin_it;
  const double scale = std::max(std::abs(*ymax_it), std::abs(*ymin_it));
  if (span <= 1e-12 * std::max(1.0, scale)) {
    throw std::invalid_argument("gaussian_fit: data is flat");
  }

  // initialization: peak at the extremum, baseline from the edges, width
  // from the half-maximum crossing
  const std::size_t n = x.size();
  std::vector<double> edges = {y.front(), y[1], y[n - 2], y.back()};
  std::sort(edges.begin(), edges.end());
  const double b0 = 0.5 * (edges[1] + edges[2]);
  const std::size_t imax = static_cast<std::size_t>(
      std::distance(y.begin(), std::max_element(y.begin(), y.end())));
  FitState p;
  p.b = b0;
  p.w0 = x[imax];
  p.h = y[imax] - b0;
  if (p.h <= 0.0) throw std::invalid_argument("gaussian_fit: no positive peak");
  const double half = b0 + 0.5 * p.h;
  double left = x.front(), right = x.back();
  for (std::size_t i = imax; i-- > 0;) {
    if (y[i] < half) {
      left = x[i];
      break;
    }
  }
  for (std::size_t i = imax + 1; i < n; ++i) {
    if (y[i] < half) {
      right = x[i];
      break;
    }
  }
  const double grid_step = std::abs(x[1] - x[0]);
  p.sigma = std::max((right - left) / 2.355, 0.5 * grid_step);

  // Levenberg-Marquardt with analytic Jacobian
  double lambda = 1e-3;
  double cost = chi2(p, x, y);
  int iter = 0;
  for (; iter < 200; ++iter) {
    Eigen::Matrix4d jtj = Eigen::Matrix4d::Zero();
    Eigen::Vector4d jtr = Eigen::Vector4d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (x[i] - p.w0) / p.sigma;
      const double e = std::exp(-0.5 * u * u);
      const double r = y[i] - (p.b + p.h * e);
      Eigen::Vector4d grad;  // d(model)/d(h, w0, sigma, b)
      grad << e, p.h * e * u / p.sigma, p.h * e * u * u / p.sigma, 1.0;
      jtj += grad * grad.transpose();
      jtr += grad * r;
    }
    Eigen::Matrix4d damped = jtj;
    for (int d = 0; d < 4; ++d) damped(d, d) += lambda * std::max(jtj(d, d), 1e-12);
    const Eigen::Vector4d delta = damped.ldlt().solve(jtr);
    FitState trial = p;
    trial.h += delta(0);
    trial.w0 += delta(1);
    trial.sigma += delta(2);
    trial.b += delta(3);
    if (trial.sigma == 0.0) trial.sigma = 0.5 * grid_step;
    const double trial_cost = chi2(trial, x, y);
    if (trial_cost <= cost) {
      const double rel =
          delta.cwiseAbs().maxCoeff() /
          std::max({std::abs(p.h), std::abs(p.w0), std::abs(p.sigma), 1e-12});
      const double gain = cost - trial_cost;
      p = trial;
      cost = trial_cost;
      lambda = std::max(lambda / 3.0, 1e-12);
      if (rel < 1e-8) break;
      if (gain <= 1e-15 + 1e-12 * cost) break;  // cost plateau
    } else {
      lambda *= 10.0;
      // no acceptable step at essentially zero step size: a numerical
      // stationary point, which counts as converged
      if (lambda > 1e12) break;
    }
  }
  if (iter >= 200) {
    throw std::runtime_error(
        "gaussian_fit did not converge (rel change >= 1e-8 after 200 iterations)");
  }
  PeakFit fit;
  fit.height = p.h;
  fit.center = p.w0;
  fit.sigma = std::abs(p.sigma);
  fit.baseline = p.b;
  fit.residual = std::sqrt(cost / n);
  fit.iterations = iter + 1;
  return fit;
}

double xi_metric(const std::vector<PeakFit>& fits) {
  if (fits.empty()) throw std::invalid_argument("xi_metric needs at least one fit");
  double acc = 0.0;
  for (const PeakFit& f : fits) {
    if (f.sigma == 0.0) throw std::invalid_argument("xi_metric: zero peak width");
    acc += f.height / f.sigma;
  }
  return acc / fits.size();
}

double delta_peak_metric(const std::vector<PeakFit>& noisy,
                         const std::vector<PeakFit>& ideal) {
  if (noisy.size() != ideal.size()) {
    throw std::invalid_argument("delta_peak_metric needs matched fit lists");
  }
  if (noisy.empty()) throw std::invalid_argument("delta_peak_metric: empty input");
  double acc = 0.0;
  for (std::size_t i = 0; i < noisy.size(); ++i) {
    if (ideal[i].center == 0.0) {
      throw std::invalid_argument("delta_peak_metric: zero ideal center");
    }
    acc += std::abs((noisy[i].center - ideal[i].center) / ideal[i].center);
  }
  return acc / noisy.size();
}

std::vector<std::pair<int, int>> peak_windows(const std::vector<double>& grid,
                                              const std::vector<double>& resonances) {
  if (resonances.empty()) return {};
  std::vector<double> sorted = resonances;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(grid.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double lo =
        k == 0 ? -1e300 : 0.5 * (sorted[k - 1] + sorted[k]);
    const double hi =
        k + 1 == sorted.size() ? 1e300 : 0.5 * (sorted[k] + sorted[k + 1]);
    int first = n, last = -1;
    for (int i = 0; i < n; ++i) {
      if (grid[i] >= lo && grid[i] < hi) {
        first = std::min(first, i);
        last = std::max(last, i);
      }
    }
    out.emplace_back(first, last);
  }
  return out;
}

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string spectrum_to_csv(const Spectrum& s) {
  std::string out = "omega_rad_per_us,qubit,observable,expectation\n";
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    const Expectations& e = s.points[i];
    for (std::size_t q = 0; q < e.x.size(); ++q) {
      const char obs[3] = {'x', 'y', 'z'};
      const double vals[3] = {e.x[q], e.y[q], e.z[q]};
      for (int o = 0; o < 3; ++o) {
        out += fmt17(s.grid[i]);
        out += ',';
        out += std::to_string(q);
        out += ',';
        out += obs[o];
        out += ',';
        out += fmt17(vals[o]);
        out += '\n';
      }
    }
  }
  return out;
}

Spectrum spectrum_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty spectrum CSV");
  Spectrum s;
  std::vector<double> grid;
  std::vector<Expectations> points;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    const double omega = std::stod(field);
    std::getline(row, field, ',');
    const int qubit = std::stoi(field);
    std::getline(row, field, ',');
    const char obs = field.empty() ? '?' : field[0];
    std::getline(row, field, ',');
    const double value = std::stod(field);
    if (grid.empty() || omega != grid.back()) {
      grid.push_back(omega);
      points.push_back({});
    }
    Expectations& e = points.back();
    auto ensure = [&](std::vector<double>& v) {
      if (static_cast<int>(v.size()) <= qubit) v.resize(qubit + 1, 0.0);
    };
    ensure(e.x);
    ensure(e.y);
    ensure(e.z);
    if (obs == 'x') e.x[qubit] = value;
    else if (obs == 'y') e.y[qubit] = value;
    else if (obs == 'z') e.z[qubit] = value;
    else throw std::invalid_argument("bad observable in spectrum CSV");
  }
  s.grid = std::move(grid);
  s.points = std::move(points);
  return s;
}

std::string peak_fits_to_json(const std::vector<PeakFit>& fits) {
  std::string out = "[";
  for (std::size_t i = 0; i < fits.size(); ++i) {
    if (i) out += ",";
    out += "\n  {\"height\": " + fmt17(fits[i].height) +
           ", \"center\": " + fmt17(fits[i].center) +
           ", \"sigma\": " + fmt17(fits[i].sigma) +
           ", \"baseline\": " + fmt17(fits[i].baseline) +
           ", \"residual\": " + fmt17(fits[i].residual) + "}";
  }
  out += fits.empty() ? "]\n" : "\n]\n";
  return out;
}

}  // namespace nanonmr
