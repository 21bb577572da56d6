// Copyright 2026 The nanonmr Authors.
// SPDX-License-Identifier: Apache-2.0

#include "nanonmr/spin_system.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

#include "nanonmr/constants.hpp"

namespace nanonmr {

namespace {

using json = nlohmann::ordered_json;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool finite(const Vec3& v) {
  return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z());
}

}  // namespace

SpinSystem SpinSystem::make(int n_nv, int n_nuclei) {
  require(n_nv >= 0 && n_nuclei >= 0, "spin system sizes must be non-negative");
  SpinSystem sys;
  sys.n_nv = n_nv;
  sys.n_nuclei = n_nuclei;
  sys.delta.assign(n_nv, 0.0);
  sys.hyperfine.assign(n_nv, std::vector<Vec3>(n_nuclei, Vec3::Zero()));
  sys.g_nn = Eigen::MatrixXd::Zero(n_nuclei, n_nuclei);
  sys.h_nv = Eigen::MatrixXd::Zero(n_nv, n_nv);
  sys.gamma_c = kGammaC13;
  sys.omega_override.assign(n_nuclei, std::nullopt);
  return sys;
}

double SpinSystem::g_between(int k1, int k2) const {
  if (k1 == k2) return 0.0;
  if (k1 > k2) std::swap(k1, k2);
  return g_nn(k1, k2);
}

double SpinSystem::h_between(int j1, int j2) const {
  if (j1 == j2) return 0.0;
  if (j1 > j2) std::swap(j1, j2);
  return h_nv(j1, j2);
}

void SpinSystem::set_g(int k1, int k2, double value) {
  require(k1 != k2, "internuclear coupling needs two distinct nuclei");
  if (k1 > k2) std::swap(k1, k2);
  g_nn(k1, k2) = value;
}

void SpinSystem::set_h(int j1, int j2, double value) {
  require(j1 != j2, "inter-NV coupling needs two distinct NVs");
  if (j1 > j2) std::swap(j1, j2);
  h_nv(j1, j2) = value;
}

Vec3 SpinSystem::omega_c(int k) const {
  if (!omega_override.empty() && omega_override[k].has_value()) {
    return *omega_override[k];
  }
  Vec3 w(0.0, 0.0, gamma_c * bz);
  for (int j = 0; j < n_nv; ++j) w -= 0.5 * hyperfine[j][k];
  return w;
}

double SpinSystem::a_perp(int j, int k) const {
  const Vec3 a = hyperfine[j][k];
  const Vec3 w = omega_c(k);
  const double wn = w.norm();
  if (wn == 0.0) return a.norm();
  const Vec3 w_hat = w / wn;
  return (a - a.dot(w_hat) * w_hat).norm();
}

void SpinSystem::validate() const {
  require(static_cast<int>(delta.size()) == n_nv, "delta size mismatch");
  require(static_cast<int>(hyperfine.size()) == n_nv, "hyperfine size mismatch");
  for (const auto& row : hyperfine) {
    require(static_cast<int>(row.size()) == n_nuclei, "hyperfine row mismatch");
    for (const auto& a : row) require(finite(a), "non-finite hyperfine vector");
  }
  require(g_nn.rows() == n_nuclei && g_nn.cols() == n_nuclei, "g shape mismatch");
  require(h_nv.rows() == n_nv && h_nv.cols() == n_nv, "h shape mismatch");
  // only the k' > k (upper) entries may be populated
  for (int a = 0; a < n_nuclei; ++a)
    for (int b = 0; b <= a; ++b)
      require(g_nn(a, b) == 0.0, "g must only populate k' > k entries");
  for (int a = 0; a < n_nv; ++a)
    for (int b = 0; b <= a; ++b)
      require(h_nv(a, b) == 0.0, "h must only populate j' > j entries");
  require(g_nn.allFinite() && h_nv.allFinite(), "non-finite couplings");
  for (double d : delta) require(std::isfinite(d), "non-finite detuning");
  require(std::isfinite(bz), "non-finite field");
  require(gamma_c > 0.0, "gamma_c must be positive");
}

SpinSystem couplings_from_geometry(const std::vector<Vec3>& nv_positions,
                                   const std::vector<Vec3>& nucleus_positions,
                                   double bz_tesla, double prefactor_en,
                                   double prefactor_nn) {
  if (prefactor_en < 0.0) prefactor_en = kDipolarEN;
  if (prefactor_nn < 0.0) prefactor_nn = kDipolarNN;
  const int m = static_cast<int>(nv_positions.size());
  const int n = static_cast<int>(nucleus_positions.size());
  SpinSystem sys = SpinSystem::make(m, n);
  sys.bz = bz_tesla;

  const Vec3 z_hat(0.0, 0.0, 1.0);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < n; ++k) {
      const Vec3 r = nucleus_positions[k] - nv_positions[j];
      const double rn = r.norm();
      require(rn > 0.0, "coincident NV and nucleus positions");
      const Vec3 r_hat = r / rn;
      sys.hyperfine[j][k] = prefactor_en / (2.0 * rn * rn * rn) *
                            (z_hat - 3.0 * z_hat.dot(r_hat) * r_hat);
    }
  }
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = k1 + 1; k2 < n; ++k2) {
      const Vec3 r = nucleus_positions[k2] - nucleus_positions[k1];
      const double rn = r.norm();
      require(rn > 0.0, "coincident nucleus positions");
      const double cos_z = r.z() / rn;
      sys.set_g(k1, k2, prefactor_nn / (2.0 * rn * rn * rn) *
                            (1.0 - 3.0 * cos_z * cos_z));
    }
  }
  for (int j1 = 0; j1 < m; ++j1) {
    for (int j2 = j1 + 1; j2 < m; ++j2) {
      const double rn = (nv_positions[j2] - nv_positions[j1]).norm();
      require(rn > 0.0, "coincident NV positions");
      // inter-NV couplings are not derived geometrically; left at zero
      (void)rn;
    }
  }
  sys.validate();
  return sys;
}

namespace {

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("expected a 3-vector");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

}  // namespace

std::string spin_system_to_json(const SpinSystem& sys) {
  json j;
  json couplings;
  couplings["n_nv"] = sys.n_nv;
  couplings["n_nuclei"] = sys.n_nuclei;
  couplings["delta"] = sys.delta;
  json hf = json::array();
  for (const auto& row : sys.hyperfine) {
    json r = json::array();
    for (const auto& a : row) r.push_back(vec3_to_json(a));
    hf.push_back(r);
  }
  couplings["hyperfine"] = hf;
  json gs = json::array();
  for (int a = 0; a < sys.n_nuclei; ++a)
    for (int b = a + 1; b < sys.n_nuclei; ++b)
      if (sys.g_nn(a, b) != 0.0) gs.push_back(json::array({a, b, sys.g_nn(a, b)}));
  couplings["internuclear"] = gs;
  json hs = json::array();
  for (int a = 0; a < sys.n_nv; ++a)
    for (int b = a + 1; b < sys.n_nv; ++b)
      if (sys.h_nv(a, b) != 0.0) hs.push_back(json::array({a, b, sys.h_nv(a, b)}));
  couplings["inter_nv"] = hs;
  couplings["bz_tesla"] = sys.bz;
  couplings["gamma_c"] = sys.gamma_c;
  j["couplings"] = couplings;
  return j.dump(2);
}

SpinSystem spin_system_from_json(const std::string& text) {
  json j = json::parse(text);
  return [&]() -> SpinSystem {
    const bool has_couplings = j.contains("couplings");
    const bool has_geometry = j.contains("geometry");
    if (has_couplings == has_geometry) {
      throw std::invalid_argument(
          "spin system document must contain exactly one of \"couplings\" or "
          "\"geometry\"");
    }
    if (has_geometry) {
      const json& g = j["geometry"];
      std::vector<Vec3> nvs, nuclei;
      for (const auto& p : g.at("nv_positions_nm")) nvs.push_back(vec3_from_json(p));
      for (const auto& p : g.at("nucleus_positions_nm"))
        nuclei.push_back(vec3_from_json(p));
      const double bz = g.at("bz_tesla").get<double>();
      const double pre_en = g.value("prefactor_en", -1.0);
      const double pre_nn = g.value("prefactor_nn", -1.0);
      SpinSystem sys = couplings_from_geometry(nvs, nuclei, bz, pre_en, pre_nn);
      if (g.contains("delta")) {
        sys.delta = g.at("delta").get<std::vector<double>>();
      }
      sys.validate();
      return sys;
    }
    const json& c = j["couplings"];
    SpinSystem sys = SpinSystem::make(c.at("n_nv").get<int>(),
                                      c.at("n_nuclei").get<int>());
    if (c.contains("delta")) sys.delta = c.at("delta").get<std::vector<double>>();
    if (c.contains("hyperfine")) {
      const json& hf = c.at("hyperfine");
      if (static_cast<int>(hf.size()) != sys.n_nv) {
        throw std::invalid_argument("hyperfine must have one row per NV");
      }
      for (int jj = 0; jj < sys.n_nv; ++jj) {
        const json& row = hf[jj];
        if (static_cast<int>(row.size()) != sys.n_nuclei) {
          throw std::invalid_argument("hyperfine row must have one vector per nucleus");
        }
        for (int k = 0; k < sys.n_nuclei; ++k) {
          sys.hyperfine[jj][k] = vec3_from_json(row[k]);
        }
      }
    }
    if (c.contains("internuclear")) {
      for (const auto& e : c.at("internuclear")) {
        sys.set_g(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
      }
    }
    if (c.contains("inter_nv")) {
      for (const auto& e : c.at("inter_nv")) {
        sys.set_h(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
      }
    }
    sys.bz = c.at("bz_tesla").get<double>();
    if (c.contains("gamma_c")) sys.gamma_c = c.at("gamma_c").get<double>();
    sys.validate();
    return sys;
  }();
}

}  // namespace nanonmr
