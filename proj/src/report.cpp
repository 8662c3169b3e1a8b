#include "finsler/report.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <json.hpp>

#include "finsler/connection.hpp"
#include "finsler/curvature.hpp"
#include "finsler/linalg.hpp"
#include "finsler/numdiff.hpp"

namespace finsler {

namespace {

using json = nlohmann::ordered_json;

FactorMetric factor_from_json(const json& j) {
  if (!j.contains("kind")) throw InvalidInputError("factors[].kind: missing");
  const std::string kind = j.at("kind").get<std::string>();
  const int dim = j.value("dim", 1);
  if (kind == "disk") return FactorMetric::poincare_disk();
  if (kind == "ball") return FactorMetric::bergman_ball(dim);
  if (kind == "fubini_study" || kind == "fs")
    return FactorMetric::fubini_study(dim);
  if (kind == "flat") return FactorMetric::euclidean_flat(dim);
  throw InvalidInputError("factors[].kind: unknown kind '" + kind + "'");
}

std::string factor_kind_name(const FactorMetric& f) {
  switch (f.kind) {
    case FactorKind::PoincareDisk:
      return "disk";
    case FactorKind::BergmanBall:
      return "ball";
    case FactorKind::FubiniStudy:
      return "fubini_study";
    case FactorKind::EuclideanFlat:
      return "flat";
  }
  return "?";
}

int worker_count(std::size_t jobs) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("FINSLERLAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return std::min<std::size_t>(n, jobs);
}

double rel_dev(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

// --- individual checks over one random (z,v) sample ---

void check_pd(const ProductManifold& mfd, const MetricParams& p, const CVec& z,
              const CVec& v, CheckReport& rep, const std::string& note) {
  const auto ct = complex_fundamental_tensor(mfd, p, z, v);
  const auto rt =
      real_fundamental_tensor(mfd, p, mfd.to_real(z), mfd.to_real(v));
  const auto pc = linalg::cholesky_pd_check(ct.h);
  const auto pr = linalg::cholesky_pd_check(rt.g);
  double dev = 0.0;
  if (!pc.is_pd) dev = std::abs(pc.min_pivot) + 1.0;
  if (!pr.is_pd) dev = std::max(dev, std::abs(pr.min_pivot) + 1.0);
  rep.record(dev, note);
}

void check_hessian_oracle(const ProductManifold& mfd, const MetricParams& p,
                          const CVec& z, const CVec& v, CheckReport& rep,
                          const std::string& note) {
  const auto ct = complex_fundamental_tensor(mfd, p, z, v);
  const CMat fd = numdiff::wirtinger_mixed_hessian(
      [&](const CVec& vp) { return metric_g(mfd, p, z, vp); }, v);
  double dev = (ct.h - fd).cwiseAbs().maxCoeff() /
               std::max(1.0, ct.h.cwiseAbs().maxCoeff());

  const RVec x = mfd.to_real(z);
  const RVec u = mfd.to_real(v);
  const auto rt = real_fundamental_tensor(mfd, p, x, u);
  const RMat fd_r = 0.5 * numdiff::hessian(
                              [&](const RVec& up) {
                                return metric_g(mfd, p, z, mfd.to_complex(up));
                              },
                              u);
  dev = std::max(dev, (rt.g - fd_r).cwiseAbs().maxCoeff() /
                          std::max(1.0, rt.g.cwiseAbs().maxCoeff()));
  rep.record(dev, note);
}

void check_spray(const ProductManifold& mfd, const MetricParams& p,
                 const CVec& z, const CVec& v, CheckReport& rep,
                 const std::string& note) {
  const RVec x = mfd.to_real(z);
  const RVec u = mfd.to_real(v);
  const RVec spray = real_spray(mfd, p, x, u);
  RVec expected(x.size());
  for (int l = 0; l < mfd.num_factors(); ++l) {
    expected.segment(2 * mfd.offset(l), 2 * mfd.factor(l).dim) =
        levi_civita_spray(mfd.factor(l), mfd.real_block(x, l),
                          mfd.real_block(u, l));
  }
  rep.record((spray - expected).cwiseAbs().maxCoeff() /
                 std::max(1.0, expected.cwiseAbs().maxCoeff()),
             note);
}

void check_homogeneity(const ProductManifold& mfd, const MetricParams& p,
                       const CVec& z, const CVec& v, std::mt19937_64& rng,
                       CheckReport& rep, const std::string& note) {
  std::uniform_real_distribution<double> unif(0.2, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const Complex lam = unif(rng) * std::exp(Complex(0.0, angle(rng)));
  const double f = metric_value(mfd, p, z, v);
  const double fl = metric_value(mfd, p, z, lam * v);
  rep.record(std::abs(fl - std::abs(lam) * f) / std::max(1e-12, f), note);
}

bool common_curvature(const ProductManifold& mfd, double* c_out) {
  const double c = mfd.factor(0).constant_curvature();
  for (int l = 1; l < mfd.num_factors(); ++l) {
    if (mfd.factor(l).constant_curvature() != c) return false;
  }
  *c_out = c;
  return true;
}

}  // namespace

RunManifest parse_manifest(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInputError(std::string("manifest: not valid JSON: ") +
                            e.what());
  }
  RunManifest m;
  if (!j.contains("factors") || !j["factors"].is_array() ||
      j["factors"].empty()) {
    throw InvalidInputError("factors: must be a nonempty list");
  }
  for (const auto& f : j["factors"]) m.factors.push_back(factor_from_json(f));
  if (!j.contains("t_grid") || !j["t_grid"].is_array() || j["t_grid"].empty()) {
    throw InvalidInputError("t_grid: must be a nonempty list");
  }
  for (const auto& t : j["t_grid"]) m.t_grid.push_back(t.get<double>());
  if (!j.contains("k_grid") || !j["k_grid"].is_array() || j["k_grid"].empty()) {
    throw InvalidInputError("k_grid: must be a nonempty list");
  }
  for (const auto& k : j["k_grid"]) m.k_grid.push_back(k.get<int>());
  m.samples = j.value("samples", 10);
  m.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("tolerances")) {
    for (const auto& [key, val] : j["tolerances"].items()) {
      m.tolerances[key] = val.get<double>();
    }
  }
  if (j.contains("checks")) {
    for (const auto& c : j["checks"]) {
      m.checks.push_back(c.get<std::string>());
    }
  }
  validate_manifest(m);
  return m;
}

void validate_manifest(const RunManifest& m) {
  if (m.factors.empty()) throw InvalidInputError("factors: empty");
  if (m.t_grid.empty()) throw InvalidInputError("t_grid: empty");
  if (m.k_grid.empty()) throw InvalidInputError("k_grid: empty");
  for (double t : m.t_grid) {
    if (!(t >= 0.0)) throw InvalidInputError("t_grid: t must be >= 0");
  }
  for (int k : m.k_grid) {
    if (k < 2) throw InvalidInputError("k_grid: k must be >= 2");
  }
  if (m.samples < 1) throw InvalidInputError("samples: must be >= 1");
  const auto& reg = registered_checks();
  for (const auto& c : m.checks) {
    if (reg.find(c) == reg.end()) {
      throw InvalidInputError("checks: unknown check '" + c + "'");
    }
  }
  for (const auto& [name, tol] : m.tolerances) {
    if (reg.find(name) == reg.end()) {
      throw InvalidInputError("tolerances: unknown check '" + name + "'");
    }
    if (!(tol > 0.0)) throw InvalidInputError("tolerances: must be > 0");
  }
}

const std::map<std::string, double>& registered_checks() {
  static const std::map<std::string, double> reg = {
      {"pd", 1e-12},
      {"hessian_oracle", 1e-5},
      {"berwald", 1e-5},
      {"kahler", 1e-5},
      {"spray", 1e-4},
      {"curvature_bounds", 1e-9},
      {"curvature_oracle", 1e-4},
      {"homogeneity", 1e-12},
  };
  return reg;
}

std::mt19937_64 cell_rng(std::uint64_t seed, std::uint64_t index) {
  // splitmix-style scramble of (seed, index) to decorrelate neighbor cells.
  std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  s ^= s >> 30;
  s *= 0xbf58476d1ce4e5b9ULL;
  s ^= s >> 27;
  s *= 0x94d049bb133111ebULL;
  s ^= s >> 31;
  return std::mt19937_64(s);
}

CVec random_point(const ProductManifold& mfd, std::mt19937_64& rng,
                  double radius) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.05, radius);
  CVec z(mfd.total_dim());
  for (int l = 0; l < mfd.num_factors(); ++l) {
    const int m = mfd.factor(l).dim;
    CVec w(m);
    for (int i = 0; i < m; ++i) w[i] = Complex(gauss(rng), gauss(rng));
    if (mfd.factor(l).bounded_domain()) {
      w *= unif(rng) / std::max(w.norm(), 1e-12);
    } else {
      w *= 0.8;
    }
    z.segment(mfd.offset(l), m) = w;
  }
  return z;
}

CVec random_tangent(const ProductManifold& mfd, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec v(mfd.total_dim());
  for (int i = 0; i < mfd.total_dim(); ++i) {
    v[i] = Complex(gauss(rng), gauss(rng));
  }
  if (v.norm() < 1e-8) v[0] = 1.0;
  return v;
}

RunReport run_checks(const RunManifest& m) {
  validate_manifest(m);
  const auto start = std::chrono::steady_clock::now();
  RunReport out;
  out.manifest = m;

  const ProductManifold mfd{m.factors};
  for (const auto& check : m.checks) {
    for (double t : m.t_grid) {
      for (int k : m.k_grid) {
        out.cells.push_back({check, t, k, false, {}});
      }
    }
  }

  const auto run_cell = [&](std::size_t idx) {
    CheckCell& cell = out.cells[idx];
    const MetricParams p(cell.t, cell.k);
    auto rng = cell_rng(m.seed, idx);
    CheckReport& rep = cell.report;
    rep.name = cell.check;
    const auto tol_it = m.tolerances.find(cell.check);
    rep.tolerance = (tol_it != m.tolerances.end())
                        ? tol_it->second
                        : registered_checks().at(cell.check);

    double c = 0.0;
    if (cell.check == "curvature_bounds" && !common_curvature(mfd, &c)) {
      cell.skipped = true;
      return;
    }

    for (int s = 0; s < m.samples; ++s) {
      const CVec z = random_point(mfd, rng);
      const CVec v = random_tangent(mfd, rng);
      const std::string note = "sample " + std::to_string(s);
      if (cell.check == "pd") {
        check_pd(mfd, p, z, v, rep, note);
      } else if (cell.check == "hessian_oracle") {
        check_hessian_oracle(mfd, p, z, v, rep, note);
      } else if (cell.check == "berwald") {
        std::vector<CVec> vs;
        for (int i = 0; i < 10; ++i) vs.push_back(random_tangent(mfd, rng));
        CheckReport sub = check_berwald(mfd, p, z, vs, rep.tolerance);
        rep.record(sub.max_deviation, note);
      } else if (cell.check == "kahler") {
        for (auto level :
             {KahlerLevel::Strong, KahlerLevel::Kahler, KahlerLevel::Weak}) {
          CheckReport sub = check_kahler(mfd, p, z, v, level, rep.tolerance);
          rep.record(sub.max_deviation, note + " " + sub.name);
        }
      } else if (cell.check == "spray") {
        check_spray(mfd, p, z, v, rep, note);
      } else if (cell.check == "curvature_bounds") {
        const auto b = curvature_bounds(c, mfd.num_factors(), p);
        const double kv = sectional_curvature(mfd, p, z, v);
        rep.record(std::max({0.0, b.lo - kv, kv - b.hi}), note);
      } else if (cell.check == "curvature_oracle") {
        const double kc = sectional_curvature(mfd, p, z, v);
        const double kd = sectional_curvature_direct(mfd, p, z, v);
        rep.record(rel_dev(kd, kc), note);
      } else if (cell.check == "homogeneity") {
        check_homogeneity(mfd, p, z, v, rng, rep, note);
      }
    }
  };

  const int workers = worker_count(out.cells.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < out.cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < out.cells.size();
             i = next.fetch_add(1)) {
          run_cell(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (const auto& cell : out.cells) {
    if (cell.skipped) {
      ++out.skipped;
    } else if (cell.report.pass) {
      ++out.passed;
    } else {
      ++out.failed;
    }
  }
  out.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

std::string emit_json(const RunReport& r) {
  json j;
  json mf;
  mf["factors"] = json::array();
  for (const auto& f : r.manifest.factors) {
    mf["factors"].push_back({{"kind", factor_kind_name(f)}, {"dim", f.dim}});
  }
  mf["t_grid"] = r.manifest.t_grid;
  mf["k_grid"] = r.manifest.k_grid;
  mf["samples"] = r.manifest.samples;
  mf["seed"] = r.manifest.seed;
  mf["tolerances"] = r.manifest.tolerances;
  mf["checks"] = r.manifest.checks;
  j["manifest"] = mf;
  j["checks"] = json::array();
  for (const auto& c : r.cells) {
    j["checks"].push_back({{"check", c.check},
                           {"t", c.t},
                           {"k", c.k},
                           {"skipped", c.skipped},
                           {"samples", c.report.samples},
                           {"max_deviation", c.report.max_deviation},
                           {"tolerance", c.report.tolerance},
                           {"pass", c.report.pass},
                           {"worst_sample", c.report.worst_sample}});
  }
  j["summary"] = {{"passed", r.passed},
                  {"failed", r.failed},
                  {"skipped", r.skipped}};
  j["wall_time"] = r.wall_time_s;
  return j.dump(2) + "\n";
}

std::string emit_csv(const RunReport& r) {
  std::string out = "check,t,k,max_deviation,tolerance,pass\n";
  char buf[256];
  for (const auto& c : r.cells) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%d,%.17g,%.17g,%s\n",
                  c.check.c_str(), c.t, c.k, c.report.max_deviation,
                  c.report.tolerance,
                  c.skipped ? "skipped" : (c.report.pass ? "true" : "false"));
    out += buf;
  }
  return out;
}

}  // namespace finsler
