#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "finsler/curvature.hpp"
#include "finsler/geodesics.hpp"
#include "finsler/report.hpp"

namespace {

using finsler::CVec;
using json = nlohmann::ordered_json;

// Complex list syntax: comma-separated "re" or "re:im" entries,
// e.g. "0.5,0.25:-0.1".
CVec parse_complex_list(const std::string& text) {
  std::vector<finsler::Complex> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    double re = 0.0, im = 0.0;
    if (colon == std::string::npos) {
      re = std::stod(item);
    } else {
      re = std::stod(item.substr(0, colon));
      im = std::stod(item.substr(colon + 1));
    }
    vals.emplace_back(re, im);
  }
  if (vals.empty()) {
    throw finsler::InvalidInputError("empty complex list");
  }
  CVec v(static_cast<int>(vals.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = vals[i];
  return v;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw finsler::InvalidInputError("cannot open --out file " + out_path);
  f << text;
}

struct CommonOpts {
  std::string format = "json";
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--format", opts->format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opts->out_path, "Write output to this file");
}

int run_check(const std::string& manifest_path, const CommonOpts& opts,
              bool seed_set, std::uint64_t seed,
              const std::vector<std::string>& tol_overrides) {
  std::ifstream f(manifest_path);
  if (!f) {
    std::cerr << "error: cannot read manifest " << manifest_path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << f.rdbuf();
  finsler::RunManifest m = finsler::parse_manifest(buf.str());
  if (seed_set) m.seed = seed;
  for (const auto& ov : tol_overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) {
      throw finsler::InvalidInputError("--tol expects name=value");
    }
    m.tolerances[ov.substr(0, eq)] = std::stod(ov.substr(eq + 1));
  }
  finsler::validate_manifest(m);
  const finsler::RunReport rep = finsler::run_checks(m);
  write_output(opts.format == "csv" ? emit_csv(rep) : emit_json(rep),
               opts.out_path);
  return rep.all_pass() ? 0 : 1;
}

int run_curvature(double t_min, double t_max, int steps, int k,
                  const std::string& direction, const CommonOpts& opts) {
  const CVec v = parse_complex_list(direction);
  const auto mfd = finsler::ProductManifold::polydisk(static_cast<int>(v.size()));
  const CVec z = CVec::Zero(v.size());
  json rows = json::array();
  std::string csv = "t,k,curvature\n";
  for (int i = 0; i <= steps; ++i) {
    const double t =
        (steps == 0) ? t_min : t_min + (t_max - t_min) * i / double(steps);
    const double kv =
        finsler::sectional_curvature(mfd, finsler::MetricParams(t, k), z, v);
    rows.push_back({{"t", t}, {"k", k}, {"curvature", kv}});
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.17g,%d,%.17g\n", t, k, kv);
    csv += buf;
  }
  write_output(opts.format == "csv" ? csv : rows.dump(2) + "\n", opts.out_path);
  return 0;
}

int run_distance(const std::string& z1s, const std::string& z2s, double t,
                 int k, const CommonOpts& opts) {
  const CVec z1 = parse_complex_list(z1s);
  const CVec z2 = parse_complex_list(z2s);
  const auto res = finsler::polydisk_distance(finsler::MetricParams(t, k), z1, z2);
  if (opts.format == "csv") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "distance\n%.17g\n", res.value);
    write_output(buf, opts.out_path);
  } else {
    json j = {{"distance", res.value}, {"method", "closed_form"}};
    write_output(j.dump(2) + "\n", opts.out_path);
  }
  return 0;
}

int run_geodesic(const std::string& froms, const std::string& vels,
                 double s_max, int steps, double t, int k,
                 const CommonOpts& opts) {
  const CVec z0 = parse_complex_list(froms);
  const CVec v0 = parse_complex_list(vels);
  if (z0.size() != v0.size()) {
    throw finsler::InvalidInputError("--from and --velocity sizes differ");
  }
  const auto mfd = finsler::ProductManifold::polydisk(static_cast<int>(z0.size()));
  const auto path = finsler::integrate_geodesic(
      mfd, finsler::MetricParams(t, k), mfd.to_real(z0), mfd.to_real(v0),
      s_max, steps);
  if (opts.format == "csv") {
    std::string csv = "s";
    for (int i = 0; i < z0.size(); ++i) {
      csv += ",re_z" + std::to_string(i) + ",im_z" + std::to_string(i);
    }
    csv += "\n";
    for (const auto& smp : path.samples) {
      const CVec z = mfd.to_complex(smp.x);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.17g", smp.s);
      csv += buf;
      for (int i = 0; i < z.size(); ++i) {
        std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", z[i].real(),
                      z[i].imag());
        csv += buf;
      }
      csv += "\n";
    }
    write_output(csv, opts.out_path);
  } else {
    json rows = json::array();
    for (const auto& smp : path.samples) {
      const CVec z = mfd.to_complex(smp.x);
      json pt = json::array();
      for (int i = 0; i < z.size(); ++i) {
        pt.push_back({{"re", z[i].real()}, {"im", z[i].imag()}});
      }
      rows.push_back({{"s", smp.s}, {"z", pt}});
    }
    write_output(rows.dump(2) + "\n", opts.out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finslerlab: numerical checks for the F_{t,k} metric family"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "Run a verification manifest");
  std::string manifest_path;
  check->add_option("manifest", manifest_path, "Manifest JSON file")->required();
  CommonOpts check_opts;
  add_common(check, &check_opts);
  std::uint64_t seed = 0;
  auto* seed_opt = check->add_option("--seed", seed, "Override manifest seed");
  std::vector<std::string> tols;
  check->add_option("--tol", tols, "Tolerance override name=value");

  // curvature sweep
  auto* curv = app.add_subcommand("curvature", "Curvature sweep over t");
  double t_min = 0.0, t_max = 5.0;
  int sweep_steps = 50, curv_k = 2;
  std::string direction = "1,1";
  curv->add_option("--t-min", t_min);
  curv->add_option("--t-max", t_max);
  curv->add_option("--steps", sweep_steps);
  curv->add_option("--k", curv_k);
  curv->add_option("--direction", direction,
                   "Fiber direction at 0, e.g. 1,0.5:-0.25");
  CommonOpts curv_opts;
  add_common(curv, &curv_opts);

  // distance
  auto* dist = app.add_subcommand("distance", "Polydisk geodesic distance");
  std::string z1s, z2s;
  double dist_t = 1.0;
  int dist_k = 2;
  dist->add_option("--z1", z1s)->required();
  dist->add_option("--z2", z2s)->required();
  dist->add_option("--t", dist_t);
  dist->add_option("--k", dist_k);
  CommonOpts dist_opts;
  add_common(dist, &dist_opts);

  // geodesic
  auto* geo = app.add_subcommand("geodesic", "Integrate a polydisk geodesic");
  std::string froms, vels;
  double s_max = 1.0, geo_t = 1.0;
  int geo_steps = 64, geo_k = 2;
  geo->add_option("--from", froms)->required();
  geo->add_option("--velocity", vels)->required();
  geo->add_option("--s-max", s_max);
  geo->add_option("--steps", geo_steps);
  geo->add_option("--t", geo_t);
  geo->add_option("--k", geo_k);
  CommonOpts geo_opts;
  add_common(geo, &geo_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) {
      return run_check(manifest_path, check_opts, seed_opt->count() > 0, seed,
                       tols);
    }
    if (*curv) {
      return run_curvature(t_min, t_max, sweep_steps, curv_k, direction,
                           curv_opts);
    }
    if (*dist) return run_distance(z1s, z2s, dist_t, dist_k, dist_opts);
    if (*geo) {
      return run_geodesic(froms, vels, s_max, geo_steps, geo_t, geo_k,
                          geo_opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
