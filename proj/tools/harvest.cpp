// harvest: density-matrix elements and mutual information for two static detectors
// outside a BTZ black hole.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "harvest/plot_script.hpp"
#include "harvest/result_cache.hpp"
#include "harvest/sweep.hpp"

namespace {

using namespace harvest;

struct Common {
  std::optional<double> tol_rel, tol_abs, eta;
  std::optional<int> n_max;
  int jobs = 0;
  bool no_cache = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--tol-rel", c.tol_rel, "relative quadrature tolerance");
  app->add_option("--tol-abs", c.tol_abs, "absolute quadrature tolerance");
  app->add_option("--n-max", c.n_max, "largest image index summed");
  app->add_option("--eta", c.eta, "height of the shifted contour leg, in (-pi, 0)");
  app->add_option("--jobs", c.jobs, "worker threads (default: hardware concurrency)");
  app->add_flag("--no-cache", c.no_cache, "neither read nor write the result cache");
}

void apply(const Common& c, SweepSpec& s, bool override_jobs) {
  if (c.tol_rel) s.tolerances.contour.rel_tol = *c.tol_rel;
  if (c.tol_abs) s.tolerances.contour.abs_tol = *c.tol_abs;
  if (c.eta) s.tolerances.contour.eta = *c.eta;
  if (c.n_max) s.tolerances.truncation.n_max = *c.n_max;
  if (c.jobs > 0) s.parallelism = c.jobs;
  else if (override_jobs) s.parallelism = std::max(1u, std::thread::hardware_concurrency());
}

std::optional<ResultCache> open_cache(const Common& c) {
  if (c.no_cache) return std::nullopt;
  return ResultCache(ResultCache::default_directory());
}

void report(const SweepSpec& s, const SweepResult& r) {
  std::cerr << s.name << ": " << r.rows.size() << " rows, " << r.manifest["rows_not_ok"].get<int>()
            << " not ok, cache " << r.cache_hits << " hits / " << r.cache_misses << " misses -> " << s.output_path
            << '\n';
}

int run_point(const Common& c, double l, std::optional<double> mass, std::optional<double> da,
              std::optional<double> ta, std::optional<double> ga, double dab, double gap, int zeta, bool edr,
              bool as_json) {
  SweepSpec s;
  s.name = "point";
  s.fixed = {{"ads_length", l}, {"d_AB", dab}, {"gap", gap}, {"zeta", zeta}};
  if (ta || ga) {
    if (!ta || !ga || mass || da) throw CLI::ValidationError("give either --mass and --dA, or --T and --gamma");
    s.fixed["T_A"] = *ta;
    s.fixed["gamma_A"] = *ga;
  } else {
    if (!mass || !da) throw CLI::ValidationError("give either --mass and --dA, or --T and --gamma");
    s.fixed["mass"] = *mass;
    s.fixed["d_A"] = *da;
  }
  s.edr = edr;
  apply(c, s, false);
  auto cache = open_cache(c);
  const SweepResult r = run_sweep(s, cache ? &*cache : nullptr);
  const ResultRow& row = r.rows.front();
  if (as_json) {
    nlohmann::json j = row_to_json(row);
    if (!edr) {
      j.erase("L_AA_deexc");
      j.erase("T_EDR_A");
    }
    std::cout << j.dump(1) << '\n';
  } else {
    const nlohmann::json j = row_to_json(row);
    for (const std::string& name : columns(edr)) {
      const auto& v = j.at(name);
      std::cout << name << " = ";
      if (v.is_number()) std::cout << format_double(v.get<double>());
      else std::cout << v.get<std::string>();
      std::cout << '\n';
    }
  }
  return row.status == "ok" ? 0 : 1;
}

int run_tables(std::vector<SweepSpec> specs, const Common& c, const std::filesystem::path& dir,
               const std::string& preset) {
  auto cache = open_cache(c);
  std::vector<TableRef> refs;
  for (SweepSpec& s : specs) {
    apply(c, s, true);
    const std::string rel = s.output_path;
    s.output_path = (dir / rel).string();
    const SweepResult r = run_sweep(s, cache ? &*cache : nullptr);
    write_outputs(s, r);
    report(s, r);
    refs.push_back({s.name, rel, r.rows.size()});
  }
  if (!preset.empty()) {
    std::ofstream gp(dir / (preset + ".gp"), std::ios::binary);
    gp << emit_plot_script(refs, preset);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation harvesting by static detectors outside a BTZ black hole"};
  app.set_version_flag("--version", harvest::kVersion);
  app.require_subcommand(1);

  Common common;
  double l = 10, dab = 7, gap = 1;
  int zeta = 1;
  std::optional<double> mass, da, ta, ga;
  bool edr = false, as_json = false;
  auto* point = app.add_subcommand("point", "evaluate one parameter point");
  point->add_option("--l", l, "AdS length")->required();
  point->add_option("--mass", mass, "BTZ mass M");
  point->add_option("--dA", da, "proper distance of detector A from the horizon");
  point->add_option("--T", ta, "local KMS temperature of detector A");
  point->add_option("--gamma", ga, "redshift factor of detector A");
  point->add_option("--dAB", dab, "proper distance between the detectors")->required();
  point->add_option("--gap", gap, "energy gap")->required();
  point->add_option("--zeta", zeta, "boundary condition: 1 Dirichlet, 0 transparent, -1 Neumann")
      ->check(CLI::IsMember({-1, 0, 1}));
  point->add_flag("--edr", edr, "also compute de-excitation and T_EDR of detector A");
  point->add_flag("--json", as_json, "print the row as JSON");
  add_common(point, common);

  std::string config;
  auto* sweep = app.add_subcommand("sweep", "run a sweep described by a JSON config");
  sweep->add_option("--config", config, "config file")->required()->check(CLI::ExistingFile);
  add_common(sweep, common);

  std::string preset, out = ".";
  auto* pre = app.add_subcommand("preset", "reproduce a figure's data and plot script");
  pre->add_option("name", preset, "fig1, fig2 or fig3")->required()->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  pre->add_option("--out", out, "output directory");
  add_common(pre, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*point) return run_point(common, l, mass, da, ta, ga, dab, gap, zeta, edr, as_json);
    if (*sweep) {
      std::ifstream f(config);
      const nlohmann::json j = nlohmann::json::parse(f);
      const std::filesystem::path base = std::filesystem::path(config).parent_path();
      if (j.contains("preset")) {
        const std::string name = j.at("preset").get<std::string>();
        std::vector<SweepSpec> specs = preset_specs(name);
        const std::string dir = j.contains("output") ? j["output"].value("path", std::string(".")) : ".";
        return run_tables(std::move(specs), common, base / dir, name);
      }
      SweepSpec s = spec_from_json(j);
      if (s.output_path.empty()) s.output_path = s.name + "." + s.format;
      return run_tables({s}, common, base, "");
    }
    std::filesystem::create_directories(out);
    return run_tables(preset_specs(preset), common, out, preset);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "harvest: " << e.what() << '\n';
    return 2;
  }
}
