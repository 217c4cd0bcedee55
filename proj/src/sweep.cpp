#include "harvest/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

#include "harvest/correlations.hpp"
#include "harvest/errors.hpp"
#include "harvest/geometry.hpp"
#include "harvest/result_cache.hpp"

namespace harvest {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::pair<Variable, std::string>>& variable_table() {
  static const std::vector<std::pair<Variable, std::string>> t = {
      {Variable::Gap, "gap"},       {Variable::DA, "d_A"},        {Variable::TA, "T_A"},
      {Variable::GammaA, "gamma_A"}, {Variable::DAB, "d_AB"},     {Variable::Mass, "mass"},
      {Variable::AdsLength, "ads_length"}, {Variable::Zeta, "zeta"},
  };
  return t;
}

struct Column {
  const char* name;
  double ResultRow::*field;
};

// status is handled separately; it is always last.
const std::vector<Column>& base_columns() {
  static const std::vector<Column> c = {
      {"ads_length", &ResultRow::ads_length}, {"mass", &ResultRow::mass},
      {"r_h", &ResultRow::r_h},               {"zeta", &ResultRow::zeta},
      {"gap", &ResultRow::gap},               {"d_A", &ResultRow::d_A},
      {"d_AB", &ResultRow::d_AB},             {"r_A", &ResultRow::r_A},
      {"r_B", &ResultRow::r_B},               {"gamma_A", &ResultRow::gamma_A},
      {"gamma_B", &ResultRow::gamma_B},       {"T_A", &ResultRow::T_A},
      {"T_B", &ResultRow::T_B},               {"L_AA", &ResultRow::L_AA},
      {"L_AA_n0", &ResultRow::L_AA_n0},       {"L_AA_btz", &ResultRow::L_AA_btz},
      {"L_BB", &ResultRow::L_BB},             {"L_BB_n0", &ResultRow::L_BB_n0},
      {"L_BB_btz", &ResultRow::L_BB_btz},     {"L_AB_re", &ResultRow::L_AB_re},
      {"L_AB_im", &ResultRow::L_AB_im},       {"L_AB_n0", &ResultRow::L_AB_n0},
      {"L_AB_btz", &ResultRow::L_AB_btz},     {"I_AB", &ResultRow::I_AB},
      {"err_L_AA", &ResultRow::err_L_AA},     {"err_L_BB", &ResultRow::err_L_BB},
      {"err_L_AB", &ResultRow::err_L_AB},     {"err_I_AB", &ResultRow::err_I_AB},
      {"n_terms", &ResultRow::n_terms},       {"truncated", &ResultRow::truncated},
  };
  return c;
}

const std::vector<Column>& edr_columns() {
  static const std::vector<Column> c = {
      {"L_AA_deexc", &ResultRow::L_AA_deexc},
      {"T_EDR_A", &ResultRow::T_EDR_A},
  };
  return c;
}

std::vector<Column> active_columns(bool edr) {
  std::vector<Column> c = base_columns();
  if (edr) c.insert(c.end(), edr_columns().begin(), edr_columns().end());
  return c;
}

// Commas and line breaks would break the CSV.
std::string clean_status(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
  }
  return s;
}

ResultRow blank_row(const PointInput& in) {
  ResultRow r{};
  for (const Column& c : base_columns()) r.*c.field = kNaN;
  for (const Column& c : edr_columns()) r.*c.field = kNaN;
  r.ads_length = in.ads_length;
  r.mass = in.mass;
  r.zeta = in.zeta;
  r.gap = in.gap;
  r.d_A = in.d_a;
  r.d_AB = in.d_ab;
  return r;
}

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string("non-finite ") + what);
}

Tolerances tolerances_from_json(const json& j) {
  Tolerances t;
  if (j.contains("rel")) t.contour.rel_tol = j.at("rel").get<double>();
  if (j.contains("abs")) t.contour.abs_tol = j.at("abs").get<double>();
  if (j.contains("eta")) t.contour.eta = j.at("eta").get<double>();
  if (j.contains("n_max")) t.truncation.n_max = j.at("n_max").get<int>();
  if (j.contains("tail")) t.truncation.tail_tol = j.at("tail").get<double>();
  if (!(t.contour.rel_tol > 0.0) || t.contour.abs_tol < 0.0) throw DomainError("tolerances must be positive");
  if (!(t.contour.eta < 0.0 && t.contour.eta > -std::numbers::pi)) throw DomainError("eta must lie in (-pi, 0)");
  if (t.truncation.n_max < t.truncation.n_min) throw DomainError("n_max below the minimum image count");
  return t;
}

json tolerances_to_json(const Tolerances& t) {
  return json{{"rel", t.contour.rel_tol},   {"abs", t.contour.abs_tol},      {"eta", t.contour.eta},
              {"n_max", t.truncation.n_max}, {"tail", t.truncation.tail_tol}};
}

}  // namespace

std::string variable_name(Variable v) {
  for (const auto& [var, name] : variable_table()) {
    if (var == v) return name;
  }
  throw std::logic_error("unnamed variable");
}

Variable variable_from_name(const std::string& name) {
  for (const auto& [var, n] : variable_table()) {
    if (n == name) return var;
  }
  throw DomainError("unknown sweep variable '" + name + "'");
}

std::vector<double> Axis::values() const {
  if (count < 1) throw DomainError("axis count must be at least 1");
  if (count == 1) return {min};
  if (log && !(min > 0.0 && max > 0.0)) throw DomainError("log axis needs positive bounds");
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    v[i] = log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min))) : min + t * (max - min);
  }
  // pin the ends so that bounds appear exactly
  v.front() = min;
  v.back() = max;
  return v;
}

SweepSpec spec_from_json(const json& j) {
  SweepSpec s;
  if (j.contains("preset")) throw DomainError("preset specs are expanded with preset_specs()");
  s.name = j.value("name", std::string("sweep"));
  const json axes = j.value("axes", json::array());
  const json fixed = j.value("fixed", json::object());
  for (const json& a : axes) {
    Axis ax;
    ax.variable = variable_from_name(a.at("variable").get<std::string>());
    const std::string grid = a.value("grid", std::string("linear"));
    if (grid == "log") ax.log = true;
    else if (grid != "linear" && grid != "lin") throw DomainError("grid must be linear or log");
    ax.min = a.at("min").get<double>();
    ax.max = a.value("max", ax.min);
    ax.count = a.value("count", 1);
    s.axes.push_back(ax);
  }
  for (const auto& [k, v] : fixed.items()) {
    variable_from_name(k);
    s.fixed[k] = v.get<double>();
  }
  s.tolerances = tolerances_from_json(j.value("tolerances", json::object()));
  const json out = j.value("output", json::object());
  s.output_path = out.value("path", std::string());
  s.format = out.value("format", std::string("csv"));
  if (s.format != "csv" && s.format != "json") throw DomainError("output format must be csv or json");
  s.parallelism = j.value("parallelism", 1);
  s.edr = j.value("edr", false);
  resolve_grid(s);  // validates the parameter families without evaluating anything
  return s;
}

json spec_to_json(const SweepSpec& s) {
  json axes = json::array();
  for (const Axis& a : s.axes) {
    axes.push_back({{"variable", variable_name(a.variable)},
                    {"grid", a.log ? "log" : "linear"},
                    {"min", a.min},
                    {"max", a.max},
                    {"count", a.count}});
  }
  json fixed = json::object();
  for (const auto& [k, v] : s.fixed) fixed[k] = v;
  return json{{"name", s.name},
              {"axes", axes},
              {"fixed", fixed},
              {"tolerances", tolerances_to_json(s.tolerances)},
              {"output", {{"path", s.output_path}, {"format", s.format}}},
              {"parallelism", s.parallelism},
              {"edr", s.edr}};
}

std::string spec_hash(const SweepSpec& spec) {
  // parallelism and the output location do not change the table
  json j = spec_to_json(spec);
  j.erase("parallelism");
  j.erase("output");
  j["version"] = kVersion;
  return fnv1a_hex(j.dump());
}

std::vector<PointInput> resolve_grid(const SweepSpec& spec) {
  std::set<std::string> seen;
  for (const Axis& a : spec.axes) {
    const std::string n = variable_name(a.variable);
    if (!seen.insert(n).second) throw DomainError("axis variable '" + n + "' appears twice");
    if (spec.fixed.count(n)) throw DomainError("'" + n + "' is both fixed and swept");
  }
  for (const auto& [k, v] : spec.fixed) seen.insert(k);
  auto has = [&](const char* n) { return seen.count(n) > 0; };
  const bool thermal = has("T_A") || has("gamma_A");
  const bool direct = has("mass") || has("d_A");
  if (thermal && direct) throw DomainError("use either (mass, d_A) or (T_A, gamma_A), not both");
  std::vector<const char*> needed = {"ads_length", "gap", "d_AB", "zeta"};
  if (thermal) needed.insert(needed.end(), {"T_A", "gamma_A"});
  else needed.insert(needed.end(), {"mass", "d_A"});
  for (const char* n : needed) {
    if (!has(n)) throw DomainError(std::string("parameter '") + n + "' is neither fixed nor swept");
  }

  std::vector<std::vector<double>> grids;
  std::size_t total = 1;
  for (const Axis& a : spec.axes) {
    grids.push_back(a.values());
    total *= grids.back().size();
  }
  std::vector<PointInput> points;
  points.reserve(total);
  std::vector<std::size_t> idx(spec.axes.size(), 0);
  for (std::size_t p = 0; p < total; ++p) {
    std::map<std::string, double> v = spec.fixed;
    for (std::size_t k = 0; k < spec.axes.size(); ++k) v[variable_name(spec.axes[k].variable)] = grids[k][idx[k]];
    PointInput in{};
    in.ads_length = v.at("ads_length");
    in.gap = v.at("gap");
    in.d_ab = v.at("d_AB");
    in.zeta = v.at("zeta");
    if (thermal) {
      const ThermalPlacement tp = placement_from_thermal(v.at("T_A"), v.at("gamma_A"), in.ads_length);
      const double ratio = tp.horizon_radius / in.ads_length;
      in.mass = ratio * ratio;
      in.d_a = tp.horizon_distance;
    } else {
      in.mass = v.at("mass");
      in.d_a = v.at("d_A");
    }
    points.push_back(in);
    // last axis fastest
    for (std::size_t k = spec.axes.size(); k-- > 0;) {
      if (++idx[k] < grids[k].size()) break;
      idx[k] = 0;
    }
  }
  return points;
}

std::vector<std::string> columns(bool edr) {
  std::vector<std::string> names;
  for (const Column& c : active_columns(edr)) names.emplace_back(c.name);
  names.emplace_back("status");
  return names;
}

ResultRow evaluate_point(const PointInput& in, const Tolerances& tol, bool edr) {
  ResultRow r = blank_row(in);
  try {
    check_finite(in.zeta, "zeta");
    if (in.zeta != std::round(in.zeta)) throw DomainError("zeta must be -1, 0 or 1");
    const SpacetimeParams params(in.ads_length, in.mass, boundary_from_zeta(static_cast<int>(in.zeta)));
    check_finite(in.gap, "gap");
    if (!(in.d_a > 0.0)) throw DivergenceError("detector A on or inside the horizon");
    if (!(in.d_ab > 0.0)) throw DomainError("d_AB must be positive");
    const StaticPoint a = point_at_distance(in.d_a, params);
    const StaticPoint b = point_at_distance(in.d_a + in.d_ab, params);
    const double th = params.hawking_temperature();
    r.r_h = params.horizon_radius();
    r.r_A = a.radius;
    r.r_B = b.radius;
    r.gamma_A = a.redshift;
    r.gamma_B = b.redshift;
    r.T_A = th / a.redshift;
    r.T_B = th / b.redshift;

    const MatrixElements m = compute_elements(DetectorPair{params, HorizonDistance{in.d_a},
                                                           HorizonDistance{in.d_a + in.d_ab}, in.gap},
                                              tol);
    r.L_AA = m.aa.value;
    r.L_AA_n0 = m.aa.rindler;
    r.L_AA_btz = m.aa.btz;
    r.L_BB = m.bb.value;
    r.L_BB_n0 = m.bb.rindler;
    r.L_BB_btz = m.bb.btz;
    r.L_AB_re = m.ab.value;
    r.L_AB_im = 0.0;
    r.L_AB_n0 = m.ab.rindler;
    r.L_AB_btz = m.ab.btz;
    r.err_L_AA = m.aa.error();
    r.err_L_BB = m.bb.error();
    r.err_L_AB = m.ab.error();
    r.n_terms = std::max({m.aa.n_terms, m.bb.n_terms, m.ab.n_terms});
    const CorrelationResult c = correlate(m);
    r.I_AB = c.mutual_information;
    r.err_I_AB = c.error;
    // hitting n_max is not a failure: the tail estimate is already in the err_ columns
    r.truncated = (m.aa.truncated || m.bb.truncated || m.ab.truncated) ? 1.0 : 0.0;
    r.status = "ok";
    if (edr) {
      const Element down = compute_L_DD(a, params, -in.gap, tol);
      r.L_AA_deexc = down.value;
      r.T_EDR_A = edr_temperature(m.aa.value, down.value, in.gap);
    }
  } catch (const std::exception& e) {
    r.status = clean_status(std::string("error: ") + e.what());
  }
  return r;
}

SweepResult run_sweep(const SweepSpec& spec, ResultCache* cache) {
  const std::vector<PointInput> points = resolve_grid(spec);
  SweepResult out;
  out.rows.resize(points.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> hits{0}, misses{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      std::string key;
      if (cache) {
        key = ResultCache::key(points[i], spec.tolerances, spec.edr);
        if (auto row = cache->lookup(key)) {
          out.rows[i] = std::move(*row);
          ++hits;
          continue;
        }
        ++misses;
      }
      out.rows[i] = evaluate_point(points[i], spec.tolerances, spec.edr);
      if (cache) {
        try {
          cache->store(key, out.rows[i]);
        } catch (const std::exception& e) {
          std::cerr << "warning: cache write failed: " << e.what() << '\n';
        }
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(spec.parallelism, static_cast<int>(points.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  out.cache_hits = hits;
  out.cache_misses = misses;

  int failed = 0;
  for (const ResultRow& r : out.rows) failed += (r.status != "ok");
  out.manifest = json{{"name", spec.name},
                      {"version", kVersion},
                      {"spec_hash", spec_hash(spec)},
                      {"spec", spec_to_json(spec)},
                      {"tolerances", tolerances_to_json(spec.tolerances)},
                      {"columns", columns(spec.edr)},
                      {"rows", out.rows.size()},
                      {"rows_not_ok", failed}};
  out.manifest["spec"].erase("parallelism");
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<ResultRow>& rows, bool edr) {
  const std::vector<Column> cols = active_columns(edr);
  std::string s;
  for (const std::string& n : columns(edr)) {
    if (!s.empty()) s += ',';
    s += n;
  }
  s += '\n';
  for (const ResultRow& r : rows) {
    for (const Column& c : cols) {
      s += format_double(r.*c.field);
      s += ',';
    }
    s += r.status;
    s += '\n';
  }
  return s;
}

json row_to_json(const ResultRow& row) {
  json j = json::object();
  auto put = [&](const Column& c) {
    const double v = row.*c.field;
    j[c.name] = std::isfinite(v) ? json(v) : json(format_double(v));
  };
  for (const Column& c : base_columns()) put(c);
  for (const Column& c : edr_columns()) put(c);
  j["status"] = row.status;
  return j;
}

ResultRow row_from_json(const json& j) {
  ResultRow r{};
  auto get = [&](const Column& c) {
    const json& v = j.at(c.name);
    if (v.is_number()) {
      r.*c.field = v.get<double>();
    } else {
      const std::string s = v.get<std::string>();
      if (s == "nan") r.*c.field = kNaN;
      else if (s == "inf") r.*c.field = std::numeric_limits<double>::infinity();
      else if (s == "-inf") r.*c.field = -std::numeric_limits<double>::infinity();
      else throw std::invalid_argument("bad number '" + s + "' in column " + c.name);
    }
  };
  for (const Column& c : base_columns()) get(c);
  for (const Column& c : edr_columns()) {
    if (j.contains(c.name)) get(c);
    else r.*c.field = kNaN;
  }
  r.status = j.at("status").get<std::string>();
  return r;
}

std::string to_json_text(const std::vector<ResultRow>& rows, bool edr) {
  json arr = json::array();
  for (const ResultRow& r : rows) {
    json j = row_to_json(r);
    if (!edr) {
      for (const Column& c : edr_columns()) j.erase(c.name);
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(1) + "\n";
}

void write_outputs(const SweepSpec& spec, const SweepResult& result) {
  if (spec.output_path.empty()) throw DomainError("sweep has no output path");
  const std::filesystem::path path(spec.output_path);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  {
    std::ofstream f(path, std::ios::binary);
    f << (spec.format == "json" ? to_json_text(result.rows, spec.edr) : to_csv(result.rows, spec.edr));
    if (!f) throw std::runtime_error("cannot write " + path.string());
  }
  std::filesystem::path mpath = path;
  mpath += ".manifest.json";
  std::ofstream m(mpath, std::ios::binary);
  m << result.manifest.dump(1) << '\n';
  if (!m) throw std::runtime_error("cannot write " + mpath.string());
}

namespace {

SweepSpec table(std::string name, std::vector<Axis> axes, std::map<std::string, double> fixed, bool edr = false) {
  SweepSpec s;
  s.output_path = name + ".csv";
  s.name = std::move(name);
  s.axes = std::move(axes);
  s.fixed = std::move(fixed);
  s.edr = edr;
  return s;
}

std::string tag(double x) {
  std::string s = format_double(x);
  for (char& c : s) {
    if (c == '.') c = 'p';
  }
  return s;
}

}  // namespace

std::vector<SweepSpec> preset_specs(const std::string& preset) {
  using V = Variable;
  std::vector<SweepSpec> out;
  if (preset == "fig1") {
    const std::map<std::string, double> base = {{"ads_length", 10}, {"mass", 0.01}, {"d_AB", 7}, {"zeta", 1}};
    out.push_back(table("fig1_surface", {{V::Gap, true, 0.01, 10, 60}, {V::DA, true, 0.01, 20, 60}}, base));
    for (double da : {10.0, 1.0, 0.1}) {
      auto f = base;
      f["d_A"] = da;
      out.push_back(table("fig1_dA_" + tag(da), {{V::Gap, true, 0.01, 10, 120}}, f));
    }
    for (double gap : {1.0, 0.5, 0.1}) {
      auto f = base;
      f["gap"] = gap;
      out.push_back(table("fig1_gap_" + tag(gap), {{V::DA, true, 1e-3, 20, 120}}, f));
    }
  } else if (preset == "fig2") {
    const std::map<std::string, double> base = {{"ads_length", 10}, {"gap", 1}, {"d_AB", 7}, {"zeta", 1}};
    auto a = base;
    a["T_A"] = 1;
    out.push_back(table("fig2_T_1", {{V::GammaA, true, 1e-2, 1e2, 60}}, a, true));
    auto b = base;
    b["gamma_A"] = 0.1;
    out.push_back(table("fig2_gamma_0p1", {{V::TA, true, 1e-2, 1e2, 60}}, b, true));
  } else if (preset == "fig3") {
    const std::map<std::string, double> base = {{"ads_length", 10}, {"gap", 1}, {"d_AB", 7}, {"zeta", 1}};
    out.push_back(table("fig3_surface", {{V::TA, true, 1e-2, 1e2, 60}, {V::GammaA, true, 1e-2, 1e2, 60}}, base));
    for (double g : {0.01, 0.1, 1.0, 10.0}) {
      auto f = base;
      f["gamma_A"] = g;
      out.push_back(table("fig3_gamma_" + tag(g), {{V::TA, true, 1e-2, 1e2, 120}}, f));
    }
    for (double t : {0.01, 0.1, 1.0, 10.0}) {
      auto f = base;
      f["T_A"] = t;
      out.push_back(table("fig3_T_" + tag(t), {{V::GammaA, true, 1e-2, 1e2, 120}}, f));
    }
  } else {
    throw std::invalid_argument("unknown preset '" + preset + "' (expected fig1, fig2 or fig3)");
  }
  return out;
}

}  // namespace harvest
