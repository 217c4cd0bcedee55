#pragma once

// Parameter sweeps over the figure axes, with deterministic CSV/JSON output.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "harvest/detector.hpp"

namespace harvest {

inline constexpr const char* kVersion = "0.1.0";

class ResultCache;

enum class Variable { Gap, DA, TA, GammaA, DAB, Mass, AdsLength, Zeta };

/// Config-file names: gap, d_A, T_A, gamma_A, d_AB, mass, ads_length, zeta.
std::string variable_name(Variable v);
Variable variable_from_name(const std::string& name);

struct Axis {
  Variable variable;
  bool log = false;
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

struct SweepSpec {
  std::string name;  // table name; presets set it, free-form otherwise
  std::vector<Axis> axes;
  std::map<std::string, double> fixed;
  Tolerances tolerances;
  std::string output_path;
  std::string format = "csv";  // csv | json
  int parallelism = 1;
  bool edr = false;  // also de-excitation L_AA(-gap) and T_EDR of detector A
};

SweepSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const SweepSpec& spec);
std::string spec_hash(const SweepSpec& spec);

/// Inputs of one grid point after resolving the parametrization family.
struct PointInput {
  double ads_length;
  double mass;
  double zeta;
  double gap;
  double d_a;
  double d_ab;
};

struct ResultRow {
  double ads_length, mass, r_h, zeta, gap, d_A, d_AB, r_A, r_B;
  double gamma_A, gamma_B, T_A, T_B;
  double L_AA, L_AA_n0, L_AA_btz, L_BB, L_BB_n0, L_BB_btz;
  double L_AB_re, L_AB_im, L_AB_n0, L_AB_btz, I_AB;
  double err_L_AA, err_L_BB, err_L_AB, err_I_AB;
  double n_terms;
  double truncated;  // 1 if any image sum stopped at n_max before meeting its tolerance
  double L_AA_deexc, T_EDR_A;  // only emitted when the spec asks for edr
  std::string status;          // "ok" or the failure reason
};

/// Column names in output order.
std::vector<std::string> columns(bool edr);

/// Evaluates one point; failures are recorded in status, never thrown.
ResultRow evaluate_point(const PointInput& in, const Tolerances& tol, bool edr);

/// Resolves the grid in row-major order (first axis slowest).
std::vector<PointInput> resolve_grid(const SweepSpec& spec);

struct SweepResult {
  std::vector<ResultRow> rows;
  nlohmann::json manifest;
  int cache_hits = 0;
  int cache_misses = 0;
};

SweepResult run_sweep(const SweepSpec& spec, ResultCache* cache = nullptr);

std::string to_csv(const std::vector<ResultRow>& rows, bool edr);
std::string to_json_text(const std::vector<ResultRow>& rows, bool edr);
nlohmann::json row_to_json(const ResultRow& row);
ResultRow row_from_json(const nlohmann::json& j);

/// Shortest decimal that round-trips; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

/// Writes the table in spec.format to spec.output_path and the manifest next to it.
void write_outputs(const SweepSpec& spec, const SweepResult& result);

/// Tables making up a figure preset (fig1, fig2, fig3). Output paths are relative
/// file names; throws std::invalid_argument for unknown presets.
std::vector<SweepSpec> preset_specs(const std::string& preset);

}  // namespace harvest
