#pragma once

// gnuplot scripts that lay out a preset's tables like the corresponding figure.

#include <string>
#include <vector>

namespace harvest {

struct TableRef {
  std::string name;  // preset table name, e.g. "fig1_surface"
  std::string path;  // CSV path relative to the script
  std::size_t rows;  // tables with no rows get no data block
};

/// Throws std::invalid_argument for an unknown preset.
std::string emit_plot_script(const std::vector<TableRef>& tables, const std::string& preset);

}  // namespace harvest
