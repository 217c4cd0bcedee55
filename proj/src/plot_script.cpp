#include "harvest/plot_script.hpp"

#include <map>
#include <stdexcept>

namespace harvest {

namespace {

struct Layout {
  std::string title;
  int rows, cols;
};

const std::map<std::string, Layout>& layouts() {
  static const std::map<std::string, Layout> m = {
      {"fig1", {"Mutual information vs gap and horizon distance", 2, 2}},
      {"fig2", {"n = 0 and n != 0 parts of L_AA and I_AB", 2, 2}},
      {"fig3", {"Mutual information vs local temperature and redshift", 2, 2}},
  };
  return m;
}

bool starts_with(const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0; }

std::string quoted(const std::string& s) { return "'" + s + "'"; }

// curves for one slice family, joined into a single plot command
std::string slice_plot(const std::vector<const TableRef*>& refs, const std::string& xcol, const std::string& ycol,
                       const std::string& extra = "") {
  std::string s = "plot ";
  bool first = true;
  for (const TableRef* t : refs) {
    if (!first) s += ", \\\n     ";
    first = false;
    s += quoted(t->path) + " using (column('" + xcol + "')):(column('" + ycol + "')) with lines title " +
         quoted(t->name);
  }
  s += extra;
  return s + "\n";
}

}  // namespace

std::string emit_plot_script(const std::vector<TableRef>& tables, const std::string& preset) {
  const auto it = layouts().find(preset);
  if (it == layouts().end()) throw std::invalid_argument("unknown preset '" + preset + "'");
  const Layout& lay = it->second;

  std::string s;
  s += "# " + preset + ": " + lay.title + "\n";
  s += "set datafile separator ','\n";
  s += "set terminal pngcairo size 1200,900\n";
  s += "set output '" + preset + ".png'\n";
  s += "set multiplot layout " + std::to_string(lay.rows) + "," + std::to_string(lay.cols) + "\n";

  std::vector<const TableRef*> surface, family_a, family_b;
  for (const TableRef& t : tables) {
    if (t.rows == 0) continue;
    if (t.name.find("surface") != std::string::npos) surface.push_back(&t);
    else if (starts_with(t.name, "fig1_dA") || starts_with(t.name, "fig2_T") || starts_with(t.name, "fig3_gamma"))
      family_a.push_back(&t);
    else
      family_b.push_back(&t);
  }

  if (preset == "fig1") {
    for (const TableRef* t : surface) {
      s += "set logscale xy\nset xlabel 'gap'\nset ylabel 'd_A'\nset zlabel 'I_AB'\n";
      s += "splot " + quoted(t->path) + " using (column('gap')):(column('d_A')):(column('I_AB')) with pm3d notitle\n";
      s += "unset zlabel\n";
    }
    if (!family_a.empty()) {
      s += "set logscale x\nunset logscale y\nset xlabel 'gap'\nset ylabel 'I_AB'\n";
      s += slice_plot(family_a, "gap", "I_AB");
    }
    if (!family_b.empty()) {
      s += "set logscale x\nset xlabel 'd_A'\nset ylabel 'I_AB'\n";
      s += slice_plot(family_b, "d_A", "I_AB");
    }
  } else if (preset == "fig2") {
    for (const TableRef* t : family_a) {
      s += "set logscale x\nset xlabel 'gamma_A'\nset ylabel 'L_AA'\n";
      s += "plot " + quoted(t->path) + " using (column('gamma_A')):(column('L_AA_n0')) with lines title 'n = 0', \\\n"
           "     " + quoted(t->path) + " using (column('gamma_A')):(column('L_AA_btz')) with lines title 'n != 0'\n";
      s += "set ylabel 'I_AB'\n";
      s += "plot " + quoted(t->path) + " using (column('gamma_A')):(column('I_AB')) with lines title 'I_AB'\n";
    }
    for (const TableRef* t : family_b) {
      s += "set logscale x\nset xlabel 'T_A'\nset ylabel 'L_AA'\n";
      s += "plot " + quoted(t->path) + " using (column('T_A')):(column('L_AA_n0')) with lines title 'n = 0', \\\n"
           "     " + quoted(t->path) + " using (column('T_A')):(column('L_AA_btz')) with lines title 'n != 0', \\\n"
           "     " + quoted(t->path) + " using (column('T_A')):(column('L_AA')) with lines title 'total'\n";
      s += "set ylabel 'I_AB'\n";
      s += "plot " + quoted(t->path) + " using (column('T_A')):(column('I_AB')) with lines title 'I_AB'\n";
    }
  } else {
    for (const TableRef* t : surface) {
      s += "set logscale xy\nset xlabel 'T_A'\nset ylabel 'gamma_A'\nset zlabel 'I_AB'\n";
      s += "splot " + quoted(t->path) + " using (column('T_A')):(column('gamma_A')):(column('I_AB')) with pm3d notitle\n";
      s += "unset zlabel\n";
    }
    if (!family_a.empty()) {
      s += "set logscale x\nunset logscale y\nset xlabel 'T_A'\nset ylabel 'I_AB'\n";
      s += slice_plot(family_a, "T_A", "I_AB");
    }
    if (!family_b.empty()) {
      s += "set logscale x\nset xlabel 'gamma_A'\nset ylabel 'I_AB'\n";
      s += slice_plot(family_b, "gamma_A", "I_AB");
    }
  }
  s += "unset multiplot\n";
  return s;
}

}  // namespace harvest
