// sweep_report.hpp — parameter sweeps over the waist shift, optimal-point
// search, probability maps and the dimension-comparison tables.

#pragma once

#include "oamgate/gate_channel.hpp"
#include "oamgate/lg_overlap.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace oamgate::sweep {

// chi as a function of (physical OAM l, zS/zR) for a fixed gate power m.
using ChiSource = std::function<double(int l, double zs_over_zr)>;

// Evaluates overlap_chi on demand.
ChiSource quadrature_chi_source(int m, const overlap::BeamGeometry& geom,
                                const overlap::QuadratureSpec& quad);

// Linear interpolation in a precomputed table.
ChiSource table_chi_source(const overlap::ChiTable& table);

channel::GateOutcome gate_at(const channel::QuditState& state, int m, double zs_over_zr,
                             const ChiSource& chi);

enum class Objective { Fidelity, Probability, Merit };

Objective objective_from_name(const std::string& name);

struct OptimalShift {
  double zs_over_zr = 0.0;
  channel::GateOutcome outcome;
};

// Grid scan followed by golden-section refinement inside the best bracket.
// Ties within 1e-12 resolve to the smallest shift; the result is never worse
// than the best raw grid point.
OptimalShift find_optimal_shift(const channel::QuditState& state, int m,
                                const std::vector<double>& zs_grid, Objective objective,
                                const ChiSource& chi);

struct ProbabilityMap {
  int d = 0;
  int m = 0;
  std::vector<int> l_bases;
  std::vector<double> zs_grid;
  Eigen::MatrixXd p1;  // row: base index, col: grid index

  // CSV with header "l_base,zS_over_zR,p1".
  void write_csv(std::ostream& os) const;
};

// p1 of the uniform d-dimensional state rooted at each base l, across the
// shift grid.
ProbabilityMap probability_map(int d, int m, const std::vector<int>& l_bases,
                               const std::vector<double>& zs_grid, const ChiSource& chi);
ProbabilityMap probability_map(int d, int m, const std::vector<int>& l_bases,
                               const std::vector<double>& zs_grid,
                               const overlap::BeamGeometry& geom,
                               const overlap::QuadratureSpec& quad);

struct ComparisonRow {
  int d = 0;
  double probability = 0.0;
  double fidelity = 0.0;
  double merit = 0.0;  // log2(d) * F * P
  double zs_over_zr = 0.0;
};

// For d = 2..5, the uniform base-4 state: optimize the shift for fidelity
// and report probability, fidelity and the capacity-weighted merit there.
std::vector<ComparisonRow> dimension_comparison(int m, const overlap::BeamGeometry& geom,
                                                const overlap::QuadratureSpec& quad,
                                                const std::vector<double>& zs_grid,
                                                Objective objective = Objective::Fidelity);

// CSV with header "d,P,F,merit".
void write_table_csv(std::ostream& os, const std::vector<ComparisonRow>& rows);
std::string format_table_text(const std::vector<ComparisonRow>& rows, int m);

// Built-in states "d2-uniform-base4" .. "d5-uniform-base4" (and the same
// pattern for other dimensions/bases).
channel::QuditState preset_state(const std::string& name);

std::vector<double> linear_grid(double lo, double hi, int steps);

struct SweepConfig {
  int m = -1;
  std::string state = "d3-uniform-base4";
  double zs_min = 0.0;
  double zs_max = 3.0;
  int zs_steps = 121;
  int l_min = 4;
  int l_max = 10;
  overlap::BeamGeometry geometry;
  overlap::QuadratureSpec quadrature;
  std::string out_path;

  void validate() const;
};

// Flat "key = value" file with '#' comments; unknown keys are rejected.
SweepConfig load_config(const std::string& path);

}  // namespace oamgate::sweep
