#include "oamgate/sweep_report.hpp"

#include "oamgate/errors.hpp"
#include "oamgate/io_util.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace oamgate::sweep {

ChiSource quadrature_chi_source(int m, const overlap::BeamGeometry& geom,
                                const overlap::QuadratureSpec& quad) {
  return [m, geom, quad](int l, double zs_over_zr) {
    return overlap::overlap_chi(l, m, zs_over_zr * geom.zR, geom, quad);
  };
}

ChiSource table_chi_source(const overlap::ChiTable& table) {
  return [table](int l, double zs_over_zr) { return table.interpolate(l, zs_over_zr); };
}

channel::GateOutcome gate_at(const channel::QuditState& state, int m, double zs_over_zr,
                             const ChiSource& chi) {
  std::vector<double> values(static_cast<size_t>(state.dim));
  for (int i = 0; i < state.dim; ++i)
    values[static_cast<size_t>(i)] = chi(state.physical_mode(i), zs_over_zr);
  return channel::lossy_gate(state, m, values);
}

Objective objective_from_name(const std::string& name) {
  if (name == "fidelity") return Objective::Fidelity;
  if (name == "probability") return Objective::Probability;
  if (name == "merit") return Objective::Merit;
  throw std::invalid_argument("unknown objective: " + name);
}

namespace {

double objective_value(Objective objective, int d, const channel::GateOutcome& outcome) {
  switch (objective) {
    case Objective::Fidelity: return outcome.fidelity;
    case Objective::Probability: return outcome.p1;
    case Objective::Merit: return std::log2(static_cast<double>(d)) * outcome.fidelity * outcome.p1;
  }
  throw std::logic_error("unreachable");
}

constexpr double kTieTol = 1e-12;

}  // namespace

OptimalShift find_optimal_shift(const channel::QuditState& state, int m,
                                const std::vector<double>& zs_grid, Objective objective,
                                const ChiSource& chi) {
  if (zs_grid.size() < 2)
    throw std::invalid_argument("find_optimal_shift: grid must cover at least 2 points");
  for (size_t j = 1; j < zs_grid.size(); ++j)
    if (!(zs_grid[j] > zs_grid[j - 1]))
      throw std::invalid_argument("find_optimal_shift: grid must be strictly increasing");

  auto eval = [&](double z) {
    try {
      return objective_value(objective, state.dim, gate_at(state, m, z, chi));
    } catch (const CoverageError& e) {
      throw CoverageError("objective undefined at zS/zR=" + io::format_double(z) + ": " + e.what());
    } catch (const DegenerateChannelError& e) {
      throw DegenerateChannelError("objective undefined at zS/zR=" + io::format_double(z) + ": " +
                                   e.what());
    }
  };

  size_t best = 0;
  double best_val = eval(zs_grid[0]);
  for (size_t j = 1; j < zs_grid.size(); ++j) {
    const double v = eval(zs_grid[j]);
    if (v > best_val + kTieTol) {
      best = j;
      best_val = v;
    }
  }

  // golden-section inside the bracket around the best raw point
  double lo = zs_grid[best > 0 ? best - 1 : 0];
  double hi = zs_grid[std::min(best + 1, zs_grid.size() - 1)];
  constexpr double kGolden = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kGolden * (b - a);
  double d_ = a + kGolden * (b - a);
  double fc = eval(c), fd = eval(d_);
  for (int it = 0; it < 90 && (b - a) > 1e-13; ++it) {
    if (fc > fd) {
      b = d_;
      d_ = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d_;
      fc = fd;
      d_ = a + kGolden * (b - a);
      fd = eval(d_);
    }
  }
  const double refined = 0.5 * (a + b);
  const double refined_val = eval(refined);

  double z_star = zs_grid[best];
  if (refined_val > best_val + kTieTol || (std::abs(refined_val - best_val) <= kTieTol && refined < z_star))
    z_star = refined;

  return OptimalShift{z_star, gate_at(state, m, z_star, chi)};
}

void ProbabilityMap::write_csv(std::ostream& os) const {
  os << "l_base,zS_over_zR,p1\n";
  for (size_t i = 0; i < l_bases.size(); ++i)
    for (size_t j = 0; j < zs_grid.size(); ++j)
      os << l_bases[i] << ',' << io::format_sig(zs_grid[j], 10) << ','
         << io::format_sig(p1(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), 10)
         << '\n';
}

ProbabilityMap probability_map(int d, int m, const std::vector<int>& l_bases,
                               const std::vector<double>& zs_grid, const ChiSource& chi) {
  if (d < 2) throw std::invalid_argument("probability_map: d must be >= 2");
  if (l_bases.empty() || zs_grid.empty()) throw std::invalid_argument("probability_map: empty grid");

  ProbabilityMap map;
  map.d = d;
  map.m = m;
  map.l_bases = l_bases;
  map.zs_grid = zs_grid;
  map.p1.resize(static_cast<Eigen::Index>(l_bases.size()),
                static_cast<Eigen::Index>(zs_grid.size()));

  const int cells = static_cast<int>(l_bases.size() * zs_grid.size());
  io::parallel_for(cells, [&](int idx) {
    const int i = idx / static_cast<int>(zs_grid.size());
    const int j = idx % static_cast<int>(zs_grid.size());
    const int base = l_bases[static_cast<size_t>(i)];
    const double z = zs_grid[static_cast<size_t>(j)];
    std::vector<double> chis(static_cast<size_t>(d));
    try {
      for (int s = 0; s < d; ++s) chis[static_cast<size_t>(s)] = chi(base + s, z);
    } catch (const CoverageError& e) {
      throw CoverageError("probability_map at l_base=" + std::to_string(base) +
                          ", zS/zR=" + io::format_double(z) + ": " + e.what());
    }
    map.p1(i, j) = channel::success_probability(chis);
  });
  return map;
}

ProbabilityMap probability_map(int d, int m, const std::vector<int>& l_bases,
                               const std::vector<double>& zs_grid,
                               const overlap::BeamGeometry& geom,
                               const overlap::QuadratureSpec& quad) {
  return probability_map(d, m, l_bases, zs_grid, quadrature_chi_source(m, geom, quad));
}

std::vector<ComparisonRow> dimension_comparison(int m, const overlap::BeamGeometry& geom,
                                                const overlap::QuadratureSpec& quad,
                                                const std::vector<double>& zs_grid,
                                                Objective objective) {
  const ChiSource chi = quadrature_chi_source(m, geom, quad);
  std::vector<ComparisonRow> rows;
  for (int d = 2; d <= 5; ++d) {
    const auto state = channel::QuditState::uniform(d, 4);
    const OptimalShift opt = find_optimal_shift(state, m, zs_grid, objective, chi);
    ComparisonRow row;
    row.d = d;
    row.probability = opt.outcome.p1;
    row.fidelity = opt.outcome.fidelity;
    row.merit = std::log2(static_cast<double>(d)) * row.fidelity * row.probability;
    row.zs_over_zr = opt.zs_over_zr;
    rows.push_back(row);
  }
  return rows;
}

void write_table_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
  os << "d,P,F,merit\n";
  for (const auto& r : rows)
    os << r.d << ',' << io::format_sig(r.probability, 10) << ',' << io::format_sig(r.fidelity, 10)
       << ',' << io::format_sig(r.merit, 10) << '\n';
}

std::string format_table_text(const std::vector<ComparisonRow>& rows, int m) {
  std::ostringstream os;
  os << "gate x^" << m << " across qudit dimensions\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%4s  %12s  %14s  %12s  %10s\n", "d", "P", "F", "log2(d)*F*P",
                "zS*/zR");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%4d  %12.6f  %14.10f  %12.6f  %10.6f\n", r.d, r.probability,
                  r.fidelity, r.merit, r.zs_over_zr);
    os << line;
  }
  os << "# shift optimized for fidelity; P reported at the same shift\n";
  return os.str();
}

channel::QuditState preset_state(const std::string& name) {
  static const std::regex pattern(R"(^d(\d+)-uniform-base(-?\d+)$)");
  std::smatch match;
  if (!std::regex_match(name, match, pattern))
    throw std::invalid_argument("unknown state preset '" + name +
                                "' (expected e.g. d3-uniform-base4)");
  const int d = std::stoi(match[1]);
  const int base = std::stoi(match[2]);
  if (d < 2 || d > 64) throw std::invalid_argument("state preset dimension out of range: " + name);
  return channel::QuditState::uniform(d, base);
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
  if (steps < 2) throw std::invalid_argument("linear_grid: need at least 2 steps");
  if (!(hi > lo)) throw std::invalid_argument("linear_grid: need hi > lo");
  std::vector<double> g(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i)
    g[static_cast<size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
  return g;
}

void SweepConfig::validate() const {
  if (m == 0) throw std::invalid_argument("config: m must be nonzero");
  if (zs_steps < 2) throw std::invalid_argument("config: zs_steps must be >= 2");
  if (!(zs_max > zs_min)) throw std::invalid_argument("config: zs_max must exceed zs_min");
  if (l_min > l_max) throw std::invalid_argument("config: l_min must not exceed l_max");
  if (!(geometry.w0 > 0.0) || !(geometry.zR > 0.0))
    throw std::invalid_argument("config: beam geometry must have positive w0 and zR");
  if (quadrature.radial_points < 2) throw std::invalid_argument("config: radial_points too small");
}

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

SweepConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open " + path);

  SweepConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) + " is not key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "m") cfg.m = std::stoi(value);
      else if (key == "state") cfg.state = value;
      else if (key == "zs_min") cfg.zs_min = std::stod(value);
      else if (key == "zs_max") cfg.zs_max = std::stod(value);
      else if (key == "zs_steps") cfg.zs_steps = std::stoi(value);
      else if (key == "l_min") cfg.l_min = std::stoi(value);
      else if (key == "l_max") cfg.l_max = std::stoi(value);
      else if (key == "w0") cfg.geometry.w0 = std::stod(value);
      else if (key == "zr") cfg.geometry.zR = std::stod(value);
      else if (key == "radial_points") cfg.quadrature.radial_points = std::stoi(value);
      else if (key == "radial_cutoff") cfg.quadrature.radial_cutoff = std::stod(value);
      else if (key == "out") cfg.out_path = value;
      else throw std::invalid_argument("config: unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config: bad value for '" + key + "' on line " +
                                  std::to_string(lineno));
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace oamgate::sweep
