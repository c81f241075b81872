// oamgate — CLI for the OAM qudit gate model: operator algebra, chi sweeps,
// lossy gate runs, probability maps and dimension-comparison tables.

#include "oamgate/errors.hpp"
#include "oamgate/gate_channel.hpp"
#include "oamgate/io_util.hpp"
#include "oamgate/lg_overlap.hpp"
#include "oamgate/qudit_algebra.hpp"
#include "oamgate/sweep_report.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace oamgate;

void emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty())
    std::cout << contents;
  else
    io::atomic_write_file(out_path, contents);
}

channel::QuditState load_state(const std::string& spec) {
  try {
    return sweep::preset_state(spec);
  } catch (const std::invalid_argument&) {
    // not a preset name: treat as a state file (line 1: "d base", then d
    // lines "re im")
  }
  std::ifstream is(spec);
  if (!is) throw std::invalid_argument("state '" + spec + "' is neither a preset nor a readable file");
  int d = 0, base = 0;
  if (!(is >> d >> base)) throw std::invalid_argument("state file: bad header line");
  Vector amps(d);
  for (int i = 0; i < d; ++i) {
    double re = 0.0, im = 0.0;
    if (!(is >> re >> im)) throw std::invalid_argument("state file: truncated amplitudes");
    amps(i) = Complex(re, im);
  }
  return channel::QuditState(d, base, std::move(amps));
}

// options shared by the sweep-style subcommands, overlaid on an optional
// config file
struct CommonOpts {
  std::string config_path;
  sweep::SweepConfig cfg;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key = value config file");
    cmd->add_option("--w0", cli_w0, "beam waist radius");
    cmd->add_option("--zr", cli_zr, "Rayleigh range");
    cmd->add_option("--points", cli_points, "radial quadrature points");
    cmd->add_option("--cutoff", cli_cutoff, "radial cutoff in beam radii");
    cmd->add_option("--zs-min", cli_zs_min, "lower zS/zR bound");
    cmd->add_option("--zs-max", cli_zs_max, "upper zS/zR bound");
    cmd->add_option("--steps", cli_steps, "zS grid steps");
    cmd->add_option("--out", cli_out, "output file (atomic write); stdout if omitted");
    owner = cmd;
  }

  void resolve() {
    if (!config_path.empty()) cfg = sweep::load_config(config_path);
    if (owner->count("--w0")) cfg.geometry.w0 = cli_w0;
    if (owner->count("--zr")) cfg.geometry.zR = cli_zr;
    if (owner->count("--points")) cfg.quadrature.radial_points = cli_points;
    if (owner->count("--cutoff")) cfg.quadrature.radial_cutoff = cli_cutoff;
    if (owner->count("--zs-min")) cfg.zs_min = cli_zs_min;
    if (owner->count("--zs-max")) cfg.zs_max = cli_zs_max;
    if (owner->count("--steps")) cfg.zs_steps = cli_steps;
    if (owner->count("--out")) cfg.out_path = cli_out;
    cfg.validate();
  }

 private:
  CLI::App* owner = nullptr;
  double cli_w0 = 1.0, cli_zr = 1.0, cli_cutoff = 8.0;
  double cli_zs_min = 0.0, cli_zs_max = 3.0;
  int cli_points = 512, cli_steps = 121;
  std::string cli_out;
};

int run_gates(int d, int m, const std::string& decompose_path) {
  if (decompose_path.empty()) {
    std::ostringstream os;
    os << "X_" << d << "^" << m << "\n";
    write_matrix_text(os, algebra::build_x(d, m));
    os << "Z_" << d << "^" << m << "\n";
    write_matrix_text(os, algebra::build_z(d, m));
    std::cout << os.str();
    return 0;
  }
  std::ifstream is(decompose_path);
  if (!is) throw std::invalid_argument("cannot open matrix file: " + decompose_path);
  const Matrix a = read_matrix_text(is);
  if (is_hermitian(a, 1e-10)) {
    const auto coeffs = algebra::decompose_hermitian(a);
    std::cout << "hermitian coefficients C(j,k) in the Q basis\n";
    for (int j = 0; j < coeffs.dim; ++j) {
      for (int k = 0; k < coeffs.dim; ++k)
        std::cout << (k ? " " : "") << io::format_sig(coeffs.grid(j, k).real(), 10);
      std::cout << '\n';
    }
    return 0;
  }
  if (is_unitary(a, 1e-10)) {
    const auto coeffs = algebra::decompose_unitary(a);
    std::cout << "unitary coefficients g(j,k) over X^j Z^k\n";
    for (int j = 0; j < coeffs.dim; ++j) {
      for (int k = 0; k < coeffs.dim; ++k) {
        const Complex g = coeffs.grid(j, k);
        std::cout << (k ? " " : "") << io::format_sig(g.real(), 10)
                  << (g.imag() < 0 ? "" : "+") << io::format_sig(g.imag(), 10) << 'j';
      }
      std::cout << '\n';
    }
    return 0;
  }
  throw std::invalid_argument("matrix is neither Hermitian nor unitary within 1e-10");
}

int run_chi(CommonOpts& opts, int m, int l_min, int l_max) {
  if (l_min > l_max) throw std::invalid_argument("--l-min must not exceed --l-max");
  std::vector<int> ls;
  for (int l = l_min; l <= l_max; ++l) ls.push_back(l);
  const auto grid = sweep::linear_grid(opts.cfg.zs_min, opts.cfg.zs_max, opts.cfg.zs_steps);
  const auto table = overlap::chi_sweep(m, ls, grid, opts.cfg.geometry, opts.cfg.quadrature);
  std::ostringstream os;
  table.write_csv(os);
  emit(opts.cfg.out_path, os.str());
  return 0;
}

int run_apply(CommonOpts& opts, const std::string& state_spec, int m, double zs) {
  const auto state = load_state(state_spec);
  const auto chi = sweep::quadrature_chi_source(m, opts.cfg.geometry, opts.cfg.quadrature);
  const auto outcome = sweep::gate_at(state, m, zs, chi);
  std::cout << outcome.report(m, zs);
  return 0;
}

int run_map(CommonOpts& opts, int d, int m, int l_min, int l_max) {
  if (l_min > l_max) throw std::invalid_argument("--l-min must not exceed --l-max");
  std::vector<int> bases;
  for (int l = l_min; l <= l_max; ++l) bases.push_back(l);
  const auto grid = sweep::linear_grid(opts.cfg.zs_min, opts.cfg.zs_max, opts.cfg.zs_steps);
  const auto map =
      sweep::probability_map(d, m, bases, grid, opts.cfg.geometry, opts.cfg.quadrature);
  std::ostringstream os;
  map.write_csv(os);
  emit(opts.cfg.out_path, os.str());
  return 0;
}

int run_table(CommonOpts& opts, int m, const std::string& objective_name, bool text) {
  const auto grid = sweep::linear_grid(opts.cfg.zs_min, opts.cfg.zs_max, opts.cfg.zs_steps);
  const auto rows = sweep::dimension_comparison(m, opts.cfg.geometry, opts.cfg.quadrature, grid,
                                                sweep::objective_from_name(objective_name));
  std::ostringstream os;
  if (text)
    os << sweep::format_table_text(rows, m);
  else
    sweep::write_table_csv(os, rows);
  emit(opts.cfg.out_path, os.str());
  return 0;
}

// --- selftest ---------------------------------------------------------------

bool report_check(const std::string& name, bool ok) {
  std::cout << (ok ? "ok   " : "FAIL ") << name << '\n';
  return ok;
}

Matrix random_hermitian(int d, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix b(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) b(r, c) = Complex(dist(rng), dist(rng));
  return 0.5 * (b + Matrix(b.adjoint()));
}

Matrix random_unitary(int d, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix b(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) b(r, c) = Complex(dist(rng), dist(rng));
  return Eigen::HouseholderQR<Matrix>(b).householderQ();
}

int run_selftest() {
  std::mt19937 rng(20260809u);
  bool all = true;

  {
    bool ok = true;
    for (int d = 2; d <= 7 && ok; ++d) {
      ok = is_identity(algebra::build_x(d, d), 1e-14) && is_identity(algebra::build_z(d, d), 1e-14);
      for (int k = 0; k < d && ok; ++k) ok = algebra::adjoint_power_identity_check(d, k);
    }
    all &= report_check("operator power and adjoint identities (d <= 7)", ok);
  }
  {
    bool ok = true;
    for (int d = 2; d <= 5 && ok; ++d) {
      for (int j1 = 0; j1 < d && ok; ++j1)
        for (int k1 = 0; k1 < d && ok; ++k1)
          for (int j2 = 0; j2 < d && ok; ++j2)
            for (int k2 = 0; k2 < d && ok; ++k2) {
              const Complex ip =
                  hs_inner(algebra::q_basis(d, j1, k1), algebra::q_basis(d, j2, k2));
              const double want = (j1 == j2 && k1 == k2) ? d : 0.0;
              ok = std::abs(ip - Complex(want, 0.0)) < 1e-10;
            }
    }
    all &= report_check("Q basis orthonormality (d <= 5)", ok);
  }
  {
    bool ok = true;
    for (int trial = 0; trial < 5 && ok; ++trial) {
      const int d = 3 + trial % 3;
      const Matrix a = random_hermitian(d, rng);
      ok = max_abs_diff(algebra::reconstruct(algebra::decompose_hermitian(a)), a) < 1e-10;
      const Matrix u = random_unitary(d, rng);
      ok = ok && max_abs_diff(algebra::reconstruct(algebra::decompose_unitary(u)), u) < 1e-10;
    }
    all &= report_check("decomposition round-trips", ok);
  }
  {
    const Matrix a = random_hermitian(3, rng);
    Matrix series = Matrix::Identity(3, 3);
    Matrix term = Matrix::Identity(3, 3);
    const Matrix ia = Complex(0, 1) * a;
    for (int n = 1; n <= 40; ++n) {
      term = Matrix(term * ia) / static_cast<double>(n);
      series += term;
    }
    all &= report_check("matrix exponential vs series",
                        max_abs_diff(algebra::unitary_from_hermitian(a), series) < 1e-10);
  }
  {
    overlap::BeamGeometry geom;
    overlap::QuadratureSpec quad;
    bool ok = true;
    double chi3_best = 0.0, z3_best = 0.0;
    for (double z = 0.0; z <= 3.0 + 1e-9; z += 0.1) {
      for (int l : {0, 3, 5}) {
        const double c = overlap::overlap_chi(l, -1, z, geom, quad);
        ok = ok && c >= 0.0 && c <= 1.0;
        if (l == 3 && c > chi3_best) {
          chi3_best = c;
          z3_best = z;
        }
      }
    }
    ok = ok && overlap::overlap_chi(0, -1, z3_best, geom, quad) < chi3_best;
    all &= report_check("chi range and l=0 suppression", ok);
  }
  {
    const std::vector<double> chis{0.9, 0.8};
    const auto state = channel::QuditState::uniform(2, 4);
    const auto outcome = channel::lossy_gate(state, -1, chis);
    bool ok = std::abs(outcome.p1 - 0.5184) < 1e-12;
    ok = ok && std::abs(outcome.fidelity - 0.7225 / 0.725) < 1e-9;
    for (int trial = 0; trial < 20 && ok; ++trial) {
      const int d = 2 + trial % 5;
      Vector amps(d);
      std::normal_distribution<double> dist(0.0, 1.0);
      for (int i = 0; i < d; ++i) amps(i) = Complex(dist(rng), dist(rng));
      amps /= amps.norm();
      const channel::QuditState s(d, 4, amps);
      std::vector<double> cs(static_cast<size_t>(d));
      std::uniform_real_distribution<double> cdist(0.2, 1.0);
      double prod = 1.0;
      for (auto& c : cs) {
        c = cdist(rng);
        prod *= c * c;
      }
      const auto o = channel::lossy_gate(s, 1, cs);
      ok = std::abs(o.p1 - prod) < 1e-12;
      const auto ideal = channel::ideal_gate(s, 1);
      ok = ok && std::abs(channel::fidelity_pure(ideal.amplitudes, o.rho1) - o.fidelity) < 1e-10;
    }
    all &= report_check("channel worked example and fidelity paths", ok);
  }

  if (!all) throw NumericalAccuracyError("selftest failed");
  std::cout << "selftest passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OAM qudit gates on a Raman-memory conversion cell"};
  app.require_subcommand(1);

  auto* gates = app.add_subcommand("gates", "print X/Z operator matrices or decompose a matrix");
  int gates_d = 2, gates_m = 1;
  std::string gates_decompose;
  gates->add_option("--d", gates_d, "qudit dimension")->check(CLI::Range(2, 64));
  gates->add_option("--m", gates_m, "operator power");
  gates->add_option("--decompose", gates_decompose, "matrix text file to decompose");

  auto* chi = app.add_subcommand("chi", "sweep conversion coefficients to CSV");
  CommonOpts chi_opts;
  int chi_m = -1, chi_lmin = 0, chi_lmax = 8;
  chi->add_option("--m", chi_m, "drive OAM / gate power (nonzero)");
  chi->add_option("--l-min", chi_lmin, "lowest signal OAM");
  chi->add_option("--l-max", chi_lmax, "highest signal OAM");
  chi_opts.attach(chi);

  auto* apply = app.add_subcommand("apply", "run one lossy gate and report p1 and fidelity");
  CommonOpts apply_opts;
  std::string apply_state = "d3-uniform-base4";
  int apply_m = -1;
  double apply_zs = 1.0;
  apply->add_option("--state", apply_state, "state preset (dK-uniform-baseB) or state file");
  apply->add_option("--m", apply_m, "gate power (nonzero)");
  apply->add_option("--zs", apply_zs, "waist shift zS/zR")->required();
  apply_opts.attach(apply);

  auto* map = app.add_subcommand("map", "success-probability heatmap CSV over (l_base, zS/zR)");
  CommonOpts map_opts;
  int map_d = 3, map_m = -1, map_lmin = 4, map_lmax = 10;
  map->add_option("--d", map_d, "qudit dimension")->check(CLI::Range(2, 64));
  map->add_option("--m", map_m, "gate power (nonzero)");
  map->add_option("--l-min", map_lmin, "lowest base OAM");
  map->add_option("--l-max", map_lmax, "highest base OAM");
  map_opts.attach(map);

  auto* table = app.add_subcommand("table", "dimension comparison (d = 2..5) at optimal shift");
  CommonOpts table_opts;
  int table_m = -1;
  std::string table_objective = "fidelity";
  bool table_text = false;
  table->add_option("--m", table_m, "gate power (nonzero)");
  table->add_option("--objective", table_objective, "fidelity | probability | merit");
  table->add_flag("--text", table_text, "aligned text output instead of CSV");
  table_opts.attach(table);

  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gates->parsed()) return run_gates(gates_d, gates_m, gates_decompose);
    if (chi->parsed()) {
      chi_opts.resolve();
      return run_chi(chi_opts, chi_m, chi_lmin, chi_lmax);
    }
    if (apply->parsed()) {
      apply_opts.resolve();
      return run_apply(apply_opts, apply_state, apply_m, apply_zs);
    }
    if (map->parsed()) {
      map_opts.resolve();
      return run_map(map_opts, map_d, map_m, map_lmin, map_lmax);
    }
    if (table->parsed()) {
      table_opts.resolve();
      return run_table(table_opts, table_m, table_objective, table_text);
    }
    if (selftest->parsed()) return run_selftest();
  } catch (const NumericalAccuracyError& e) {
    std::cerr << "numerical accuracy error: " << e.what() << '\n';
    return 2;
  } catch (const CoverageError& e) {
    std::cerr << "coverage error: " << e.what() << '\n';
    return 2;
  } catch (const DegenerateChannelError& e) {
    std::cerr << "degenerate channel: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
