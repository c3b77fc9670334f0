#include "qmech/bench/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>

#include "qmech/circuit.hpp"
#include "qmech/dispersive.hpp"
#include "qmech/dynamics.hpp"
#include "qmech/error.hpp"
#include "qmech/kernels.hpp"
#include "qmech/linalg.hpp"
#include "qmech/optomech.hpp"
#include "qmech/parallel.hpp"
#include "qmech/protocols.hpp"
#include "qmech/qubit_mech.hpp"
#include "qmech/units.hpp"

namespace qmech::bench {
namespace {

using units::angular;
using Runner = std::function<CaseResult(int threads)>;

// ---- config helpers ----

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[k] = n == 1 ? a : a + (b - a) * k / (n - 1);
  return v;
}

std::vector<double> read_grid(Fields& f, const std::string& key) {
  Fields g = f.object(key);
  const double a = g.number("start"), b = g.number("stop");
  const int n = g.count("points", 1);
  g.finish();
  if (n > 1 && !(b > a)) throw Error(ErrorKind::Config, "field '" + key + ".stop' must exceed start");
  return linspace(a, b, n);
}

// Qubit blocks. `charge_qubit` is the two-level closed form with the full
// Cooper-pair box alongside.
struct QubitBlock {
  std::string type;
  QubitSpec spec;
  double e_j = 0, e_c = 0;  // charge_qubit only
};

QubitBlock read_qubit(Fields& top) {
  Fields q = top.object("qubit");
  QubitBlock b;
  b.type = q.text("type");
  if (b.type == "transmon") {
    TransmonParams t;
    t.e_j1 = q.positive("e_j1");
    t.e_j2 = q.positive("e_j2");
    t.e_c = q.positive("e_c");
    t.n_charge = q.count("n_charge", 5, t.n_charge);
    b.spec = t;
  } else if (b.type == "fluxonium") {
    FluxoniumParams p;
    p.e_j = q.positive("e_j");
    p.e_c = q.positive("e_c");
    p.e_l = q.positive("e_l");
    p.n_fock = q.count("n_fock", 20, p.n_fock);
    b.spec = p;
  } else if (b.type == "charge_qubit") {
    TransmonParams t;
    b.e_j = q.positive("e_j");
    b.e_c = q.positive("e_c");
    t.e_j1 = t.e_j2 = 0.5 * b.e_j;
    t.e_c = b.e_c;
    t.n_charge = q.count("n_charge", 5, t.n_charge);
    b.spec = t;
  } else {
    throw Error(ErrorKind::Config, "field 'qubit.type' must be transmon, fluxonium or charge_qubit");
  }
  q.finish();
  return b;
}

BiasPoint read_bias(Fields& f) {
  BiasPoint bias;
  if (!f.has("bias")) {
    f.flag("bias", false);  // mark as seen
    return bias;
  }
  Fields b = f.object("bias");
  bias.flux = b.number("flux", 0.0);
  bias.gate_charge = b.number("gate_charge", 0.0);
  b.finish();
  return bias;
}

PhaseGrid read_phase_grid(Fields& f) {
  PhaseGrid g;
  if (!f.has("wigner")) return g;
  Fields w = f.object("wigner");
  g.x_min = w.number("x_min", g.x_min);
  g.x_max = w.number("x_max", g.x_max);
  g.p_min = w.number("p_min", g.p_min);
  g.p_max = w.number("p_max", g.p_max);
  g.nx = w.count("nx", 2, g.nx);
  g.np = w.count("np", 2, g.np);
  w.finish();
  if (!(g.x_max > g.x_min && g.p_max > g.p_min)) throw Error(ErrorKind::Config, "wigner: empty window");
  return g;
}

TimeGrid read_times(Fields& f) {
  TimeGrid g{0.0, f.positive("t_end"), f.count("samples", 2)};
  return g;
}

Table peaks_table(const std::vector<double>& x, const std::vector<double>& y, double prominence) {
  Table t{"peaks", Profile::peaks, {}};
  t.csv.columns = {"x", "height"};
  for (const Peak& p : find_peaks(x, y, prominence)) t.csv.add_row({p.x, p.height});
  return t;
}

Json peaks_summary(const Table& peaks) {
  Json s = Json::object();
  const auto& rows = peaks.csv.rows;
  s["peak_count"] = rows.size();
  if (rows.size() >= 2) {
    s["peak_spacing_mean"] = (rows.back()[0] - rows.front()[0]) / static_cast<double>(rows.size() - 1);
    s["splitting_outer"] = rows.back()[0] - rows.front()[0];
  }
  return s;
}

// ---- scenarios ----

Runner make_spectrum(Fields& f) {
  const QubitBlock q = read_qubit(f);
  const std::string axis_name = f.text("axis");
  if (axis_name != "flux" && axis_name != "gate_charge") {
    throw Error(ErrorKind::Config, "field 'axis' must be flux or gate_charge");
  }
  const SweepAxis axis = axis_name == "flux" ? SweepAxis::flux : SweepAxis::gate_charge;
  const std::vector<double> grid = read_grid(f, "grid");
  const BiasPoint bias = read_bias(f);
  const int levels = f.count("levels", 2, 4);
  const bool truncation_check = f.flag("truncation_check", false);
  if (q.type == "charge_qubit" && axis != SweepAxis::gate_charge) {
    throw Error(ErrorKind::Config, "charge_qubit spectra run over gate_charge");
  }
  if (truncation_check && q.type != "fluxonium") {
    throw Error(ErrorKind::Config, "truncation_check applies to fluxonium only");
  }

  return [=](int threads) {
    CaseResult r;
    Table t{"", Profile::eigen, {}};
    if (q.type == "charge_qubit") {
      t.csv.columns = {"flux_or_ng", "bare_0", "bare_1", "E_minus", "E_plus", "E0_exact", "E1_exact"};
      const SweepTable exact = spectrum_sweep(q.spec, bias, axis, grid, 2, threads);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ng = grid[i];
        const double b0 = 4 * q.e_c * ng * ng, b1 = 4 * q.e_c * (1 - ng) * (1 - ng);
        const ChargeQubitLevels l = charge_qubit_levels(q.e_c, q.e_j, ng);
        t.csv.add_row({ng, b0, b1, 0.5 * (b0 + b1 - l.omega), 0.5 * (b0 + b1 + l.omega), exact.energies[i][0],
                       exact.energies[i][1]});
      }
      r.summary["gap_at_half"] = charge_qubit_levels(q.e_c, q.e_j, 0.5).omega;
      r.tables.push_back(std::move(t));
      return r;
    }

    const SweepTable s = spectrum_sweep(q.spec, bias, axis, grid, levels, threads);
    t.csv.columns = {"flux_or_ng"};
    for (int k = 0; k < levels; ++k) t.csv.columns.push_back("E" + std::to_string(k));
    for (int k = 1; k < levels; ++k) t.csv.columns.push_back("f0" + std::to_string(k));
    double f01_lo = 1e300, f01_hi = -1e300;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::vector<double> row{grid[i]};
      row.insert(row.end(), s.energies[i].begin(), s.energies[i].end());
      row.insert(row.end(), s.transitions[i].begin(), s.transitions[i].end());
      t.csv.add_row(std::move(row));
      f01_lo = std::min(f01_lo, s.transitions[i][0]);
      f01_hi = std::max(f01_hi, s.transitions[i][0]);
    }
    r.summary["f01_min"] = f01_lo;
    r.summary["f01_max"] = f01_hi;
    r.summary["f01_dispersion"] = f01_hi - f01_lo;
    if (const auto* tp = std::get_if<TransmonParams>(&q.spec)) {
      const double ej = ej_eff(*tp, bias.flux);
      r.summary["ej_eff_over_4ec"] = ej / (4 * tp->e_c);
      if (axis == SweepAxis::flux) {
        r.summary["f01_closed_form_at_zero_flux"] = std::sqrt(8 * tp->e_c * tp->e_j_max()) - tp->e_c;
      }
    }
    if (truncation_check) {
      const auto& fp = std::get<FluxoniumParams>(q.spec);
      FluxoniumParams doubled = fp;
      doubled.n_fock = 2 * fp.n_fock;
      double worst = 0;
      for (double x : {grid.front(), grid[grid.size() / 2], grid.back()}) {
        BiasPoint b = bias;
        (axis == SweepAxis::flux ? b.flux : b.gate_charge) = x;
        const RVector e1 = diagonalize(fp, b).energies, e2 = diagonalize(doubled, b).energies;
        for (int k = 0; k < levels; ++k) worst = std::max(worst, std::abs(e1(k) - e2(k)));
      }
      r.summary["truncation_doubling_max_shift"] = worst;
      if (worst > 1e-6) r.warnings.push_back("fluxonium truncation shift above 1e-6 GHz");
    }
    r.tables.push_back(std::move(t));
    return r;
  };
}

Runner make_avoided(Fields& f) {
  const QubitBlock q = read_qubit(f);
  if (q.type == "charge_qubit") throw Error(ErrorKind::Config, "avoided needs a transmon or fluxonium");
  const MechMode mech{f.positive("omega_b"), f.count("mech_dim", 2, 4)};
  const ChargeCoupling coupling{f.positive("g")};
  double lo = 0.0, hi = 0.5;
  if (f.has("search")) {
    Fields s = f.object("search");
    lo = s.number("lo");
    hi = s.number("hi");
    s.finish();
  }
  const std::vector<double> window = read_grid(f, "window");

  return [=](int threads) {
    CaseResult r;
    const AvoidedCrossing a = find_avoided_crossing(q.spec, mech, coupling, lo, hi);
    std::vector<std::array<double, 3>> rows(window.size());
    parallel_for(window.size(), threads, [&](std::size_t i) {
      const auto [b1, b2] = dressed_branches(q.spec, window[i], mech, coupling);
      const RVector e = diagonalize(q.spec, {window[i], 0.0}).energies;
      rows[i] = {b1, b2, e(1) - e(0)};
    });
    Table t{"", Profile::eigen, {}};
    t.csv.columns = {"flux", "branch_lo", "branch_hi", "f01_bare", "omega_b"};
    for (std::size_t i = 0; i < window.size(); ++i) {
      t.csv.add_row({window[i], rows[i][0], rows[i][1], rows[i][2], mech.omega_b});
    }
    r.tables.push_back(std::move(t));
    r.summary = {{"flux_resonance", a.flux_resonance}, {"flux_gap", a.flux_gap}, {"gap", a.gap},
                 {"n_ge", a.n_ge},
                 {"expected_2g_nge", a.expected},
                 {"gap_over_expected", a.gap / a.expected}};
    return r;
  };
}

Runner make_dispersive(Fields& f) {
  const QubitBlock q = read_qubit(f);
  if (q.type == "charge_qubit") throw Error(ErrorKind::Config, "dispersive needs a transmon or fluxonium");
  const BiasPoint bias = read_bias(f);
  Fields c = f.object("cavity");
  const CavitySpec cavity{c.positive("omega"), c.positive("g")};
  c.finish();
  const int level_cutoff = f.count("level_cutoff", 2, 6);
  const int photon_cutoff = f.count("photon_cutoff", 3, 6);
  const std::vector<double> g_scan = f.has("g_scan") ? f.numbers("g_scan") : std::vector<double>{};
  for (double g : g_scan) {
    if (!(g > 0)) throw Error(ErrorKind::Config, "field 'g_scan' must hold positive couplings");
  }

  return [=](int) {
    CaseResult r;
    const QubitEigensystem eig = diagonalize(q.spec, bias);
    const DispersiveShifts sw = sw_shifts(eig, cavity, level_cutoff);
    const RVector pull = exact_shift_oracle(eig, cavity, photon_cutoff, level_cutoff);
    Table t{"", Profile::eigen, {}};
    t.csv.columns = {"level", "energy", "lamb", "chi", "pull_exact"};
    for (int i = 0; i < level_cutoff; ++i) {
      t.csv.add_row({static_cast<double>(i), eig.energies(i) - eig.energies(0), sw.lamb(i), sw.chi(i), pull(i)});
    }
    r.tables.push_back(std::move(t));
    r.summary["two_chi_sw"] = sw.two_chi();
    r.summary["two_chi_exact"] = pull(1) - pull(0);
    if (!g_scan.empty()) {
      Table s{"scaling", Profile::eigen, {}};
      s.csv.columns = {"g", "two_chi_sw", "two_chi_exact", "rel_error"};
      for (double g : g_scan) {
        const CavitySpec cg{cavity.omega, g};
        const double a = sw_shifts(eig, cg, level_cutoff).two_chi();
        const RVector p = exact_shift_oracle(eig, cg, photon_cutoff, level_cutoff);
        const double b = p(1) - p(0);
        s.csv.add_row({g, a, b, std::abs(a - b) / std::abs(b)});
      }
      r.tables.push_back(std::move(s));
    }
    return r;
  };
}

Runner make_rabi(Fields& f) {
  const QubitBlock q = read_qubit(f);
  if (q.type != "transmon") throw Error(ErrorKind::Config, "rabi needs a transmon");
  RabiConfig cfg;
  cfg.qubit = std::get<TransmonParams>(q.spec);
  cfg.fluxes = f.numbers("fluxes");
  cfg.omega_b = f.positive("omega_b");
  cfg.g = f.positive("g");
  cfg.omega_r = f.non_negative("omega_r", 0.0);
  cfg.gamma = f.non_negative("gamma", 0.0);
  cfg.gamma_phi = f.non_negative("gamma_phi", 0.0);
  cfg.gamma_m = f.non_negative("gamma_m", 0.0);
  cfg.n_th = f.non_negative("n_th", 0.0);
  cfg.mech_dim = f.count("mech_dim", 2, 4);
  cfg.grid = read_times(f);

  return [cfg](int threads) mutable {
    cfg.threads = threads;
    CaseResult r;
    const auto traces = rabi_experiment(cfg);
    Table t{"", Profile::trajectory, {}};
    t.csv.columns = {"flux", "t", "p_e", "log_neg", "phonons"};
    Json per = Json::array();
    for (const auto& tr : traces) {
      for (std::size_t k = 0; k < tr.t.size(); ++k) t.csv.add_row({tr.flux, tr.t[k], tr.p_e[k], tr.log_neg[k], tr.phonons[k]});
      const double lo = *std::min_element(tr.p_e.begin(), tr.p_e.end());
      const double en = *std::max_element(tr.log_neg.begin(), tr.log_neg.end());
      per.push_back({{"flux", tr.flux}, {"detuning", tr.detuning}, {"coupling", tr.coupling}, {"contrast", 1 - lo},
                     {"max_log_neg", en}});
    }
    r.tables.push_back(std::move(t));
    r.summary["fluxes"] = per;
    return r;
  };
}

Runner make_modesplit(Fields& f) {
  const std::string mode = f.text("mode", "spectrum");
  const double omega_b = f.positive("omega_b"), omega_q = f.positive("omega_q"), g = f.positive("g");
  const double gamma = f.non_negative("gamma"), gamma_m = f.non_negative("gamma_m");
  if (mode == "spectrum") {
    SemiclassicalParams p;
    p.omega_b = angular(omega_b);
    p.omega_q = angular(omega_q);
    p.g = angular(g);
    p.gamma = angular(gamma);
    p.gamma_m = angular(gamma_m);
    p.gamma_phi = angular(f.non_negative("gamma_phi", 0.0));
    p.omega_r = angular(f.positive("omega_r"));
    const std::vector<double> scan = read_grid(f, "scan");  // drive minus qubit, GHz
    if (p.omega_r > p.gamma) throw Error(ErrorKind::Config, "omega_r must not exceed gamma (linear response)");
    return [=](int threads) {
      std::vector<double> wd;
      for (double x : scan) wd.push_back(p.omega_q + angular(x));
      const auto pts = semiclassical_spectrum(p, wd, threads);
      CaseResult r;
      Table t{"", Profile::trajectory, {}};
      t.csv.columns = {"detuning", "p_e", "converged"};
      std::vector<double> y;
      int unconverged = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        t.csv.add_row({scan[i], pts[i].p_e, pts[i].converged ? 1.0 : 0.0});
        y.push_back(pts[i].p_e);
        unconverged += pts[i].converged ? 0 : 1;
      }
      if (unconverged) r.warnings.push_back(std::to_string(unconverged) + " drive points did not converge");
      Table pk = peaks_table(scan, y, 0.05);
      r.summary = peaks_summary(pk);
      r.summary["expected_2g"] = 2 * g;
      r.tables.push_back(std::move(t));
      r.tables.push_back(std::move(pk));
      return r;
    };
  }
  if (mode != "trace") throw Error(ErrorKind::Config, "field 'mode' must be spectrum or trace");
  const double n_th = f.non_negative("n_th", 0.0);
  const int dim = f.count("mech_dim", 2, 4);
  const TimeGrid grid = read_times(f);
  return [=](int) {
    const SpaceDims space{2, dim};
    const JCModel jc{angular(omega_q - omega_b), 0.0, angular(g)};
    LindbladModel m{jc_hamiltonian(jc, dim), {}, n_th};
    const Operator sm = embed(pauli(Pauli::minus), 0, space);
    const Operator b = embed(destroy(dim), 1, space);
    m.channels.push_back({sm, angular(gamma)});
    add_thermal_channels(m, b, angular(gamma_m), n_th);
    const int start[] = {1, 0};
    const Trajectory tr = lindblad_evolve(m, DensityMatrix::from_pure(StateVector::basis(space, start)), grid);
    const Operator pe = sm.adjoint() * sm, nb = b.adjoint() * b;
    CaseResult r;
    Table t{"", Profile::trajectory, {}};
    t.csv.columns = {"t", "p_e", "phonons"};
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      t.csv.add_row({tr.times[k], expect(pe, tr.states[k]).real(), expect(nb, tr.states[k]).real()});
    }
    r.summary["swap_time"] = 1.0 / (4.0 * g);
    r.tables.push_back(std::move(t));
    return r;
  };
}

Runner make_numbersplit(Fields& f) {
  NumberSplitParams p;
  const double chi = f.number("chi");
  p.chi = angular(chi);
  p.delta_t = angular(f.number("delta_t"));
  p.delta_m = angular(f.number("delta_m", chi));
  p.epsilon = angular(f.non_negative("epsilon", 0.0));
  p.omega_r = angular(f.positive("omega_r"));
  p.gamma = angular(f.non_negative("gamma"));
  p.gamma_b = angular(f.non_negative("gamma_b"));
  p.mech_dim = f.count("mech_dim", 2, 16);
  const double prominence = f.positive("prominence", 0.02);
  const std::vector<double> scan = read_grid(f, "scan");
  p.validate();
  return [=](int threads) {
    std::vector<double> x;
    for (double v : scan) x.push_back(angular(v));
    const auto pts = number_splitting(p, x, threads);
    CaseResult r;
    Table t{"", Profile::trajectory, {}};
    t.csv.columns = {"x", "p_e"};
    std::vector<double> y;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      t.csv.add_row({scan[i], pts[i].p_e});
      y.push_back(pts[i].p_e);
    }
    Table pk = peaks_table(scan, y, prominence);
    r.summary = peaks_summary(pk);
    r.summary["expected_spacing_2chi"] = 2 * chi;
    r.tables.push_back(std::move(t));
    r.tables.push_back(std::move(pk));
    return r;
  };
}

QubitInput read_input(const std::string& s) {
  if (s == "g") return QubitInput::g;
  if (s == "e") return QubitInput::e;
  if (s == "plus") return QubitInput::plus;
  throw Error(ErrorKind::Config, "field 'input' must be g, e or plus");
}

Runner make_encode(Fields& f) {
  const double g0 = angular(f.positive("g0"));
  const TimeGrid grid = read_times(f);
  const std::string input_name = f.text("input");
  const QubitInput input = read_input(input_name);
  const int dim = f.count("mech_dim", 2, 40);
  return [=](int) {
    CaseResult r;
    Table t{"", Profile::trajectory, {}};
    t.csv.columns = {"t", "beta_re", "beta_im", "mean_b_re", "mean_b_im", "fidelity", "overlap_re", "overlap_im"};
    for (int k = 0; k < grid.steps; ++k) {
      const EncodingRun run = encode(g0, grid.at(k), input, dim);
      t.csv.add_row({run.t, run.beta.real(), run.beta.imag(), run.mean_b.real(), run.mean_b.imag(), run.fidelity,
                     run.branch_overlap.real(), run.branch_overlap.imag()});
    }
    r.tables.push_back(std::move(t));
    return r;
  };
}

Runner make_cat(Fields& f) {
  const double g0 = angular(f.positive("g0"));
  const double t = f.positive("t");
  const std::string state = f.text("state");
  const int dim = f.count("mech_dim", 2, 40);
  const PhaseGrid grid = read_phase_grid(f);
  if (state != "coherent_g" && state != "coherent_e" && state != "even" && state != "odd") {
    throw Error(ErrorKind::Config, "field 'state' must be coherent_g, coherent_e, even or odd");
  }
  return [=](int) {
    CaseResult r;
    StateVector mech(SpaceDims{dim}, CVector::Unit(dim, 0));
    if (state == "even" || state == "odd") {
      const CatPreparation c = cat_prepare(g0, t, state == "even" ? Outcome::g : Outcome::e, dim);
      mech = c.mech;
      r.summary["probability"] = c.probability;
      r.summary["parity"] = c.parity;
      r.summary["beta_re"] = c.beta.real();
      r.summary["beta_im"] = c.beta.imag();
    } else {
      const EncodingRun run = encode(g0, t, state == "coherent_g" ? QubitInput::g : QubitInput::e, dim);
      mech = *run.mech;
      r.summary["mean_b_re"] = run.mean_b.real();
      r.summary["mean_b_im"] = run.mean_b.imag();
      r.summary["fidelity"] = run.fidelity;
    }
    const DensityMatrix rho = DensityMatrix::from_pure(mech);
    const WignerField w = wigner(rho, grid);
    Table tab{"", Profile::trajectory, {}};
    tab.csv.columns = {"x", "p", "w"};
    for (int j = 0; j < grid.np; ++j)
      for (int i = 0; i < grid.nx; ++i) tab.csv.add_row({grid.x(i), grid.p(j), w.at(i, j)});
    r.summary["w_origin"] = wigner_at(rho, 0.0);
    r.summary["integral"] = w.integral;
    if (w.accuracy_warning) r.warnings.push_back("wigner integral off by more than 1e-3; widen the window");
    r.tables.push_back(std::move(tab));
    return r;
  };
}

Runner make_force(Fields& f) {
  const double g0 = angular(f.positive("g0"));
  const double side = f.positive("side_time");
  const std::vector<double> etas = f.numbers("etas");
  const bool reversed = f.flag("reversed", false);
  const int dim = f.count("mech_dim", 2, 40);
  const bool joint = f.flag("joint_check", true);
  return [=](int) {
    CaseResult r;
    Table t{"", Profile::trajectory, {}};
    t.csv.columns = {"eta", "phi_t", "sigma_x", "sigma_y", "phi_joint"};
    const auto plan = square_loop(side, reversed);
    for (double eta : etas) {
      const ForceSenseRun run = force_sense(angular(eta), g0, plan, dim, joint);
      t.csv.add_row({eta, run.phi_t, run.sigma_x, run.sigma_y, joint ? run.phi_joint : 0.0});
    }
    r.tables.push_back(std::move(t));
    return r;
  };
}

Runner make_transduce(Fields& f) {
  const std::string mode = f.text("mode");
  if (mode == "double_swap") {
    TransduceParams p;
    p.g_tm = angular(f.positive("g_tm"));
    p.g_alpha = angular(f.positive("g_alpha"));
    p.qubit_detuning = angular(f.number("qubit_detuning", 0.0));
    p.residual_g_tm = angular(f.number("residual_g_tm", 0.0));
    p.gamma = angular(f.non_negative("gamma", 0.0));
    p.gamma_m = angular(f.non_negative("gamma_m", 0.0));
    p.n_th = f.non_negative("n_th", 0.0);
    p.kappa = angular(f.non_negative("kappa", 0.0));
    const double t1 = f.non_negative("t1", 0.0), t2 = f.non_negative("t2", 0.0);
    const int samples = f.count("samples", 2, 201);
    return [=](int) {
      const TransduceReport rep = transduce(p, t1, t2);
      const TransduceTrace tr = transduce_trace(p, rep.t1, rep.t2, samples);
      CaseResult r;
      Table t{"", Profile::trajectory, {}};
      t.csv.columns = {"t", "qubit_p_e", "phonons", "photons"};
      for (std::size_t k = 0; k < tr.t.size(); ++k) t.csv.add_row({tr.t[k], tr.qubit[k], tr.phonons[k], tr.photons[k]});
      r.tables.push_back(std::move(t));
      r.summary = {{"t1", rep.t1}, {"t2", rep.t2}, {"oracle_t1", rep.oracle_t1}, {"oracle_t2", rep.oracle_t2},
                   {"stage1_transfer", rep.stage1_transfer}, {"fidelity", rep.fidelity},
                   {"superposition_fidelity", rep.superposition_fidelity}};
      return r;
    };
  }
  if (mode != "readout") throw Error(ErrorKind::Config, "field 'mode' must be double_swap or readout");
  const double g_alpha = angular(f.positive("g_alpha"));
  const double beta = f.positive("beta");
  const double alpha_ref = f.number("alpha_ref", beta);
  const int dim = f.count("dim", 2, 16);
  const int sample_count = f.count("sample_count", 1, 4);
  const TimeGrid grid = read_times(f);
  return [=](int) {
    std::vector<double> times;
    for (int k = 0; k < grid.steps; ++k) times.push_back(grid.at(k));
    const ReadoutTrace g = longitudinal_readout_via_optics(g_alpha, cplx(0, beta), alpha_ref, times, sample_count, dim);
    const ReadoutTrace e = longitudinal_readout_via_optics(g_alpha, cplx(0, -beta), alpha_ref, times, sample_count, dim);
    CaseResult r;
    Table t{"", Profile::trajectory, {}};
    t.csv.columns = {"t", "photons_g", "phonons_g", "photons_e", "phonons_e"};
    for (std::size_t k = 0; k < times.size(); ++k) {
      t.csv.add_row({times[k], g.photons[k], g.phonons[k], e.photons[k], e.phonons[k]});
    }
    bool ok = true;
    Json samples = Json::array();
    for (std::size_t k = 0; k < g.sample_times.size(); ++k) {
      ok = ok && g.infer_ground[k] && !e.infer_ground[k];
      samples.push_back({{"t", g.sample_times[k]}, {"photons_g", g.sample_photons[k]}, {"photons_e", e.sample_photons[k]}});
    }
    r.summary = {{"inference_correct", ok}, {"samples", samples}};
    r.tables.push_back(std::move(t));
    return r;
  };
}

Runner make_cool(Fields& f) {
  CoolingCheckParams base;
  base.omega_b = angular(f.positive("omega_b"));
  base.g = angular(f.positive("g"));
  base.drive = angular(f.non_negative("drive"));
  base.gamma = angular(f.non_negative("gamma"));
  base.gamma_m = angular(f.non_negative("gamma_m"));
  base.n_th = f.non_negative("n_th");
  base.mech_dim = f.count("mech_dim", 2, 40);
  const std::vector<double> detunings = f.numbers("detunings");  // qubit minus drive, GHz
  base.validate();
  return [=](int threads) {
    std::vector<std::array<double, 4>> rows(detunings.size());
    parallel_for(detunings.size(), threads, [&](std::size_t i) {
      CoolingCheckParams p = base;
      p.detuning = angular(detunings[i]);
      const CoolingCheck c = cold_bath_cooling_check(p);
      CoolingRateInputs in;
      in.g_l = p.g;
      in.qubit_linewidth = p.gamma;
      in.qubit_detuning = -p.detuning;
      in.omega = p.omega_b;
      const CoolingRates rates = cooling_rates(in);
      rows[i] = {c.n_ss, c.n_total, rates.gamma_minus, rates.gamma_plus};
    });
    CaseResult r;
    Table t{"", Profile::trajectory, {}};
    t.csv.columns = {"detuning", "n_ss", "n_total", "gamma_minus", "gamma_plus"};
    Json per = Json::array();
    for (std::size_t i = 0; i < detunings.size(); ++i) {
      t.csv.add_row({detunings[i], rows[i][0], rows[i][1], rows[i][2], rows[i][3]});
      per.push_back({{"detuning", detunings[i]}, {"cooled", rows[i][0] < base.n_th},
                     {"rates_cool", rows[i][2] > rows[i][3]}});
    }
    r.summary["points"] = per;
    r.tables.push_back(std::move(t));
    return r;
  };
}

using Factory = Runner (*)(Fields&);

const std::map<std::string, Factory>& factories() {
  static const std::map<std::string, Factory> m{
      {"spectrum", make_spectrum}, {"avoided", make_avoided}, {"dispersive", make_dispersive},
      {"rabi", make_rabi},         {"modesplit", make_modesplit}, {"numbersplit", make_numbersplit},
      {"encode", make_encode},     {"cat", make_cat},           {"force", make_force},
      {"transduce", make_transduce}, {"cool", make_cool}};
  return m;
}

}  // namespace

const char* profile_name(Profile p) {
  switch (p) {
    case Profile::eigen: return "eigen";
    case Profile::trajectory: return "trajectory";
    case Profile::peaks: return "peaks";
  }
  return "?";
}

Profile profile_from_name(const std::string& name) {
  if (name == "eigen") return Profile::eigen;
  if (name == "trajectory") return Profile::trajectory;
  if (name == "peaks") return Profile::peaks;
  throw Error(ErrorKind::Config, "unknown tolerance profile " + name);
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"spectrum", "avoided", "dispersive", "rabi",      "modesplit", "numbersplit",
                                              "encode",   "cat",     "force",      "transduce", "cool"};
  return names;
}

ScenarioResult run_scenario(const Json& config, int threads) {
  if (threads < 1) throw Error(ErrorKind::Config, "threads must be >= 1");
  const auto cases = expand_cases(config);
  ScenarioResult result;
  std::vector<std::pair<std::string, Runner>> runners;
  for (const auto& c : cases) {
    const std::string where = c.name.empty() ? "" : "case '" + c.name + "': ";
    try {
      Fields top(c.config, "");
      const std::string scenario = top.text("scenario");
      const auto it = factories().find(scenario);
      if (it == factories().end()) throw Error(ErrorKind::Config, "unknown scenario '" + scenario + "'");
      if (!result.scenario.empty() && result.scenario != scenario) {
        throw Error(ErrorKind::Config, "all cases must share one scenario");
      }
      result.scenario = scenario;
      top.text("name", "");
      top.text("description", "");
      if (top.has("seed")) top.count("seed", 0);
      runners.emplace_back(c.name, it->second(top));
      top.finish();
    } catch (const Error& e) {
      if (where.empty()) throw;
      throw Error(e.kind(), where + e.what());
    }
  }
  for (auto& [name, run] : runners) {
    CaseResult r = run(threads);
    r.name = name;
    result.cases.push_back(std::move(r));
  }
  return result;
}

std::string table_file(const std::string& base, const CaseResult& c, const Table& t) {
  std::string f = base;
  if (!c.name.empty()) f += "_" + c.name;
  if (!t.suffix.empty()) f += "_" + t.suffix;
  return f + ".csv";
}

std::string output_base(const Json& config, const std::filesystem::path& config_path) {
  if (config.contains("name") && config.at("name").is_string() && !config.at("name").get<std::string>().empty()) {
    return config.at("name").get<std::string>();
  }
  return config_path.stem().string();
}

std::vector<WrittenTable> write_result(const ScenarioResult& result, const Json& config,
                                       const std::filesystem::path& out, const std::string& base,
                                       double wall_seconds) {
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) throw Error(ErrorKind::Config, "cannot create output directory " + out.string());
  std::vector<WrittenTable> written;
  Json outputs = Json::array(), warnings = Json::array(), summary = Json::object();
  for (const auto& c : result.cases) {
    for (const auto& t : c.tables) {
      const std::string file = table_file(base, c, t);
      std::ofstream os(out / file, std::ios::binary);
      os << t.csv.str();
      if (!os) throw Error(ErrorKind::Config, "cannot write " + (out / file).string());
      written.push_back({file, t.profile});
      outputs.push_back({{"file", file}, {"case", c.name}, {"profile", profile_name(t.profile)},
                         {"rows", t.csv.rows.size()}, {"columns", t.csv.columns}});
    }
    for (const auto& w : c.warnings) warnings.push_back(c.name.empty() ? w : c.name + ": " + w);
    summary[c.name.empty() ? "main" : c.name] = c.summary;
  }
  const Json manifest{{"scenario", result.scenario}, {"fingerprint", fingerprint_hex(config)},
                      {"wall_seconds", wall_seconds},
                      {"kernel_isa", std::string(kernels::isa_name(kernels::active_isa()))},
                      {"warnings", warnings},  {"outputs", outputs}, {"summary", summary}};
  std::ofstream ms(out / (base + ".manifest.json"));
  ms << manifest.dump(2) << '\n';
  if (!ms) throw Error(ErrorKind::Config, "cannot write manifest");
  return written;
}

}  // namespace qmech::bench
