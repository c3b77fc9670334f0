// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qmech/bench/golden.hpp"
#include "qmech/bench/scenarios.hpp"
#include "qmech/circuit.hpp"
#include "qmech/dispersive.hpp"
#include "qmech/dynamics.hpp"
#include "qmech/error.hpp"
#include "qmech/linalg.hpp"
#include "qmech/optomech.hpp"
#include "qmech/protocols.hpp"
#include "qmech/qubit_mech.hpp"
#include "qmech/units.hpp"

using namespace qmech;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

// pinned tolerances
constexpr double kTolClosedForm = 0.02;
constexpr double kTolPeriodic = 1e-9;
constexpr double kTolTruncation = 1e-6;
constexpr double kMaxSweepSeconds = 10.0;
constexpr double kDispersionRatio50 = 1e-3;
constexpr double kSwScaling = 3.0;
constexpr double kTolGap = 0.02;
constexpr double kTolGapLinear = 0.01;
constexpr double kTolRabiPopulation = 1e-6;
constexpr double kTolLogNeg = 1e-4;
constexpr double kTolLiouvillian = 1e-6;
constexpr double kTolThermal = 1e-4;
constexpr double kModeSplitTarget = 15.0, kTolModeSplit = 1.0;     // MHz
constexpr double kNumberSplitTarget = 6.0, kTolNumberSplit = 0.05;  // MHz, relative
constexpr double kTolEncodeFidelity = 1e-8;
constexpr double kTolParity = 1e-8;
constexpr double kTolWignerOrigin = 1e-3;
constexpr double kTolCatProbability = 1e-9;
constexpr double kMinTransduceFidelity = 0.999;
constexpr double kTolTransferTime = 1e-3;
constexpr double kMaxVerifySeconds = 300.0;

struct Verdict {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string num(double v, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = a + (b - a) * k / (n - 1);
  return v;
}

Verdict spectra() {
  Verdict o;
  const TransmonParams tr{5, 5, 0.5, 20};
  const std::vector<double> flux = linspace(-1.0, 1.0, 201);
  auto t0 = std::chrono::steady_clock::now();
  const SweepTable s = spectrum_sweep(tr, {}, SweepAxis::flux, flux, 4);
  const double t_tr = seconds_since(t0);

  double period = 0;
  for (std::size_t i = 0; i + 100 < flux.size(); ++i)
    for (int k = 0; k < 3; ++k) period = std::max(period, std::abs(s.transitions[i][k] - s.transitions[i + 100][k]));
  o.check(period < kTolPeriodic, "flux period shift " + num(period));

  double best = -1;
  std::size_t at = 0;
  for (std::size_t i = 0; i < flux.size(); ++i) {
    if (s.transitions[i][0] > best) best = s.transitions[i][0], at = i;
  }
  const double closed = std::sqrt(8 * tr.e_c * tr.e_j_max()) - tr.e_c;
  const double rel = std::abs(best - closed) / closed;
  o.check(std::abs(flux[at] - std::round(flux[at])) < 1e-12 && rel < kTolClosedForm,
          "f01 max " + num(best, 6) + " at flux " + num(flux[at]) + " vs closed form " + num(closed, 6));

  const FluxoniumParams fx{10, 1.2, 1.0};
  t0 = std::chrono::steady_clock::now();
  const SweepTable sf = spectrum_sweep(fx, {}, SweepAxis::flux, flux, 4);
  const double t_fx = seconds_since(t0);
  FluxoniumParams doubled = fx;
  doubled.n_fock *= 2;
  const SweepTable sd = spectrum_sweep(doubled, {}, SweepAxis::flux, flux, 4);
  double shift = 0;
  for (std::size_t i = 0; i < flux.size(); ++i)
    for (int k = 0; k < 4; ++k) shift = std::max(shift, std::abs(sf.energies[i][k] - sd.energies[i][k]));
  o.check(shift < kTolTruncation, "fluxonium doubling shift " + num(shift));
  o.check(t_tr < kMaxSweepSeconds && t_fx < kMaxSweepSeconds,
          "sweep seconds " + num(t_tr, 2) + " / " + num(t_fx, 2));
  return o;
}

Verdict charge_dispersion() {
  Verdict o;
  const std::vector<double> ng = linspace(-0.5, 0.5, 81);
  std::vector<double> d;
  for (double ratio : {1.0, 5.0, 10.0, 50.0}) {
    const double e_c = 1.0;
    const TransmonParams p{2 * ratio * e_c, 2 * ratio * e_c, e_c, 20};
    const SweepTable t = spectrum_sweep(p, {}, SweepAxis::gate_charge, ng, 2);
    double lo = 1e300, hi = -1e300;
    for (const auto& row : t.transitions) lo = std::min(lo, row[0]), hi = std::max(hi, row[0]);
    d.push_back(hi - lo);
  }
  o.check(d[0] > d[1] && d[1] > d[2] && d[2] > d[3],
          "dispersion " + num(d[0]) + " > " + num(d[1]) + " > " + num(d[2]) + " > " + num(d[3]));
  o.check(d[3] < kDispersionRatio50 * d[0], "ratio-50 / ratio-1 = " + num(d[3] / d[0]));
  return o;
}

Verdict dispersive_scaling() {
  Verdict o;
  const QubitEigensystem e = diagonalize(TransmonParams{5, 5, 0.5, 20}, {});
  const double f01 = e.energies(1) - e.energies(0);
  auto rel_error = [&](double g) {
    const CavitySpec c{f01 + 1.2, g};
    const double sw = sw_shifts(e, c, 8).two_chi();
    const RVector pull = exact_shift_oracle(e, c, 6, 8);
    const double exact = pull(1) - pull(0);
    return std::abs(sw - exact) / std::abs(exact);
  };
  const double r1 = rel_error(0.05), r2 = rel_error(0.025);
  o.check(r1 / r2 >= kSwScaling, "error " + num(r1) + " -> " + num(r2) + " (x" + num(r1 / r2, 3) + ")");
  return o;
}

Verdict avoided_crossing() {
  Verdict o;
  const TransmonParams q{5, 5, 0.5, 20};
  const MechMode mech{4.5, 4};
  const AvoidedCrossing a = find_avoided_crossing(q, mech, {0.001});
  const double rel = std::abs(a.gap - a.expected) / a.expected;
  o.check(rel < kTolGap, "gap " + num(a.gap * 1e3, 6) + " MHz vs 2 g |n_ge| " + num(a.expected * 1e3, 6));
  const AvoidedCrossing b = find_avoided_crossing(q, mech, {0.0005});
  const double lin = std::abs(b.gap / a.gap - 0.5) / 0.5;
  o.check(lin < kTolGapLinear, "half-g gap ratio " + num(b.gap / a.gap, 6));
  return o;
}

Verdict vacuum_rabi() {
  Verdict o;
  // resonant transmon at the crossing flux, coupling G = 2 pi g |n_ge|
  const TransmonParams q{5, 5, 0.5, 20};
  const AvoidedCrossing a = find_avoided_crossing(q, {4.5, 4}, {0.001});
  const double G = units::angular(0.001 * a.n_ge);
  const double w = units::angular(4.5);
  const int dim = 4;
  const Operator h = jc_hamiltonian({w, w, G}, dim);
  const SpaceDims s{2, dim};
  const int start[] = {1, 0}, target[] = {0, 1};
  const StateVector psi0 = StateVector::basis(s, start);
  const CVector full = unitary_propagator(h, kPi / (2 * G)) * psi0.amplitudes();
  const double p = std::norm(StateVector::basis(s, target).amplitudes().dot(full));
  o.check(std::abs(1 - p) < kTolRabiPopulation, "P(g,1) at pi/2G = 1 - " + num(1 - p));
  const CVector half = unitary_propagator(h, kPi / (4 * G)) * psi0.amplitudes();
  const double en = log_negativity(DensityMatrix::from_pure(StateVector(s, half)));
  o.check(std::abs(en - 1) < kTolLogNeg, "E_N at pi/4G = " + num(en, 8));
  return o;
}

Verdict open_system() {
  Verdict o;
  const SpaceDims s{2, 5};
  const Operator b = embed(destroy(5), 1, s);
  const Operator sm = embed(pauli(Pauli::minus), 0, s);
  Operator h = 0.35 * embed(pauli(Pauli::z), 0, s) + 0.8 * embed(number(5), 1, s) +
               0.12 * (sm * b.adjoint() + sm.adjoint() * b) + 0.07 * embed(pauli(Pauli::x), 0, s);
  LindbladModel m{Operator::hermitian(s, h.data()), {}, 0.4};
  m.channels.push_back({sm, 0.06});
  m.channels.push_back({embed(pauli(Pauli::z), 0, s), 0.02});
  add_thermal_channels(m, b, 0.05, 0.4);
  const DensityMatrix rho0(s, oracle::random_density(10, 7));
  const Trajectory tr = lindblad_evolve(m, rho0, {0.0, 30.0, 7});
  double worst = 0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const CMatrix exact = oracle::propagate_exact(m, rho0.matrix(), tr.times[k]);
    worst = std::max(worst, (tr.states[k].matrix() - exact).cwiseAbs().maxCoeff());
  }
  o.check(worst < kTolLiouvillian, "max |rho - exp(Lt) rho0| = " + num(worst));

  const int d = 15;
  const double n_th = 0.5;
  LindbladModel th{0.2 * number(d), {}, n_th};
  add_thermal_channels(th, destroy(d), 0.5, n_th);
  CVector v = CVector::Zero(d);
  v(0) = 1;
  const DensityMatrix ss =
      steady_state_by_integration(th, DensityMatrix::from_pure(StateVector(SpaceDims{d}, v)), 10.0, 1e-10);
  const double n = expect(number(d), ss).real();
  o.check(std::abs(n - n_th) < kTolThermal, "thermal <n> = " + num(n, 8));
  return o;
}

Verdict mode_splitting() {
  Verdict o;
  const double w = units::angular(4.5);
  SemiclassicalParams p;
  p.omega_b = p.omega_q = w;
  p.g = units::angular(units::mhz(7.5));
  p.gamma = p.gamma_m = units::angular(units::mhz(1));
  p.omega_r = units::angular(units::mhz(0.1));
  std::vector<double> wd, x, y;
  for (double mhz : linspace(-30, 30, 241)) wd.push_back(w + units::angular(units::mhz(mhz))), x.push_back(mhz);
  for (const auto& pt : semiclassical_spectrum(p, wd)) y.push_back(pt.p_e);
  const auto peaks = find_peaks(x, y);
  const bool two = peaks.size() == 2;
  const double split = two ? peaks[1].x - peaks[0].x : 0.0;
  o.check(two && std::abs(split - kModeSplitTarget) < kTolModeSplit,
          std::to_string(peaks.size()) + " peaks, separation " + num(split, 5) + " MHz");
  return o;
}

Verdict number_splitting_check() {
  Verdict o;
  auto run = [](double chi_mhz, double delta_t_mhz, double lo, double hi, int n) {
    NumberSplitParams p;
    p.chi = units::angular(units::mhz(chi_mhz));
    p.delta_t = units::angular(units::mhz(delta_t_mhz));
    p.delta_m = p.chi;
    p.epsilon = p.omega_r = p.gamma = p.gamma_b = units::angular(units::mhz(0.1));
    p.mech_dim = 16;
    std::vector<double> x, xm, y;
    for (double v : linspace(lo, hi, n)) x.push_back(units::angular(units::mhz(v))), xm.push_back(v);
    for (const auto& pt : number_splitting(p, x)) y.push_back(pt.p_e);
    return find_peaks(xm, y, 0.02);
  };
  const auto strong = run(3.0, -3.0, -8.0, 16.0, 241);
  double worst = strong.size() >= 2 ? 0.0 : 1.0;
  for (std::size_t i = 1; i < strong.size(); ++i)
    worst = std::max(worst, std::abs(strong[i].x - strong[i - 1].x - kNumberSplitTarget) / kNumberSplitTarget);
  std::string sp;
  for (std::size_t i = 1; i < strong.size(); ++i) sp += (i > 1 ? "," : "") + num(strong[i].x - strong[i - 1].x, 4);
  o.check(worst < kTolNumberSplit, std::to_string(strong.size()) + " peaks, spacings " + sp + " MHz");
  const auto weak = run(0.1, 0.0, -1.0, 1.0, 201);
  o.check(weak.size() == 1, "weak regime: " + std::to_string(weak.size()) + " peak at " +
                                (weak.empty() ? std::string("-") : num(weak[0].x, 3)) + " MHz");
  return o;
}

Verdict protocols() {
  Verdict o;
  const double g0 = units::angular(0.001), t = 250.0;
  const double amp = g0 * t;
  const EncodingRun rg = encode(g0, t, QubitInput::g), re = encode(g0, t, QubitInput::e);
  const double dev = std::max(std::abs(rg.mean_b - cplx(0, amp)), std::abs(re.mean_b - cplx(0, -amp)));
  o.check(dev < 1e-6 && rg.fidelity > 1 - kTolEncodeFidelity && re.fidelity > 1 - kTolEncodeFidelity,
          "<b> = +-i G0 t off by " + num(dev) + ", 1 - F = " + num(1 - std::min(rg.fidelity, re.fidelity)));
  const CatPreparation even = cat_prepare(g0, t, qmech::Outcome::g);
  const CatPreparation odd = cat_prepare(g0, t, qmech::Outcome::e);
  o.check(std::abs(even.parity - 1) < kTolParity && std::abs(odd.parity + 1) < kTolParity,
          "parity " + num(even.parity, 12) + " / " + num(odd.parity, 12));
  const double w0 = wigner_at(DensityMatrix::from_pure(odd.mech), 0.0);
  o.check(std::abs(w0 + 2 / kPi) < kTolWignerOrigin, "odd W(0) = " + num(w0, 8));
  const double b2 = std::norm(even.beta);
  const double pe = 0.5 * (1 + std::exp(-2 * b2)), po = 0.5 * (1 - std::exp(-2 * b2));
  const double pdev = std::max(std::abs(even.probability - pe), std::abs(odd.probability - po));
  o.check(pdev < kTolCatProbability, "outcome probability error " + num(pdev));
  return o;
}

Verdict transduction() {
  Verdict o;
  const double g = units::angular(0.001);
  TransduceParams p;
  p.g_tm = g;
  p.g_alpha = g;
  const TransduceReport r = transduce(p);
  o.check(r.fidelity > kMinTransduceFidelity, "fidelity " + num(r.fidelity, 10));
  const double oracle = kPi / (2 * g);
  const double bs = beam_splitter_transfer_time(g);
  const double rel = std::max(std::abs(bs / oracle - 1), std::abs(r.t2 / oracle - 1));
  o.check(rel < kTolTransferTime, "transfer time " + num(r.t2, 8) + " ns vs pi/2G " + num(oracle, 8));
  return o;
}

Verdict cooling() {
  Verdict o;
  const double mhz = units::angular(1e-3);
  auto run = [&](double sign) {
    CoolingCheckParams p;
    p.omega_b = 10 * mhz;
    p.detuning = sign * p.omega_b;
    p.gamma = 1 * mhz;
    p.gamma_m = 0.02 * mhz;
    p.n_th = 2;
    p.g = 0.5 * mhz;
    p.drive = 2 * mhz;
    p.mech_dim = 35;
    const CoolingCheck c = cold_bath_cooling_check(p);
    CoolingRateInputs in;
    in.g_l = p.g;
    in.qubit_linewidth = p.gamma;
    in.qubit_detuning = -p.detuning;
    in.omega = p.omega_b;
    const CoolingRates rates = cooling_rates(in);
    return std::pair{c, rates.gamma_minus / rates.gamma_plus};
  };
  const auto [red, red_ratio] = run(+1);
  const auto [blue, blue_ratio] = run(-1);
  o.check(red.n_ss < red.n_th && red_ratio > 1, "red n = " + num(red.n_ss, 5) + ", G-/G+ = " + num(red_ratio, 5));
  o.check(blue.n_ss > blue.n_th && blue_ratio < 1,
          "blue n = " + num(blue.n_ss, 5) + ", G-/G+ = " + num(blue_ratio, 5));
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism() {
  Verdict o;
  const fs::path goldens = QMECH_GOLDEN_DIR;
  const auto t0 = std::chrono::steady_clock::now();
  const auto entries = bench::verify_goldens(goldens);
  const double secs = seconds_since(t0);
  int pass = 0, same = 0;
  for (const auto& e : entries) {
    pass += e.status == bench::VerifyStatus::pass;
    same += e.status == bench::VerifyStatus::pass && e.byte_identical;
  }
  const int n = static_cast<int>(entries.size());
  o.check(n > 0 && pass == n, std::to_string(pass) + "/" + std::to_string(n) + " goldens pass");
  o.check(same == n, std::to_string(same) + "/" + std::to_string(n) + " byte-identical to the stored goldens");
  o.check(secs < kMaxVerifySeconds, "verify " + num(secs, 3) + " s");

  // two CLI invocations on the same config
  const fs::path tmp = fs::temp_directory_path() / "qmech_acceptance_rerun";
  fs::remove_all(tmp);
  const std::string cfg = (goldens / "fig08_rabi_flux" / "config.json").string();
  bool identical = true;
  for (const char* sub : {"a", "b"}) {
    const std::string cmd = std::string("\"") + QMECH_CLI + "\" run \"" + cfg + "\" --out \"" +
                            (tmp / sub).string() + "\" > /dev/null";
    identical = identical && std::system(cmd.c_str()) == 0;
  }
  std::vector<fs::path> files;
  if (identical)
    for (const auto& e : fs::directory_iterator(tmp / "a"))
      if (e.path().extension() == ".csv") files.push_back(e.path().filename());
  identical = identical && !files.empty();
  for (const auto& f : files) identical = identical && slurp(tmp / "a" / f) == slurp(tmp / "b" / f);
  o.check(identical, "CLI rerun CSVs identical");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {"spectra reproduction", spectra},
      {"charge dispersion suppression", charge_dispersion},
      {"dispersive shift scaling", dispersive_scaling},
      {"avoided crossing", avoided_crossing},
      {"vacuum Rabi", vacuum_rabi},
      {"open-system oracle", open_system},
      {"mode splitting", mode_splitting},
      {"number splitting", number_splitting_check},
      {"protocols", protocols},
      {"transduction", transduction},
      {"cooling properties", cooling},
      {"determinism and verify time", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %2zu %-30s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
