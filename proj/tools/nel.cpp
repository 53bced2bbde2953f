// nel: command-line front end for the numerical lab.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nel/cosine_model.hpp"
#include "nel/error.hpp"
#include "nel/extrapolation.hpp"
#include "nel/fourier.hpp"
#include "nel/limiting_curve.hpp"
#include "nel/painleve.hpp"
#include "nel/parallel.hpp"
#include "nel/pseries.hpp"
#include "nel/separatrix.hpp"
#include "output.hpp"

namespace {

using namespace nel;
using cli::fmt;
using cli::json;
using cli::RunManifest;
using cli::Table;

// ---------------------------------------------------------------- parsing

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::UsageError, "not a number: '" + s + "'");
  }
  if (used != s.size()) fail(ErrorKind::UsageError, "not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  const double v = to_double(s);
  if (v != std::floor(v)) fail(ErrorKind::UsageError, "not an integer: '" + s + "'");
  return static_cast<int>(v);
}

std::pair<int, int> int_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() == 1) return {to_int(parts[0]), to_int(parts[0])};
  if (parts.size() != 2) fail(ErrorKind::UsageError, "expected lo:hi, got '" + s + "'");
  const int lo = to_int(parts[0]), hi = to_int(parts[1]);
  if (hi < lo) fail(ErrorKind::UsageError, "empty range '" + s + "'");
  return {lo, hi};
}

struct Span3 {
  double start, end, step;
};

Span3 float_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) fail(ErrorKind::UsageError, "expected start:end:step, got '" + s + "'");
  return {to_double(parts[0]), to_double(parts[1]), to_double(parts[2])};
}

std::vector<double> number_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(to_double(p));
  if (out.empty()) fail(ErrorKind::UsageError, "empty list");
  return out;
}

std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1.0);
  g.back() = hi;
  return g;
}

bool want_json(const std::string& format, const std::string& path) {
  if (format == "json") return true;
  if (format == "csv") return false;
  return path.size() >= 5 && path.substr(path.size() - 5) == ".json";
}

// ------------------------------------------------------------ serializers

json record_json(const separatrix::EigenvalueRecord& r) {
  json j{{"n", r.n},
         {"a", r.a},
         {"method", separatrix::to_string(r.method)},
         {"residual", r.residual},
         {"tail_m", r.tail_m},
         {"a_bisect", r.a_bisect},
         {"a_backward", r.a_backward}};
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  return j;
}

json extrapolation_json(const extrap::ExtrapolationResult& r, const std::vector<double>& n,
                        const std::vector<double>& s, const std::vector<double>& p) {
  return json{{"indices", n},       {"values", s},          {"exponents", p},
              {"stages", r.stages}, {"limit", r.limit},     {"error_estimate", r.error_estimate},
              {"weights", r.weights}, {"table", r.table}};
}

json fate_json(const painleve::FateReport& f) {
  json ex = json::array();
  for (const auto& e : f.extrema)
    ex.push_back({{"x", e.x},
                  {"offset", e.y},
                  {"kind", e.kind == ExtremumKind::Max ? "max" : "min"}});
  return json{{"a", f.a},
              {"lock", painleve::to_string(f.lock)},
              {"pole_count", f.pole_count == painleve::kInfinitePoles ? json("infinite")
                                                                        : json(f.pole_count)},
              {"poles_observed", f.poles_observed},
              {"lock_onset", f.lock_onset},
              {"extrema", ex}};
}

json growth_json(const painleve::GrowthEstimate& g) {
  return json{{"C", g.C},
              {"C_error_estimate", g.C_error},
              {"loglog_slope_6_12", g.loglog_slope},
              {"correction_exponent_fit", g.correction_exponent},
              {"remark_value_17_5_cbrt2", g.remark_value}};
}

// ------------------------------------------------------------ subcommands

struct EigenOpts {
  std::string n = "1:6";
  std::string method = "both";
  double tol = 1e-10;
  std::string out, format = "auto";
};

std::vector<separatrix::EigenvalueRecord> compute_eigen(const EigenOpts& o) {
  const auto [lo, hi] = int_range(o.n);
  separatrix::SolverConfig cfg;
  cfg.tol = o.tol;
  const bool bis = o.method == "bisect" || o.method == "both";
  const bool back = o.method == "backward" || o.method == "both";
  if (!bis && !back) fail(ErrorKind::UsageError, "method must be bisect, backward or both");
  return separatrix::eigenvalue_table(lo, hi, cfg, bis, back);
}

void cmd_eigen(const EigenOpts& o) {
  RunManifest man("eigen", {{"n", o.n}, {"method", o.method}, {"tol", o.tol}});
  const auto recs = compute_eigen(o);
  if (want_json(o.format, o.out)) {
    json arr = json::array();
    for (const auto& r : recs) arr.push_back(record_json(r));
    man.emit(o.out, cli::json_text(arr));
  } else {
    Table t{{"n", "a", "method", "residual", "tail_m", "a_bisect", "a_backward", "error"}, {}};
    for (const auto& r : recs)
      t.add({std::to_string(r.n), fmt(r.a), std::string(separatrix::to_string(r.method)),
             fmt(r.residual), std::to_string(r.tail_m), fmt(r.a_bisect), fmt(r.a_backward),
             r.error ? "\"" + *r.error + "\"" : ""});
    man.emit(o.out, t.csv());
  }
}

struct CurveOpts {
  int grid = 101;
  std::string out, format = "auto";
};

void cmd_limiting_curve(const CurveOpts& o) {
  RunManifest man("limiting-curve", {{"grid", o.grid}});
  const auto ode = limit::solve_limit_ode(o.grid);
  const auto imp = limit::implicit_curve(o.grid);
  double sup = 0.0;
  for (std::size_t i = 0; i < ode.t.size(); ++i) sup = std::max(sup, std::abs(ode.Z[i] - imp.Z[i]));
  if (want_json(o.format, o.out)) {
    const limit::LimitOde lo;
    man.emit(o.out, cli::json_text(json{{"t", ode.t},
                                        {"Z_ode", ode.Z},
                                        {"Z_implicit", imp.Z},
                                        {"sup_difference", sup},
                                        {"Z0_ode", lo.at_zero()},
                                        {"Z0_exact", limit::z0_exact()},
                                        {"A", limit::compute_A()},
                                        {"A_exact", limit::a_exact()}}));
  } else {
    Table t{{"t", "Z_ode", "Z_implicit", "difference"}, {}};
    for (std::size_t i = 0; i < ode.t.size(); ++i)
      t.add({fmt(ode.t[i]), fmt(ode.Z[i]), fmt(imp.Z[i]), fmt(ode.Z[i] - imp.Z[i])});
    man.emit(o.out, t.csv());
  }
}

struct ExtrapOpts {
  std::string sequence = "A";
  std::string indices = "125,250,500,1000,2000";
  std::string input;
  std::string exponents;
  int stages = -1;
  std::string out;
};

void cmd_extrapolate(const ExtrapOpts& o) {
  RunManifest man("extrapolate", {{"sequence", o.sequence},
                                  {"indices", o.indices},
                                  {"input", o.input},
                                  {"exponents", o.exponents},
                                  {"stages", o.stages}});
  std::vector<double> n, s;
  if (!o.input.empty()) {
    std::ifstream f(o.input);
    if (!f) fail(ErrorKind::UsageError, "cannot read " + o.input);
    std::string line;
    while (std::getline(f, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto cols = split(line, ',');
      if (cols.size() < 2) fail(ErrorKind::UsageError, "expected n,value rows in " + o.input);
      try {
        const double a = std::stod(cols[0]), b = std::stod(cols[1]);
        n.push_back(a);
        s.push_back(b);
      } catch (const std::exception&) {
        // header row
      }
    }
  } else if (o.sequence == "A") {
    n = number_list(o.indices);
    s = parallel_map(n.size(), [&](std::size_t i) {
      const int k = static_cast<int>(n[i]);
      const auto tr = separatrix::trace_separatrix_backward(k);
      return std::sqrt(2.0) * tr.record.a / cosine::scale_factor(k);
    });
  } else if (o.sequence == "painleve") {
    const auto eigs = painleve::painleve_eigenvalues(12);
    for (int k = 1; k <= 12; ++k) {
      n.push_back(k);
      s.push_back(eigs[k - 1] / std::pow(k, 0.6));
    }
  } else {
    fail(ErrorKind::UsageError, "sequence must be A or painleve (or pass --input)");
  }
  const int stages = o.stages >= 0 ? o.stages : static_cast<int>(n.size()) - 1;
  const auto p = o.exponents.empty() ? extrap::integer_exponents(stages) : number_list(o.exponents);
  const auto r = extrap::richardson(n, s, p, stages);
  auto j = extrapolation_json(r, n, s, p);
  if (o.sequence == "A" && o.input.empty()) j["target"] = limit::a_exact();
  man.emit(o.out, cli::json_text(j));
}

struct PainleveOpts {
  std::string action = "eigen";
  int count = 12;
  double y0 = 1.0;
  double a = 0.0;
  double x_end = -60.0;
  double lo = -15.0, hi = 0.0;
  double step = 0.05;
  double tol = 1e-7;
  std::string out, format = "auto";
};

void cmd_painleve(const PainleveOpts& o) {
  RunManifest man("painleve " + o.action, {{"count", o.count},
                                           {"y0", o.y0},
                                           {"a", o.a},
                                           {"x_end", o.x_end},
                                           {"lo", o.lo},
                                           {"hi", o.hi},
                                           {"step", o.step},
                                           {"tol", o.tol}});
  painleve::PainleveConfig cfg;
  cfg.y0 = o.y0;
  cfg.x_min = o.x_end;
  painleve::ScanOptions scan;
  scan.step = o.step;
  scan.tolerance = o.tol;
  if (o.action == "eigen") {
    const auto eigs = painleve::painleve_eigenvalues(o.count, cfg, scan);
    json j{{"y0", o.y0}, {"eigenvalues", eigs}};
    if (eigs.size() >= 8) j["growth"] = growth_json(painleve::estimate_C(eigs));
    man.emit(o.out, cli::json_text(j));
  } else if (o.action == "fate") {
    man.emit(o.out, cli::json_text(fate_json(painleve::classify_fate(o.a, cfg))));
  } else if (o.action == "negative") {
    const auto d = painleve::fate_discontinuities(o.lo, o.hi, cfg, scan);
    man.emit(o.out, cli::json_text(json{{"lo", o.lo}, {"hi", o.hi}, {"discontinuities", d}}));
  } else if (o.action == "trajectory") {
    const auto run = painleve::integrate_with_poles(o.a, o.x_end, cfg);
    if (want_json(o.format, o.out)) {
      json poles = json::array();
      for (const auto& p : run.poles)
        poles.push_back({{"x0", p.x0}, {"h", p.h}, {"match_residual", p.match_residual}});
      json xs = json::array(), ys = json::array();
      for (const auto& [x, y] : run.samples()) {
        xs.push_back(x);
        ys.push_back(y);
      }
      man.emit(o.out, cli::json_text(json{{"a", o.a}, {"x", xs}, {"y", ys}, {"poles", poles}}));
    } else {
      Table t{{"x", "y"}, {}};
      for (const auto& [x, y] : run.samples()) t.add({fmt(x), fmt(y)});
      man.emit(o.out, t.csv());
    }
  } else if (o.action == "envelope") {
    const auto run = painleve::integrate_with_poles(o.a, o.x_end, cfg);
    const auto fit = painleve::fit_oscillation_envelope(run, o.x_end, -30.0);
    man.emit(o.out, cli::json_text(json{{"a", o.a},
                                        {"amplitude_exponent", fit.amplitude_exponent},
                                        {"phase_coefficient", fit.phase_coefficient},
                                        {"phase_coefficient_exact", 0.8 * std::sqrt(2.0)},
                                        {"extrema_used", fit.extrema_used}}));
  } else {
    fail(ErrorKind::UsageError, "unknown painleve action " + o.action);
  }
}

struct PseriesOpts {
  std::string action = "rho";
  int n = 50;
  double tau = 0.25;
  std::string tau_range = "0:1:0.0005";
  std::string window;
  int top = 2;
  std::string out, format = "auto";
};

void cmd_pseries(const PseriesOpts& o) {
  RunManifest man("pseries " + o.action,
                  {{"n", o.n}, {"tau", o.tau}, {"tau_range", o.tau_range}, {"window", o.window}});
  if (o.action == "rho") {
    man.emit(o.out, cli::json_text(json{{"tau", o.tau}, {"n", o.n}, {"rho", pseries::rho_n(o.tau, o.n)}}));
  } else if (o.action == "roots") {
    const auto rs = pseries::all_roots(pseries::ftau_partial_sum(o.tau, o.n));
    json roots = json::array();
    for (std::size_t i = 0; i < rs.roots.size(); ++i)
      roots.push_back({{"re", rs.roots[i].real()},
                       {"im", rs.roots[i].imag()},
                       {"modulus", std::abs(rs.roots[i])},
                       {"residual", rs.residuals[i]}});
    man.emit(o.out, cli::json_text(json{{"tau", o.tau},
                                        {"n", o.n},
                                        {"max_modulus", rs.max_modulus()},
                                        {"iterations", rs.iterations},
                                        {"roots", roots}}));
  } else if (o.action == "scan") {
    const auto r = float_range(o.tau_range);
    const auto scan = pseries::tau_scan(r.start, r.end, r.step, o.n, o.top);
    json maxima = json::array();
    for (const auto& m : scan.maxima) maxima.push_back({{"tau", m.tau}, {"rho", m.rho}});
    json summary{{"n", o.n}, {"maxima", maxima}};
    try {
      const auto sym = pseries::symmetry_report(scan);
      summary["symmetry"] = {{"max_abs_diff_tau_plus_half", sym.half_shift},
                             {"max_abs_diff_one_minus_tau", sym.reflection}};
    } catch (const Error&) {
    }
    if (want_json(o.format, o.out)) {
      json pts = json::array();
      for (const auto& p : scan.points)
        pts.push_back({{"tau", p.tau}, {"rho", p.rho}, {"error", p.error ? json(*p.error) : json(nullptr)}});
      summary["points"] = pts;
      man.emit(o.out, cli::json_text(summary));
    } else {
      Table t{{"tau", "rho", "error"}, {}};
      for (const auto& p : scan.points)
        t.add({fmt(p.tau), fmt(p.rho), p.error ? "\"" + *p.error + "\"" : ""});
      man.emit(o.out, t.csv());
      if (!o.out.empty()) std::cout << cli::json_text(summary);
    }
  } else if (o.action == "liminf") {
    const auto w = o.window.empty() ? pseries::liminf_window(o.tau, o.n)
                                    : [&] {
                                        const auto [a, b] = int_range(o.window);
                                        return pseries::liminf_window(o.tau, a, b);
                                      }();
    man.emit(o.out, cli::json_text(json{{"tau", o.tau},
                                        {"window_min_rho", w.value},
                                        {"window", {w.n_lo, w.n_hi}},
                                        {"argmin_n", w.argmin},
                                        {"note", "finite-window minimum, approximation to liminf"}}));
  } else {
    fail(ErrorKind::UsageError, "unknown pseries action " + o.action);
  }
}

struct FourierOpts {
  std::string N = "5,20,80";
  int grid = 1001;
  bool overshoot = false;
  std::string out, format = "auto";
};

void cmd_fourier(const FourierOpts& o) {
  RunManifest man("fourier", {{"N", o.N}, {"grid", o.grid}, {"overshoot", o.overshoot}});
  std::vector<int> Ns;
  for (double v : number_list(o.N)) Ns.push_back(static_cast<int>(v));
  if (o.overshoot) {
    json arr = json::array();
    for (int N : Ns) {
      const auto ov = fourier::gibbs_overshoot(N);
      arr.push_back({{"N", N}, {"x", ov.x}, {"max", ov.value}});
    }
    man.emit(o.out, cli::json_text(json{{"overshoot", arr}}));
    return;
  }
  const auto xs = grid(0.0, std::numbers::pi, o.grid);
  Table t{{"x"}, {}};
  std::vector<std::vector<double>> cols;
  for (int N : Ns) {
    t.header.push_back("S_" + std::to_string(2 * N + 1));
    cols.push_back(fourier::fourier_partial_sum(N, xs));
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::string> row{fmt(xs[i])};
    for (const auto& c : cols) row.push_back(fmt(c[i]));
    t.add(row);
  }
  man.emit(o.out, t.csv());
}

// ---------------------------------------------------------------- figures

struct FigureOpts {
  std::string which;
  std::string out;
  int n = 10000;  // fig4
};

Table figure_table(const FigureOpts& o) {
  const std::string& w = o.which;
  if (w == "fig1") {
    // 50 trajectories y(0) = 0.2k on [0, 24], long format.
    const auto xs = grid(0.0, 24.0, 481);
    const auto trajs = parallel_map(50, [](std::size_t k) { return cosine::solve(0.2 * (k + 1), 24.0); });
    Table t{{"k", "a", "x", "y"}, {}};
    for (std::size_t k = 0; k < 50; ++k)
      for (double x : xs)
        t.add({std::to_string(k + 1), fmt(0.2 * (k + 1)), fmt(x), fmt(trajs[k].at(x)[0])});
    return t;
  }
  if (w == "fig2") {
    const auto xs = grid(0.0, 12.0, 241);
    const auto traces = parallel_map(10, [](std::size_t i) {
      return separatrix::trace_separatrix_backward(static_cast<int>(i) - 3);
    });
    Table t{{"n", "a", "x", "y"}, {}};
    for (const auto& tr : traces)
      for (double x : xs)
        t.add({std::to_string(tr.record.n), fmt(tr.record.a), fmt(x), fmt(tr.trajectory.at(x)[0])});
    return t;
  }
  if (w == "fig3") {
    const auto ts = grid(0.0, 1.0, 201);
    const limit::LimitOde Z;
    const auto seps = parallel_map(4, [](std::size_t i) { return separatrix::ScaledSeparatrix(static_cast<int>(i) + 1); });
    Table t{{"t", "Z"}, {}};
    for (int n = 1; n <= 4; ++n) t.header.push_back("z_" + std::to_string(n));
    for (int n = 1; n <= 4; ++n) t.header.push_back("z_" + std::to_string(n) + "_minus_Z");
    for (double s : ts) {
      std::vector<std::string> row{fmt(s), fmt(Z(s))};
      for (const auto& sp : seps) row.push_back(fmt(sp.z(s)));
      for (const auto& sp : seps) row.push_back(fmt(sp.z(s) - Z(s)));
      t.add(row);
    }
    return t;
  }
  if (w == "fig4") {
    const auto ts = grid(0.0, 1.0, 4001);
    const limit::LimitOde Z;
    const separatrix::ScaledSeparatrix sp(o.n);
    Table t{{"t", "z", "Z", "z_minus_Z"}, {}};
    for (double s : ts) t.add({fmt(s), fmt(sp.z(s)), fmt(Z(s)), fmt(sp.z(s) - Z(s))});
    return t;
  }
  if (w == "fig5") {
    const auto xs = grid(0.0, std::numbers::pi, 1001);
    Table t{{"x", "S_11", "S_41", "S_161"}, {}};
    for (double x : xs)
      t.add({fmt(x), fmt(fourier::square_wave_partial_sum(5, x)),
             fmt(fourier::square_wave_partial_sum(20, x)), fmt(fourier::square_wave_partial_sum(80, x))});
    return t;
  }
  if (w == "fig6" || w == "fig7") {
    std::vector<double> as;
    std::vector<std::string> labels;
    if (w == "fig6") {
      as = painleve::painleve_eigenvalues(4);
      labels = {"a_1", "a_2", "a_3", "a_4"};
    } else {
      as = {2.0, 5.0};
      labels = {"oscillatory", "pole_chain"};
    }
    const double x_end = -20.0;
    const auto runs = parallel_map(as.size(), [&](std::size_t i) {
      return painleve::integrate_with_poles(as[i], x_end, painleve::PainleveConfig{});
    });
    Table t{{"curve", "a", "x", "y"}, {}};
    for (std::size_t i = 0; i < runs.size(); ++i)
      for (const auto& [x, y] : runs[i].samples()) t.add({labels[i], fmt(as[i]), fmt(x), fmt(y)});
    return t;
  }
  if (w == "fig8") {
    const auto scan = pseries::tau_scan(0.0, 1.0, 0.0005, 50);
    Table t{{"tau", "rho_50"}, {}};
    for (const auto& p : scan.points) t.add({fmt(p.tau), fmt(p.rho)});
    return t;
  }
  fail(ErrorKind::UsageError, "unknown figure '" + w + "' (fig1..fig8)");
}

void cmd_figures(const FigureOpts& o) {
  RunManifest man("figures " + o.which, {{"figure", o.which}, {"n", o.n}});
  man.emit(o.out, figure_table(o).csv());
}

struct RunOpts {
  std::string out_dir = "nel-output";
  bool skip_slow = false;
};

void cmd_run(const RunOpts& o) {
  namespace fs = std::filesystem;
  fs::create_directories(o.out_dir);
  RunManifest man("run", {{"out_dir", o.out_dir}, {"skip_slow", o.skip_slow}});
  auto path = [&](const std::string& name) {
    const auto p = (fs::path(o.out_dir) / name).string();
    man.record(p);
    return p;
  };
  for (const char* f : {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"}) {
    if (o.skip_slow && std::string(f) == "fig8") continue;
    FigureOpts fo{f, path(std::string(f) + ".csv"), 10000};
    cmd_figures(fo);
  }
  cmd_eigen({"-3:10", "both", 1e-10, path("eigen.json"), "json"});
  cmd_limiting_curve({101, path("limiting_curve.json"), "json"});
  cmd_extrapolate({"A", "125,250,500,1000,2000", "", "", -1, path("extrapolate_A.json")});
  PainleveOpts po;
  po.out = path("painleve_eigen.json");
  cmd_painleve(po);
  const std::string summary = (fs::path(o.out_dir) / "summary.json").string();
  std::ofstream(summary) << cli::json_text(man.to_json());
  std::cout << cli::json_text(man.to_json());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nel: separatrix eigenvalues, limiting curves, Painleve I and power-series roots"};
  app.require_subcommand(1);
  app.set_version_flag("--version", NEL_VERSION);

  EigenOpts eo;
  auto* eigen = app.add_subcommand("eigen", "separatrix eigenvalues a_n");
  eigen->add_option("--n", eo.n, "index or range lo:hi (use --n=-3:6 for negative)");
  eigen->add_option("--method", eo.method, "bisect | backward | both")
      ->check(CLI::IsMember({"bisect", "backward", "both"}));
  eigen->add_option("--tol", eo.tol, "bisection tolerance");
  eigen->add_option("--out", eo.out, "output path (stdout if omitted)");
  eigen->add_option("--format", eo.format, "json | csv | auto");

  CurveOpts co;
  auto* curve = app.add_subcommand("limiting-curve", "limit curve Z(t) from the ODE and the implicit relation");
  curve->add_option("--grid", co.grid, "number of t points on [0, 1]");
  curve->add_option("--out", co.out);
  curve->add_option("--format", co.format, "json | csv | auto");

  ExtrapOpts xo;
  auto* ex = app.add_subcommand("extrapolate", "Richardson extrapolation");
  ex->add_option("--sequence", xo.sequence, "A | painleve");
  ex->add_option("--indices", xo.indices, "comma list of n for --sequence A");
  ex->add_option("--input", xo.input, "CSV file with n,value rows");
  ex->add_option("--exponents", xo.exponents, "comma list of correction exponents (default 1,2,...)");
  ex->add_option("--stages", xo.stages, "elimination stages (default: points - 1)");
  ex->add_option("--out", xo.out);

  PainleveOpts po;
  auto* pl = app.add_subcommand("painleve", "Painleve I eigenvalues and fates");
  pl->add_option("action", po.action, "eigen | fate | negative | trajectory | envelope")
      ->check(CLI::IsMember({"eigen", "fate", "negative", "trajectory", "envelope"}));
  pl->add_option("--count", po.count);
  pl->add_option("--y0", po.y0);
  pl->add_option("--a", po.a, "initial slope");
  pl->add_option("--x-end", po.x_end);
  pl->add_option("--lo", po.lo);
  pl->add_option("--hi", po.hi);
  pl->add_option("--step", po.step, "scan step in a");
  pl->add_option("--tol", po.tol, "bisection tolerance in a");
  pl->add_option("--out", po.out);
  pl->add_option("--format", po.format);

  PseriesOpts so;
  auto* ps = app.add_subcommand("pseries", "partial sums of f_tau and their root moduli");
  ps->add_option("action", so.action, "rho | roots | scan | liminf")
      ->check(CLI::IsMember({"rho", "roots", "scan", "liminf"}));
  ps->add_option("--n", so.n);
  auto* tau_opt = ps->add_option("--tau", so.tau_range, "tau value, or start:end:step for scan");
  ps->add_option("--window", so.window, "lo:hi for liminf (default n-10:n+10)");
  ps->add_option("--top", so.top, "local maxima reported by scan");
  ps->add_option("--out", so.out);
  ps->add_option("--format", so.format);

  FourierOpts fo;
  auto* fr = app.add_subcommand("fourier", "square-wave Fourier partial sums");
  fr->add_option("--N", fo.N, "comma list of N");
  fr->add_option("--grid", fo.grid);
  fr->add_flag("--overshoot", fo.overshoot, "report the maximum of each partial sum");
  fr->add_option("--out", fo.out);

  FigureOpts go;
  auto* fg = app.add_subcommand("figures", "data behind each figure");
  fg->add_option("figure", go.which, "fig1 .. fig8")->required();
  fg->add_option("--out", go.out);
  fg->add_option("--n", go.n, "eigencurve index for fig4");

  RunOpts ro;
  auto* run = app.add_subcommand("run", "all figures and tables into a directory");
  run->add_option("--out-dir", ro.out_dir);
  run->add_flag("--skip-slow", ro.skip_slow);

  std::string active = "nel";
  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      fail(ErrorKind::UsageError, e.what());
    }
    for (auto* sc : app.get_subcommands()) active = sc->get_name();
    if (*ps) {
      if (so.action != "scan" && tau_opt->count() > 0) so.tau = to_double(so.tau_range);
      cmd_pseries(so);
    } else if (*eigen) {
      cmd_eigen(eo);
    } else if (*curve) {
      cmd_limiting_curve(co);
    } else if (*ex) {
      cmd_extrapolate(xo);
    } else if (*pl) {
      cmd_painleve(po);
    } else if (*fr) {
      cmd_fourier(fo);
    } else if (*fg) {
      cmd_figures(go);
    } else if (*run) {
      cmd_run(ro);
    }
  } catch (const Error& e) {
    std::cout << cli::json_text(json{{"error", {{"kind", std::string(to_string(e.kind()))},
                                                {"subcommand", active},
                                                {"message", e.what()}}}});
    return e.kind() == ErrorKind::UsageError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cout << cli::json_text(
        json{{"error", {{"kind", "Internal"}, {"subcommand", active}, {"message", e.what()}}}});
    return 1;
  }
  return 0;
}
