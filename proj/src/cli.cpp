#include "vz/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "vz/error.hpp"
#include "vz/format.hpp"
#include "vz/lemniscate.hpp"
#include "vz/limitmeasure.hpp"
#include "vz/odecheck.hpp"
#include "vz/problem_io.hpp"
#include "vz/render.hpp"
#include "vz/voronoi.hpp"

namespace vz::cli {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

void write_file(const RunConfig& cfg, const std::string& name, const std::string& content) {
  fs::create_directories(cfg.out);
  const fs::path path = fs::path(cfg.out) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  f << content;
}

// JSON numbers cannot hold infinities or NaN.
ojson num(double x) {
  if (std::isfinite(x)) return x;
  return shortest(x);
}

const PolarForm& need_rational(const Problem& p, const std::string& command) {
  if (!p.rational) throw Error(ErrorKind::InvalidArgument, command + " needs a rational problem");
  return *p.rational;
}

const LemniscateProblem& need_lemniscate(const Problem& p, const std::string& command) {
  if (!p.lemniscate) throw Error(ErrorKind::InvalidArgument, command + " needs a lemniscate problem");
  return *p.lemniscate;
}

// Double first; a collapsed degree is retried in extended precision unless disabled.
NumeratorRoots solve_numerator(const DerivativeState& state, const RunConfig& cfg) {
  if (cfg.precision == Precision::Extended) return numerator_roots(state, Precision::Extended);
  try {
    return numerator_roots(state, Precision::Double);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegreeCollapse || !cfg.extended_retry) throw;
    std::cerr << "n=" << state.n() << ": degree collapsed in double, retrying extended\n";
    return numerator_roots(state, Precision::Extended);
  }
}

NumeratorResult<cplx> expand_numerator(const DerivativeState& state, const RunConfig& cfg) {
  auto extended = [&] {
    const NumeratorResult<cdd> ext = numerator<cdd>(state);
    NumeratorResult<cplx> r;
    r.r_n = ext.r_n.cast<cplx>();
    r.scaled_alpha = ext.scaled_alpha;
    r.log_abs_alpha = ext.log_abs_alpha;
    r.degree = ext.degree;
    r.n = ext.n;
    return r;
  };
  if (cfg.precision == Precision::Extended) return extended();
  try {
    return numerator<cplx>(state);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegreeCollapse || !cfg.extended_retry) throw;
    std::cerr << "n=" << state.n() << ": degree collapsed in double, retrying extended\n";
    return extended();
  }
}

std::vector<cplx> roots_for(const Problem& p, int n, const RunConfig& cfg, std::vector<bool>* converged = nullptr,
                            std::vector<double>* residuals = nullptr) {
  RootSet<cplx> rs;
  if (p.lemniscate) {
    rs = lemniscate_roots(*p.lemniscate, n);
  } else {
    rs = solve_numerator(derivative_state(*p.rational, n), cfg).roots;
  }
  if (converged) *converged = rs.converged;
  if (residuals) *residuals = rs.residuals;
  return rs.roots;
}

Window window_for(const RunConfig& cfg, const std::vector<cplx>& sites) {
  return cfg.has_window ? cfg.window : fit_window(sites);
}

void cmd_derive(const Problem& p, const RunConfig& cfg) {
  std::ostringstream coef, diag;
  coef << "n,k,re,im\n";
  diag << "n,degree,degree_ratio,alpha_growth\n";
  for (int n : cfg.n_list) {
    DensePolynomial r;
    if (p.lemniscate) {
      r = build_rn(*p.lemniscate, n);
      diag << n << ',' << r.degree() << ',' << shortest(r.degree() / static_cast<double>(n)) << ",nan\n";
    } else {
      const NumeratorResult<cplx> res = expand_numerator(derivative_state(*p.rational, n), cfg);
      r = res.r_n;
      const DegreeDiagnostic d = degree_diagnostics<cplx>({res}).front();
      diag << n << ',' << d.degree << ',' << shortest(d.degree_ratio) << ',' << shortest(d.alpha_growth) << '\n';
    }
    for (std::size_t k = 0; k < r.size(); ++k)
      coef << n << ',' << k << ',' << shortest(r[k].real()) << ',' << shortest(r[k].imag()) << '\n';
  }
  write_file(cfg, "derive.csv", coef.str());
  write_file(cfg, "diagnostics.csv", diag.str());
}

void cmd_roots(const Problem& p, const RunConfig& cfg) {
  std::ostringstream os;
  os << "n,re,im,converged,residual\n";
  for (int n : cfg.n_list) {
    std::vector<bool> conv;
    std::vector<double> res;
    const auto roots = roots_for(p, n, cfg, &conv, &res);
    for (std::size_t k = 0; k < roots.size(); ++k)
      os << n << ',' << shortest(roots[k].real()) << ',' << shortest(roots[k].imag()) << ',' << (conv[k] ? 1 : 0)
         << ',' << shortest(res[k]) << '\n';
  }
  write_file(cfg, "roots.csv", os.str());
}

void cmd_voronoi(const Problem& p, const RunConfig& cfg) {
  write_file(cfg, "voronoi.json", to_json(VoronoiDiagram::build(p.sites())) + "\n");
}

void cmd_measure(const Problem& p, const RunConfig& cfg) {
  const VoronoiDiagram diagram = VoronoiDiagram::build(p.sites());
  write_file(cfg, "measure.csv", measure_csv(diagram));
  write_file(cfg, "measure_cdf.csv", measure_cdf_csv(diagram, 64));
}

void cmd_compare(const Problem& p, const RunConfig& cfg) {
  const PolarForm& q = need_rational(p, "compare");
  const VoronoiDiagram diagram = VoronoiDiagram::build(q.locations());
  std::vector<ComparisonReport> reports;
  ojson all = ojson::array();
  for (int n : cfg.n_list) {
    const NumeratorRoots nr = solve_numerator(derivative_state(q, n), cfg);
    const EmpiricalMeasure mu = empirical(nr.roots, n);
    ComparisonReport rep = project_and_bin(mu, diagram, 16, cfg.has_window ? std::optional<Window>(cfg.window)
                                                                           : std::nullopt);
    rep.m_n = nr.numerator.degree;
    if (cfg.has_window) rep.potential_l1 = potential_l1(mu, diagram, cfg.window, cfg.grid, -1.0, cfg.seed).value;
    all.push_back(ojson::parse(to_json(rep)));
    reports.push_back(std::move(rep));
  }
  write_file(cfg, "compare.json", all.dump(2) + "\n");
  write_file(cfg, "atoms.csv", atoms_csv(reports));
}

void cmd_potential(const Problem& p, const RunConfig& cfg) {
  const PolarForm& q = need_rational(p, "potential");
  const VoronoiDiagram diagram = VoronoiDiagram::build(q.locations());
  const Window w = window_for(cfg, q.locations());
  std::ostringstream os;
  os << "n,l1,excluded_fraction,samples\n";
  ojson runs = ojson::array();
  for (int n : cfg.n_list) {
    const NumeratorRoots nr = solve_numerator(derivative_state(q, n), cfg);
    const L1Result r = potential_l1(empirical(nr.roots, n), diagram, w, cfg.grid, -1.0, cfg.seed);
    os << n << ',' << shortest(r.value) << ',' << shortest(r.excluded_fraction) << ',' << r.samples << '\n';
    runs.push_back({{"n", n}, {"l1", num(r.value)}, {"excluded_fraction", r.excluded_fraction}, {"samples", r.samples}});
  }
  ojson j;
  j["window"] = {{"cx", w.center.real()}, {"cy", w.center.imag()}, {"h", w.half_side}};
  j["grid"] = cfg.grid;
  j["seed"] = cfg.seed;
  j["runs"] = runs;
  write_file(cfg, "potential.csv", os.str());
  write_file(cfg, "potential.json", j.dump(2) + "\n");
}

// Power sums get the order-d equation at random points; a pair of simple poles with equal
// residues also gets the second-order equation for its numerator, in both coefficient forms.
void cmd_odecheck(const Problem& p, const RunConfig& cfg) {
  const PolarForm& q = need_rational(p, "odecheck");
  std::ostringstream os;
  os << "check,n,re,im,residual,scale,relative\n";

  bool power_sum = !q.has_polynomial_part() && !q.poles.empty();
  const int s = q.poles.empty() ? 0 : q.poles.front().order();
  PowerSumFunction f;
  f.s = s;
  for (const auto& pole : q.poles) {
    if (pole.order() != s) power_sum = false;
    for (int j = 0; j + 1 < pole.order(); ++j)
      if (pole.coeffs[static_cast<std::size_t>(j)] != cplx(0.0)) power_sum = false;
    f.poles.push_back(pole.location);
    f.weights.push_back(pole.coeffs.back());
  }
  if (!power_sum) throw Error(ErrorKind::InvalidArgument, "odecheck needs a sum of equal-order pure powers");

  const Window w = window_for(cfg, f.poles);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<cplx> pts;
  while (pts.size() < 10) {
    const cplx z = w.center + w.half_side * cplx(unif(rng), unif(rng));
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& a : f.poles) dmin = std::min(dmin, std::abs(z - a));
    if (dmin > 1e-3 * w.half_side) pts.push_back(z);
  }
  for (int n : cfg.n_list) {
    for (const auto& z : pts) {
      const OdeResidual r = powersum_residual(f, n, z);
      os << "powersum," << n << ',' << shortest(z.real()) << ',' << shortest(z.imag()) << ','
         << shortest(std::abs(r.value)) << ',' << shortest(r.scale) << ',' << shortest(r.relative()) << '\n';
    }
    if (s == 1 && f.poles.size() == 2 && std::abs(f.weights[0] - f.weights[1]) == 0.0) {
      for (D2Form form : {D2Form::Corrected, D2Form::Printed}) {
        double scale = 0.0;
        const DensePolynomial res = d2_residual_polynomial(f.poles[0], f.poles[1], n, form, &scale);
        double worst = 0.0;
        for (const auto& c : res.coeffs()) worst = std::max(worst, std::abs(c));
        os << (form == D2Form::Corrected ? "d2_corrected," : "d2_printed,") << n << ",nan,nan," << shortest(worst)
           << ',' << shortest(scale) << ',' << shortest(scale > 0.0 ? worst / scale : worst) << '\n';
      }
    }
  }
  write_file(cfg, "odecheck.csv", os.str());
}

void cmd_lemniscate(const Problem& p, const RunConfig& cfg) {
  const LemniscateProblem& lp = need_lemniscate(p, "lemniscate");
  const Window w = window_for(cfg, lp.sites());
  const LemniscateReport rep = compactness_and_compare(lp, cfg.n_list, w, cfg.grid, cfg.seed);
  ojson j;
  j["compact"] = rep.compact;
  j["radius"] = num(rep.radius);
  j["window"] = {{"cx", w.center.real()}, {"cy", w.center.imag()}, {"h", w.half_side}};
  j["runs"] = ojson::array();
  std::ostringstream os;
  os << "n,re,im\n";
  for (const auto& r : rep.runs) {
    j["runs"].push_back({{"n", r.n},
                         {"degree", r.degree},
                         {"converged", r.converged},
                         {"max_modulus", num(r.max_modulus)},
                         {"l1", num(r.l1)},
                         {"pointwise_error", num(r.pointwise_error)}});
    for (const auto& z : r.roots) os << r.n << ',' << shortest(z.real()) << ',' << shortest(z.imag()) << '\n';
  }
  write_file(cfg, "lemniscate.json", j.dump(2) + "\n");
  write_file(cfg, "lemniscate_roots.csv", os.str());
}

void cmd_lemniscate_render(const Problem& p, const RunConfig& cfg) {
  const LemniscateProblem& lp = need_lemniscate(p, "lemniscate render");
  const int n = cfg.n_list.front();
  SvgScene scene;
  scene.sites = lp.sites();
  scene.window = window_for(cfg, scene.sites);
  scene.edges = lemniscate_boundary(lp, scene.window, std::max(cfg.grid, 16));
  scene.roots = lemniscate_roots(lp, n).roots;
  scene.title = "n = " + std::to_string(n);
  write_file(cfg, "lemniscate.svg", render_svg(scene));
}

void cmd_render(const Problem& p, const RunConfig& cfg) {
  if (p.lemniscate) {
    cmd_lemniscate_render(p, cfg);
    return;
  }
  const PolarForm& q = need_rational(p, "render");
  const int n = cfg.n_list.front();
  SvgScene scene;
  scene.sites = q.locations();
  scene.window = window_for(cfg, scene.sites);
  if (q.pole_count() >= 2) scene.edges = clip_skeleton(VoronoiDiagram::build(scene.sites), scene.window);
  scene.roots = solve_numerator(derivative_state(q, n), cfg).roots.roots;
  scene.title = "n = " + std::to_string(n);
  write_file(cfg, "render.svg", render_svg(scene));
}

}  // namespace

void RunConfig::validate() const {
  if (grid < 16) throw Error(ErrorKind::InvalidArgument, "grid must be at least 16");
  if (!(window.half_side > 0.0)) throw Error(ErrorKind::InvalidArgument, "window half-side must be positive");
  if (n_list.empty()) throw Error(ErrorKind::InvalidArgument, "empty n list");
  for (int n : n_list)
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "n must be nonnegative");
  if (problem.empty()) throw Error(ErrorKind::InvalidArgument, "--problem is required");
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "bad n list entry '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty n list");
  return out;
}

Window parse_window(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "bad window entry '" + item + "'");
    }
  }
  if (v.size() != 3) throw Error(ErrorKind::InvalidArgument, "window must be cx,cy,h");
  if (!(v[2] > 0.0)) throw Error(ErrorKind::InvalidArgument, "window half-side must be positive");
  return Window{{v[0], v[1]}, v[2]};
}

int run(const RunConfig& cfg) {
  try {
    cfg.validate();
    const Problem p = load_problem(cfg.problem);
    const std::string& c = cfg.command;
    if (c == "derive")
      cmd_derive(p, cfg);
    else if (c == "roots")
      cmd_roots(p, cfg);
    else if (c == "voronoi")
      cmd_voronoi(p, cfg);
    else if (c == "measure")
      cmd_measure(p, cfg);
    else if (c == "compare")
      cmd_compare(p, cfg);
    else if (c == "potential")
      cmd_potential(p, cfg);
    else if (c == "odecheck")
      cmd_odecheck(p, cfg);
    else if (c == "lemniscate")
      cfg.lemniscate_render ? cmd_lemniscate_render(p, cfg) : cmd_lemniscate(p, cfg);
    else if (c == "render")
      cmd_render(p, cfg);
    else
      throw Error(ErrorKind::InvalidArgument, "unknown command " + c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_numeric() ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int main(int argc, char** argv) {
  CLI::App app{"Zeros of high derivatives of rational functions and their Voronoi limit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string n_text = "10", window_text, precision = "double";
  bool no_retry = false;
  app.add_option("--problem", cfg.problem, "problem JSON file");
  app.add_option("--n", n_text, "derivative order or comma-separated list");
  app.add_option("--window", window_text, "cx,cy,h");
  app.add_option("--grid", cfg.grid, "grid resolution (at least 16)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--precision", precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));
  app.add_flag("--no-extended-retry", no_retry, "fail instead of retrying a collapsed degree in extended precision");
  app.add_option("--out", cfg.out, "output directory");

  const char* names[] = {"derive", "roots", "voronoi", "measure", "compare",
                         "potential", "odecheck", "lemniscate", "render"};
  const char* help[] = {"numerator coefficients and degree diagnostics",
                        "roots of the numerator",
                        "Voronoi diagram of the poles",
                        "edge masses of the limit measure",
                        "empirical root measure against the limit, per n",
                        "grid L1 distance of the log potentials",
                        "residuals of the differential equations",
                        "lemniscate power sums; 'lemniscate render' draws them",
                        "SVG with skeleton, sites and roots"};
  CLI::App* lem = nullptr;
  for (std::size_t k = 0; k < std::size(names); ++k) {
    CLI::App* sub = app.add_subcommand(names[k], help[k]);
    sub->fallthrough();
    if (std::string(names[k]) == "lemniscate") lem = sub;
  }
  CLI::App* lem_render = lem->add_subcommand("render", "SVG of the switching set and the roots");
  lem_render->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.lemniscate_render = lem_render->parsed();
    cfg.n_list = parse_n_list(n_text);
    if (!window_text.empty()) {
      cfg.window = parse_window(window_text);
      cfg.has_window = true;
    }
    cfg.precision = precision == "extended" ? Precision::Extended : Precision::Double;
    cfg.extended_retry = !no_retry;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return run(cfg);
}

}  // namespace vz::cli
