// Command-line harness: verification suites, JSON reports and matrix dumps.
#include "ffsm/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using namespace ffsm;

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "re" or "re,im".
cplx parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {re, 0.0};
    }
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::exception&) {
    throw usage_error("malformed complex number '" + s + "' (expected re or re,im)");
  }
}

struct PointFlags {
  std::vector<std::string> xp, xm, eta, u;
  std::string g = "1", U = "2", theta = "1", xi = "1";

  cplx at(const std::vector<std::string>& v, std::size_t i, cplx fallback) const {
    return i < v.size() ? parse_complex(v[i]) : fallback;
  }

  /// Spectral parameters u_1..u_n, defaulting to 0.3, -0.45, 0.8.
  std::vector<cplx> spectral(std::size_t n) const {
    static const cplx defaults[3] = {0.3, -0.45, 0.8};
    std::vector<cplx> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(u, i, defaults[i]));
    return out;
  }

  /// AdS point i: x- defaults to 1.3+0.4i / -0.9+1.1i, eta to 1, x+ to the larger mass-shell root.
  AdsPoint ads(std::size_t i) const {
    static const cplx xm_default[2] = {{1.3, 0.4}, {-0.9, 1.1}};
    AdsPoint q;
    q.g = parse_complex(g);
    q.x_minus = at(xm, i, xm_default[i]);
    q.eta = at(eta, i, 1.0);
    q.x_plus = i < xp.size() ? parse_complex(xp[i]) : mass_shell_roots(q.x_minus, q.g)[0];
    require_mass_shell(q, "point flags");
    return q;
  }

  Globals globals() const { return {parse_complex(theta), parse_complex(xi)}; }
};

CMatrix derived_smatrix(const PointFlags& f) {
  const FfData f1 = ff_from_ads(f.ads(0)), f2 = ff_from_ads(f.ads(1));
  const OddAssignment d = odd_assignment(f1.point, f2.point, f1.globals, f1.t, f2.t);
  const DerivedSmatrix r = derive_smatrix_from_symmetry(d.d1, d.d2, d.d1p, d.d2p);
  if (r.nullity != 1) throw domain_error("derive: nullspace dimension " + std::to_string(r.nullity));
  // Fix the free scale: largest entry (first in column-major order) set to 1.
  Eigen::Index bi = 0;
  r.X.reshaped().cwiseAbs().maxCoeff(&bi);
  return r.X / r.X.reshaped()(bi);
}

const std::map<std::string, std::string>& dump_objects() {
  static const std::map<std::string, std::string> m{
      {"graded-perm", "graded permutation on two sites"},
      {"r-f", "free-fermion R at the XX point u1"},
      {"r0", "R0 at XX points u1, u2"},
      {"s-coeffs", "8x8 structure tensor at XX points u1, u2, u3"},
      {"ssw-r", "two-layer R at XX points u1, u2 glued with theta, xi"},
      {"hubbard-r", "Hubbard R at (u1, U), (u2, U)"},
      {"rcheck", "gauged Rcheck at the free-fermion image of the AdS points"},
      {"rcheck-ads", "Rcheck in string variables at the AdS points"},
      {"derived-s", "S-matrix derived from the symmetry constraints"},
      {"graded-s", "graded S-matrix from the double free fermion form"}};
  return m;
}

CMatrix dump_object(const std::string& name, const PointFlags& f) {
  if (name == "graded-perm") return graded_permutation(FockSpace(2), 0, 1);
  if (name == "r-f") return r_f(FockSpace(2), 0, 1, xx_point(f.spectral(1)[0]));
  if (name == "r0") {
    const auto u = f.spectral(2);
    return r0(FockSpace(2), 0, 1, xx_point(u[0]), xx_point(u[1]));
  }
  if (name == "s-coeffs") {
    const auto u = f.spectral(3);
    const auto A = xx_triple(u[0], u[1], u[2]);
    require_tza_admissible(A[0], A[1], A[2]);
    return s_coeffs(A[0], A[1], A[2]).table();
  }
  if (name == "ssw-r") {
    const auto u = f.spectral(2);
    const Globals g = f.globals();
    return ssw_r(FockSpace(2, 2), 0, 1, glue(xx_point(u[0]), g), glue(xx_point(u[1]), g));
  }
  if (name == "hubbard-r") {
    const auto u = f.spectral(2);
    const cplx U = parse_complex(f.U);
    return hubbard_r(FockSpace(2, 2), 0, 1, HubbardPoint{u[0], U}, HubbardPoint{u[1], U});
  }
  if (name == "rcheck") {
    const FfData f1 = ff_from_ads(f.ads(0)), f2 = ff_from_ads(f.ads(1));
    return r_check(f1.point, f2.point, f1.t, f2.t);
  }
  if (name == "rcheck-ads") return rcheck_ads(f.ads(0), f.ads(1));
  if (name == "derived-s") return derived_smatrix(f);
  if (name == "graded-s") return graded_smatrix(f.ads(0), f.ads(1));
  throw usage_error("unknown dump object '" + name + "'");
}

void add_point_flags(CLI::App& app, PointFlags& f) {
  app.add_option("--xp", f.xp, "x+ per site (re,im); default: mass-shell root")->expected(1, 2)->group("Points");
  app.add_option("--xm", f.xm, "x- per site (re,im)")->expected(1, 2)->group("Points");
  app.add_option("--eta", f.eta, "eta per site (re,im)")->expected(1, 2)->group("Points");
  app.add_option("--g", f.g, "coupling g (re,im)")->group("Points");
  app.add_option("--u", f.u, "spectral parameter per site (re,im)")->expected(1, 3)->group("Points");
  app.add_option("--U", f.U, "Hubbard coupling (re,im)")->group("Points");
  app.add_option("--theta", f.theta, "global Theta (re,im)")->group("Points");
  app.add_option("--xi", f.xi, "global Xi (re,im)")->group("Points");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ffsm: numerical verification of two-layer free-fermion R-matrices"};
  app.allow_windows_style_options(false);
  std::string suite, dump_name;
  std::uint64_t seed = 1;
  int trials = 10;
  std::optional<double> tol;
  bool json = false, list = false;
  PointFlags flags;
  app.add_option("--suite", suite, "suite to run (see --list)");
  app.add_option("--seed", seed, "64-bit seed")->capture_default_str();
  app.add_option("--trials", trials, "seeded trials per suite")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tol", tol, "tolerance (default 1e-9; hubbard 1e-5)")->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "print the report as JSON");
  app.add_option("--dump", dump_name, "print a matrix in dump format (see --list)");
  app.add_flag("--list", list, "list suites and dump objects");
  add_point_flags(app, flags);
  CLI::App* derive = app.add_subcommand("derive", "derive the S-matrix from the symmetry constraints and dump it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (list) {
      std::cout << "suites:";
      for (const auto& s : suite_names()) std::cout << " " << s;
      std::cout << "\ndump objects:\n";
      for (const auto& [k, v] : dump_objects()) std::cout << "  " << k << "  " << v << "\n";
      return exit_pass;
    }
    if (derive->parsed()) {
      dump(std::cout, derived_smatrix(flags));
      return exit_pass;
    }
    if (!dump_name.empty()) {
      dump(std::cout, dump_object(dump_name, flags));
      return exit_pass;
    }
    if (suite.empty()) {
      std::cerr << app.help();
      return exit_usage;
    }
    const SuiteReport r = run_suite(suite, seed, trials, tol);
    if (json)
      std::cout << report_json(r).dump(2) << "\n";
    else
      print_report(std::cout, r);
    if (!r.pass()) {
      for (const auto& c : r.checks)
        if (!c.pass) std::cerr << "failed: " << c.name << " (seed " << c.worst_seed << ")\n";
      for (const auto& e : r.errors) std::cerr << "error: " << e.suite << " seed " << e.seed << ": " << e.message << "\n";
      return exit_fail;
    }
    return exit_pass;
  } catch (const unknown_suite& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  } catch (const usage_error& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  } catch (const domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return exit_usage;
  }
}
