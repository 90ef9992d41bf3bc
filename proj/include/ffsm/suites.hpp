#ifndef FFSM_SUITES_HPP
#define FFSM_SUITES_HPP

#include "ffsm/double_ff.hpp"
#include "ffsm/tza.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace ffsm {

/// Residual recorded for every check of a trial that threw.
inline constexpr double trial_error_residual = 1e300;

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  bool pass = true;
  std::uint64_t worst_seed = 0;  ///< trial seed attaining max_residual
};

struct TrialError {
  std::string suite;
  std::uint64_t seed = 0;
  std::string message;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  double tolerance = 0.0;
  std::vector<CheckResult> checks;
  std::vector<TrialError> errors;
  std::string note;
  double elapsed_ms = 0.0;

  bool pass() const {
    return errors.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
};

class unknown_suite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ff-ybe",        "qg-intertwiner", "tza",           "tza-six",
                                              "ssw-ybe",       "hubbard",        "bosonic-inv",   "fermionic-inv",
                                              "charge-flow",   "derive-smatrix", "bridge",        "ads-equality",
                                              "appendix",      "all"};
  return names;
}

/// Finite-difference suites get a looser default.
inline double default_tolerance(const std::string& name) { return name == "hubbard" ? 1e-5 : 1e-9; }

/// Worker count: hardware concurrency, capped by TZA_SMATRIX_THREADS.
inline unsigned suite_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TZA_SMATRIX_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, unsigned(cap));
  }
  return n;
}

namespace detail {

struct SuiteDef {
  std::vector<std::string> checks;
  std::function<std::vector<double>(Rng&)> trial;
};

inline double rank_defect(int got, int expected) { return std::abs(double(got - expected)); }

inline std::array<Sl2cPoint, 3> admissible_triple(Rng& rng) {
  for (;;) {
    std::array<Sl2cPoint, 3> A{random_sl2c(rng), random_sl2c(rng), random_sl2c(rng)};
    try {
      require_tza_admissible(A[0], A[1], A[2], 0.05);
      return A;
    } catch (const domain_error&) {
    }
  }
}

inline std::array<QgParams, 3> generic_qg_triple(Rng& rng, cplx z) {
  for (;;) {
    std::array<QgParams, 3> p{random_qg_params(rng, z), random_qg_params(rng, z), random_qg_params(rng, z)};
    if (generic_pair(p[0], p[1]) && generic_pair(p[0], p[2]) && generic_pair(p[1], p[2])) return p;
  }
}

inline Globals random_globals(Rng& rng) { return {rng.polar(), rng.polar()}; }

inline HubbardPoint random_hubbard_point(Rng& rng, cplx U) {
  for (;;) {
    const cplx u(rng.uniform(-0.7, 0.7), rng.uniform(-0.2, 0.2));
    if (std::abs(u) > 0.05) return {u, U};
  }
}

inline SuiteDef ff_ybe_suite() {
  return {{"ybe", "inversion", "r0-conjugation", "light-cone-basis", "r0-ybe", "transfer-commutation",
           "hamiltonian"},
          [](Rng& rng) {
            const Sl2cPoint A = random_sl2c(rng), C = random_sl2c(rng), A2 = random_sl2c(rng), A3 = random_sl2c(rng);
            const cplx u1(rng.uniform(-1.0, 1.0), rng.uniform(-0.3, 0.3)), u2(rng.uniform(-1.0, 1.0), rng.uniform(-0.3, 0.3));
            return std::vector<double>{
                check_ybe_f(A, C),
                check_inversion(A),
                check_r0_conjugation(A, A2),
                check_light_cone_basis(A, A2),
                check_ybe_r0(A, A2, A3),
                check_transfer_commutation(u1, u2, 4),
                frobenius_residual(hamiltonian_from_transfer(4), xx_hamiltonian(FockSpace(4)))};
          }};
}

inline SuiteDef qg_suite() {
  return {{"algebra", "intertwiner", "affine-dimension", "finite-dimension", "identification", "y-removal",
           "intertwiner-ybe", "phi-flip", "dictionary-round-trip"},
          [](Rng& rng) {
            const cplx z = rng.polar();
            const auto p = generic_qg_triple(rng, z);
            const Sl2cPoint A = sl2c_from_params(p[0]);
            const Sl2cPoint back = sl2c_from_params(params_from_sl2c(A, z));
            return std::vector<double>{
                check_algebra_relations(p[0]),
                check_intertwiner(p[0], p[1]),
                rank_defect(intertwiner_space_dimension(p[0], p[1], qg_generator_names), 1),
                rank_defect(intertwiner_space_dimension(p[0], p[1], qg_subalgebra_names), 2),
                check_identification_r0_any_branch(p[0], p[1]),
                check_y_removal(p[0], p[1]),
                check_ybe_intertwiner(p[0], p[1], p[2]),
                check_phi_flip(p[0], p[1]),
                frobenius_residual(CMatrix(A.matrix()), CMatrix(back.matrix()))};
          }};
}

inline SuiteDef tza_suite() {
  return {{"tza", "dependence-1", "dependence-2", "span-rank", "xx-tza"}, [](Rng& rng) {
            const auto A = admissible_triple(rng);
            const auto dep = check_dependence(A[0], A[1], A[2]);
            const auto X = xx_triple(rng.uniform(0.1, 0.5), rng.uniform(0.6, 1.0), rng.uniform(1.1, 1.5));
            return std::vector<double>{check_tza(A[0], A[1], A[2]), dep[0], dep[1],
                                       rank_defect(product_span_rank(A[0], A[1], A[2]), 6),
                                       check_tza(X[0], X[1], X[2])};
          }};
}

inline SuiteDef tza_six_suite() {
  return {{"six-product", "first-route", "second-route"}, [](Rng& rng) {
            for (;;) {
              const auto A = admissible_triple(rng);
              const Sl2cPoint A4 = random_sl2c(rng);
              try {
                require_tza_admissible(A[0], A[1], A4, 0.05);
                require_tza_admissible(A[0], A[2], A4, 0.05);
                require_tza_admissible(A[1], A[2], A4, 0.05);
              } catch (const domain_error&) {
                continue;
              }
              const SixProductResult r = check_six_product(A[0], A[1], A[2], A4);
              return std::vector<double>{r.relation, r.first_route, r.second_route};
            }
          }};
}

inline SuiteDef ssw_suite() {
  return {{"gluing", "ybe", "layer-exchange", "alpha-beta", "quantum-invariance"}, [](Rng& rng) {
            const Globals g = random_globals(rng);
            std::array<GluingPoint, 3> p;
            for (auto& q : p) q = glue(random_sl2c(rng), g, int(rng.uniform() < 0.5));
            const AlphaBeta ab = ssw_alpha_beta(p[0], p[1]);
            const FockSpace S(2, 2);
            const cplx z = rng.polar();
            const auto pq = random_glued_pair_qg(rng, z, g);
            double glue_defect = 0.0;
            for (const auto& q : p) glue_defect = std::max(glue_defect, std::abs(gluing_defect(q, g)));
            return std::vector<double>{
                glue_defect,
                check_ybe_ssw(p[0], p[1], p[2], g),
                check_layer_exchange(p[0], p[1]),
                frobenius_residual(ssw_r_alpha_beta(S, 0, 1, p[0].A, p[1].A, ab), ssw_r(S, 0, 1, p[0], p[1])),
                check_quantum_invariance(pq[0], pq[1], z)};
          }};
}

inline SuiteDef hubbard_suite() {
  return {{"gluing-formula", "root-selection", "regular-form", "density-fit", "density-ratio", "chain-2", "chain-4",
           "weak-coupling", "eta-pairing"},
          [](Rng& rng) {
            const cplx U = rng.uniform(0.5, 4.0);
            const HubbardPoint a = random_hubbard_point(rng, U), b = random_hubbard_point(rng, U);
            const Globals G = hubbard_globals(U);
            const auto roots = solve_gluing(a.A(), G);
            const double sel = std::min(std::abs(roots[0] - a.v()), std::abs(roots[1] - a.v())) / std::abs(a.v());
            const FockSpace S(2, 2);
            const HubbardCheck c2 = hubbard_hamiltonian_check(U, 2), c4 = hubbard_hamiltonian_check(U, 4);
            const HubbardPoint wa{a.u, 1e-10}, wb{b.u, 1e-10};
            const double weak = residual_up_to_scalar(hubbard_r(S, 0, 1, wa, wb),
                                                      r0(S, 0, 1, wa.A(), wb.A(), 0) * r0(S, 0, 1, wa.A(), wb.A(), 1));
            return std::vector<double>{
                std::max(std::abs(std::sinh(2.0 * a.h()) - U / 4.0 * std::sin(2.0 * a.u)),
                         std::abs(gluing_defect(a.gluing(), G))),
                sel,
                frobenius_residual(hubbard_r(S, 0, 1, a, b), ssw_r(S, 0, 1, a.gluing(), b.gluing())),
                c2.fit_residual,
                c2.ratio_error,
                c2.chain_residual,
                c4.chain_residual,
                weak,
                eta_pairing_residual(4, U)};
          }};
}

inline SuiteDef bosonic_suite() {
  return {{"super-algebra", "outer-automorphism", "anticommutators", "l-invariance", "bosonic-invariance",
           "braided-ybe"},
          [](Rng& rng) {
            const Sl2cPoint D = random_sl2c(rng);
            const double phi = rng.uniform(0.0, 2.0 * pi);
            const Globals g = random_globals(rng);
            const GluingPoint p1 = random_glued_symmetric(rng, g), p2 = random_glued_symmetric(rng, g),
                              p3 = random_glued_symmetric(rng, g);
            const cplx t1 = rng.polar(), t2 = rng.polar(), t3 = rng.polar();
            return std::vector<double>{check_super_algebra(D),
                                       check_outer_automorphism(D, phi),
                                       check_anticommutator_relations(p1, p2),
                                       check_l_invariance(p1, p2),
                                       check_bosonic_invariance(r_check(p1, p2, t1, t2)),
                                       check_braided_ybe({p1, p2, p3}, {t1, t2, t3})};
          }};
}

inline SuiteDef fermionic_suite() {
  return {{"fermionic-invariance", "fermionic-invariance-redrawn-t"}, [](Rng& rng) {
            const Globals g = random_globals(rng);
            const GluingPoint p1 = random_glued_symmetric(rng, g), p2 = random_glued_symmetric(rng, g);
            const cplx t1 = rng.polar(), t2 = rng.polar(), s1 = rng.polar(), s2 = rng.polar();
            return std::vector<double>{check_fermionic_invariance(p1, p2, g, t1, t2),
                                       check_fermionic_invariance(p1, p2, g, s1, s2)};
          }};
}

inline SuiteDef charge_flow_suite() {
  return {{"flow", "shortening", "c1-formula"}, [](Rng& rng) {
            const Globals g = random_globals(rng);
            const GluingPoint p1 = random_glued_symmetric(rng, g), p2 = random_glued_symmetric(rng, g);
            const cplx t1 = rng.polar(), t2 = rng.polar();
            const ChargeFlow f = central_charge_flow(p1, p2, g, t1, t2);
            return std::vector<double>{f.flow_residual, f.shortening_residual, f.c1_formula_residual};
          }};
}

inline SuiteDef derive_suite() {
  return {{"nullity", "equals-rcheck"}, [](Rng& rng) {
            const Globals g = random_globals(rng);
            const GluingPoint p1 = random_glued_symmetric(rng, g), p2 = random_glued_symmetric(rng, g);
            const cplx t1 = rng.polar(), t2 = rng.polar();
            const OddAssignment d = odd_assignment(p1, p2, g, t1, t2);
            const DerivedSmatrix r = derive_smatrix_from_symmetry(d.d1, d.d2, d.d1p, d.d2p);
            return std::vector<double>{rank_defect(r.nullity, 1), residual_up_to_scalar(r.X, r_check(p1, p2, t1, t2))};
          }};
}

inline SuiteDef bridge_suite() {
  return {{"single-site", "coproduct"}, [](Rng& rng) {
            const Globals g = random_globals(rng);
            const QgParams p1 = random_bridge_params(rng), p2 = random_bridge_params(rng);
            const cplx t1 = rng.polar(), t2 = rng.polar();
            return std::vector<double>{std::max(bridge_single_site(p1, g, t1), bridge_single_site(p2, g, t2)),
                                       bridge_coproduct(p1, p2, g, t1, t2)};
          }};
}

inline SuiteDef ads_suite() {
  return {{"dictionary", "d-matrices", "equal-up-to-scalar", "equal-with-scalar", "invariant-ratios"},
          [](Rng& rng) {
            const auto q = sample_ads_pair(rng);
            const AdsEquality e = check_ads_equality(q[0], q[1]);
            return std::vector<double>{std::max(check_ads_dictionary(q[0]), check_ads_dictionary(q[1])),
                                       check_d_matrices_ads(q[0], q[1]), e.up_to_scalar, e.with_scalar,
                                       check_invariant_ratios(q[0], q[1])};
          }};
}

inline SuiteDef appendix_suite() {
  return {{"bilinear", "jordan-wigner", "double-ff-general", "double-ff-ssw", "double-ff-hubbard", "quadratic-1",
           "quadratic-2", "quadratic-3", "closed-form-quadratics"},
          [](Rng& rng) {
            const Sl2cPoint A1 = random_sl2c(rng), A2 = random_sl2c(rng), A3 = random_sl2c(rng), A4 = random_sl2c(rng);
            DoubleFfCoefficients c;
            for (auto& row : c)
              for (auto& x : row) x = rng.polar();
            const Globals g = random_globals(rng);
            const cplx U = rng.uniform(0.5, 4.0);
            const HubbardPoint h1 = random_hubbard_point(rng, U), h2 = random_hubbard_point(rng, U);
            const auto q = sample_ads_pair(rng);
            const auto quad = check_quadratic_relations(graded_smatrix(q[0], q[1]));
            const auto table = quadratic_relations(string_coefficients(q[0], q[1]));
            return std::vector<double>{check_bilinear_identities(A1, A2),
                                       check_jordan_wigner(A1, A2),
                                       check_double_ff(build_general(c, A1, A2, A3, A4)),
                                       check_double_ff(ssw_matrix_form(glue(A1, g), glue(A2, g))),
                                       check_double_ff(ssw_matrix_form(h1.gluing(), h2.gluing())),
                                       quad[0],
                                       quad[1],
                                       quad[2],
                                       std::max({table[0], table[1], table[2]})};
          }};
}

inline SuiteDef suite_def(const std::string& name) {
  if (name == "ff-ybe") return ff_ybe_suite();
  if (name == "qg-intertwiner") return qg_suite();
  if (name == "tza") return tza_suite();
  if (name == "tza-six") return tza_six_suite();
  if (name == "ssw-ybe") return ssw_suite();
  if (name == "hubbard") return hubbard_suite();
  if (name == "bosonic-inv") return bosonic_suite();
  if (name == "fermionic-inv") return fermionic_suite();
  if (name == "charge-flow") return charge_flow_suite();
  if (name == "derive-smatrix") return derive_suite();
  if (name == "bridge") return bridge_suite();
  if (name == "ads-equality") return ads_suite();
  if (name == "appendix") return appendix_suite();
  throw unknown_suite("unknown suite: " + name);
}

/// Runs every trial (on worker threads) and folds results in trial order.
inline void run_single(const std::string& name, std::uint64_t seed, int trials, double tol, const std::string& prefix,
                       SuiteReport& out) {
  const SuiteDef def = suite_def(name);
  const std::size_t nc = def.checks.size();
  std::vector<std::vector<double>> res(static_cast<std::size_t>(trials));
  std::vector<std::string> err(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < trials; i = next++) {
      Rng rng(Rng::derive(seed, std::uint64_t(i)));
      try {
        std::vector<double> r = def.trial(rng);
        if (r.size() != nc) throw std::logic_error("suite " + name + ": check count mismatch");
        res[std::size_t(i)] = std::move(r);
      } catch (const std::exception& e) {
        err[std::size_t(i)] = e.what();
        res[std::size_t(i)].assign(nc, trial_error_residual);
      }
    }
  };
  const unsigned nt = std::min<unsigned>(suite_threads(), unsigned(std::max(1, trials)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < nt; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t c = 0; c < nc; ++c) {
    CheckResult cr;
    cr.name = prefix + def.checks[c];
    for (int i = 0; i < trials; ++i) {
      double r = res[std::size_t(i)][c];
      if (!std::isfinite(r)) r = trial_error_residual;
      if (i == 0 || r > cr.max_residual) {
        cr.max_residual = r;
        cr.worst_seed = Rng::derive(seed, std::uint64_t(i));
      }
    }
    cr.pass = cr.max_residual <= tol;
    out.checks.push_back(std::move(cr));
  }
  for (int i = 0; i < trials; ++i)
    if (!err[std::size_t(i)].empty()) out.errors.push_back({name, Rng::derive(seed, std::uint64_t(i)), err[std::size_t(i)]});
}

}  // namespace detail

/// Runs a named suite; tol defaults per suite. Trial i draws from Rng(Rng::derive(seed, i)).
inline SuiteReport run_suite(const std::string& name, std::uint64_t seed, int trials,
                             std::optional<double> tol = std::nullopt) {
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw unknown_suite("unknown suite: " + name);
  if (trials < 1) throw std::invalid_argument("run_suite: trials must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  SuiteReport r;
  r.suite = name;
  r.seed = seed;
  r.trials = trials;
  r.tolerance = tol.value_or(default_tolerance(name));
  if (!tol && name == "hubbard") r.note = "finite-difference suite: default tolerance 1e-5";
  if (name == "all") {
    for (const auto& s : suite_names())
      if (s != "all") detail::run_single(s, seed, trials, r.tolerance, s + "/", r);
  } else {
    detail::run_single(name, seed, trials, r.tolerance, "", r);
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace ffsm

#endif  // FFSM_SUITES_HPP
