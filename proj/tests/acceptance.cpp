// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "ffsm/report.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace ffsm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Max of body over n derived seeds.
double worst(std::uint64_t base, int n, const std::function<double(Rng&)>& body) {
  double w = 0.0;
  for (int i = 0; i < n; ++i) {
    Rng rng(Rng::derive(base, std::uint64_t(i)));
    const double r = body(rng);
    w = std::isfinite(r) ? std::max(w, r) : std::numeric_limits<double>::infinity();
  }
  return w;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Globals globals(Rng& rng) { return {rng.polar(), rng.polar()}; }

Outcome ff_ybe() {
  const auto t0 = std::chrono::steady_clock::now();
  const double r = worst(101, 100, [](Rng& rng) { return check_ybe_f(random_sl2c(rng), random_sl2c(rng)); });
  const double s = seconds_since(t0);
  return {r < 1e-10 && s < 1.0, fmt("max %.2e over 100 triples, %.3f s", r, s)};
}

Outcome inversion() {
  const double r = worst(102, 100, [](Rng& rng) { return check_inversion(random_sl2c(rng)); });
  return {r < 1e-11, fmt("max %.2e over 100 points", r)};
}

Outcome intertwiner_dimensions() {
  int bad = 0;
  for (int i = 0; i < 25; ++i) {
    Rng rng(Rng::derive(103, std::uint64_t(i)));
    const auto p = detail::generic_qg_triple(rng, rng.polar());
    bad += intertwiner_space_dimension(p[0], p[1], qg_generator_names) != 1;
    bad += intertwiner_space_dimension(p[0], p[1], qg_subalgebra_names) != 2;
  }
  return {bad == 0, fmt("%.0f wrong dimensions over 25 sets (affine 1, finite 2)", bad)};
}

Outcome identification() {
  const double r = worst(104, 25, [](Rng& rng) {
    const auto p = detail::generic_qg_triple(rng, rng.polar());
    return check_identification_r0_any_branch(p[0], p[1]);
  });
  return {r < 1e-10, fmt("max %.2e over 25 sets", r)};
}

Outcome tza() {
  const auto t0 = std::chrono::steady_clock::now();
  double rel = 0.0, dep = 0.0;
  int rank_bad = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(Rng::derive(105, std::uint64_t(i)));
    const auto A = detail::admissible_triple(rng);
    const auto d = check_dependence(A[0], A[1], A[2]);
    rel = std::max(rel, check_tza(A[0], A[1], A[2]));
    dep = std::max({dep, d[0], d[1]});
    rank_bad += product_span_rank(A[0], A[1], A[2]) != 6;
  }
  const SuiteReport six = run_suite("tza-six", 106, 25, 1e-8);
  double sixr = 0.0;
  for (const auto& c : six.checks) sixr = std::max(sixr, c.max_residual);
  const double s = seconds_since(t0);
  return {rel < 1e-9 && dep < 1e-9 && rank_bad == 0 && six.pass() && s < 10.0,
          fmt("relations %.2e, dependence %.2e, six-product %.2e, %.2f s", rel, dep, sixr, s) +
              (rank_bad ? ", rank != 6" : ", rank 6")};
}

Outcome ssw() {
  const double r = worst(107, 50, [](Rng& rng) {
    const Globals g = globals(rng);
    std::array<GluingPoint, 3> p;
    for (auto& q : p) q = glue(random_sl2c(rng), g, int(rng.uniform() < 0.5));
    return check_ybe_ssw(p[0], p[1], p[2], g);
  });
  const FockSpace S(2, 2);
  const HubbardPoint a0{0.3, 1.0}, b0{-0.45, 1.0};
  auto weak = [&](double U) {
    const HubbardPoint a{a0.u, U}, b{b0.u, U};
    return residual_up_to_scalar(hubbard_r(S, 0, 1, a, b), r0(S, 0, 1, a.A(), b.A(), 0) * r0(S, 0, 1, a.A(), b.A(), 1));
  };
  double slope_err = 0.0;
  double prev = weak(1e-2);
  for (double U : {1e-3, 1e-4, 1e-5}) {
    const double cur = weak(U);
    slope_err = std::max(slope_err, std::abs(std::log10(prev / cur) - 1.0));
    prev = cur;
  }
  return {r < 1e-9 && slope_err < 0.05, fmt("YBE max %.2e over 50 triples, U-slope deviation %.3f", r, slope_err)};
}

Outcome hubbard() {
  const double r = worst(108, 50, [](Rng& rng) {
    const double U = rng.uniform(0.2, 5.0);
    const HubbardPoint p = detail::random_hubbard_point(rng, U);
    const auto roots = solve_gluing(p.A(), hubbard_globals(U));
    const double sel = std::min(std::abs(roots[0] - p.v()), std::abs(roots[1] - p.v())) / std::abs(p.v());
    return std::max({std::abs(std::sinh(2.0 * p.h()) - U / 4.0 * std::sin(2.0 * p.u)),
                     std::abs(gluing_defect(p.gluing(), hubbard_globals(U))), sel});
  });
  double dens = 0.0;
  for (double U : {0.5, 2.0, 4.0}) {
    const HubbardCheck c = hubbard_hamiltonian_check(U, 2);
    dens = std::max({dens, c.fit_residual, c.ratio_error, c.chain_residual});
  }
  dens = std::max(dens, hubbard_hamiltonian_check(2.0, 4).chain_residual);
  return {r < 1e-10 && dens < 1e-5, fmt("gluing %.2e over 50 draws, density %.2e", r, dens)};
}

Outcome biconditional() {
  const double on = worst(109, 25, [](Rng& rng) {
    const Globals g = globals(rng);
    return check_anticommutator_relations(random_glued_symmetric(rng, g), random_glued_symmetric(rng, g));
  });
  Rng rng(110);
  const Globals g = globals(rng);
  const double off = check_anticommutator_relations(glue(random_sl2c(rng), g), glue(random_sl2c(rng), g));
  return {on < 1e-9 && off > 1e-3, fmt("on locus %.2e, seeded violation %.2e", on, off)};
}

Outcome invariance() {
  const double r = worst(111, 50, [](Rng& rng) {
    const Globals g = globals(rng);
    const GluingPoint p1 = random_glued_symmetric(rng, g), p2 = random_glued_symmetric(rng, g);
    const cplx t1 = rng.polar(), t2 = rng.polar(), s1 = rng.polar(), s2 = rng.polar();
    return std::max({check_bosonic_invariance(r_check(p1, p2, t1, t2)), check_bosonic_invariance(r_check(p1, p2, s1, s2)),
                     check_fermionic_invariance(p1, p2, g, t1, t2), check_fermionic_invariance(p1, p2, g, s1, s2)});
  });
  return {r < 1e-9, fmt("max %.2e over 50 configurations, two t-draws each", r)};
}

Outcome charge_flow() {
  const SuiteReport rep = run_suite("charge-flow", 112, 25, 1e-10);
  double r = 0.0;
  for (const auto& c : rep.checks) r = std::max(r, c.max_residual);
  return {rep.pass(), fmt("max %.2e over 25 configurations", r)};
}

Outcome derive() {
  const SuiteReport rep = run_suite("derive-smatrix", 113, 25, 1e-9);
  return {rep.pass(), fmt("nullity defect %.0f, distance to Rcheck %.2e over 25 configurations",
                          rep.checks[0].max_residual, rep.checks[1].max_residual)};
}

Outcome bridge() {
  const SuiteReport rep = run_suite("bridge", 114, 25, 1e-9);
  return {rep.pass(), fmt("single-site %.2e, coproduct %.2e over 25 configurations", rep.checks[0].max_residual,
                          rep.checks[1].max_residual)};
}

Outcome ads_equality() {
  const double r = worst(115, 25, [](Rng& rng) {
    const auto q = sample_ads_pair(rng);
    const AdsEquality e = check_ads_equality(q[0], q[1]);
    return std::max(e.up_to_scalar, e.with_scalar);
  });
  return {r < 1e-9, fmt("max %.2e over 25 mass-shell pairs", r)};
}

Outcome appendix() {
  double bil = 0.0, gen = 0.0, quad = 0.0, off1 = 0.0, off2 = 0.0, off3 = 1e300;
  for (int i = 0; i < 50; ++i) {
    Rng rng(Rng::derive(116, std::uint64_t(i)));
    const Sl2cPoint A1 = random_sl2c(rng), A2 = random_sl2c(rng), A3 = random_sl2c(rng), A4 = random_sl2c(rng);
    DoubleFfCoefficients c;
    for (auto& row : c)
      for (auto& x : row) x = rng.polar();
    bil = std::max(bil, check_bilinear_identities(A1, A2));
    gen = std::max(gen, check_double_ff(build_general(c, A1, A2, A3, A4)));
    const auto q = sample_ads_pair(rng);
    const auto rel = check_quadratic_relations(graded_smatrix(q[0], q[1]));
    quad = std::max({quad, rel[0], rel[1], rel[2]});
    AdsPoint p = q[0];
    p.x_plus += 1e-3;
    const auto off = quadratic_relations(string_coefficients(p, q[1]));
    off1 = std::max(off1, off[0]);
    off2 = std::max(off2, off[1]);
    off3 = std::min(off3, off[2]);
  }
  return {bil < 1e-9 && gen < 1e-9 && quad < 1e-9 && off3 > 1e-7,
          fmt("bilinear %.2e, general %.2e, quadratics %.2e; off shell: first max %.2e", bil, gen, quad, off1) +
              fmt(", second max %.2e, third min %.2e", off2, off3)};
}

Outcome end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport a = run_suite("all", 1, 10);
  const double s = seconds_since(t0);
  const SuiteReport b = run_suite("all", 1, 10);
  auto ja = report_json(a), jb = report_json(b);
  ja.erase("elapsed_ms");
  jb.erase("elapsed_ms");
  const bool same = ja.dump() == jb.dump();
  std::string failed;
  for (const auto& c : a.checks)
    if (!c.pass) failed += " " + c.name;
  return {a.pass() && same && s < 60.0, fmt("%.0f checks, %.2f s", double(a.checks.size()), s) +
                                            (same ? ", JSON identical" : ", JSON differs") +
                                            (failed.empty() ? "" : ", failed:" + failed)};
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"free-fermion YBE", ff_ybe},           {"inversion relation", inversion},
      {"intertwiner dimensions", intertwiner_dimensions},
      {"identification with r0", identification},
      {"TZA relations", tza},                 {"two-layer YBE and U->0 limit", ssw},
      {"Hubbard gluing and density", hubbard}, {"symmetry biconditional", biconditional},
      {"full invariance", invariance},        {"central-charge flow", charge_flow},
      {"derived S-matrix", derive},           {"bridge identities", bridge},
      {"string-variable equality", ads_equality}, {"double free fermion and quadratics", appendix},
      {"end-to-end run", end_to_end}};
  int failures = 0, n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%-4s %2d  %-36s %s\n", o.pass ? "PASS" : "FAIL", n, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failures, n);
  return failures ? 1 : 0;
}
