// Acceptance suite: one check per numbered criterion, each printing a
// single PASS/FAIL line with its key measurements.  Run with a list of
// criterion numbers, or no arguments for all of them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <set>
#include <string>

#include "kleinian/embeddings.hpp"
#include "kleinian/geometry.hpp"
#include "kleinian/invariants.hpp"
#include "kleinian/linalg.hpp"
#include "kleinian/rng.hpp"
#include "kleinian/scan.hpp"
#include "kleinian/traces.hpp"

using namespace kleinian;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

// ---------------------------------------------------------------------------
// 1. diag((1+i)/sqrt2, (j+k)/sqrt2) conjugation sends every SU(1,1) element
//    with parameter z to trace exactly 2z.

Outcome criterion1() {
  const double s = 1.0 / std::sqrt(2.0);
  HMatrix g(2);
  g(0, 0) = Quaternion{s, s, 0.0, 0.0};
  g(1, 1) = Quaternion{0.0, 0.0, s, s};
  const HMatrix ginv = sp_inverse(g);
  Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Complex w = rng.next_normal_complex();
    const Complex z =
        std::polar(std::sqrt(1.0 + std::norm(w)), 6.28 * rng.next_uniform());
    const HMatrix u = promote_to_quaternion(su11_element(z, w, 1e-12));
    const Quaternion tr = (g * u * ginv).trace();
    const Quaternion expected{2.0 * z.real(), 2.0 * z.imag(), 0.0, 0.0};
    worst = std::max(worst, (tr - expected).norm());
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |trace - 2z| = %.3g over 200 samples",
                worst);
  return {worst <= 1e-12, buf};
}

// ---------------------------------------------------------------------------
// 2. Sp(1)*SU(1,1) membership against the conjugated-trace scan, both
//    directions.

Outcome criterion2() {
  const GroupSpec su11 = GroupSpec::make(Family::su, 1, 1);
  Rng rng(202);
  int member_fail = 0, nonmember_fail = 0;
  double worst_member_scan = 0.0, least_witness = 1e300;
  for (int t = 0; t < 200; ++t) {
    const HMatrix u =
        promote_to_quaternion(random_element<Complex>(su11, 2000 + t));
    const HMatrix member = scale_left(rng.next_unit_quaternion(), u);
    const Sp1Su11Result res = sp1_su11_membership(member, 1e-9);
    const double scan =
        conjugated_trace_scan(member, su11, 200, 77 + t).max_im;
    worst_member_scan = std::max(worst_member_scan, scan);
    if (!res.member || scan > 1e-9) ++member_fail;
  }
  for (int t = 0; t < 200; ++t) {
    // Drift off the subgroup by a bounded symplectic perturbation.
    const HMatrix u =
        promote_to_quaternion(random_element<Complex>(su11, 4000 + t));
    const HMatrix drift = random_element<Quaternion>(
        GroupSpec::make(Family::sp, 1, 1), 5000 + t, 0.4);
    const HMatrix outside = drift * scale_left(rng.next_unit_quaternion(), u);
    const Sp1Su11Result res = sp1_su11_membership(outside, 1e-9);
    if (res.member) {
      ++nonmember_fail;
      continue;
    }
    const double witness =
        conjugated_trace_scan(outside, su11, 1000, 99 + t).max_im;
    least_witness = std::min(least_witness, witness);
    if (witness <= 1e-3) ++nonmember_fail;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "members: %d fail (scan max %.2g); non-members: %d fail "
                "(least witness %.2g)",
                member_fail, worst_member_scan, nonmember_fail, least_witness);
  return {member_fail == 0 && nonmember_fail == 0, buf};
}

// ---------------------------------------------------------------------------
// 3. First criterion witness never vanishes; the equation-system
//    certificate is nonnegative on the constraint surface.

Outcome criterion3() {
  double min_witness = 1e300;
  for (int n : {1, 2, 3}) {
    const GroupSpec spn = GroupSpec::make(Family::sp, n, 1);
    const MaxScanResult r =
        scan_min(10000, Exec::parallel, [&](size_t i) {
          return criterion_one(
                     random_element<Quaternion>(spn, 31000 + n * 100000 + i))
              .norm();
        });
    min_witness = std::min(min_witness, r.value);
  }
  double min_cert = 1e300, min_residual = 1e300;
  const bool cert_ok = scan_all(1000000, Exec::parallel, [&](size_t i) {
    Rng rng(303, i);
    std::vector<Quaternion> x(4);
    double pos = 1.0;
    for (int m = 0; m < 3; ++m) {
      x[m] = rng.next_normal_quaternion();
      pos += x[m].norm_sq();
    }
    x[3] = rng.next_unit_quaternion() * std::sqrt(pos);
    const EqnsysResidual r = eqnsys_residual(x);
    return r.certificate >= 0.0 && r.first > 0.0;
  });
  // A serial pass for the logged minima (cheap relative to the check).
  for (size_t i = 0; i < 100000; ++i) {
    Rng rng(303, i);
    std::vector<Quaternion> x(4);
    double pos = 1.0;
    for (int m = 0; m < 3; ++m) {
      x[m] = rng.next_normal_quaternion();
      pos += x[m].norm_sq();
    }
    x[3] = rng.next_unit_quaternion() * std::sqrt(pos);
    const EqnsysResidual r = eqnsys_residual(x);
    min_cert = std::min(min_cert, r.certificate);
    min_residual = std::min(min_residual, r.first);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "min witness %.6g over 3x10^4 samples; certificate >= 0 on "
                "10^6 points (min %.3g, min residual %.3g)",
                min_witness, min_cert, min_residual);
  return {min_witness > 1e-6 && cert_ok, buf};
}

// ---------------------------------------------------------------------------
// 4. Second criterion witness triple never vanishes entirely.

Outcome criterion4() {
  double min_witness = 1e300;
  for (int n : {2, 3}) {
    const GroupSpec spn = GroupSpec::make(Family::sp, n, 1);
    const MaxScanResult r =
        scan_min(10000, Exec::parallel, [&](size_t i) {
          const HMatrix g =
              random_element<Quaternion>(spn, 41000 + n * 100000 + i);
          double max_comp = 0.0;
          for (const Quaternion& q : criterion_two(g))
            max_comp = std::max(max_comp, q.norm());
          return max_comp;
        });
    min_witness = std::min(min_witness, r.value);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "min of max-component %.6g over 2x10^4",
                min_witness);
  return {min_witness > 1e-6, buf};
}

// ---------------------------------------------------------------------------
// 5. Detection round trips across the full configuration table.

Outcome criterion5() {
  int total = 0, good = 0;
  std::string failures;
  for (int fam = 0; fam < 2; ++fam)
    for (int n = 2; n <= 4; ++n)
      for (int m = 2; m <= n + 1; ++m) {
        const bool complex_line = (m == n + 1);
        for (uint64_t instance = 1; instance <= 50; ++instance) {
          SynthesisRecipe recipe;
          recipe.ambient = fam ? Family::sp : Family::su;
          recipe.n = n;
          recipe.kind = complex_line ? DetectionKind::complex_line
                                     : DetectionKind::real_form;
          recipe.m = complex_line ? 2 : m;
          recipe.seed = 7000 + instance * 131 + n * 17 + m * 3 + fam;
          DetectionResult det;
          if (fam) {
            const SynthesizedH s = synthesize_sp(recipe);
            det = detect(s.gens.gens, 3, 1e-9, instance);
          } else {
            const SynthesizedC s = synthesize_su(recipe);
            det = detect(s.gens.gens, 3, 1e-9, instance);
          }
          ++total;
          const bool kind_ok =
              complex_line
                  ? det.kind == DetectionKind::complex_line
                  : (det.kind == DetectionKind::real_form && det.m == m);
          if (kind_ok && det.residual < 1e-6 &&
              det.conjugator_membership_residual < 1e-8) {
            ++good;
          } else if (failures.size() < 300) {
            char buf[96];
            std::snprintf(buf, sizeof buf, " [%s n=%d %s seed=%llu]",
                          fam ? "Sp" : "SU", n,
                          complex_line ? "cl" : ("m=" + std::to_string(m)).c_str(),
                          static_cast<unsigned long long>(recipe.seed));
            failures += buf;
          }
        }
      }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/%d recovered (%.1f%%)%s", good, total,
                100.0 * good / total, failures.c_str());
  return {good >= total * 98 / 100 && total == 900, buf};
}

// ---------------------------------------------------------------------------
// 6. The direct-sum fixture: real traces, a 2+2 split, no real structure.

Outcome criterion6() {
  const CMatrix a1 = su11_element(std::cosh(0.9), std::sinh(0.9));
  const CMatrix b1 =
      su11_element(std::cosh(0.7), Complex{0.0, 1.0} * std::sinh(0.7));
  const CMatrix a2 =
      random_element<Complex>(GroupSpec::make(Family::su, 2, 0), 41);
  const CMatrix b2 =
      random_element<Complex>(GroupSpec::make(Family::su, 2, 0), 42);
  auto mk = [](const CMatrix& c2, const CMatrix& nc) {
    CMatrix g(4);
    g.set_block(0, 0, c2);
    g.set_block(2, 2, nc);
    return g;
  };
  std::vector<CMatrix> gens{mk(a2, a1), mk(b2, b1)};
  const RealnessReport rep = realness_report(gens, 6, 1e-9);
  const SubspaceScan<Complex> scan = invariant_subspace_scan(gens, 1e-7);
  const bool split_ok = scan.subspaces.size() == 2 &&
                        scan.subspaces[0].dim == 2 &&
                        scan.subspaces[1].dim == 2;
  const bool absent = !real_structure_solve(gens, 1e-9).has_value();
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "realness=%s (max_im %.2g, %zu words), split=%s, "
                "real_structure=%s",
                rep.real ? "real" : "non-real", rep.max_im, rep.words_checked,
                split_ok ? "2+2" : "unexpected",
                absent ? "absent" : "present");
  return {rep.real && split_ok && absent, buf};
}

// ---------------------------------------------------------------------------
// 7. Scalar embeddings: exact unit relations and sampled identities.

Outcome criterion7() {
  const RMatrix exact =
      quat_to_real(Quaternion::unit_i()) * quat_to_real(Quaternion::unit_j());
  if (max_abs_diff(exact, quat_to_real(Quaternion::unit_k())) != 0.0)
    return {false, "i*j != k in the 4x4 embedding"};
  const MaxScanResult worst = scan_max(100000, Exec::parallel, [](size_t i) {
    Rng rng(707, i);
    const Quaternion p = rng.next_normal_quaternion();
    const Quaternion q = rng.next_normal_quaternion();
    const Complex z = rng.next_normal_complex();
    const Complex w = rng.next_normal_complex();
    double defect = 0.0;
    const double scale = 1.0 + p.norm() * q.norm();
    defect = std::max(defect,
                      max_abs_diff(quat_to_real(p) * quat_to_real(q),
                                   quat_to_real(p * q)) /
                          scale);
    defect = std::max(defect,
                      max_abs_diff(quat_to_complex(p) * quat_to_complex(q),
                                   quat_to_complex(p * q)) /
                          scale);
    defect = std::max(defect,
                      max_abs_diff(complex_to_real(z) * complex_to_real(w),
                                   complex_to_real(z * w)) /
                          (1.0 + std::abs(z) * std::abs(w)));
    defect = std::max(
        defect, std::abs(quat_to_real(p).trace() - 4.0 * p.a) / (1.0 + p.norm()));
    defect = std::max(defect, std::abs((p * Quaternion::unit_i() * p.conj()).a) /
                                  (1.0 + p.norm_sq()));
    return defect;
  });
  char buf[96];
  std::snprintf(buf, sizeof buf, "max identity defect %.3g over 10^5 samples",
                worst.value);
  return {worst.value <= 1e-12, buf};
}

// ---------------------------------------------------------------------------
// 8. Geometry: form invariance, the geodesic fixture, the torus conjugation.

Outcome criterion8() {
  const GroupSpec su31 = GroupSpec::make(Family::su, 3, 1);
  double worst_form = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const CMatrix g = random_element<Complex>(su31, 808000 + t);
    Rng rng(808, t);
    std::vector<Complex> z(4), w(4);
    for (auto& x : z) x = rng.next_normal_complex();
    for (auto& x : w) x = rng.next_normal_complex();
    worst_form = std::max(
        worst_form, std::abs(form_eval(g * z, g * w) - form_eval(z, w)));
  }
  const std::vector<Complex> p{0.0, 1.0};
  const std::vector<Complex> q{std::sinh(1.0), std::cosh(1.0)};
  const double rho = bergman_distance(p, q);
  double worst_rot = 0.0;
  const CMatrix k = torus_conjugator();
  const CMatrix kinv = inverse(k);
  for (int t = 0; t < 100; ++t) {
    const double theta = -3.1 + 0.0628 * t;
    const CMatrix lhs = k * rotation_pair(theta) * kinv;
    CMatrix rot(2);
    rot(0, 0) = std::cos(theta);
    rot(0, 1) = -std::sin(theta);
    rot(1, 0) = std::sin(theta);
    rot(1, 1) = std::cos(theta);
    worst_rot = std::max(worst_rot, max_abs_diff(lhs, rot));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "form defect %.3g; |rho - 2| = %.3g; rotation defect %.3g",
                worst_form, std::abs(rho - 2.0), worst_rot);
  return {worst_form <= 1e-9 && std::abs(rho - 2.0) <= 1e-9 &&
              worst_rot <= 1e-12,
          buf};
}

// ---------------------------------------------------------------------------
// 9. The two characterizations of vanishing odd power sums agree.

Outcome criterion9() {
  size_t disagreements = 0;
  for (size_t i = 0; i < 100000; ++i) {
    Rng rng(909, i);
    const int r = 1 + static_cast<int>(rng.next_u64() % 6);
    std::vector<double> a(r);
    const int mode = static_cast<int>(rng.next_u64() % 3);
    if (mode == 0) {
      for (double& x : a) x = 2.0 * rng.next_normal();
    } else {
      const double noise = mode == 1 ? 1e-13 : 1e-3;
      for (int k = 0; k + 1 < r; k += 2) {
        const double v = 2.0 * rng.next_normal();
        a[k] = v + noise * rng.next_normal();
        a[k + 1] = -v + noise * rng.next_normal();
      }
      if (r % 2) a[r - 1] = noise * rng.next_normal();
    }
    if (odd_power_sums_by_power_sums(a, 1e-9) !=
        odd_power_sums_by_pairing(a, 1e-9))
      ++disagreements;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu disagreements over 10^5 vectors",
                disagreements);
  return {disagreements == 0, buf};
}

const char* kDescriptions[10] = {
    "",
    "worked conjugation example: trace(g u g^-1) = 2z",
    "Sp(1)*SU(1,1) characterization, both directions",
    "first realness criterion witness + certificate",
    "second realness criterion witness",
    "detection round trips, 900 seeded instances",
    "direct-sum counterexample regression",
    "embedding and algebra identities",
    "geometry suite",
    "odd-power-sum characterizations agree",
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  Outcome (*checks[10])() = {nullptr,    criterion1, criterion2, criterion3,
                             criterion4, criterion5, criterion6, criterion7,
                             criterion8, criterion9};
  int failures = 0;
  for (int c = 1; c <= 9; ++c) {
    if (!wanted.empty() && !wanted.count(c)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome out = checks[c]();
    const double secs = seconds_since(t0);
    std::printf("criterion %d: %s - %s (%s; %.1fs)\n", c,
                out.pass ? "PASS" : "FAIL", kDescriptions[c],
                out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures;
}
