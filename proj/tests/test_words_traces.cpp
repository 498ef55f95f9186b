#include <cmath>

#include "doctest.h"
#include "kleinian/embeddings.hpp"
#include "kleinian/linalg.hpp"
#include "kleinian/rng.hpp"
#include "kleinian/traces.hpp"

using namespace kleinian;

TEST_CASE("word ball counts and evaluation homomorphism") {
  CHECK(word_ball(2, 1).words.size() == 4);
  CHECK(word_ball(2, 2).words.size() == 16);
  CHECK(word_ball(3, 2).words.size() == 6 + 30);
  CHECK_FALSE(word_ball(2, 2).truncated);
  CHECK(word_ball(2, 12, 1000).truncated);

  std::vector<CMatrix> gens{rotation_pair(0.4),
                            su11_element(std::cosh(0.7), std::sinh(0.7))};
  const auto inv = invert_all(gens);
  const Word w1{{0, 2}};
  const Word w2{{3, 0}};
  Word cat;
  cat.letters = {0, 2, 3, 0};  // reduced concatenation
  CHECK(max_abs_diff(evaluate_word(cat, gens, inv),
                     evaluate_word(w1, gens, inv) *
                         evaluate_word(w2, gens, inv)) < 1e-12);
}

TEST_CASE("realness over a real block is exact") {
  std::vector<CMatrix> gens;
  for (uint64_t s : {31ULL, 32ULL}) {
    const RMatrix r = random_loxodromic_biased<double>(
        GroupSpec::make(Family::so, 2, 1), s, 0.7);
    gens.push_back(block_embed(promote_to_complex(r), 4));
  }
  const RealnessReport rep = realness_report(gens, 4, 1e-9);
  CHECK(rep.real);
  CHECK(rep.max_im < 1e-12);
}

TEST_CASE("diag(i, j) is flagged with itself as the offender") {
  HMatrix d(2);
  d(0, 0) = Quaternion::unit_i();
  d(1, 1) = Quaternion::unit_j();
  const std::vector<HMatrix> gens{d};
  const RealnessReport rep = realness_report(gens, 3, 1e-9);
  CHECK_FALSE(rep.real);
  CHECK(rep.offender.length() == 1);
  CHECK(rep.max_im == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("serial and parallel realness scans agree bit for bit") {
  std::vector<HMatrix> gens;
  for (uint64_t s : {41ULL, 42ULL})
    gens.push_back(
        random_element<Quaternion>(GroupSpec::make(Family::sp, 1, 1), s));
  const RealnessReport a = realness_report(gens, 5, 1e-9, Exec::serial);
  const RealnessReport b = realness_report(gens, 5, 1e-9, Exec::parallel);
  CHECK(a.max_im == b.max_im);
  CHECK(a.offender.letters == b.offender.letters);
  CHECK(a.words_checked == b.words_checked);
}

TEST_CASE("imaginary trace equals the embedded diagonal polynomial") {
  CHECK(im_trace_consistency(promote_to_complex(RMatrix::identity(3))) ==
        std::pair<double, double>{0.0, 0.0});
  CHECK(im_trace_consistency(diag_last_i(2)).first == 1.0);
  CHECK(im_trace_consistency(diag_last_i(2)).second == 1.0);
  for (uint64_t seed = 1; seed <= 500; ++seed) {
    const CMatrix g =
        random_element<Complex>(GroupSpec::make(Family::su, 2, 1), seed);
    const auto [im, poly] = im_trace_consistency(g);
    CHECK(std::abs(im - poly) < 1e-14);
  }
}

TEST_CASE("lambda columns") {
  const HMatrix id = HMatrix::identity(3);
  CHECK((lambda_column(id, 1) - Quaternion::unit_i()).norm() == 0.0);
  CHECK((lambda_column(id, 2) - Quaternion::unit_i()).norm() == 0.0);
  CHECK((lambda_column(id, 3) + Quaternion::unit_i()).norm() == 0.0);
  CHECK_THROWS_AS(lambda_column(id, 4), ValidationError);

  // Purely imaginary for arbitrary matrices, and bounded away from zero on
  // group samples in the last column.
  double min_norm = 1e300;
  for (uint64_t seed = 1; seed <= 500; ++seed) {
    const HMatrix g =
        random_element<Quaternion>(GroupSpec::make(Family::sp, 2, 1), seed);
    for (int m = 1; m <= 3; ++m)
      CHECK(std::abs(lambda_column(g, m).a) < 1e-12);
    min_norm = std::min(min_norm, lambda_column(g, 3).norm());
  }
  CHECK(min_norm > 1e-6);
}

TEST_CASE("criterion one witnesses") {
  const HMatrix id = HMatrix::identity(3);
  CHECK((criterion_one(id) - Quaternion::unit_i()).norm() < 1e-15);

  // Real block elements conjugate the diagonal i straight through.
  const RMatrix r = random_loxodromic_biased<double>(
      GroupSpec::make(Family::so, 2, 1), 5, 0.8);
  HMatrix g(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = Quaternion{r(i, j)};
  CHECK((criterion_one(g) - Quaternion::unit_i()).norm() < 1e-11);

  for (uint64_t seed = 1; seed <= 200; ++seed) {
    const HMatrix s =
        random_element<Quaternion>(GroupSpec::make(Family::sp, 2, 1), seed);
    const Quaternion w = criterion_one(s);
    CHECK(w.norm() > 1e-6);
    // The witness is exactly -lambda_{n+1}.
    CHECK((w + lambda_column(s, 3)).norm() < 1e-10);
    // Invariant in norm under left unit-quaternion scaling.
    Rng rng(seed);
    const Quaternion h = rng.next_unit_quaternion();
    CHECK(criterion_one(scale_left(h, s)).norm() ==
          doctest::Approx(w.norm()).epsilon(1e-8));
  }
}

TEST_CASE("criterion two witnesses") {
  const HMatrix id = HMatrix::identity(3);
  const auto w = criterion_two(id);
  CHECK(w[0].norm() < 1e-14);                       // lambda_1 + lambda_3
  CHECK(w[1].norm() < 1e-14);                       // lambda_2 + lambda_3
  CHECK((w[2] - 2.0 * Quaternion::unit_i()).norm() < 1e-14);

  for (uint64_t seed = 1; seed <= 200; ++seed) {
    const HMatrix g =
        random_element<Quaternion>(GroupSpec::make(Family::sp, 2, 1), seed);
    const auto ws = criterion_two(g);
    const int n = 2;
    CHECK((ws[0] - (lambda_column(g, n - 1) + lambda_column(g, n + 1))).norm() <
          1e-10);
    CHECK((ws[1] - (lambda_column(g, n) + lambda_column(g, n + 1))).norm() <
          1e-10);
    CHECK((ws[2] - (lambda_column(g, n - 1) + lambda_column(g, n))).norm() <
          1e-10);
    double max_comp = 0.0;
    for (const auto& q : ws) max_comp = std::max(max_comp, q.norm());
    CHECK(max_comp > 1e-6);
    Rng rng(seed);
    const Quaternion h = rng.next_unit_quaternion();
    const auto hw = criterion_two(scale_left(h, g));
    for (int i = 0; i < 3; ++i)
      CHECK(hw[i].norm() == doctest::Approx(ws[i].norm()).epsilon(1e-8));
  }
  CHECK_THROWS_AS(criterion_two(HMatrix::identity(2)), ValidationError);
}

TEST_CASE("equation-system residuals and certificate") {
  {
    std::vector<Quaternion> x{Quaternion{}, Quaternion{}, Quaternion{1.0}};
    const EqnsysResidual r = eqnsys_residual(x);
    CHECK(r.first == doctest::Approx(1.0));
    CHECK(r.second == doctest::Approx(0.0));
    CHECK(r.certificate == 0.0);
  }
  {
    std::vector<Quaternion> x{Quaternion{1.0}, Quaternion{},
                              Quaternion{std::sqrt(2.0)}};
    const EqnsysResidual r = eqnsys_residual(x);
    CHECK(r.second == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.first == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(
      eqnsys_residual({Quaternion{1.0}, Quaternion{}}), ValidationError);

  // On the constraint surface the first equation never closes.
  Rng rng(55);
  double min_first = 1e300, min_cert = 1e300;
  for (int t = 0; t < 20000; ++t) {
    std::vector<Quaternion> x(3);
    double pos = 1.0;
    for (int m = 0; m < 2; ++m) {
      x[m] = rng.next_normal_quaternion();
      pos += x[m].norm_sq();
    }
    x[2] = rng.next_unit_quaternion() * std::sqrt(pos);
    const EqnsysResidual r = eqnsys_residual(x);
    CHECK(std::abs(r.second) < 1e-9 * pos);
    min_first = std::min(min_first, r.first);
    min_cert = std::min(min_cert, r.certificate);
  }
  CHECK(min_first > 0.1);
  CHECK(min_cert >= 0.0);
}

TEST_CASE("gram variant of the orthogonality system") {
  // The smallest Gram eigenvalue never reaches the 1/4 the system demands;
  // four vectors in a 3-dimensional quadratic space are always dependent.
  Rng rng(57);
  double max_cert = -1e300, min_res = 1e300;
  for (int t = 0; t < 5000; ++t) {
    const Quaternion x = rng.next_normal_quaternion();
    const Quaternion y = rng.next_normal_quaternion();
    const Quaternion z = rng.next_normal_quaternion();
    const GramResidual r = orthogonality_gram_residual(x, y, z);
    max_cert = std::max(max_cert, r.certificate);
    min_res = std::min(min_res, r.residual);
  }
  CHECK(max_cert <= 1e-10);
  CHECK(min_res > 1e-3);
}

TEST_CASE("odd power sums") {
  CHECK(odd_power_sums_check({1.0, -1.0, 2.0, -2.0, 0.0}, 1e-9));
  CHECK_FALSE(odd_power_sums_check({1.0, 2.0, -3.0}, 1e-9));
  CHECK(odd_power_sums_check({0.0, 0.0}, 1e-9));
  CHECK(odd_power_sums_check({}, 1e-9));

  Rng rng(56);
  for (int t = 0; t < 10000; ++t) {
    const int r = 1 + static_cast<int>(rng.next_u64() % 6);
    std::vector<double> a(r);
    const int mode = static_cast<int>(rng.next_u64() % 3);
    if (mode == 0) {
      for (double& x : a) x = 2.0 * rng.next_normal();
    } else {
      // Paired solutions, possibly perturbed off the solution set.
      const double noise = mode == 1 ? 0.0 : 1e-3;
      for (int i = 0; i + 1 < r; i += 2) {
        const double v = 2.0 * rng.next_normal();
        a[i] = v + noise * rng.next_normal();
        a[i + 1] = -v + noise * rng.next_normal();
      }
      if (r % 2) a[r - 1] = noise * rng.next_normal();
    }
    CHECK(odd_power_sums_by_power_sums(a, 1e-9) ==
          odd_power_sums_by_pairing(a, 1e-9));
  }
}

TEST_CASE("membership in Sp(1) times SU(1,1)") {
  const CMatrix u = su11_element(Complex{1.2, 0.4},
                                 Complex{0.5, std::sqrt(0.6 - 0.25)});
  const HMatrix uq = promote_to_quaternion(u);
  {
    const Sp1Su11Result r = sp1_su11_membership(uq);
    CHECK(r.member);
    CHECK(std::abs(r.normalizer.norm() - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(r.normalizer.a) - 1.0) < 1e-9);
  }
  {
    const Sp1Su11Result r =
        sp1_su11_membership(scale_left(Quaternion::unit_j(), uq));
    CHECK(r.member);
  }
  {
    // diag((1+i)/sqrt2, (j+k)/sqrt2): normalizing the first entry leaves a
    // j in the corner, so the membership fails with defect 1.
    const double s = 1.0 / std::sqrt(2.0);
    HMatrix g(2);
    g(0, 0) = Quaternion{s, s, 0.0, 0.0};
    g(1, 1) = Quaternion{0.0, 0.0, s, s};
    const Sp1Su11Result r = sp1_su11_membership(g);
    CHECK_FALSE(r.member);
    CHECK(r.defect == doctest::Approx(1.0).epsilon(1e-12));
    const HMatrix hg = scale_left(r.normalizer, g);
    CHECK((hg(0, 0) - Quaternion{1.0}).norm() < 1e-12);
    CHECK((hg(1, 1) - Quaternion::unit_j()).norm() < 1e-12);
  }
}

TEST_CASE("conjugated trace scans") {
  const GroupSpec su11 = GroupSpec::make(Family::su, 1, 1);
  const HMatrix id = HMatrix::identity(2);
  CHECK(conjugated_trace_scan(id, su11, 200, 1).max_im < 1e-14);

  const double s = 1.0 / std::sqrt(2.0);
  HMatrix g(2);
  g(0, 0) = Quaternion{s, s, 0.0, 0.0};
  g(1, 1) = Quaternion{0.0, 0.0, s, s};
  CHECK(conjugated_trace_scan(g, su11, 200, 1).max_im > 0.5);

  // Membership and the scan agree in both directions.
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    const HMatrix u = promote_to_quaternion(
        random_element<Complex>(su11, 100 + seed));
    const HMatrix member = scale_left(rng.next_unit_quaternion(), u);
    CHECK(sp1_su11_membership(member).member);
    CHECK(conjugated_trace_scan(member, su11, 300, seed).max_im < 1e-9);

    const HMatrix drift = random_element<Quaternion>(
        GroupSpec::make(Family::sp, 1, 1), 200 + seed, 0.15);
    const HMatrix outside = drift * member;
    if (!sp1_su11_membership(outside).member)
      CHECK(conjugated_trace_scan(outside, su11, 1000, seed).max_im > 1e-8);
  }

  // Bigger symplectic block inside Sp(3,1): witnesses appear.
  const HMatrix big =
      random_element<Quaternion>(GroupSpec::make(Family::sp, 3, 1), 9);
  CHECK(conjugated_trace_scan(big, GroupSpec::make(Family::sp, 2, 1), 200, 3)
            .max_im > 1e-3);
}

TEST_CASE("scan kernels over shifted value ranges") {
  // Values bounded away from zero in both directions; the reductions must
  // track the data, not their initial accumulators.
  auto f = [](size_t i) { return 5.0 + static_cast<double>((i * 7) % 11); };
  for (const Exec exec : {Exec::serial, Exec::parallel}) {
    const MaxScanResult mx = scan_max(200, exec, f);
    CHECK(mx.value == 15.0);
    CHECK(mx.index == 3);  // first i with (7i mod 11) == 10
    const MaxScanResult mn = scan_min(200, exec, f);
    CHECK(mn.value == 5.0);
    CHECK(mn.index == 0);
    CHECK(scan_all(200, exec, [&](size_t i) { return f(i) > 4.0; }));
    CHECK_FALSE(scan_all(200, exec, [&](size_t i) { return f(i) < 14.0; }));
  }
}

TEST_CASE("serial and parallel trace scans agree") {
  const HMatrix g =
      random_element<Quaternion>(GroupSpec::make(Family::sp, 2, 1), 77);
  const GroupSpec su11 = GroupSpec::make(Family::su, 1, 1);
  const TraceScanResult a =
      conjugated_trace_scan(g, su11, 500, 5, Exec::serial);
  const TraceScanResult b =
      conjugated_trace_scan(g, su11, 500, 5, Exec::parallel);
  CHECK(a.max_im == b.max_im);
  CHECK(a.witness_seed == b.witness_seed);
}
