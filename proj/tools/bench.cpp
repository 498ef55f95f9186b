// Benchmark: serial reference kernels against the OpenMP versions.

#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kleinian/invariants.hpp"
#include "kleinian/traces.hpp"

using namespace kleinian;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return 0.0;
#endif
}

struct Timing {
  double serial = 0.0;
  double parallel = 0.0;
};

template <class Fn>
double timed(Fn&& fn) {
  const double t0 = now();
  fn();
  return now() - t0;
}

void report(const char* name, const Timing& t, bool identical) {
  std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %.2fx  %s\n",
              name, t.serial, t.parallel,
              t.parallel > 0.0 ? t.serial / t.parallel : 0.0,
              identical ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("compiled without OpenMP; both columns run serially\n");
#endif

  // Word-ball realness scan over a synthesized SU(2,1) fixture.
  {
    SynthesisRecipe recipe;
    recipe.ambient = Family::su;
    recipe.n = 2;
    recipe.kind = DetectionKind::real_form;
    recipe.m = 2;
    recipe.seed = 11;
    const SynthesizedC s = synthesize_su(recipe);
    Timing t;
    RealnessReport a, b;
    t.serial = timed([&] {
      a = realness_report(s.gens.gens, 7, 1e-9, Exec::serial);
    });
    t.parallel = timed([&] {
      b = realness_report(s.gens.gens, 7, 1e-9, Exec::parallel);
    });
    report("realness word ball (L=7)", t,
           a.max_im == b.max_im && a.offender.letters == b.offender.letters);
  }

  // Conjugated-trace sampling scan in Sp(2,1).
  {
    const HMatrix g = random_element<Quaternion>(
        GroupSpec::make(Family::sp, 2, 1), 5);
    Timing t;
    TraceScanResult a, b;
    t.serial = timed([&] {
      a = conjugated_trace_scan(g, GroupSpec::make(Family::su, 1, 1), 20000,
                                7, Exec::serial);
    });
    t.parallel = timed([&] {
      b = conjugated_trace_scan(g, GroupSpec::make(Family::su, 1, 1), 20000,
                                7, Exec::parallel);
    });
    report("conjugated trace scan", t,
           a.max_im == b.max_im && a.witness_seed == b.witness_seed);
  }

  // Criterion witness sweep.
  {
    const GroupSpec sp21 = GroupSpec::make(Family::sp, 2, 1);
    auto sweep = [&](Exec exec) {
      return scan_min(20000, exec, [&](size_t i) {
        return criterion_one(random_element<Quaternion>(sp21, 1000 + i))
            .norm();
      });
    };
    Timing t;
    MaxScanResult a, b;
    t.serial = timed([&] { a = sweep(Exec::serial); });
    t.parallel = timed([&] { b = sweep(Exec::parallel); });
    report("criterion witness sweep", t,
           a.value == b.value && a.index == b.index);
  }

  return 0;
}
