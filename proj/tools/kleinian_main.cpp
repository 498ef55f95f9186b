// Command-line front end: analyze | synthesize | criteria.
// Exit codes: 0 success, 2 input validation failure, 3 numeric failure.

#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "kleinian/io.hpp"
#include "kleinian/linalg.hpp"

namespace {

using namespace kleinian;

void write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file: " + out_path);
  out << text;
}

template <class S>
ReportDocument analyze_gens(const InputDocument& doc,
                            const std::vector<Mat<S>>& gens, bool skip_detect,
                            bool with_criteria) {
  ReportDocument rep;
  rep.params = doc.params;
  rep.gen_labels = doc.labels;
  const GroupSpec group = doc.group();
  rep.group_name = group.name();
  for (const auto& g : gens) {
    GeneratorAnalysis ga;
    const MembershipReport mem =
        group_membership(g, group, std::max(doc.params.tol, 1e-7));
    ga.membership_residual = mem.residual;
    if (!mem.member)
      throw ValidationError("generator fails " + group.name() +
                            " membership, residual " +
                            std::to_string(mem.residual));
    const auto cls = classify_isometry(g, group, 1e-7);
    ga.isometry_kind = isometry_kind_name(cls.kind);
    ga.margin = cls.margin;
    rep.generators.push_back(ga);
  }
  rep.elementarity =
      nonelementary_heuristic(gens, group, std::min(doc.params.words, 4)) ==
              Elementarity::nonelementary
          ? "nonelementary"
          : "inconclusive";
  rep.realness =
      realness_report(gens, doc.params.words, doc.params.tol, Exec::parallel);
  if (skip_detect) {
    rep.detection_skipped_reason = "--skip-detect";
  } else if (!rep.realness.real) {
    // The block classification presupposes real traces; run `analyze`
    // without the flag on corrected input, or call detect() directly for
    // diagnostics.
    rep.detection_skipped_reason = "non-real trace verdict";
  } else {
    rep.detection_ran = true;
    rep.detection =
        detect(gens, doc.params.words, doc.params.tol, doc.params.seed);
  }
  if constexpr (ScalarTraits<S>::field == ScalarField::quaternion) {
    rep.criteria_ran = true;
    // Full word ball for the criteria command, generators only otherwise.
    const int depth = with_criteria ? doc.params.words : 1;
    const WordBall ball =
        word_ball(static_cast<int>(gens.size()), depth, 20000);
    const auto inv = invert_all(gens);
    double min_one = 1e300, min_two = 1e300;
    for (const Word& w : ball.words) {
      const Mat<S> m = evaluate_word(w, gens, inv);
      CriterionRow row;
      row.word = w.to_string(doc.labels);
      // Long products drift off the group at roundoff scale; the
      // membership gate inside the criteria is relaxed to match.
      row.witness_one = criterion_one(m, 1e-5).norm();
      min_one = std::min(min_one, row.witness_one);
      if (m.rows >= 3) {
        for (const Quaternion& q : criterion_two(m, 1e-5))
          row.witness_two = std::max(row.witness_two, q.norm());
        min_two = std::min(min_two, row.witness_two);
      }
      // Per-generator rows always reported; longer words only when they
      // set a new minimum, to keep the table readable.
      if (w.length() == 1 || row.witness_one == min_one ||
          (row.witness_two > 0.0 && row.witness_two == min_two))
        rep.criterion_rows.push_back(row);
    }
    rep.criterion_one_min = min_one;
    rep.criterion_two_min = min_two >= 1e300 ? 0.0 : min_two;
    rep.criterion_flagged = min_one <= doc.params.tol ||
                            (min_two < 1e300 && min_two <= doc.params.tol);
  }
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trace-field analysis for complex and quaternionic "
               "hyperbolic matrix groups"};
  app.require_subcommand(1);

  std::string input_path, out_path, format = "text";
  int words = 0;
  double tol = 0.0;
  uint64_t seed = 0;
  bool skip_detect = false;
  int threads = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--words", words, "word-ball radius override");
    cmd->add_option("--tol", tol, "tolerance override");
    cmd->add_option("--seed", seed, "seed override");
    cmd->add_option("--format", format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--out", out_path, "write the report to a file");
    cmd->add_option("--threads", threads, "OpenMP thread-count override");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "run the full pipeline");
  analyze->add_option("input", input_path, "input document")->required();
  analyze->add_flag("--skip-detect", skip_detect,
                    "skip invariant-submanifold detection");
  add_common(analyze);

  CLI::App* synth = app.add_subcommand("synthesize",
                                       "write a block-hidden fixture");
  std::string family = "SU", kind = "real_form";
  int n = 3, m = 2, num_gens = 3;
  synth->add_option("--family", family, "SU or Sp")
      ->check(CLI::IsMember({"SU", "Sp"}));
  synth->add_option("--n", n, "ambient n")->required();
  synth->add_option("--kind", kind, "real_form or complex_line")
      ->check(CLI::IsMember({"real_form", "complex_line"}));
  synth->add_option("--m", m, "real form dimension (real_form only)");
  synth->add_option("--gens", num_gens, "generator count");
  synth->add_option("--seed", seed, "recipe seed");
  synth->add_option("--out", out_path, "output document path")->required();

  CLI::App* criteria = app.add_subcommand(
      "criteria", "trace-realness criterion witnesses over the word ball");
  criteria->add_option("input", input_path, "input document")->required();
  add_common(criteria);

  CLI11_PARSE(app, argc, argv);

  try {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    if (app.got_subcommand(analyze) || app.got_subcommand(criteria)) {
      InputDocument doc = load_input(input_path);
      if (words > 0) doc.params.words = words;
      if (tol > 0.0) doc.params.tol = tol;
      if (seed != 0) doc.params.seed = seed;
      const bool with_criteria = app.got_subcommand(criteria);
      if (with_criteria && !doc.quaternionic())
        throw ValidationError("criteria: input must be a Sp(n,1) document");
      ReportDocument rep =
          doc.quaternionic()
              ? analyze_gens(doc, doc.hgens, skip_detect || with_criteria,
                             with_criteria)
              : analyze_gens(doc, doc.cgens, skip_detect, false);
      write_out(write_report(rep, format == "structured"), out_path);
      return 0;
    }
    if (app.got_subcommand(synth)) {
      SynthesisRecipe recipe;
      recipe.ambient = family == "Sp" ? Family::sp : Family::su;
      recipe.n = n;
      recipe.kind = kind == "complex_line" ? DetectionKind::complex_line
                                           : DetectionKind::real_form;
      recipe.m = m;
      recipe.seed = seed ? seed : 1;
      recipe.num_gens = num_gens;
      InputDocument doc;
      doc.n = n;
      JsonWriter sidecar;
      sidecar.begin_object();
      sidecar.kv("kind", kind);
      sidecar.kv("seed", recipe.seed);
      if (recipe.ambient == Family::sp) {
        const SynthesizedH s = synthesize_sp(recipe);
        doc.family = Family::sp;
        doc.hgens = s.gens.gens;
        doc.labels = s.gens.labels;
        sidecar.key("hidden_conjugator");
        sidecar.matrix(s.hidden_conjugator);
      } else {
        const SynthesizedC s = synthesize_su(recipe);
        doc.family = Family::su;
        doc.cgens = s.gens.gens;
        doc.labels = s.gens.labels;
        sidecar.key("hidden_conjugator");
        sidecar.matrix(s.hidden_conjugator);
      }
      doc.params.seed = recipe.seed;
      sidecar.end_object();
      write_out(write_input(doc), out_path);
      std::ofstream side(out_path + ".sidecar", std::ios::binary);
      side << sidecar.str() << "\n";
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
