#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "kleinian/groups.hpp"
#include "kleinian/invariants.hpp"
#include "kleinian/isometry.hpp"
#include "kleinian/traces.hpp"

namespace kleinian {

inline constexpr const char* kToolVersion = "0.1.0";

struct AnalysisParams {
  int words = 6;
  double tol = 1e-9;
  uint64_t seed = 1;
};

// One analysis problem: a generator set over C (SU(n,1)) or H (Sp(n,1))
// plus optional labels and parameters.  Complex entries serialize as
// [re, im], quaternion entries as [a, b, c, d].
struct InputDocument {
  int schema_version = 1;
  Family family = Family::su;  // su or sp
  int n = 1;
  std::vector<CMatrix> cgens;
  std::vector<HMatrix> hgens;
  std::vector<std::string> labels;
  AnalysisParams params;

  bool quaternionic() const { return family == Family::sp; }
  size_t generator_count() const {
    return quaternionic() ? hgens.size() : cgens.size();
  }
  GroupSpec group() const {
    return GroupSpec::make(family == Family::sp ? Family::sp : Family::su, n,
                           1);
  }
};

// Parses and validates; rejects with the path of the offending entry.
InputDocument parse_input(const std::string& text);
InputDocument load_input(const std::string& path);

std::string write_input(const InputDocument& doc);

// Deterministic JSON emitter: fixed key order, doubles printed with %.17g,
// no locale dependence.  Reports must reproduce byte-for-byte.
class JsonWriter {
 public:
  std::string str() const { return out_.str(); }

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& k);
  void value(const std::string& v);
  void value(const char* v) { value(std::string(v)); }
  void value(double v);
  void value(int v);
  void value(uint64_t v);
  void value(bool v);

  void kv(const std::string& k, const std::string& v) { key(k); value(v); }
  void kv(const std::string& k, const char* v) { key(k); value(v); }
  void kv(const std::string& k, double v) { key(k); value(v); }
  void kv(const std::string& k, int v) { key(k); value(v); }
  void kv(const std::string& k, uint64_t v) { key(k); value(v); }
  void kv(const std::string& k, bool v) { key(k); value(v); }

  void matrix(const CMatrix& m);
  void matrix(const HMatrix& m);

 private:
  void separator();
  std::ostringstream out_;
  std::vector<int> counts_{0};
  bool pending_key_ = false;
};

struct GeneratorAnalysis {
  double membership_residual = 0.0;
  std::string isometry_kind;
  double margin = 0.0;
};

struct CriterionRow {
  std::string word;
  double witness_one = 0.0;
  double witness_two = 0.0;  // max component; 0 when n < 2
};

struct ReportDocument {
  std::string version = kToolVersion;
  AnalysisParams params;
  std::string group_name;
  std::vector<GeneratorAnalysis> generators;
  std::string elementarity;
  RealnessReport realness;
  std::vector<std::string> gen_labels;
  bool detection_ran = false;
  std::string detection_skipped_reason;
  DetectionResult detection;
  // Criterion witnesses, quaternionic ambient only.
  bool criteria_ran = false;
  std::vector<CriterionRow> criterion_rows;  // generators first, then words
  double criterion_one_min = 0.0;
  double criterion_two_min = 0.0;
  bool criterion_flagged = false;  // any witness at or below tol
};

std::string write_report(const ReportDocument& report, bool structured);

}  // namespace kleinian
