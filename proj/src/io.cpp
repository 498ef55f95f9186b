#include "kleinian/io.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace kleinian {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Complex complex_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
  return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
}

Quaternion quaternion_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4) fail(path, "expected [a, b, c, d]");
  return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]"),
          number_at(j[2], path + "[2]"), number_at(j[3], path + "[3]")};
}

template <class S, class EntryFn>
Mat<S> matrix_at(const json& j, int dim, const std::string& path,
                 EntryFn&& entry) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(path, "expected " + std::to_string(dim) + " rows");
  Mat<S> m(dim);
  for (int r = 0; r < dim; ++r) {
    const std::string rpath = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != dim)
      fail(rpath, "expected " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c)
      m(r, c) = entry(j[r][c], rpath + "[" + std::to_string(c) + "]");
  }
  return m;
}

}  // namespace

InputDocument parse_input(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("input: ") + e.what());
  }
  InputDocument doc;
  if (!j.is_object()) fail("input", "expected an object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    fail("schema_version", "missing or not an integer");
  doc.schema_version = j["schema_version"].get<int>();
  if (doc.schema_version != 1) fail("schema_version", "unsupported version");

  if (!j.contains("group") || !j["group"].is_object())
    fail("group", "missing object");
  const json& grp = j["group"];
  if (!grp.contains("family") || !grp["family"].is_string())
    fail("group.family", "missing string");
  const std::string fam = grp["family"].get<std::string>();
  if (fam == "SU")
    doc.family = Family::su;
  else if (fam == "Sp")
    doc.family = Family::sp;
  else
    fail("group.family", "expected \"SU\" or \"Sp\"");
  if (!grp.contains("n") || !grp["n"].is_number_integer())
    fail("group.n", "missing integer");
  doc.n = grp["n"].get<int>();
  if (doc.n < 1 || doc.n > 16) fail("group.n", "out of range");

  if (!j.contains("generators") || !j["generators"].is_array() ||
      j["generators"].empty())
    fail("generators", "expected a nonempty array");
  const int dim = doc.n + 1;
  for (size_t g = 0; g < j["generators"].size(); ++g) {
    const std::string path = "generators[" + std::to_string(g) + "]";
    if (doc.family == Family::sp)
      doc.hgens.push_back(
          matrix_at<Quaternion>(j["generators"][g], dim, path, quaternion_at));
    else
      doc.cgens.push_back(
          matrix_at<Complex>(j["generators"][g], dim, path, complex_at));
  }

  if (j.contains("labels")) {
    if (!j["labels"].is_array()) fail("labels", "expected an array");
    for (size_t i = 0; i < j["labels"].size(); ++i) {
      if (!j["labels"][i].is_string())
        fail("labels[" + std::to_string(i) + "]", "expected a string");
      doc.labels.push_back(j["labels"][i].get<std::string>());
    }
    if (doc.labels.size() != doc.generator_count())
      fail("labels", "count differs from generators");
  } else {
    for (size_t i = 0; i < doc.generator_count(); ++i)
      doc.labels.push_back(std::string(1, static_cast<char>('a' + i % 26)));
  }

  if (j.contains("params")) {
    const json& p = j["params"];
    if (!p.is_object()) fail("params", "expected an object");
    if (p.contains("words")) {
      if (!p["words"].is_number_integer() || p["words"].get<int>() < 1)
        fail("params.words", "expected a positive integer");
      doc.params.words = p["words"].get<int>();
    }
    if (p.contains("tol")) {
      if (!p["tol"].is_number() || p["tol"].get<double>() <= 0.0)
        fail("params.tol", "expected a positive number");
      doc.params.tol = p["tol"].get<double>();
    }
    if (p.contains("seed")) {
      if (!p["seed"].is_number_integer()) fail("params.seed", "expected an integer");
      doc.params.seed = p["seed"].get<uint64_t>();
    }
  }
  return doc;
}

InputDocument load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_input(ss.str());
}

// ---------------------------------------------------------------------------
// Writer.

void JsonWriter::separator() {
  if (counts_.back() > 0 && !pending_key_) out_ << ",";
  if (!pending_key_) ++counts_.back();
  pending_key_ = false;
}

void JsonWriter::begin_object() {
  separator();
  out_ << "{";
  counts_.push_back(0);
}

void JsonWriter::end_object() {
  counts_.pop_back();
  out_ << "}";
}

void JsonWriter::begin_array() {
  separator();
  out_ << "[";
  counts_.push_back(0);
}

void JsonWriter::end_array() {
  counts_.pop_back();
  out_ << "]";
}

void JsonWriter::key(const std::string& k) {
  separator();
  out_ << "\"" << k << "\":";
  pending_key_ = true;
}

void JsonWriter::value(const std::string& v) {
  separator();
  out_ << "\"";
  for (char c : v) {
    switch (c) {
      case '"': out_ << "\\\""; break;
      case '\\': out_ << "\\\\"; break;
      case '\n': out_ << "\\n"; break;
      case '\t': out_ << "\\t"; break;
      default: out_ << c;
    }
  }
  out_ << "\"";
}

void JsonWriter::value(double v) {
  separator();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out_ << buf;
}

void JsonWriter::value(int v) {
  separator();
  out_ << v;
}

void JsonWriter::value(uint64_t v) {
  separator();
  out_ << v;
}

void JsonWriter::value(bool v) {
  separator();
  out_ << (v ? "true" : "false");
}

void JsonWriter::matrix(const CMatrix& m) {
  begin_array();
  for (int r = 0; r < m.rows; ++r) {
    begin_array();
    for (int c = 0; c < m.cols; ++c) {
      begin_array();
      value(m(r, c).real());
      value(m(r, c).imag());
      end_array();
    }
    end_array();
  }
  end_array();
}

void JsonWriter::matrix(const HMatrix& m) {
  begin_array();
  for (int r = 0; r < m.rows; ++r) {
    begin_array();
    for (int c = 0; c < m.cols; ++c) {
      begin_array();
      value(m(r, c).a);
      value(m(r, c).b);
      value(m(r, c).c);
      value(m(r, c).d);
      end_array();
    }
    end_array();
  }
  end_array();
}

std::string write_input(const InputDocument& doc) {
  JsonWriter w;
  w.begin_object();
  w.kv("schema_version", doc.schema_version);
  w.key("group");
  w.begin_object();
  w.kv("family", doc.family == Family::sp ? "Sp" : "SU");
  w.kv("n", doc.n);
  w.end_object();
  w.key("generators");
  w.begin_array();
  if (doc.quaternionic())
    for (const auto& g : doc.hgens) w.matrix(g);
  else
    for (const auto& g : doc.cgens) w.matrix(g);
  w.end_array();
  w.key("labels");
  w.begin_array();
  for (const auto& l : doc.labels) w.value(l);
  w.end_array();
  w.key("params");
  w.begin_object();
  w.kv("words", doc.params.words);
  w.kv("tol", doc.params.tol);
  w.kv("seed", doc.params.seed);
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

namespace {

void write_detection(JsonWriter& w, const DetectionResult& det) {
  w.begin_object();
  w.kv("kind", detection_kind_name(det.kind));
  if (det.kind == DetectionKind::real_form) w.kv("m", det.m);
  w.kv("schur_type", schur_type_name(det.schur_type));
  w.kv("residual", det.residual);
  w.kv("conjugator_membership_residual", det.conjugator_membership_residual);
  w.kv("realness_warning", det.realness_warning);
  w.key("subspace_dims");
  w.begin_array();
  for (int d : det.subspace_dims) w.value(d);
  w.end_array();
  if (!det.note.empty()) w.kv("note", det.note);
  if (std::holds_alternative<CMatrix>(det.conjugator)) {
    w.key("conjugator");
    w.matrix(std::get<CMatrix>(det.conjugator));
  } else if (std::holds_alternative<HMatrix>(det.conjugator)) {
    w.key("conjugator");
    w.matrix(std::get<HMatrix>(det.conjugator));
  }
  w.end_object();
}

std::string text_report(const ReportDocument& r) {
  std::ostringstream out;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  out << "tool version      " << r.version << "\n";
  out << "group             " << r.group_name << "\n";
  out << "params            words=" << r.params.words
      << " tol=" << num(r.params.tol) << " seed=" << r.params.seed << "\n";
  for (size_t i = 0; i < r.generators.size(); ++i) {
    const auto& g = r.generators[i];
    out << "generator " << r.gen_labels[i] << "       membership_residual="
        << num(g.membership_residual) << " class=" << g.isometry_kind
        << " margin=" << num(g.margin) << "\n";
  }
  out << "elementarity      " << r.elementarity << "\n";
  out << "realness          verdict="
      << (r.realness.real ? "real" : "non-real")
      << " max_im=" << num(r.realness.max_im)
      << " offender=" << r.realness.offender.to_string(r.gen_labels)
      << " words_checked=" << r.realness.words_checked
      << (r.realness.truncated ? " (truncated)" : "") << "\n";
  if (!r.detection_skipped_reason.empty())
    out << "detection         skipped (" << r.detection_skipped_reason
        << ")\n";
  if (r.detection_ran) {
    out << "detection         kind="
        << detection_kind_name(r.detection.kind);
    if (r.detection.kind == DetectionKind::real_form)
      out << "(m=" << r.detection.m << ")";
    out << " residual=" << num(r.detection.residual)
        << " conjugator_residual="
        << num(r.detection.conjugator_membership_residual) << "\n";
    if (!r.detection.subspace_dims.empty()) {
      out << "subspace dims     ";
      for (size_t i = 0; i < r.detection.subspace_dims.size(); ++i)
        out << (i ? "+" : "") << r.detection.subspace_dims[i];
      out << "\n";
    }
    if (!r.detection.note.empty())
      out << "note              " << r.detection.note << "\n";
  }
  if (r.criteria_ran) {
    for (const auto& row : r.criterion_rows) {
      out << "witness           word=" << row.word
          << " criterion_I=" << num(row.witness_one);
      if (row.witness_two > 0.0)
        out << " criterion_II=" << num(row.witness_two);
      out << "\n";
    }
    out << "criterion I       min_witness=" << num(r.criterion_one_min)
        << "\n";
    out << "criterion II      min_witness=" << num(r.criterion_two_min)
        << "\n";
    if (r.criterion_flagged)
      out << "WARNING           a criterion witness fell below tolerance; "
             "this contradicts the realness criteria\n";
  }
  return out.str();
}

}  // namespace

std::string write_report(const ReportDocument& r, bool structured) {
  if (!structured) return text_report(r);
  JsonWriter w;
  w.begin_object();
  w.kv("version", r.version);
  w.key("params");
  w.begin_object();
  w.kv("words", r.params.words);
  w.kv("tol", r.params.tol);
  w.kv("seed", r.params.seed);
  w.end_object();
  w.kv("group", r.group_name);
  w.key("generators");
  w.begin_array();
  for (size_t i = 0; i < r.generators.size(); ++i) {
    const auto& g = r.generators[i];
    w.begin_object();
    w.kv("label", r.gen_labels[i]);
    w.kv("membership_residual", g.membership_residual);
    w.kv("isometry", g.isometry_kind);
    w.kv("margin", g.margin);
    w.end_object();
  }
  w.end_array();
  w.kv("elementarity", r.elementarity);
  w.key("realness");
  w.begin_object();
  w.kv("verdict", r.realness.real ? "real" : "non-real");
  w.kv("max_im", r.realness.max_im);
  w.kv("offender", r.realness.offender.to_string(r.gen_labels));
  w.kv("words_checked", static_cast<uint64_t>(r.realness.words_checked));
  w.kv("truncated", r.realness.truncated);
  w.kv("tol_effective", r.realness.tol_effective);
  w.end_object();
  if (!r.detection_skipped_reason.empty()) {
    w.key("detection");
    w.begin_object();
    w.kv("skipped", true);
    w.kv("reason", r.detection_skipped_reason);
    w.end_object();
  } else if (r.detection_ran) {
    w.key("detection");
    write_detection(w, r.detection);
  }
  if (r.criteria_ran) {
    w.key("criteria");
    w.begin_object();
    w.key("witnesses");
    w.begin_array();
    for (const auto& row : r.criterion_rows) {
      w.begin_object();
      w.kv("word", row.word);
      w.kv("criterion_one", row.witness_one);
      if (row.witness_two > 0.0) w.kv("criterion_two", row.witness_two);
      w.end_object();
    }
    w.end_array();
    w.kv("criterion_one_min", r.criterion_one_min);
    w.kv("criterion_two_min", r.criterion_two_min);
    w.kv("flagged", r.criterion_flagged);
    w.end_object();
  }
  w.end_object();
  return w.str() + "\n";
}

}  // namespace kleinian
