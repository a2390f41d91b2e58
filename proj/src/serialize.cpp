#include "cyclo/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace cyclo {

namespace {

Json primes_json(const FactoredModulus& fm) {
  Json a = Json::array();
  for (i64 p : fm.primes()) a.push_back(p);
  return a;
}

Json optional_real(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// Quote a CSV field when it contains a separator or quote.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json to_json(const CoeffVec& c) {
  Json a = Json::array();
  for (i64 v : c.coeffs()) a.push_back(v);
  return a;
}

Json to_json(const ResidueCell& cell) {
  Json a = Json::array();
  for (i64 v : cell.residues) a.push_back(v);
  return a;
}

Json to_json(const MeasureReport& r) {
  Json j;
  j["n"] = r.n();
  j["k"] = r.k();
  j["primes"] = primes_json(r.modulus);
  j["A"] = r.A;
  j["S"] = r.S;
  j["Q"] = r.Q;
  j["J"] = r.J;
  j["L"] = optional_real(r.L);
  j["M"] = r.M;
  j["A_normalized"] = r.normalized_A();
  j["S_normalized"] = r.normalized_S();
  j["Q_normalized"] = r.normalized_Q();
  j["L_normalized"] = optional_real(r.normalized_L());
  return j;
}

Json to_json(const MaximizeResult& r, const FactoredModulus& fm) {
  Json j;
  j["n"] = fm.n();
  j["primes"] = primes_json(fm);
  j["value"] = r.value;
  j["cell"] = to_json(r.argmax.cell);
  j["N"] = r.argmax.N;
  j["t"] = r.argmax.t;
  j["x"] = r.x;
  j["strategy"] = to_string(r.strategy);
  j["cells_examined"] = r.cells_examined;
  j["refinement_depth"] = r.refinement_depth;
  j["grid_value"] = optional_real(r.grid_value);
  j["cells_value"] = optional_real(r.cells_value);
  j["disagreement"] = optional_real(r.disagreement());
  return j;
}

Json to_json(const FamilyInstance& inst) {
  Json j;
  j["family"] = to_string(inst.tag);
  j["primes"] = primes_json(inst.primes);
  j["n"] = inst.primes.n();
  j["eval_point"] = {{"numerator", inst.eval_point.num}, {"denominator", inst.eval_point.den}};
  j["predicted_value"] = inst.predicted;
  Json w = Json::array();
  for (const Witness& x : inst.witnesses) {
    w.push_back({{"relation", x.relation},
                 {"value", x.value},
                 {"modulus", x.modulus},
                 {"residue", mod_floor(x.value, x.modulus)},
                 {"expected", x.expected}});
  }
  j["witnesses"] = w;
  j["congruences_verified"] = verify_congruences(inst);
  return j;
}

Json to_json(std::span<const NamedConstant> table) {
  Json a = Json::array();
  for (const NamedConstant& c : table) {
    a.push_back({{"name", c.name},
                 {"value", optional_real(c.value)},
                 {"lower", optional_real(c.lower)},
                 {"upper", optional_real(c.upper)},
                 {"source", c.source}});
  }
  return a;
}

Json to_json(const BoundReport& row, bool with_timing) {
  Json j;
  j["suite"] = row.suite;
  j["tag"] = row.tag;
  j["instance"] = row.instance;
  j["computed"] = row.computed;
  j["reference"] = row.reference;
  j["margin"] = row.margin;
  j["pass"] = row.pass;
  if (with_timing) j["runtime_ms"] = row.runtime_ms;
  j["note"] = row.note;
  return j;
}

std::string measure_csv_header() {
  return "n,primes,A,S,Q,J,L,A_normalized,S_normalized,Q_normalized,L_normalized";
}

std::string to_csv(const MeasureReport& r) {
  std::ostringstream os;
  os << r.n() << ',' << csv_field(r.modulus.to_string()) << ',' << r.A << ',' << r.S << ',' << r.Q
     << ',' << r.J << ',' << (r.L ? format_real(*r.L) : "") << ',' << format_real(r.normalized_A())
     << ',' << format_real(r.normalized_S()) << ',' << format_real(r.normalized_Q()) << ','
     << (r.normalized_L() ? format_real(*r.normalized_L()) : "");
  return os.str();
}

std::string report_csv_header(bool with_timing) {
  return std::string("suite,tag,instance,computed,reference,margin,pass") +
         (with_timing ? ",runtime_ms" : "") + ",note";
}

std::string to_csv(const BoundReport& row, bool with_timing) {
  std::ostringstream os;
  os << csv_field(row.suite) << ',' << csv_field(row.tag) << ',' << csv_field(row.instance) << ','
     << format_real(row.computed) << ',' << format_real(row.reference) << ','
     << format_real(row.margin) << ',' << (row.pass ? "true" : "false");
  if (with_timing) os << ',' << format_real(row.runtime_ms);
  os << ',' << csv_field(row.note);
  return os.str();
}

std::string reports_to_csv(std::span<const BoundReport> rows, bool with_timing) {
  std::string out = report_csv_header(with_timing) + "\n";
  for (const BoundReport& r : rows) out += to_csv(r, with_timing) + "\n";
  return out;
}

std::string reports_to_jsonl(std::span<const BoundReport> rows, bool with_timing) {
  std::string out;
  for (const BoundReport& r : rows) out += to_json(r, with_timing).dump() + "\n";
  return out;
}

}  // namespace cyclo
