#include "zd/serialize.hpp"

#include <chrono>
#include <ctime>
#include <istream>
#include <ostream>

namespace zd {

using nlohmann::json;

json residues_to_json(const std::vector<uint64_t>& xs) {
  json arr = json::array();
  for (uint64_t x : xs) arr.push_back(std::to_string(x));
  return arr;
}

std::vector<uint64_t> residues_from_json(const json& j) {
  std::vector<uint64_t> out;
  out.reserve(j.size());
  for (const auto& v : j)
    out.push_back(std::stoull(v.get<std::string>()));
  return out;
}

json certificate_to_json(const StepanovCertificate& cert) {
  json j;
  j["p"] = cert.instance.field.p();
  j["d"] = cert.instance.d;
  j["A"] = residues_to_json(cert.instance.A);
  j["B"] = residues_to_json(cert.instance.B);
  j["degenerate"] = cert.degenerate;
  j["r"] = cert.r;
  j["bound_ok"] = cert.bound_ok;
  if (!cert.degenerate) {
    j["weights"] = residues_to_json(cert.weights);
    j["constant"] = std::to_string(cert.constant);
    j["aux_coeffs"] = residues_to_json(cert.aux->coeffs());
    j["exponent"] = cert.exponent;
    json mult = json::object();
    for (const auto& [b, order] : cert.multiplicities)
      mult[std::to_string(b)] = order;
    j["multiplicities"] = mult;
  }
  return j;
}

StepanovCertificate certificate_from_json(const json& j) {
  PrimeField field(j.at("p").get<uint64_t>());
  StepanovCertificate cert{
      StepanovInstance{field, j.at("d").get<uint64_t>(),
                       residues_from_json(j.at("A")),
                       residues_from_json(j.at("B"))},
      j.at("degenerate").get<bool>(),
      {},
      0,
      std::nullopt,
      0,
      j.at("r").get<uint64_t>(),
      {},
      j.at("bound_ok").get<bool>()};
  if (!cert.degenerate) {
    cert.weights = residues_from_json(j.at("weights"));
    cert.constant = std::stoull(j.at("constant").get<std::string>());
    cert.aux = DensePolynomial::from_coeffs(
        field, residues_from_json(j.at("aux_coeffs")));
    cert.exponent = j.at("exponent").get<uint64_t>();
    for (const auto& [key, value] : j.at("multiplicities").items())
      cert.multiplicities[std::stoull(key)] = value.get<uint64_t>();
  }
  return cert;
}

json decomposition_to_json(const DecompositionRecord& rec) {
  json j;
  j["kind"] = rec.kind == DecompKind::Sum ? "sum" : "difference";
  j["p"] = rec.field.p();
  j["d"] = rec.d;
  j["include_zero"] = rec.include_zero;
  j["A"] = residues_to_json(rec.A);
  j["B"] = residues_to_json(rec.B);
  j["unique_sums"] = rec.unique_sums;
  j["product_check"] = rec.product_check;
  j["zero_multiplicity"] = rec.zero_multiplicity;
  j["special_form"] = rec.special_form;
  j["special_n"] = rec.special_n;
  j["orbit_id"] = rec.orbit_id;
  j["orbit_size"] = rec.orbit_size;
  return j;
}

DecompositionRecord decomposition_from_json(const json& j) {
  return DecompositionRecord{
      j.at("kind").get<std::string>() == "sum" ? DecompKind::Sum
                                               : DecompKind::Difference,
      PrimeField(j.at("p").get<uint64_t>()),
      j.at("d").get<uint64_t>(),
      j.at("include_zero").get<bool>(),
      residues_from_json(j.at("A")),
      residues_from_json(j.at("B")),
      j.at("unique_sums").get<bool>(),
      j.at("product_check").get<bool>(),
      j.at("zero_multiplicity").get<uint64_t>(),
      j.at("special_form").get<bool>(),
      j.at("special_n").get<uint64_t>(),
      j.at("orbit_id").get<uint64_t>(),
      j.at("orbit_size").get<uint64_t>()};
}

json divisor_report_to_json(const DivisorCountReport& report) {
  json j;
  j["x"] = report.x;
  j["y"] = report.y;
  j["z"] = report.z;
  j["P"] = report.P;
  j["H"] = report.H;
  j["pi_x"] = report.pi_x;
  return j;
}

DivisorCountReport divisor_report_from_json(const json& j) {
  return DivisorCountReport{j.at("x").get<uint64_t>(), j.at("y").get<double>(),
                            j.at("z").get<double>(), j.at("P").get<uint64_t>(),
                            j.at("H").get<uint64_t>(),
                            j.at("pi_x").get<uint64_t>()};
}

json clique_record_to_json(const CliqueResult& result,
                           const CliqueBoundReport& bounds) {
  json j;
  j["p"] = bounds.p;
  j["d"] = bounds.d;
  j["omega"] = result.omega;
  j["witness"] = residues_to_json(result.witness);
  j["exact"] = result.exact;
  j["explored_nodes"] = result.explored_nodes;
  j["subgroup_bound_ok"] = bounds.subgroup_bound_ok;
  j["paley"] = bounds.paley;
  j["refined_bound_ok"] = bounds.refined_bound_ok;
  j["refined_bound"] = bounds.refined_bound;
  j["legacy_bound"] = bounds.legacy_bound;
  j["legacy_slack"] = bounds.legacy_slack;
  return j;
}

json scan_summary_to_json(const ScanSummary& summary) {
  json j;
  j["p"] = summary.p;
  j["order"] = summary.order;
  j["epsilon"] = summary.epsilon;
  j["set_size"] = summary.set_size;
  j["trials"] = summary.trials;
  j["seed"] = summary.seed;
  j["min_ratio"] = summary.min_ratio;
  j["max_ratio"] = summary.max_ratio;
  j["mean_ratio"] = summary.mean_ratio;
  j["histogram"] = summary.histogram;
  j["nontrivial_count"] = summary.nontrivial_count;
  return j;
}

ScanSummary scan_summary_from_json(const json& j) {
  ScanSummary s;
  s.p = j.at("p").get<uint64_t>();
  s.order = j.at("order").get<uint64_t>();
  s.epsilon = j.at("epsilon").get<double>();
  s.set_size = j.at("set_size").get<uint64_t>();
  s.trials = j.at("trials").get<uint64_t>();
  s.seed = j.at("seed").get<uint64_t>();
  s.min_ratio = j.at("min_ratio").get<double>();
  s.max_ratio = j.at("max_ratio").get<double>();
  s.mean_ratio = j.at("mean_ratio").get<double>();
  auto hist = j.at("histogram").get<std::vector<uint64_t>>();
  std::copy_n(hist.begin(), std::min(hist.size(), s.histogram.size()),
              s.histogram.begin());
  s.nontrivial_count = j.at("nontrivial_count").get<uint64_t>();
  return s;
}

json charsum_to_json(uint64_t p, uint64_t order,
                     const std::vector<uint64_t>& A,
                     const std::vector<uint64_t>& B,
                     const std::optional<std::vector<uint64_t>>& C,
                     const CharSumResult& result) {
  json j;
  j["p"] = p;
  j["order"] = order;
  j["A"] = residues_to_json(A);
  j["B"] = residues_to_json(B);
  if (C) j["C"] = residues_to_json(*C);
  j["value_re"] = result.value.real();
  j["value_im"] = result.value.imag();
  j["trivial_bound"] = result.trivial_bound;
  j["vinogradov_bound"] = result.vinogradov_bound;
  j["nontrivial"] = result.nontrivial;
  j["exact"] = result.exact;
  return j;
}

void JsonlWriter::header(const json& config) {
  auto now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%FT%TZ", std::gmtime(&now));
  json j;
  j["kind"] = "header";
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config;
  j["timestamp"] = stamp;
  out_ << j.dump() << "\n";
}

void JsonlWriter::record(const std::string& kind, const json& data,
                         const json& timing) {
  json j;
  j["kind"] = kind;
  j["data"] = data;
  if (!timing.is_null()) j["timing"] = timing;
  out_ << j.dump() << "\n";
}

std::vector<json> read_jsonl(std::istream& in) {
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(json::parse(line));
  }
  return out;
}

}  // namespace zd
