#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zd/charsum.hpp"
#include "zd/clique.hpp"
#include "zd/decomp.hpp"
#include "zd/stepanov.hpp"

namespace zd {

inline constexpr const char* kToolName = "zdkit";
inline constexpr const char* kToolVersion = "0.1.0";

// Field elements always serialize as decimal strings so no downstream tool
// can mangle them as numbers; counts and degrees stay plain integers.
// nlohmann objects keep keys sorted, which makes every dump canonical.

nlohmann::json residues_to_json(const std::vector<uint64_t>& xs);
std::vector<uint64_t> residues_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const StepanovCertificate& cert);
StepanovCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json decomposition_to_json(const DecompositionRecord& rec);
DecompositionRecord decomposition_from_json(const nlohmann::json& j);

nlohmann::json divisor_report_to_json(const DivisorCountReport& report);
DivisorCountReport divisor_report_from_json(const nlohmann::json& j);

nlohmann::json clique_record_to_json(const CliqueResult& result,
                                     const CliqueBoundReport& bounds);

nlohmann::json scan_summary_to_json(const ScanSummary& summary);
ScanSummary scan_summary_from_json(const nlohmann::json& j);

nlohmann::json charsum_to_json(uint64_t p, uint64_t order,
                               const std::vector<uint64_t>& A,
                               const std::vector<uint64_t>& B,
                               const std::optional<std::vector<uint64_t>>& C,
                               const CharSumResult& result);

// Append-only JSON-lines store: a header object first (config, tool
// version, timestamp kept in its own field), then one record per line as
// {"data": ..., "kind": ...} with optional volatile "timing" data kept out
// of the deterministic body.
class JsonlWriter {
 public:
  explicit JsonlWriter(std::ostream& out) : out_(out) {}

  void header(const nlohmann::json& config);
  void record(const std::string& kind, const nlohmann::json& data,
              const nlohmann::json& timing = nlohmann::json());

 private:
  std::ostream& out_;
};

std::vector<nlohmann::json> read_jsonl(std::istream& in);

}  // namespace zd
