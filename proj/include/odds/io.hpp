#pragma once

// JSON documents exchanged with the command-line tool.
//
// Instance file:
//   {"n": 3, "p": [1, 0.5, 0.3333333333333333], "rewards": [...]}
//   {"n": 3, "p": [...], "variant": {"kind": "k-of-last-l", "k": 1, "l": 2}}
// exactly one of "rewards" or "variant" must be present.

#include <optional>
#include <string>

#include "json.hpp"
#include "odds/core.hpp"
#include "odds/duality.hpp"
#include "odds/evaluate.hpp"
#include "odds/rewards.hpp"

namespace odds::io {

using Json = nlohmann::json;

struct InstanceDocument {
  Instance instance;
  /// Present when the rewards were generated from a variant in the file.
  std::optional<rewards::VariantSpec> variant;
};

/// Throws odds::Error: Parse for schema problems, the validation kinds for
/// bad values.
InstanceDocument parse_instance(const Json& doc);
InstanceDocument read_instance_file(const std::string& path);

/// Throws Parse when the file cannot be read or is not JSON.
Json read_json_file(const std::string& path);

Json instance_to_json(const Instance& inst);
rewards::VariantSpec parse_variant(const Json& doc);
Json variant_to_json(const rewards::VariantSpec& spec);

/// Accepts {"pi": [...]} or a solution document carrying policy.pi.
Policy parse_policy(const Json& doc);

Json stop_region_to_json(const StopRegion& region);
Json policy_to_json(const StopRegion& region, const Policy& pol);
Json sim_result_to_json(const eval::SimResult& res);
Json primal_violation_to_json(const duality::PrimalViolation& v);
Json dual_violation_to_json(const duality::DualViolation& v);
Json slackness_to_json(const duality::SlacknessReport& rep);
Json error_to_json(const Error& err);

}  // namespace odds::io
