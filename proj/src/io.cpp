#include "odds/io.hpp"

#include <fstream>
#include <sstream>

namespace odds::io {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

std::vector<double> number_array(const Json& doc, const char* field) {
  if (!doc.contains(field)) parse_error(std::string("missing field '") + field + "'");
  const Json& arr = doc.at(field);
  if (!arr.is_array()) parse_error(std::string("field '") + field + "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const Json& v : arr) {
    if (!v.is_number()) parse_error(std::string("field '") + field + "' must hold numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

std::size_t positive_integer(const Json& doc, const char* field) {
  const Json& v = doc.at(field);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    parse_error(std::string("field '") + field + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

rewards::VariantSpec parse_variant(const Json& doc) {
  if (!doc.is_object()) parse_error("'variant' must be an object");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) {
    parse_error("variant needs a string 'kind'");
  }
  rewards::VariantSpec spec;
  try {
    spec.kind = rewards::variant_from_string(doc.at("kind").get<std::string>());
  } catch (const Error& e) {
    parse_error(e.what());
  }
  if (doc.contains("m")) spec.m = positive_integer(doc, "m");
  if (doc.contains("k")) spec.k = positive_integer(doc, "k");
  if (doc.contains("l")) spec.l = positive_integer(doc, "l");
  return spec;
}

Json variant_to_json(const rewards::VariantSpec& spec) {
  Json out{{"kind", rewards::to_string(spec.kind)}};
  switch (spec.kind) {
    case rewards::VariantKind::LastSuccess: break;
    case rewards::VariantKind::MthLast:
    case rewards::VariantKind::AnyOfLastM: out["m"] = spec.m; break;
    case rewards::VariantKind::KOfLastL:
      out["k"] = spec.k;
      out["l"] = spec.l;
      break;
  }
  return out;
}

InstanceDocument parse_instance(const Json& doc) {
  if (!doc.is_object()) parse_error("instance document must be a JSON object");
  if (!doc.contains("n")) parse_error("missing field 'n'");
  RawInstance raw;
  raw.n = positive_integer(doc, "n");
  raw.p = number_array(doc, "p");

  const bool has_rewards = doc.contains("rewards");
  const bool has_variant = doc.contains("variant");
  if (has_rewards == has_variant) {
    parse_error("instance needs exactly one of 'rewards' or 'variant'");
  }

  std::optional<rewards::VariantSpec> variant;
  if (has_rewards) {
    raw.rewards = number_array(doc, "rewards");
  } else {
    variant = parse_variant(doc.at("variant"));
    if (raw.p.size() != *raw.n) {
      std::ostringstream msg;
      msg << "dimension mismatch: n = " << *raw.n << ", |p| = " << raw.p.size();
      throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
    if (*raw.n == 0) throw Error(ErrorKind::EmptyInstance, "instance needs at least one observation");
    raw.rewards = rewards::build_rewards(raw.p, *variant);
  }
  return {validate_instance(raw), variant};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    parse_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

InstanceDocument read_instance_file(const std::string& path) {
  return parse_instance(read_json_file(path));
}

Json instance_to_json(const Instance& inst) {
  return Json{{"n", inst.n()}, {"p", inst.p()}, {"rewards", inst.rewards()}};
}

Policy parse_policy(const Json& doc) {
  const Json* holder = &doc;
  if (doc.is_object() && doc.contains("policy")) holder = &doc.at("policy");
  if (!holder->is_object() || !holder->contains("pi")) parse_error("policy document needs 'pi'");
  try {
    return Policy(number_array(*holder, "pi"));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    parse_error(std::string("malformed policy: ") + e.what());
  }
}

Json stop_region_to_json(const StopRegion& region) {
  Json arr = Json::array();
  for (bool s : region.stop) arr.push_back(s);
  return arr;
}

Json policy_to_json(const StopRegion& region, const Policy& pol) {
  return Json{{"stop", stop_region_to_json(region)}, {"pi", pol.values()}};
}

Json sim_result_to_json(const eval::SimResult& res) {
  return Json{{"estimate", res.estimate}, {"stderr", res.std_error}, {"trials", res.trials},
              {"seed", res.seed},         {"generator", res.generator},
              {"workers", res.workers}};
}

Json primal_violation_to_json(const duality::PrimalViolation& v) {
  return Json{{"conservation", v.conservation},
              {"capacity", v.capacity},
              {"source", v.source},
              {"nonnegativity", v.nonnegativity}};
}

Json dual_violation_to_json(const duality::DualViolation& v) {
  return Json{{"stop", v.stop}, {"continue", v.cont}, {"terminal", v.terminal}};
}

Json slackness_to_json(const duality::SlacknessReport& rep) {
  Json violations = Json::array();
  for (const auto& v : rep.violations) {
    violations.push_back(
        Json{{"index", v.index}, {"pair", duality::to_string(v.pair)}, {"magnitude", v.magnitude}});
  }
  return Json{{"scale", rep.scale},
              {"tolerance", rep.tolerance},
              {"max_stop", rep.max_stop},
              {"max_continue", rep.max_continue},
              {"violations", violations}};
}

Json error_to_json(const Error& err) {
  return Json{{"error", {{"kind", to_string(err.kind())}, {"message", err.what()}}}};
}

}  // namespace odds::io
