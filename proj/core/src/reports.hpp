#pragma once

#include <filesystem>

#include <json.hpp>

#include "fhartree/config.hpp"
#include "fhartree/diagnostics.hpp"
#include "fhartree/evolution.hpp"
#include "fhartree/ground_state.hpp"
#include "fhartree/verify.hpp"

namespace fhartree::reports {

using json = nlohmann::ordered_json;

json config_json(const RunConfig& cfg);
json ground_state_json(const GroundState& gs);
json run_json(const RunRecord& rec);
json audit_json(const InvarianceAudit& audit);
json proxies_json(const ScatteringProxies& proxies);
json verify_json(const VerifyReport& report);

/// Wraps body with the resolved config and the transform convention tag.
json artifact(const std::string& kind, const RunConfig& cfg, json body);

void write_json(const std::filesystem::path& path, const json& doc);

}  // namespace fhartree::reports
