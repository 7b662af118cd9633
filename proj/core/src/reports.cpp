#include "reports.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "fhartree/errors.hpp"
#include "fhartree/snapshot.hpp"

namespace fhartree::reports {

namespace {

// NaN and infinities are not representable in JSON.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json config_json(const RunConfig& cfg) {
  json out = json::object();
  for (const auto& [key, value] : config_entries(cfg)) {
    const auto dot = key.find('.');
    auto& slot = out[key.substr(0, dot)][key.substr(dot + 1)];
    if (value == "true" || value == "false") {
      slot = value == "true";
      continue;
    }
    const auto* end = value.data() + value.size();
    long long integer_value = 0;
    auto [iptr, iec] = std::from_chars(value.data(), end, integer_value);
    if (!value.empty() && iec == std::errc() && iptr == end) {
      slot = integer_value;
      continue;
    }
    double number_value = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), end, number_value);
    if (!value.empty() && ec == std::errc() && ptr == end && key != "sweep.amplitudes") {
      slot = number_value;
    } else {
      slot = value;
    }
  }
  return out;
}

json ground_state_json(const GroundState& gs) {
  const auto& t = gs.threshold_report;
  return json{
      {"converged", gs.converged},
      {"iterations", gs.iterations},
      {"last_relative_change", number(gs.last_change)},
      {"last_renormalization_factor", number(gs.last_factor)},
      {"l2_norm", number(gs.l2)},
      {"mass", number(gs.l2 * gs.l2)},
      {"hs_norm", number(gs.hs)},
      {"hartree_energy", number(gs.hartree)},
      {"energy", number(gs.energy)},
      {"euler_lagrange_residual", number(gs.euler_lagrange)},
      {"pohozaev", {{"r1", number(gs.pohozaev.r1)}, {"r2", number(gs.pohozaev.r2)}}},
      {"cgn", {{"norm_form", number(gs.cgn_a)},
               {"mass_form", number(gs.cgn_b)},
               {"relative_discrepancy", number(std::abs(gs.cgn_a - gs.cgn_b) / gs.cgn_a)}}},
      {"thresholds", {{"me_direct", number(t.me_direct)},
                      {"me_closed_form", number(t.me_closed)},
                      {"me_discrepancy", number(t.me_discrepancy)},
                      {"grad_direct", number(t.grad_direct)},
                      {"grad_closed_form", number(t.grad_closed)},
                      {"grad_discrepancy", number(t.grad_discrepancy)},
                      {"grad_over_me", number(t.ratio)},
                      {"grad_over_me_expected", number(t.ratio_expected)}}},
      {"edge_to_peak_ratio", number(gs.tail_ratio)},
  };
}

json run_json(const RunRecord& rec) {
  json out{
      {"verdict", to_string(rec.verdict)},
      {"t_star", rec.verdict == Verdict::BlowUp ? number(rec.t_star) : json(nullptr)},
      {"caveat", rec.caveat},
      {"completed", rec.completed},
      {"tail_refused", rec.tail_refused},
      {"steps", rec.steps},
      {"samples", rec.times.size()},
      {"t_final", rec.times.empty() ? json(nullptr) : number(rec.times.back())},
      {"mass_drift", number(rec.mass_drift())},
      {"energy_drift", number(rec.energy_drift())},
      {"strichartz_accum", number(rec.strichartz_accum)},
  };
  if (!rec.times.empty()) {
    out["initial"] = {{"me_ratio", number(rec.me_ratio_series.front())},
                      {"grad_ratio", number(rec.grad_ratio_series.front())},
                      {"membership", to_string(rec.membership_series.front())}};
    out["final"] = {{"me_ratio", number(rec.me_ratio_series.back())},
                    {"grad_ratio", number(rec.grad_ratio_series.back())},
                    {"membership", to_string(rec.membership_series.back())},
                    {"hs_growth", number(rec.hs_series.back() / rec.hs_series.front())}};
  }
  return out;
}

json audit_json(const InvarianceAudit& a) {
  return json{{"ok", a.ok},
              {"flipped", a.flipped},
              {"flip_index", a.flip_index},
              {"initial", to_string(a.initial)},
              {"all_samples_same", a.all_same},
              {"delta0", number(a.delta0)},
              {"message", a.message}};
}

json proxies_json(const ScatteringProxies& p) {
  return json{{"v_ratio", number(p.v_ratio)},
              {"lpc_ratio", number(p.lpc_ratio)},
              {"strichartz_rate_first_quarter", number(p.strichartz_rate_first)},
              {"strichartz_rate_final_quarter", number(p.strichartz_rate_final)}};
}

json verify_json(const VerifyReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back(json{{"name", c.name},
                          {"value", number(c.value)},
                          {"tolerance", number(c.tolerance)},
                          {"pass", c.pass},
                          {"detail", c.detail}});
  }
  return json{{"all_pass", report.all_pass()}, {"checks", checks}};
}

json artifact(const std::string& kind, const RunConfig& cfg, json body) {
  json doc{{"kind", kind}, {"convention", kConventionTag}, {"config", config_json(cfg)}};
  for (auto& [k, v] : body.items()) doc[k] = v;
  return doc;
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot write " + path.string());
  os << doc.dump(2) << '\n';
}

}  // namespace fhartree::reports
