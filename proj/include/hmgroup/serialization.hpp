#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hmgroup/channel_sim.hpp"
#include "hmgroup/matching_core.hpp"
#include "hmgroup/strategies.hpp"

namespace hmgroup {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Square CSV, one matrix row per line, no header. Parse errors carry the
/// line number; the result must satisfy the CostMatrix invariants.
CostMatrix load_cost_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const SquareMatrix& m);

/// `receiver_id,snr_db` with ids 1..n (any order); returned sorted by id
/// with 0-based indices.
std::vector<Receiver> load_receivers_csv(std::istream& in);

/// {"partner":[...]} with 1-based indices.
Json to_json(const Assignment& x);
Assignment assignment_from_json(const Json& j);

/// {"sigma":1e-3,"max_retries":50,"seed":...}; missing keys keep defaults.
PerturbConfig perturb_config_from_json(const Json& j, PerturbConfig defaults = {});

Json to_json(const MatchingReport& report, const CostMatrix& c);
Json to_json(const SimulationSummary& summary);

}  // namespace hmgroup
