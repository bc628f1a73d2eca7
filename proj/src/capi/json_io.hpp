#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "apportion/flow.hpp"
#include "apportion/random.hpp"
#include "apportion/sweep.hpp"

namespace apportion::io {

using nlohmann::json;

json parse_text(const std::string& text);

Rat rat_from(const json& j);
json rat_to(const Rat& r);
json rats_to(const std::vector<Rat>& v);

Instance instance_from(const json& j);
json instance_to(const Instance& inst);

json outcome_to(const Outcome& o);
json atlas_to(const BreakpointAtlas& atlas);
json quota_partition_to(const QuotaPartition& qp);
json segments_to(const std::vector<PowerMeanSegment>& segs);

DeltaDistribution distribution_from(const json& j);
TieBreak tiebreak_from(const std::string& name);
std::vector<Rat> shifts_from(const json& j);

ArrangementSpec arrangement_from(const json& j);
json arrangement_to(const ArrangementSpec& spec);
json arrangement_instance_to(const ArrangementInstance& ai);

json decomposition_to(const Decomposition& dec);

}  // namespace apportion::io
