// JSON instance files and decoded-solution output.
#pragma once

#include <string>

#include <json.hpp>

#include "hubo/encoders/cvrp.hpp"
#include "hubo/encoders/quest.hpp"
#include "hubo/encoders/scheduling.hpp"

namespace hubo {

using Json = nlohmann::json;

/// Parse errors are ValidationError with the offending field path.
QuestInstance quest_from_json(const Json& j);
CvrpInstance cvrp_from_json(const Json& j);
SchedulingInstance scheduling_from_json(const Json& j);

Json to_json(const QuestInstance& inst);
Json to_json(const CvrpInstance& inst);
Json to_json(const SchedulingInstance& inst);

Json to_json(const ViolationReport& r);
Json to_json(const DecodedSolution& d);

/// Reads a JSON document; syntax errors become ValidationError("<file>").
Json load_json(const std::string& path);

/// "use_case" field when present, otherwise nullopt.
std::optional<UseCase> declared_use_case(const Json& j);

/// Builds the encoded problem for any instance document.
EncodedProblem build_from_json(UseCase u, const Json& j);

DecodedSolution decode(const EncodedProblem& ep, const BitString& s);

}  // namespace hubo
