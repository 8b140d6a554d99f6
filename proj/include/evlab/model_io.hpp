#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "evlab/belief.hpp"
#include "evlab/checker.hpp"
#include "evlab/evidence_model.hpp"
#include "evlab/interaction_model.hpp"
#include "evlab/relational_model.hpp"

namespace evlab {

/// Result of loading a model document. Evidence-kind documents may carry
/// an optional belief set; it is validated against the model's coherence
/// sets (strictly for single-state models, existentially for multi-state).
struct LoadedModel {
  std::variant<EvidenceModel, RelationalModel, InteractionModel> model;
  std::optional<WorldSet> belief;

  EvidenceModel& evidence() { return std::get<EvidenceModel>(model); }
  RelationalModel& relational() { return std::get<RelationalModel>(model); }
  InteractionModel& interaction() { return std::get<InteractionModel>(model); }
  const EvidenceModel& evidence() const {
    return std::get<EvidenceModel>(model);
  }
  const RelationalModel& relational() const {
    return std::get<RelationalModel>(model);
  }
  const InteractionModel& interaction() const {
    return std::get<InteractionModel>(model);
  }
};

struct LoadLimits {
  std::size_t max_generators = 12;  // "interaction" documents
  std::size_t max_lattice_states = InteractionModel::kDefaultMaxStates;
};

/// Throws ModelError with a path into the document on any structural or
/// invariant failure.
LoadedModel load_model(const nlohmann::json& doc, const LoadLimits& lim = {});
LoadedModel load_model_text(const std::string& text, const LoadLimits& lim = {});
LoadedModel load_model_file(const std::string& path, const LoadLimits& lim = {});

nlohmann::json save_model(const EvidenceModel& m,
                          const std::optional<WorldSet>& belief = std::nullopt);
nlohmann::json save_model(const InteractionModel& m);
nlohmann::json save_model(const RelationalModel& m);

void write_model_file(const std::string& path, const nlohmann::json& doc);

nlohmann::json trace_to_json(const TraceNode& t);
nlohmann::json e1_report_to_json(const EvidenceModel& m, const E1Report& r);
nlohmann::json e2_report_to_json(const EvidenceModel& m, const E2Report& r);
nlohmann::json ladder_to_json(const EvidenceModel& m, const BeliefLadder& l);

}  // namespace evlab
