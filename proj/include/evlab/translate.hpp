#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "evlab/evidence_model.hpp"
#include "evlab/formula.hpp"
#include "evlab/interaction_model.hpp"
#include "evlab/relational_model.hpp"

namespace evlab {

/// Single evidence state "e" with I_e(x) = R_E(x). Satisfies (E1) and
/// U_e = X, so every (x, e) is a scenario.
EvidenceModel relational_to_evidence(const RelationalModel& m);

/// The same construction plus V = the constant R_B image.
std::pair<EvidenceModel, WorldSet> doxastic_to_evidence(
    const RelationalModel& m);

/// One evidence state per member of the subset family, with the constant
/// interpretation I_{e_U}(x) = U. States are named u0, u1, … in family
/// order. K and E collapse at every scenario of the result.
EvidenceModel subset_space_to_evidence(
    const std::vector<std::string>& worlds,
    const std::vector<std::vector<std::string>>& family,
    const std::map<std::string, std::vector<std::string>>& valuation);

struct KnowabilityTranslation {
  InteractionModel model;
  InteractionModel::State designated;  // the generator for the top upset X
  std::vector<WorldSet> upsets;        // per generator, in enumeration order
};

/// One generator per upset E_i of (X, R_□) — the empty and full upsets
/// included — with I_{e_i}(x) = E_i ∩ R_E(x); U_{e_i} = E_i; meets of
/// states land on intersections of upsets. Worlds capped (upset
/// enumeration walks all 2^|X| subsets).
KnowabilityTranslation knowability_to_interaction(const RelationalModel& m,
                                                  std::size_t max_worlds = 15);

/// Relational semantics, implemented independently of the evidence-side
/// checker on purpose: the two act as cross-oracles. E reads R_E images,
/// K is the universal modality, B reads the constant R_B image, □/◇ read
/// R_□. Effort operators have no relational reading and are rejected.
WorldSet relational_truth_set(const RelationalModel& m, const FormulaPtr& f);
bool relational_holds(const RelationalModel& m, std::size_t x,
                      const FormulaPtr& f);

struct EquivalenceMismatch {
  std::string formula;
  std::string world;
  bool relational;
  bool evidence;
};

struct EquivalenceReport {
  std::size_t formulas = 0;
  std::size_t points = 0;  // (formula, world) pairs compared
  std::vector<EquivalenceMismatch> mismatches;
  bool pass() const { return mismatches.empty(); }
};

/// Translates m by its class, then compares relational truth against
/// evidence-semantics truth at the designated scenario, at every world,
/// for every formula.
EquivalenceReport verify_equivalence(const RelationalModel& m,
                                     const std::vector<FormulaPtr>& formulas);

}  // namespace evlab
