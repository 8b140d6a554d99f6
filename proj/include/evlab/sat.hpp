#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "evlab/formula.hpp"
#include "evlab/relational_model.hpp"

namespace evlab {

/// The axiom systems with completeness theorems, naming both the logic
/// and the relational model class searched for (counter)models.
enum class LogicId { EK, EKB, EKB_E2, EKK, S4Box };

const char* logic_name(LogicId id);
std::optional<LogicId> logic_from_name(const std::string& name);

/// Throws EvalError when f uses an operator outside the logic's language
/// (E/K for EK; +B for the EKB variants; +□/◇ for EKK; □/◇ only for
/// S4Box; effort operators never).
void check_language(LogicId logic, const FormulaPtr& f);

struct SearchWitness {
  RelationalModel model;
  std::string world;  // designated world satisfying the formula
};

/// "satisfiable" carries a witness; otherwise the verdict is
/// "no model up to bound" — explicitly not an unsatisfiability proof.
/// candidates is the witness's position (1-based) in the canonical
/// candidate enumeration, or the full size of the searched space on
/// exhaustion; either way it is independent of worker count.
struct SearchOutcome {
  bool satisfiable = false;
  std::size_t bound = 0;
  std::uint64_t candidates = 0;
  std::optional<SearchWitness> witness;
};

struct SearchOptions {
  unsigned workers = 1;
};

/// Bounded search over world counts 1..max_worlds in the logic's
/// relational class. The witness, when one exists within the bound, is
/// the least candidate in canonical order regardless of worker count,
/// and is re-verified — against the relational evaluator and, after
/// translation, under evidence semantics — before being returned.
SearchOutcome find_model(LogicId logic, const FormulaPtr& f,
                         std::size_t max_worlds,
                         const SearchOptions& opts = {});

/// find_model on ¬f: satisfiable means "countermodel found", otherwise
/// f is valid up to the bound.
SearchOutcome check_validity(LogicId logic, const FormulaPtr& f,
                             std::size_t max_worlds,
                             const SearchOptions& opts = {});

nlohmann::json outcome_to_json(const SearchOutcome& o, bool validity_mode);

}  // namespace evlab
