#include "evlab/evidence_model.hpp"

#include <algorithm>
#include <utility>

#include "evlab/errors.hpp"

namespace evlab {

std::optional<std::size_t> EvidenceModel::find_world(
    const std::string& id) const {
  auto it = world_index_.find(id);
  if (it == world_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> EvidenceModel::find_evidence(
    const std::string& id) const {
  auto it = evidence_index_.find(id);
  if (it == evidence_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t EvidenceModel::world(const std::string& id) const {
  auto i = find_world(id);
  if (!i) throw EvalError("unknown world id: '" + id + "'");
  return *i;
}

std::size_t EvidenceModel::evidence(const std::string& id) const {
  auto e = find_evidence(id);
  if (!e) throw EvalError("unknown evidence id: '" + id + "'");
  return *e;
}

const WorldSet& EvidenceModel::valuation(const std::string& atom) const {
  auto it = valuation_.find(atom);
  return it == valuation_.end() ? empty_ : it->second;
}

Scenario EvidenceModel::scenario(const std::string& world_id,
                                 const std::string& evidence_id) const {
  return scenario(world(world_id), evidence(evidence_id));
}

Scenario EvidenceModel::scenario(std::size_t world, std::size_t evidence) const {
  if (world >= world_count() || evidence >= evidence_count())
    throw EvalError("scenario indices out of range");
  if (!coherent(world, evidence))
    throw EvalError("not an evidence scenario: world '" + worlds_[world] +
                    "' does not cohere with evidence '" + evidence_[evidence] +
                    "'");
  return {world, evidence};
}

DoxasticScenario EvidenceModel::doxastic_scenario(std::size_t world,
                                                  std::size_t evidence,
                                                  WorldSet belief) const {
  Scenario s = scenario(world, evidence);
  if (belief.size() != world_count())
    throw EvalError("belief set sized for a different model");
  if (belief.none()) throw EvalError("belief set must be nonempty");
  std::size_t stray = ws_first_outside(belief, coherence_[evidence]);
  if (stray != WorldSet::npos)
    throw EvalError("belief set reaches outside U_" + evidence_[evidence] +
                    ": world '" + worlds_[stray] + "'");
  return {s.world, s.evidence, std::move(belief)};
}

E1StateReport EvidenceModel::check_e1(std::size_t e) const {
  if (e >= evidence_count()) throw EvalError("unknown evidence index");
  for (std::size_t x = 0; x < world_count(); ++x) {
    const WorldSet& ix = interp_[e][x];
    // Violation: some y ∈ I_e(x) with y ∉ I_e(y), i.e. y outside U_e.
    std::size_t y = ws_first_outside(ix, coherence_[e]);
    if (y != WorldSet::npos)
      return {e, false, E1Witness{e, x, y}, false};
  }
  return {e, true, std::nullopt, interp_union_[e] == coherence_[e]};
}

E1Report EvidenceModel::check_e1() const {
  E1Report r{true, {}};
  for (std::size_t e = 0; e < evidence_count(); ++e) {
    r.states.push_back(check_e1(e));
    r.pass = r.pass && r.states.back().pass;
  }
  return r;
}

E2Report EvidenceModel::check_e2(std::size_t e, const WorldSet& v) const {
  if (e >= evidence_count()) throw EvalError("unknown evidence index");
  if (v.size() != world_count())
    throw EvalError("world set sized for a different model");
  for (auto y = v.find_first(); y != WorldSet::npos; y = v.find_next(y)) {
    std::size_t z = ws_first_outside(interp_[e][y], v);
    if (z != WorldSet::npos) return {false, {{y, z}}};
  }
  return {true, std::nullopt};
}

std::vector<std::string> EvidenceModel::names(const WorldSet& w) const {
  std::vector<std::string> out;
  for (std::size_t i : ws_members(w)) out.push_back(worlds_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

EvidenceModel::Builder& EvidenceModel::Builder::add_world(std::string id) {
  if (tables_live_)
    throw ModelError("worlds must be added before interpretation entries");
  if (!m_.world_index_.emplace(id, m_.worlds_.size()).second)
    throw ModelError("duplicate world id: '" + id + "'", "worlds");
  m_.worlds_.push_back(std::move(id));
  return *this;
}

EvidenceModel::Builder& EvidenceModel::Builder::add_evidence(std::string id) {
  if (tables_live_)
    throw ModelError("evidence must be added before interpretation entries");
  if (!m_.evidence_index_.emplace(id, m_.evidence_.size()).second)
    throw ModelError("duplicate evidence id: '" + id + "'", "evidence");
  m_.evidence_.push_back(std::move(id));
  return *this;
}

void EvidenceModel::Builder::freeze_tables() {
  if (tables_live_) return;
  if (m_.worlds_.empty()) throw ModelError("model has no worlds", "worlds");
  if (m_.evidence_.empty())
    throw ModelError("model has no evidence states", "evidence");
  m_.interp_.assign(m_.evidence_.size(),
                    std::vector<WorldSet>(m_.worlds_.size(),
                                          ws_empty(m_.worlds_.size())));
  m_.empty_ = ws_empty(m_.worlds_.size());
  tables_live_ = true;
}

std::size_t EvidenceModel::Builder::need_world(const std::string& id) const {
  auto i = m_.find_world(id);
  if (!i) throw ModelError("unknown world id: '" + id + "'");
  return *i;
}

std::size_t EvidenceModel::Builder::need_evidence(const std::string& id) const {
  auto e = m_.find_evidence(id);
  if (!e) throw ModelError("unknown evidence id: '" + id + "'");
  return *e;
}

EvidenceModel::Builder& EvidenceModel::Builder::interp(
    const std::string& e, const std::string& x,
    const std::vector<std::string>& worlds) {
  freeze_tables();
  WorldSet ws = ws_empty(m_.worlds_.size());
  for (const auto& id : worlds) ws.set(need_world(id));
  m_.interp_[need_evidence(e)][need_world(x)] = std::move(ws);
  return *this;
}

EvidenceModel::Builder& EvidenceModel::Builder::valuation(
    const std::string& atom, const std::vector<std::string>& worlds) {
  freeze_tables();
  WorldSet ws = ws_empty(m_.worlds_.size());
  for (const auto& id : worlds) ws.set(need_world(id));
  m_.valuation_[atom] = std::move(ws);
  return *this;
}

EvidenceModel::Builder& EvidenceModel::Builder::interp(std::size_t e,
                                                       std::size_t x,
                                                       WorldSet ws) {
  freeze_tables();
  if (e >= m_.evidence_.size() || x >= m_.worlds_.size() ||
      ws.size() != m_.worlds_.size())
    throw ModelError("interpretation entry out of range");
  m_.interp_[e][x] = std::move(ws);
  return *this;
}

EvidenceModel::Builder& EvidenceModel::Builder::valuation(
    const std::string& atom, WorldSet ws) {
  freeze_tables();
  if (ws.size() != m_.worlds_.size())
    throw ModelError("valuation entry sized for a different model");
  m_.valuation_[atom] = std::move(ws);
  return *this;
}

EvidenceModel EvidenceModel::Builder::build() {
  freeze_tables();
  const std::size_t n = m_.worlds_.size();
  m_.coherence_.clear();
  m_.interp_union_.clear();
  for (std::size_t e = 0; e < m_.evidence_.size(); ++e) {
    WorldSet u = ws_empty(n);
    WorldSet all = ws_empty(n);
    for (std::size_t x = 0; x < n; ++x) {
      if (m_.interp_[e][x].test(x)) u.set(x);
      all |= m_.interp_[e][x];
    }
    m_.coherence_.push_back(std::move(u));
    m_.interp_union_.push_back(std::move(all));
  }
  EvidenceModel done = std::move(m_);
  m_ = EvidenceModel();
  tables_live_ = false;
  return done;
}

}  // namespace evlab
