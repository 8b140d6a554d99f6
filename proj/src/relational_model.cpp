#include "evlab/relational_model.hpp"

#include <algorithm>
#include <utility>

#include "evlab/errors.hpp"

namespace evlab {

const char* relational_class_name(RelationalClass c) {
  switch (c) {
    case RelationalClass::Evidence: return "evidence";
    case RelationalClass::Doxastic: return "doxastic";
    case RelationalClass::Knowability: return "knowability";
  }
  return "?";
}

std::size_t RelationalModel::world(const std::string& id) const {
  auto it = world_index_.find(id);
  if (it == world_index_.end())
    throw EvalError("unknown world id: '" + id + "'");
  return it->second;
}

const WorldSet& RelationalModel::belief_image() const {
  if (!belief_) throw EvalError("model carries no belief relation");
  return *belief_;
}

const WorldSet& RelationalModel::r_box(std::size_t x) const {
  if (r_box_.empty()) throw EvalError("model carries no knowability relation");
  return r_box_[x];
}

const WorldSet& RelationalModel::valuation(const std::string& atom) const {
  auto it = valuation_.find(atom);
  return it == valuation_.end() ? empty_ : it->second;
}

std::vector<std::string> RelationalModel::names(const WorldSet& w) const {
  std::vector<std::string> out;
  for (std::size_t i : ws_members(w)) out.push_back(worlds_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

RelationalModel::Builder& RelationalModel::Builder::add_world(std::string id) {
  if (tables_live_)
    throw ModelError("worlds must be added before relation edges");
  if (!m_.world_index_.emplace(id, m_.worlds_.size()).second)
    throw ModelError("duplicate world id: '" + id + "'", "worlds");
  m_.worlds_.push_back(std::move(id));
  return *this;
}

void RelationalModel::Builder::freeze_tables() {
  if (tables_live_) return;
  if (m_.worlds_.empty()) throw ModelError("model has no worlds", "worlds");
  const std::size_t n = m_.worlds_.size();
  m_.r_e_.assign(n, ws_empty(n));
  if (m_.cls_ == RelationalClass::Knowability) m_.r_box_.assign(n, ws_empty(n));
  m_.empty_ = ws_empty(n);
  tables_live_ = true;
}

std::size_t RelationalModel::Builder::need_world(const std::string& id) const {
  auto it = m_.world_index_.find(id);
  if (it == m_.world_index_.end())
    throw ModelError("unknown world id: '" + id + "'");
  return it->second;
}

RelationalModel::Builder& RelationalModel::Builder::edge_e(
    const std::string& from, const std::string& to) {
  freeze_tables();
  m_.r_e_[need_world(from)].set(need_world(to));
  return *this;
}

RelationalModel::Builder& RelationalModel::Builder::edge_box(
    const std::string& from, const std::string& to) {
  freeze_tables();
  if (m_.cls_ != RelationalClass::Knowability)
    throw ModelError("R_Box only applies to the knowability class", "R_Box");
  m_.r_box_[need_world(from)].set(need_world(to));
  return *this;
}

RelationalModel::Builder& RelationalModel::Builder::belief(
    const std::vector<std::string>& worlds) {
  freeze_tables();
  WorldSet v = ws_empty(m_.worlds_.size());
  for (const auto& id : worlds) v.set(need_world(id));
  return belief(std::move(v));
}

RelationalModel::Builder& RelationalModel::Builder::valuation(
    const std::string& atom, const std::vector<std::string>& worlds) {
  freeze_tables();
  WorldSet ws = ws_empty(m_.worlds_.size());
  for (const auto& id : worlds) ws.set(need_world(id));
  return valuation(atom, std::move(ws));
}

RelationalModel::Builder& RelationalModel::Builder::r_e(std::size_t x,
                                                        WorldSet image) {
  freeze_tables();
  if (x >= m_.worlds_.size() || image.size() != m_.worlds_.size())
    throw ModelError("R_E entry out of range");
  m_.r_e_[x] = std::move(image);
  return *this;
}

RelationalModel::Builder& RelationalModel::Builder::r_box(std::size_t x,
                                                          WorldSet image) {
  freeze_tables();
  if (m_.cls_ != RelationalClass::Knowability)
    throw ModelError("R_Box only applies to the knowability class", "R_Box");
  if (x >= m_.worlds_.size() || image.size() != m_.worlds_.size())
    throw ModelError("R_Box entry out of range");
  m_.r_box_[x] = std::move(image);
  return *this;
}

RelationalModel::Builder& RelationalModel::Builder::belief(WorldSet v) {
  freeze_tables();
  if (m_.cls_ != RelationalClass::Doxastic)
    throw ModelError("belief image only applies to the doxastic class", "R_B");
  if (v.size() != m_.worlds_.size())
    throw ModelError("belief image sized for a different model", "R_B");
  m_.belief_ = std::move(v);
  return *this;
}

RelationalModel::Builder& RelationalModel::Builder::valuation(
    const std::string& atom, WorldSet ws) {
  freeze_tables();
  if (ws.size() != m_.worlds_.size())
    throw ModelError("valuation entry sized for a different model");
  m_.valuation_[atom] = std::move(ws);
  return *this;
}

RelationalModel RelationalModel::Builder::build() {
  freeze_tables();
  const std::size_t n = m_.worlds_.size();
  for (std::size_t x = 0; x < n; ++x)
    if (!m_.r_e_[x].test(x))
      throw ModelError("R_E must be reflexive; world '" + m_.worlds_[x] +
                           "' lacks its loop",
                       "R_E");
  if (m_.cls_ == RelationalClass::Doxastic) {
    if (!m_.belief_ || m_.belief_->none())
      throw ModelError("doxastic class requires a nonempty belief image",
                       "R_B");
  }
  if (m_.cls_ == RelationalClass::Knowability) {
    for (std::size_t x = 0; x < n; ++x) {
      if (!m_.r_box_[x].test(x))
        throw ModelError("R_Box must be reflexive; world '" + m_.worlds_[x] +
                             "' lacks its loop",
                         "R_Box");
      // Transitivity: the image of every successor stays inside the image.
      for (auto y = m_.r_box_[x].find_first(); y != WorldSet::npos;
           y = m_.r_box_[x].find_next(y)) {
        std::size_t z = ws_first_outside(m_.r_box_[y], m_.r_box_[x]);
        if (z != WorldSet::npos)
          throw ModelError("R_Box must be transitive; '" + m_.worlds_[x] +
                               "' reaches '" + m_.worlds_[y] +
                               "' reaches '" + m_.worlds_[z] + "'",
                           "R_Box");
      }
    }
  }
  RelationalModel done = std::move(m_);
  m_ = RelationalModel();
  tables_live_ = false;
  return done;
}

}  // namespace evlab
