#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "evlab/world_set.hpp"

namespace evlab {

enum class RelationalClass { Evidence, Doxastic, Knowability };

const char* relational_class_name(RelationalClass c);

/// Relational models of the completeness theorems. Always carries a
/// reflexive R_E; the doxastic class adds R_B (nonempty image, constant
/// across worlds) and the knowability class adds a preorder R_□.
/// K is read as the universal modality, so it needs no relation.
class RelationalModel {
 public:
  class Builder;

  RelationalClass cls() const { return cls_; }
  std::size_t world_count() const { return worlds_.size(); }
  const std::string& world_id(std::size_t i) const { return worlds_[i]; }
  const std::vector<std::string>& world_ids() const { return worlds_; }
  std::size_t world(const std::string& id) const;

  const WorldSet& r_e(std::size_t x) const { return r_e_[x]; }
  /// The constant R_B image V (doxastic class only).
  const WorldSet& belief_image() const;
  const WorldSet& r_box(std::size_t x) const;
  bool has_r_box() const { return !r_box_.empty(); }

  const WorldSet& valuation(const std::string& atom) const;
  const std::map<std::string, WorldSet>& valuation_table() const {
    return valuation_;
  }

  std::vector<std::string> names(const WorldSet& w) const;

 private:
  RelationalModel() = default;

  RelationalClass cls_ = RelationalClass::Evidence;
  std::vector<std::string> worlds_;
  std::unordered_map<std::string, std::size_t> world_index_;
  std::vector<WorldSet> r_e_;
  std::optional<WorldSet> belief_;     // doxastic
  std::vector<WorldSet> r_box_;        // knowability
  std::map<std::string, WorldSet> valuation_;
  WorldSet empty_;
};

class RelationalModel::Builder {
 public:
  explicit Builder(RelationalClass cls) { m_.cls_ = cls; }

  Builder& add_world(std::string id);
  Builder& edge_e(const std::string& from, const std::string& to);
  Builder& edge_box(const std::string& from, const std::string& to);
  Builder& belief(const std::vector<std::string>& worlds);
  Builder& valuation(const std::string& atom,
                     const std::vector<std::string>& worlds);

  // Index-based variants; worlds must all be added first.
  Builder& r_e(std::size_t x, WorldSet image);
  Builder& r_box(std::size_t x, WorldSet image);
  Builder& belief(WorldSet v);
  Builder& valuation(const std::string& atom, WorldSet ws);

  /// Validates the class conditions: R_E reflexive; doxastic V nonempty;
  /// knowability R_□ reflexive and transitive. Throws ModelError.
  RelationalModel build();

 private:
  void freeze_tables();
  std::size_t need_world(const std::string& id) const;

  RelationalModel m_;
  bool tables_live_ = false;
};

}  // namespace evlab
