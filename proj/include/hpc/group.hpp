#pragma once

#include <compare>
#include <vector>

namespace hpc {

class GroupElement {
public:
  constexpr GroupElement() = default;
  constexpr explicit GroupElement(int index) : index_(index) {}
  constexpr int index() const { return index_; }
  friend constexpr auto operator<=>(GroupElement, GroupElement) = default;

private:
  int index_ = 0;
};

// A finite group given by its full multiplication table.
class FiniteGroup {
public:
  using Table = std::vector<std::vector<int>>;

  // Throws Error(NotAGroup) with a witness when an axiom fails.
  static FiniteGroup from_table(const Table& table);
  static FiniteGroup cyclic(int n);
  static FiniteGroup trivial() { return FiniteGroup(); }

  FiniteGroup() : table_{{0}}, inverse_{0} {}

  int order() const { return static_cast<int>(table_.size()); }
  const Table& table() const { return table_; }
  GroupElement identity() const { return GroupElement(identity_); }
  GroupElement mul(GroupElement a, GroupElement b) const {
    return GroupElement(table_[a.index()][b.index()]);
  }
  GroupElement inverse(GroupElement a) const { return GroupElement(inverse_[a.index()]); }
  const std::vector<int>& inverse_table() const { return inverse_; }
  std::vector<GroupElement> elements() const;
  bool contains(GroupElement a) const { return a.index() >= 0 && a.index() < order(); }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

private:
  Table table_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

inline FiniteGroup group_from_table(const FiniteGroup::Table& table) { return FiniteGroup::from_table(table); }
inline FiniteGroup cyclic(int n) { return FiniteGroup::cyclic(n); }

}  // namespace hpc
