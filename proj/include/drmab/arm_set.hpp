#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "drmab/types.hpp"

namespace drmab {

// Subset of {1..K} with O(1) membership and ascending iteration.
class ArmSet {
 public:
  ArmSet() = default;
  explicit ArmSet(int arm_count) : member_(static_cast<std::size_t>(arm_count), 0) {}

  static ArmSet full(int arm_count);
  static ArmSet of(int arm_count, std::initializer_list<int> arms);

  int capacity() const { return static_cast<int>(member_.size()); }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool contains(ArmId k) const { return member_[k.index()] != 0; }
  void insert(ArmId k);
  void erase(ArmId k);
  void clear();

  std::optional<ArmId> smallest() const;
  std::vector<ArmId> members() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < member_.size(); ++i) {
      if (member_[i]) f(ArmId::from_index(i));
    }
  }

  bool operator==(const ArmSet& other) const { return member_ == other.member_; }

 private:
  std::vector<std::uint8_t> member_;
  int size_ = 0;
};

}  // namespace drmab
