#include "drmab/arm_set.hpp"

#include <algorithm>

namespace drmab {

ArmSet ArmSet::full(int arm_count) {
  ArmSet s(arm_count);
  for (int k = 1; k <= arm_count; ++k) s.insert(ArmId(k));
  return s;
}

ArmSet ArmSet::of(int arm_count, std::initializer_list<int> arms) {
  ArmSet s(arm_count);
  for (int k : arms) s.insert(ArmId(k));
  return s;
}

void ArmSet::insert(ArmId k) {
  auto& m = member_[k.index()];
  if (!m) {
    m = 1;
    ++size_;
  }
}

void ArmSet::erase(ArmId k) {
  auto& m = member_[k.index()];
  if (m) {
    m = 0;
    --size_;
  }
}

void ArmSet::clear() {
  std::fill(member_.begin(), member_.end(), 0);
  size_ = 0;
}

std::optional<ArmId> ArmSet::smallest() const {
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i]) return ArmId::from_index(i);
  }
  return std::nullopt;
}

std::vector<ArmId> ArmSet::members() const {
  std::vector<ArmId> out;
  out.reserve(static_cast<std::size_t>(size_));
  for_each([&](ArmId k) { out.push_back(k); });
  return out;
}

}  // namespace drmab
