#pragma once

#include "drmab/builtin.hpp"
#include "drmab/instance.hpp"

namespace drmab::testing {

// mu = (0.9, 0.6), nu_{1,2} = 0.7
inline InstanceData two_arm_data() { return {2, {0.9, 0.6}, {{0.5, 0.7}, {0.3, 0.5}}}; }
inline BanditInstance two_arm() { return BanditInstance::create(two_arm_data()); }
inline BanditInstance k16() { return BanditInstance::create(appendix_f_k16()); }

}  // namespace drmab::testing
