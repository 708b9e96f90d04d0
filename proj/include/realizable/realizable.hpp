#pragma once

#include "realizable/arith.hpp"
#include "realizable/bigint.hpp"
#include "realizable/errors.hpp"
#include "realizable/polyalg.hpp"
#include "realizable/realize.hpp"
#include "realizable/recurrence.hpp"
#include "realizable/witness.hpp"

namespace realizable {
inline constexpr const char* version = "0.1.0";
}
