#pragma once

// Umbrella header: certified lower bounds for subharmonic functions on discs,
// Harnack distances, counting functions, and Hausdorff-content budgets for
// exceptional sets.

#include "bounds.hpp"      // IWYU pragma: export
#include "core.hpp"        // IWYU pragma: export
#include "errors.hpp"      // IWYU pragma: export
#include "extended_real.hpp"  // IWYU pragma: export
#include "harnack.hpp"     // IWYU pragma: export
#include "harness.hpp"     // IWYU pragma: export
#include "hcontent.hpp"    // IWYU pragma: export
#include "riesz.hpp"       // IWYU pragma: export

namespace minorant {
inline constexpr const char* kVersion = "0.1.0";
}
