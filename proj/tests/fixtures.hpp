#pragma once

#include "ekv/objective.hpp"
#include "ekv/space.hpp"

namespace fixtures {

inline ekv::FiniteSpace three_point() {
  return ekv::FiniteSpace({"a", "b", "c"}, {0, 1, 2, 1, 0, 1, 2, 1, 0});
}

inline ekv::Objective three_point_f() { return ekv::Objective({3.0, 1.0, 0.0}); }

inline ekv::FiniteSpace upper_grid() {
  return ekv::canonical_space(ekv::CanonicalFamily::upper_grid, {});
}

inline ekv::ExtReal inf() { return ekv::ExtReal::infinity(); }

}  // namespace fixtures
