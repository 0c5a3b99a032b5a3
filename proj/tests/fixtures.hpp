// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "levels/probability.hpp"
#include "levels/structure.hpp"

namespace levels::fixtures {

/// The six-face die built through the operations rather than parsed.
inline Structure dice(bool with_probabilities = true) {
  Structure s = new_event_structure("dice", "E_m", std::nullopt, "R_m");
  std::vector<Member> children;
  for (int k = 1; k <= 6; ++k) {
    Member r = relationship("R_" + std::to_string(k));
    r.as_opaque().in_group("faces");
    if (with_probabilities) r.with_probability(Probability(1, 6));
    children.push_back(r);
  }
  for (int k = 1; k <= 6; ++k) children.push_back(entity("E_" + std::to_string(k), Role::Output));
  s = expand(s, "R_m", children);
  for (int k = 1; k <= 6; ++k) s = denote(s, "E_" + std::to_string(k), "R_" + std::to_string(k));
  return s;
}

/// coin_up | comes_down | heads, split into R_h / not_R_h.
inline Structure coin() {
  Structure s = new_event_structure("coin", "coin_up", "heads", "comes_down");
  s = denote(s, "heads", "comes_down");
  s = complement_expand(s, "comes_down", "R_h");
  s = assign_probability(s, "R_h", Probability(1, 2));
  s = assign_probability(s, "not_R_h", Probability(1, 2));
  return s;
}

inline Structure gravitation() {
  Structure s = new_event_structure("gravitation", "E_E", "E_S", "R_g");
  return denote(s, "E_S", "R_g");
}

inline Structure decision() { return new_event_structure("decision", std::nullopt, std::nullopt, "decide"); }

}  // namespace levels::fixtures
