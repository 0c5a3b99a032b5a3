// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Built-in example structures, addressable from the CLI as builtin:NAME.

#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>

namespace levels::assets {

inline constexpr std::string_view kCoin = R"(# The coin | comes down | heads, with the toss split into its two
# alternative mechanisms. Their sub-mechanisms are unknown.
structure coin {
  level 1 {
    entity coin_up [in];
    rel comes_down;
  }
  level 2 {
    rel R_h of comes_down [opaque, alt=toss, p=1/2];
    rel R_t of comes_down [opaque, alt=toss, p=1/2];
    entity E_h of comes_down [out];
    entity E_t of comes_down [out];
  }
  denote E_h => R_h;
  denote E_t => R_t;
}
)";

inline constexpr std::string_view kDice = R"(# Throwing a die: the die and the launching/falling dynamics, then six
# alternative falls, each producing one face. The level-3 subrelationships
# that pick a face are real but unlisted, so every fall is opaque.
structure dice {
  level 1 {
    entity E_m [in];
    rel R_m;
  }
  level 2 {
    rel R_1 of R_m [opaque, alt=faces, p=1/6];
    rel R_2 of R_m [opaque, alt=faces, p=1/6];
    rel R_3 of R_m [opaque, alt=faces, p=1/6];
    rel R_4 of R_m [opaque, alt=faces, p=1/6];
    rel R_5 of R_m [opaque, alt=faces, p=1/6];
    rel R_6 of R_m [opaque, alt=faces, p=1/6];
    entity E_1 of R_m [out];
    entity E_2 of R_m [out];
    entity E_3 of R_m [out];
    entity E_4 of R_m [out];
    entity E_5 of R_m [out];
    entity E_6 of R_m [out];
  }
  denote E_1 => R_1;
  denote E_2 => R_2;
  denote E_3 => R_3;
  denote E_4 => R_4;
  denote E_5 => R_5;
  denote E_6 => R_6;
}
)";

inline constexpr std::string_view kBertrand = R"(# One verbal description, two physical dynamics. The chord before the
# fall (E_x) and the dropped chord (E_y) are the same in both; only the
# relationship differs. p is the measure of "the chord comes out longer
# than the side of the inscribed equilateral triangle".
structure bertrand_parallel {
  level 1 {
    entity E_x [in];
    entity E_y [out];
    rel R_1 [p=1/2];
  }
  denote E_y => R_1;
}

structure bertrand_endpoint {
  level 1 {
    entity E_x [in];
    entity E_y [out];
    rel R_2 [p=1/3];
  }
  denote E_y => R_2;
}
)";

inline constexpr std::string_view kDecision = R"(# A decision that is never announced: nothing emerges as an outcome.
structure decision {
  level 1 {
    entity information [in];
    rel decide;
  }
  level 2 {
    rel accept of decide [opaque, alt=resolution];
    rel decline of decide [opaque, alt=resolution];
  }
}
)";

inline constexpr std::string_view kGravitation = R"(# The Sun attracts the Earth, always. Fully specified, hence certain.
structure gravitation {
  level 1 {
    entity E_E [in];
    entity E_S [out];
    rel R_g;
  }
  denote E_S => R_g;
}
)";

inline constexpr std::array<std::pair<std::string_view, std::string_view>, 5> kAll = {{
    {"coin", kCoin},
    {"dice", kDice},
    {"bertrand", kBertrand},
    {"decision", kDecision},
    {"gravitation", kGravitation},
}};

inline std::optional<std::string_view> find(std::string_view name) {
  for (const auto& [key, text] : kAll) {
    if (key == name) return text;
  }
  return std::nullopt;
}

}  // namespace levels::assets
