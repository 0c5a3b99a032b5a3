// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Probability as a measure on relationships, outcome denotation, and the
/// bridge from a structure to the outcome-set (sample space) view.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levels/error.hpp"
#include "levels/rational.hpp"
#include "levels/structure.hpp"

namespace levels {

namespace detail {

inline const Element& require_relationship(const Structure& s, std::string_view r) {
  const Element& e = s.at(r);
  if (!e.is_relationship()) throw Error(ErrorCode::NotARelationship, "'" + e.id + "' is an entity");
  return e;
}

}  // namespace detail

/// Records P(r) = p. Rejects an assignment that leaves r's alternative group
/// over-full, or fully assigned with a total other than one.
inline Structure assign_probability(const Structure& s, std::string_view r, Probability p) {
  detail::require_relationship(s, r);
  Structure out = s;
  Element& target = *out.find(r);
  target.probability = p;

  if (target.alt_group) {
    const std::string tag = *target.alt_group;
    const auto sum = detail::group_sum(out, tag);
    if (!detail::group_is_normalized(sum)) {
      throw Error(ErrorCode::UnnormalizedAlternatives,
                  "alternative group '" + tag + "' would carry mass " + sum.assigned.to_string());
    }
    if (sum.size - sum.assigned_count == 1 && sum.assigned <= Rational::integer(1)) {
      for (const Element* m : out.group_members(tag)) {
        if (!m->probability) {
          out.audit.push_back("P(" + m->id + ") inferred as " + (Rational::integer(1) - sum.assigned).to_string() +
                              " from alternative group '" + tag + "'");
        }
      }
    }
  }
  return out;
}

inline Structure assign_probability(const Structure& s, std::string_view r, const Rational& p) {
  if (p > Rational::integer(1)) {
    throw Error(ErrorCode::InvalidProbability, p.to_string() + " is outside [0, 1]");
  }
  return assign_probability(s, r, Probability(p));
}

/// P(r), or nullopt when the structure leaves it unknown.
///
/// Resolution order: an explicit assignment; for the single unassigned member
/// of an alternative group, one minus the rest; otherwise a non-opaque
/// relationship outside any group always links and measures 1.
inline std::optional<Probability> probability_of(const Structure& s, std::string_view r) {
  const Element& e = detail::require_relationship(s, r);
  if (e.probability) return e.probability;
  if (e.alt_group) {
    Rational others;
    for (const Element* m : s.group_members(*e.alt_group)) {
      if (m == &e) continue;
      if (!m->probability) return std::nullopt;
      others = others + m->probability->value();
    }
    if (others > Rational::integer(1)) return std::nullopt;
    return Probability(Rational::integer(1) - others);
  }
  if (e.opaque) return std::nullopt;
  return Probability::one();
}

inline Probability complement(const Probability& p) {
  return Probability(Rational::integer(1) - p.value());
}

/// favorable / possible.
inline Probability classical_probability(std::uint64_t favorable, std::uint64_t possible) {
  if (possible == 0) throw Error(ErrorCode::InvalidCounts, "no possible cases");
  if (favorable > possible) {
    throw Error(ErrorCode::InvalidCounts,
                std::to_string(favorable) + " favorable cases exceed " + std::to_string(possible) + " possible");
  }
  return Probability(favorable, possible);
}

/// Records E_out => R, keeping the map univocal in both directions.
inline Structure denote(const Structure& s, std::string_view outcome, std::string_view relation) {
  const Element& o = s.at(outcome);
  if (!o.is_entity() || o.role != Role::Output) {
    throw Error(ErrorCode::NotAnOutcome, "'" + o.id + "' is not an output entity");
  }
  detail::require_relationship(s, relation);
  if (const Denotation* d = s.denotation_of_outcome(outcome)) {
    throw Error(ErrorCode::NonUnivocal, "'" + o.id + "' already denotes '" + d->relation + "'");
  }
  if (const Denotation* d = s.denotation_of_relation(relation)) {
    throw Error(ErrorCode::NonUnivocal,
                "'" + std::string(relation) + "' is already denoted by '" + d->outcome + "'");
  }
  Structure out = s;
  out.denotations.push_back(Denotation{std::string(outcome), std::string(relation)});
  return out;
}

/// P(E_out) = P(R) for the relationship E_out denotes.
inline std::optional<Probability> probability_of_outcome(const Structure& s, std::string_view outcome) {
  s.at(outcome);
  const Denotation* d = s.denotation_of_outcome(outcome);
  if (d == nullptr) throw Error(ErrorCode::NoDenotation, "'" + std::string(outcome) + "' denotes no relationship");
  return probability_of(s, d->relation);
}

/// The outcome ensemble {xi_i} of an alternative group with its masses.
struct SampleSpaceView {
  struct Point {
    std::string outcome;
    std::string relation;
    std::optional<Probability> mass;
  };
  std::vector<Point> points;

  bool fully_measured() const {
    for (const auto& p : points) {
      if (!p.mass) return false;
    }
    return true;
  }

  /// Sum of the known masses.
  Rational total() const {
    Rational sum;
    for (const auto& p : points) {
      if (p.mass) sum = sum + p.mass->value();
    }
    return sum;
  }
};

inline SampleSpaceView kolmogorov_view(const Structure& s, std::string_view group) {
  const auto members = s.group_members(group);
  if (members.empty()) throw Error(ErrorCode::NotFound, "no alternative group '" + std::string(group) + "'");

  SampleSpaceView view;
  for (const Element* r : members) {
    const Denotation* d = s.denotation_of_relation(r->id);
    if (d == nullptr) {
      throw Error(ErrorCode::NoOutcome, "'" + r->id + "' produces no denoted outcome; no set view exists");
    }
    for (const auto& p : view.points) {
      if (p.outcome == d->outcome) {
        throw Error(ErrorCode::NonUnivocal, "'" + d->outcome + "' is the outcome of several alternatives");
      }
    }
    view.points.push_back({d->outcome, r->id, probability_of(s, r->id)});
  }
  return view;
}

}  // namespace levels
