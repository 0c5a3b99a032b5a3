// Copyright 2026 The Levels Authors
// SPDX-License-Identifier: Apache-2.0

/// \file
/// The structure of levels: entities and relationships stratified into
/// indexed, ordered levels beneath an implicit level-0 whole.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "levels/error.hpp"
#include "levels/rational.hpp"

namespace levels {

enum class ElementKind { Entity, Relationship };
enum class Role { Plain, Input, Output };

/// Words that the text format reserves; they are never valid element names.
inline constexpr std::array<std::string_view, 11> kReservedWords = {
    "structure", "level", "entity", "rel", "of", "in", "out", "opaque", "alt", "p", "denote"};

inline bool is_reserved_word(std::string_view word) {
  return std::find(kReservedWords.begin(), kReservedWords.end(), word) != kReservedWords.end();
}

/// Letter followed by letters, digits or underscores, and not a reserved word.
inline bool is_valid_identifier(std::string_view text) {
  auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  if (text.empty() || !is_alpha(text.front())) return false;
  for (char c : text) {
    if (!is_alpha(c) && !is_digit(c) && c != '_') return false;
  }
  return !is_reserved_word(text);
}

struct Element {
  std::string id;
  ElementKind kind = ElementKind::Entity;
  int level = 1;
  std::optional<std::string> parent;
  Role role = Role::Plain;
  // Relationship-only attributes.
  bool opaque = false;
  std::optional<std::string> alt_group;
  std::optional<Probability> probability;

  bool is_entity() const noexcept { return kind == ElementKind::Entity; }
  bool is_relationship() const noexcept { return kind == ElementKind::Relationship; }

  friend bool operator==(const Element&, const Element&) = default;
};

/// Declaration of a new member, used by new_event_structure and expand.
struct Member {
  ElementKind kind = ElementKind::Entity;
  std::string id;
  Role role = Role::Plain;
  bool opaque = false;
  std::optional<std::string> alt_group;
  std::optional<Probability> probability;

  Member& as_opaque() {
    opaque = true;
    return *this;
  }
  Member& in_group(std::string tag) {
    alt_group = std::move(tag);
    return *this;
  }
  Member& with_probability(Probability p) {
    probability = p;
    return *this;
  }
};

inline Member entity(std::string id, Role role = Role::Plain) {
  return Member{ElementKind::Entity, std::move(id), role, false, std::nullopt, std::nullopt};
}

inline Member relationship(std::string id) {
  return Member{ElementKind::Relationship, std::move(id), Role::Plain, false, std::nullopt, std::nullopt};
}

/// E_out => R: the outcome entity univocally names the relationship producing it.
struct Denotation {
  std::string outcome;
  std::string relation;

  friend bool operator==(const Denotation&, const Denotation&) = default;
};

/// One level: entities and relationships kept in insertion order.
struct Level {
  std::vector<Element> members;

  friend bool operator==(const Level&, const Level&) = default;
};

/// A structure S = (E; R). Level 0 is the structure object itself, so
/// `levels[0]` holds level 1. Operations below treat structures as values and
/// return updated copies.
struct Structure {
  std::string name;
  std::vector<Level> levels;
  std::vector<Denotation> denotations;
  /// Human-readable notes about inferred values. Not part of equality or
  /// serialization.
  std::vector<std::string> audit;

  std::size_t depth() const noexcept { return levels.size(); }

  const Element* find(std::string_view id) const {
    for (const auto& level : levels) {
      for (const auto& e : level.members) {
        if (e.id == id) return &e;
      }
    }
    return nullptr;
  }

  Element* find(std::string_view id) {
    return const_cast<Element*>(std::as_const(*this).find(id));
  }

  const Element& at(std::string_view id) const {
    const Element* e = find(id);
    if (e == nullptr) throw Error(ErrorCode::NotFound, "no element '" + std::string(id) + "' in " + name);
    return *e;
  }

  /// All elements in level order, then insertion order.
  std::vector<const Element*> elements() const {
    std::vector<const Element*> out;
    for (const auto& level : levels) {
      for (const auto& e : level.members) out.push_back(&e);
    }
    return out;
  }

  std::vector<const Element*> children(std::string_view id) const {
    std::vector<const Element*> out;
    for (const auto& level : levels) {
      for (const auto& e : level.members) {
        if (e.parent && *e.parent == id) out.push_back(&e);
      }
    }
    return out;
  }

  bool has_children(std::string_view id) const { return !children(id).empty(); }

  std::vector<const Element*> group_members(std::string_view tag) const {
    std::vector<const Element*> out;
    for (const auto& level : levels) {
      for (const auto& e : level.members) {
        if (e.is_relationship() && e.alt_group && *e.alt_group == tag) out.push_back(&e);
      }
    }
    return out;
  }

  /// Group tags in order of first appearance.
  std::vector<std::string> group_tags() const {
    std::vector<std::string> out;
    for (const Element* e : elements()) {
      if (e->is_relationship() && e->alt_group &&
          std::find(out.begin(), out.end(), *e->alt_group) == out.end()) {
        out.push_back(*e->alt_group);
      }
    }
    return out;
  }

  const Denotation* denotation_of_outcome(std::string_view outcome) const {
    for (const auto& d : denotations) {
      if (d.outcome == outcome) return &d;
    }
    return nullptr;
  }

  const Denotation* denotation_of_relation(std::string_view relation) const {
    for (const auto& d : denotations) {
      if (d.relation == relation) return &d;
    }
    return nullptr;
  }

  friend bool operator==(const Structure& a, const Structure& b) {
    return a.name == b.name && a.levels == b.levels && a.denotations == b.denotations;
  }
};

enum class ViolationKind {
  InvalidIdentifier,
  DuplicateElement,
  EmptyStructure,
  EmptyLevel,
  LevelMismatch,
  MissingPivotalRelation,
  MissingParent,
  UnknownParent,
  StratificationViolation,
  RoleOnRelationship,
  AttributeOnEntity,
  OpaqueHasChildren,
  AltGroupSplit,
  UnnormalizedAlternatives,
  InvalidDenotation,
  NonUnivocal,
};

constexpr std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::InvalidIdentifier: return "InvalidIdentifier";
    case ViolationKind::DuplicateElement: return "DuplicateElement";
    case ViolationKind::EmptyStructure: return "EmptyStructure";
    case ViolationKind::EmptyLevel: return "EmptyLevel";
    case ViolationKind::LevelMismatch: return "LevelMismatch";
    case ViolationKind::MissingPivotalRelation: return "MissingPivotalRelation";
    case ViolationKind::MissingParent: return "MissingParent";
    case ViolationKind::UnknownParent: return "UnknownParent";
    case ViolationKind::StratificationViolation: return "StratificationViolation";
    case ViolationKind::RoleOnRelationship: return "RoleOnRelationship";
    case ViolationKind::AttributeOnEntity: return "AttributeOnEntity";
    case ViolationKind::OpaqueHasChildren: return "OpaqueHasChildren";
    case ViolationKind::AltGroupSplit: return "AltGroupSplit";
    case ViolationKind::UnnormalizedAlternatives: return "UnnormalizedAlternatives";
    case ViolationKind::InvalidDenotation: return "InvalidDenotation";
    case ViolationKind::NonUnivocal: return "NonUnivocal";
  }
  return "Unknown";
}

struct Violation {
  ViolationKind kind;
  std::string element;  // offending element id, group tag, or structure name
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

namespace detail {

struct GroupSum {
  Rational assigned;
  std::size_t assigned_count = 0;
  std::size_t size = 0;
};

inline GroupSum group_sum(const Structure& s, std::string_view tag) {
  GroupSum sum;
  for (const Element* e : s.group_members(tag)) {
    ++sum.size;
    if (e->probability) {
      sum.assigned = sum.assigned + e->probability->value();
      ++sum.assigned_count;
    }
  }
  return sum;
}

/// A group is consistent when its assigned mass never exceeds one and, once
/// every member is assigned, equals one (both within 1e-9).
inline bool group_is_normalized(const GroupSum& sum) {
  const Rational one = Rational::integer(1);
  if (sum.assigned_count == sum.size) return within_nano(sum.assigned, one);
  return sum.assigned <= one || within_nano(sum.assigned, one);
}

}  // namespace detail

/// Checks every structural invariant; returns an empty list iff all hold.
/// Pure: never modifies `s`, and repeated calls return identical lists.
inline std::vector<Violation> validate(const Structure& s) {
  std::vector<Violation> out;
  auto report = [&out](ViolationKind kind, const std::string& element, std::string message) {
    out.push_back(Violation{kind, element, std::move(message)});
  };

  if (!is_valid_identifier(s.name)) {
    report(ViolationKind::InvalidIdentifier, s.name, "structure name '" + s.name + "' is not an identifier");
  }
  if (s.levels.empty()) {
    report(ViolationKind::EmptyStructure, s.name, "structure has no levels");
    return out;
  }

  std::set<std::string, std::less<>> seen;
  for (std::size_t index = 0; index < s.levels.size(); ++index) {
    const int level_no = static_cast<int>(index) + 1;
    const Level& level = s.levels[index];
    if (level.members.empty()) {
      report(ViolationKind::EmptyLevel, s.name, "level " + std::to_string(level_no) + " is empty");
    }
    for (const Element& e : level.members) {
      if (!is_valid_identifier(e.id)) {
        report(ViolationKind::InvalidIdentifier, e.id, "'" + e.id + "' is not an identifier");
      }
      if (!seen.insert(e.id).second) {
        report(ViolationKind::DuplicateElement, e.id, "'" + e.id + "' is declared more than once");
      }
      if (e.level != level_no) {
        report(ViolationKind::LevelMismatch, e.id,
               "'" + e.id + "' records level " + std::to_string(e.level) + " but sits at level " +
                   std::to_string(level_no));
      }
      if (e.parent) {
        const Element* parent = s.find(*e.parent);
        if (parent == nullptr) {
          report(ViolationKind::UnknownParent, e.id, "'" + e.id + "' names unknown parent '" + *e.parent + "'");
        } else if (parent->level != level_no - 1) {
          report(ViolationKind::StratificationViolation, e.id,
                 "'" + e.id + "' at level " + std::to_string(level_no) + " has parent '" + parent->id +
                     "' at level " + std::to_string(parent->level) + ", expected level " +
                     std::to_string(level_no - 1));
        }
      } else if (level_no >= 2) {
        report(ViolationKind::MissingParent, e.id,
               "'" + e.id + "' at level " + std::to_string(level_no) + " has no parent");
      }
      if (e.is_relationship()) {
        if (e.role != Role::Plain) {
          report(ViolationKind::RoleOnRelationship, e.id, "relationship '" + e.id + "' cannot be an input or output");
        }
        if (e.opaque && s.has_children(e.id)) {
          report(ViolationKind::OpaqueHasChildren, e.id, "opaque relationship '" + e.id + "' lists sub-elements");
        }
      } else if (e.opaque || e.alt_group || e.probability) {
        report(ViolationKind::AttributeOnEntity, e.id,
               "entity '" + e.id + "' carries a relationship-only attribute (opaque, alt or p)");
      }
    }
  }

  const bool has_pivot = std::any_of(s.levels.front().members.begin(), s.levels.front().members.end(),
                                     [](const Element& e) { return e.is_relationship(); });
  if (!has_pivot) {
    report(ViolationKind::MissingPivotalRelation, s.name, "level 1 of '" + s.name + "' has no relationship");
  }

  for (const std::string& tag : s.group_tags()) {
    const auto members = s.group_members(tag);
    const Element* first = members.front();
    for (const Element* e : members) {
      if (e->level != first->level || e->parent != first->parent) {
        report(ViolationKind::AltGroupSplit, e->id,
               "alternative group '" + tag + "' spans different levels or parents ('" + first->id + "' vs '" +
                   e->id + "')");
        break;
      }
    }
    const auto sum = detail::group_sum(s, tag);
    if (!detail::group_is_normalized(sum)) {
      report(ViolationKind::UnnormalizedAlternatives, tag,
             "alternative group '" + tag + "' has mass " + sum.assigned.to_string() + ", expected 1");
    }
  }

  std::set<std::string, std::less<>> outcomes, relations;
  for (const Denotation& d : s.denotations) {
    const Element* outcome = s.find(d.outcome);
    const Element* relation = s.find(d.relation);
    if (outcome == nullptr || !outcome->is_entity() || outcome->role != Role::Output) {
      report(ViolationKind::InvalidDenotation, d.outcome, "'" + d.outcome + "' is not an output entity");
    }
    if (relation == nullptr || !relation->is_relationship()) {
      report(ViolationKind::InvalidDenotation, d.relation, "'" + d.relation + "' is not a relationship");
    }
    if (!outcomes.insert(d.outcome).second) {
      report(ViolationKind::NonUnivocal, d.outcome, "'" + d.outcome + "' denotes more than one relationship");
    }
    if (!relations.insert(d.relation).second) {
      report(ViolationKind::NonUnivocal, d.relation, "'" + d.relation + "' is denoted by more than one outcome");
    }
  }
  return out;
}

inline void require_valid(const Structure& s) {
  const auto violations = validate(s);
  if (!violations.empty()) {
    throw Error(ErrorCode::InvalidStructure, s.name + ": " + violations.front().message);
  }
}

namespace detail {

inline Element make_element(const Member& m, int level, std::optional<std::string> parent) {
  if (!is_valid_identifier(m.id)) {
    throw Error(ErrorCode::InvalidIdentifier, "'" + m.id + "' is not an identifier");
  }
  return Element{m.id, m.kind, level, std::move(parent), m.role, m.opaque, m.alt_group, m.probability};
}

inline void require_fresh(const Structure& s, const std::vector<Member>& members) {
  std::set<std::string, std::less<>> names;
  for (const Member& m : members) {
    if (s.find(m.id) != nullptr || !names.insert(m.id).second) {
      throw Error(ErrorCode::DuplicateElement, "'" + m.id + "' already exists in " + s.name);
    }
  }
}

}  // namespace detail

/// S = (E_in, E_out; R). Either entity may be absent.
inline Structure new_event_structure(const std::string& name, const std::optional<std::string>& input,
                                     const std::optional<std::string>& output, const std::string& relation) {
  if (!is_valid_identifier(name)) {
    throw Error(ErrorCode::InvalidIdentifier, "'" + name + "' is not an identifier");
  }
  std::vector<Member> members;
  if (input) members.push_back(entity(*input, Role::Input));
  if (output) members.push_back(entity(*output, Role::Output));
  members.push_back(relationship(relation));

  Structure s;
  s.name = name;
  detail::require_fresh(s, members);
  s.levels.emplace_back();
  for (const Member& m : members) s.levels[0].members.push_back(detail::make_element(m, 1, std::nullopt));
  return s;
}

/// Explodes `element` into `children` one level further down.
inline Structure expand(const Structure& s, std::string_view element, const std::vector<Member>& children) {
  const Element& target = s.at(element);
  if (target.is_relationship() && target.opaque) {
    throw Error(ErrorCode::OpaqueExpansion, "'" + target.id + "' is opaque; its sub-mechanisms are not listed");
  }
  if (children.empty()) throw Error(ErrorCode::InvalidArgument, "no children to add under '" + target.id + "'");
  detail::require_fresh(s, children);

  Structure out = s;
  const int child_level = target.level + 1;
  if (static_cast<std::size_t>(child_level) > out.levels.size()) out.levels.resize(child_level);
  auto& members = out.levels[child_level - 1].members;
  for (const Member& m : children) members.push_back(detail::make_element(m, child_level, target.id));
  require_valid(out);
  return out;
}

/// Removes every descendant of `element` along with denotations touching
/// them, then drops trailing empty levels. Inverse of expand.
inline Structure remove_children(const Structure& s, std::string_view element) {
  s.at(element);
  std::set<std::string, std::less<>> doomed;
  std::vector<std::string> frontier{std::string(element)};
  while (!frontier.empty()) {
    const std::string current = frontier.back();
    frontier.pop_back();
    for (const Element* c : s.children(current)) {
      doomed.insert(c->id);
      frontier.push_back(c->id);
    }
  }

  Structure out = s;
  for (auto& level : out.levels) {
    std::erase_if(level.members, [&](const Element& e) { return doomed.contains(e.id); });
  }
  std::erase_if(out.denotations, [&](const Denotation& d) {
    return doomed.contains(d.outcome) || doomed.contains(d.relation);
  });
  while (!out.levels.empty() && out.levels.back().members.empty()) out.levels.pop_back();
  return out;
}

/// Splits childless relationship `r` into the binary alternative group
/// {branch, not_branch} tagged with r's id. When r is the denoted target of
/// an outcome E, the denotation moves to `branch` and a complementary output
/// entity not_E is added under r and denoted to not_branch.
inline Structure complement_expand(const Structure& s, std::string_view r, const std::string& branch) {
  const Element& target = s.at(r);
  if (!target.is_relationship()) {
    throw Error(ErrorCode::NotARelationship, "'" + target.id + "' is an entity");
  }
  if (s.has_children(target.id)) {
    throw Error(ErrorCode::AlreadyExpanded, "'" + target.id + "' already has sub-elements");
  }
  if (target.opaque) {
    throw Error(ErrorCode::OpaqueExpansion, "'" + target.id + "' is opaque; its sub-mechanisms are not listed");
  }
  if (!s.group_members(target.id).empty()) {
    throw Error(ErrorCode::DuplicateElement, "alternative group '" + target.id + "' already exists");
  }

  const std::string negated = "not_" + branch;
  std::vector<Member> children{relationship(branch).in_group(target.id), relationship(negated).in_group(target.id)};

  const Denotation* denoted = s.denotation_of_relation(target.id);
  std::optional<std::string> outcome;
  if (denoted != nullptr) {
    outcome = denoted->outcome;
    children.push_back(entity("not_" + *outcome, Role::Output));
  }

  Structure out = expand(s, target.id, children);
  if (outcome) {
    for (auto& d : out.denotations) {
      if (d.relation == target.id) d.relation = branch;
    }
    out.denotations.push_back(Denotation{"not_" + *outcome, negated});
  }
  require_valid(out);
  return out;
}

inline Structure complement_expand(const Structure& s, std::string_view r) {
  return complement_expand(s, r, std::string(r) + "_i");
}

enum class Certainty { Certain, Uncertain };

struct Classification {
  Certainty kind = Certainty::Certain;
  std::vector<std::string> opaque_elements;
};

/// Certain iff no relationship is declared opaque.
inline Classification classify(const Structure& s) {
  require_valid(s);
  Classification c;
  for (const Element* e : s.elements()) {
    if (e->is_relationship() && e->opaque) c.opaque_elements.push_back(e->id);
  }
  c.kind = c.opaque_elements.empty() ? Certainty::Certain : Certainty::Uncertain;
  return c;
}

}  // namespace levels
