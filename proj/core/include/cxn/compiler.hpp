#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cxn/conllc.hpp"
#include "cxn/topic.hpp"

namespace cxn {

/// Identity link from the owning node to `target` (a node index).
struct IdentityLink {
  conllc::FieldRef field;
  std::optional<std::string> relation;
  std::size_t target = 0;

  bool operator==(const IdentityLink&) const = default;
};

struct NodeConstraint {
  std::string row_id;
  std::optional<std::string> form;
  std::optional<std::string> lemma;
  std::optional<std::string> upos;
  std::map<std::string, std::string> feats;
  bool required = true;
  conllc::Adjacency adjacency = conllc::Adjacency::Strict;  // link from the preceding node
  std::optional<Topic> onto_class;
  std::optional<std::string> aktionsart;  // stored, never evaluated
  std::vector<conllc::WithoutConstraint> without;
  std::vector<IdentityLink> identity;

  bool operator==(const NodeConstraint&) const = default;
};

struct PatternEdge {
  std::size_t head = 0;
  std::size_t dependent = 0;
  std::optional<std::string> deprel;

  bool operator==(const PatternEdge&) const = default;
};

struct OrderLink {
  std::size_t before = 0;
  std::size_t after = 0;
  conllc::Adjacency adjacency = conllc::Adjacency::Strict;

  bool operator==(const OrderLink&) const = default;
};

/// Executable form of a construction: one node per row, in row order.
struct Pattern {
  std::string cxn_id;
  std::vector<NodeConstraint> nodes;
  std::vector<PatternEdge> edges;  // sorted by dependent
  std::vector<OrderLink> order;    // between consecutive required nodes
  std::size_t root = 0;

  /// Head edge of `node`, if it attaches to another node.
  const PatternEdge* edge_into(std::size_t node) const;

  bool operator==(const Pattern&) const = default;
};

/// Throws cxn::Error listing the validation errors when the definition has any.
Pattern compile(const conllc::CxnDef& def);

/// Canonical Grew query text for the pattern. Optional nodes, OntoClass,
/// Aktionsart and IDENTITY constraints go to a trailing "% unexpressed:" line.
std::string emit_grew(const Pattern& pattern);

}  // namespace cxn
