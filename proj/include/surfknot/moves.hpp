#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "surfknot/diagram.hpp"

namespace surfknot {

/// One side of a move: nodes over symbolic semiarc labels, direct joins
/// between boundary labels (`J a b`), and free loops (`O k`).
struct Pattern {
  std::vector<Node> nodes;
  std::vector<std::array<int, 2>> joins;
  int loops = 0;
};

/// A move variant. Every boundary label occurs once on each side; all other
/// labels are internal and occur twice.
struct MoveRule {
  std::vector<int> boundary;
  Pattern lhs;
  Pattern rhs;
};

struct MoveSchema {
  std::string id;  // e.g. "Y4'"
  std::vector<MoveRule> variants;
};

/// Parses a fragment file: `BOUNDARY ...`, `LHS`, items, `RHS`, items,
/// repeated once per variant. `source` names the file in error messages.
MoveSchema parse_schema(const std::string& id, const std::string& text, const std::string& source);

/// The shipped catalog: Y1, Y1', Y2, Y3, Y4, Y4', Y5, Y6, Y6', Y7, Y8.
const std::vector<MoveSchema>& move_catalog();
std::vector<std::string> move_ids();
/// Throws Error(UnknownMove).
const MoveSchema& find_move(const std::string& id);

enum class Direction { Forward, Backward };

/// A match of one side of a move inside a specific diagram.
struct MoveSite {
  std::string move_id;
  int variant = 0;
  Direction direction = Direction::Forward;
  std::vector<int> matched_nodes;     // 0-based, in pattern order
  std::vector<int> rotations;         // per matched node
  std::vector<int> matched_semiarcs;  // internal semiarcs, or the joined ones (0 = free loop)
  std::vector<int> flips;             // per join: which end of the semiarc is the first label
  std::uint64_t fingerprint = 0;      // of the diagram the site was found in
};

std::uint64_t diagram_fingerprint(const Diagram& d);

/// Every match of either side of the move, in a deterministic order.
std::vector<MoveSite> applicable_sites(const Diagram& d, const std::string& move_id);

/// Rewrites the matched side into the other one. Throws Error(StaleSite)
/// with the first mismatch when `site` does not belong to `d`.
Diagram apply_move(const Diagram& d, const MoveSite& site);

/// Applies split/merge moves until a single naive component remains.
Diagram merge_components(const Diagram& d);

/// Removes the virtual nodes along `path` (consecutive semiarcs joined by
/// straight passages through virtual nodes) and reroutes the strand so it
/// crosses the semiarcs in `route` virtually, in that order. Semiarc ids in
/// `route` refer to `d` and must not lie on the path.
Diagram detour(const Diagram& d, const std::vector<int>& path, const std::vector<int>& route);

std::string to_string(Direction dir);
std::string describe(const MoveSite& site);

}  // namespace surfknot
