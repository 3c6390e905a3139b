#pragma once

#include <array>
#include <vector>

#include "surfknot/diagram.hpp"

namespace surfknot::detail {

/// Mutable end-graph view of a diagram used by every rewrite.
///
/// End e = 4 * node + slot. `link` pairs ends along semiarcs. A dissolved
/// node keeps its ends as dead pass-through points (`thru`), so strands that
/// ran into it continue on the other side; chains of dead ends are collapsed
/// when converting back, and closed chains become free loops.
class Wiring {
 public:
  explicit Wiring(const Diagram& d);

  int node_count() const { return static_cast<int>(kinds_.size()); }
  bool alive(int node) const { return alive_[static_cast<std::size_t>(node)]; }
  NodeKind kind(int node) const { return kinds_[static_cast<std::size_t>(node)]; }
  int marker(int node) const { return markers_[static_cast<std::size_t>(node)]; }
  int link(int end) const { return link_[static_cast<std::size_t>(end)]; }

  int add_node(NodeKind kind, int marker);
  /// A dead two-ended connector: ends 4p and 4p+1 pass through to each other.
  int add_connector();
  void connect(int e1, int e2);
  /// Kills a node; `pairs` lists the slot pairs that become pass-throughs.
  void dissolve(int node, const std::vector<std::array<int, 2>>& pairs);
  void add_free_loops(int k) { free_loops_ += k; }

  /// The live end reached from live end `e` by following its semiarc.
  int resolve(int e) const;

  /// Live nodes in index order, semiarcs numbered by first appearance.
  Diagram to_diagram() const;

 private:
  std::vector<NodeKind> kinds_;
  std::vector<int> markers_;
  std::vector<bool> alive_;
  std::vector<int> link_;
  std::vector<int> thru_;
  int free_loops_ = 0;
};

/// (node, slot) pairs where each semiarc occurs, indexed by semiarc id.
/// Occurrences are ordered by node index, then slot.
std::vector<std::array<int, 2>> semiarc_ends(const Diagram& d);

}  // namespace surfknot::detail
