#pragma once

#include <array>
#include <string>
#include <vector>

namespace surfknot {

enum class NodeKind { Classical, Saddle, Virtual };

/// A 4-valent node. `slots` lists semiarc ids counterclockwise.
///
/// Classical: (u1, o1, u2, o2), under strand at slots 0 and 2.
/// Saddle:    (a, b, c, d) with marker m; for m = 0 the lower smoothing joins
///            a-b and c-d and the upper smoothing joins b-c and d-a.
/// Virtual:   (a, b, c, d), strands a-c and b-d.
struct Node {
  NodeKind kind = NodeKind::Classical;
  std::array<int, 4> slots{};
  int marker = 0;

  friend bool operator==(const Node&, const Node&) = default;
};

Node classical(int u1, int o1, int u2, int o2);
Node saddle(int a, int b, int c, int d, int m);
Node virtual_node(int a, int b, int c, int d);

/// A virtual marked vertex diagram: semiarcs are 1..m, each used twice.
struct Diagram {
  int free_loops = 0;
  std::vector<Node> nodes;

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

/// Every invariant violation, each naming the offending identifier.
std::vector<std::string> validation_errors(const Diagram& d);

/// Throws Error(InvalidDiagram) listing all failures.
void validate(const Diagram& d);

/// Largest semiarc id (m), assuming a valid diagram.
int semiarc_count(const Diagram& d);

/// Lexicographically least representative under the rotation identities.
/// Virtual nodes may be rotated by any quarter turn.
Node normalized(const Node& n);
Diagram normalized(const Diagram& d);

/// Applies `rot` quarter turns to a node: slot k of the result is slot
/// (k + rot) mod 4 of the input. Saddle markers flip on odd turns.
Node rotated(const Node& n, int rot);

struct NaiveComponent {
  std::vector<int> semiarcs;  // cyclic; empty for a free loop
};

/// Components traced by passing straight through every node (slot k to k+2).
std::vector<NaiveComponent> naive_components(const Diagram& d);

struct DiagramCounts {
  int c = 0;
  int h = 0;
  int v = 0;
  int ch = 0;
  int vch = 0;
};

DiagramCounts counts(const Diagram& d);

enum class Level { Lower, Upper };

/// Replaces every saddle by its smoothing at the given level.
Diagram smooth_saddles(const Diagram& d, Level level);

/// In/out data per node slot plus one direction bit per free loop.
struct Orientation {
  std::vector<std::array<bool, 4>> incoming;  // true = semiarc enters the node here
  std::vector<bool> loop_dirs;
};

struct OrientResult {
  bool orientable = false;
  Orientation orientation;     // set when orientable
  std::vector<int> witness;    // semiarcs along a contradictory constraint cycle
};

OrientResult orient(const Diagram& d);

/// True when `o` satisfies the pass-through and source-sink rules for `d`.
bool is_orientation(const Diagram& d, const Orientation& o);

struct SurfaceClass {
  int euler = 0;
  bool orientable = false;
  int genus_or_crosscaps = 0;
  bool assumes_closed_surface = true;  // smoothings are taken to be unlinks
};

SurfaceClass euler_characteristic(const Diagram& d);

/// Swaps over and under at a classical node (0-based index).
Diagram crossing_change(const Diagram& d, int node_index);

/// Genus of the ribbon surface carried by the classical and saddle nodes,
/// with virtual nodes treated as non-vertices. Summed over connected pieces.
int genus_of_projection(const Diagram& d);

/// Encoding invariant under node reordering, semiarc renumbering and the
/// node rotation identities.
std::vector<int> canonical_key(const Diagram& d);
bool isomorphic(const Diagram& a, const Diagram& b);

}  // namespace surfknot
