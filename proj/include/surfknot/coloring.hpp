#pragma once

#include <cstdint>
#include <vector>

#include "surfknot/bikei.hpp"
#include "surfknot/diagram.hpp"

namespace surfknot {

/// A bikei labeling. `assignment[s - 1]` is the 1-based element on semiarc s;
/// `loop_colors` labels the free loops in order.
struct Coloring {
  std::vector<int> assignment;
  std::vector<int> loop_colors;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// The counting invariant: number of labelings of `d` by `t`.
/// `workers` = 0 uses worker_count(); the result does not depend on it.
std::uint64_t color_count(const Diagram& d, const BikeiTable& t, unsigned workers = 0);

/// Labelings in lexicographic order of (assignment, loop_colors), at most `limit`.
std::vector<Coloring> colorings(const Diagram& d, const BikeiTable& t, std::size_t limit);

/// Re-evaluates every node rule against a labeling.
bool is_coloring(const Diagram& d, const BikeiTable& t, const Coloring& c);

/// Whether `d` admits a labeling by Z_2 with x^y = x_y = x + 1.
bool two_colorable(const Diagram& d);

}  // namespace surfknot
