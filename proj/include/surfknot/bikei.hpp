#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace surfknot {

/// A finite bikei on {x_1..x_n} stored as its two operation tables.
///
/// The public surface is 1-based to match the n x 2n matrix layout used by
/// `.bikei` files: column j <= n of row i holds the index of x_i^{x_j}, column
/// n + j holds the index of (x_i)_{x_j}. The accessors `up` and `down` take and
/// return 0-based element indices, which is what the solvers work with.
class BikeiTable {
 public:
  /// Builds a table from 0-based row-major operation tables of size n*n.
  /// Throws Error(MalformedTable) naming the first out-of-range cell.
  BikeiTable(int order, std::vector<int> up, std::vector<int> down);

  /// Builds a table from the 1-based n x 2n matrix.
  static BikeiTable from_matrix(const std::vector<std::vector<int>>& matrix);

  int order() const noexcept { return order_; }
  int up(int x, int y) const noexcept { return up_[static_cast<std::size_t>(x * order_ + y)]; }
  int down(int x, int y) const noexcept { return down_[static_cast<std::size_t>(x * order_ + y)]; }

  /// The 1-based n x 2n matrix.
  std::vector<std::vector<int>> matrix() const;

  const std::vector<int>& up_table() const noexcept { return up_; }
  const std::vector<int>& down_table() const noexcept { return down_; }

  friend bool operator==(const BikeiTable&, const BikeiTable&) = default;

 private:
  int order_;
  std::vector<int> up_;
  std::vector<int> down_;
};

/// One failed axiom instance. Witness elements are 1-based.
struct AxiomViolation {
  std::string axiom;  // "i", "ii", "iii.1".."iii.3", "iv.up", "iv.down", "v", "vi"
  std::vector<int> witness;
};

struct AxiomReport {
  bool valid = true;
  std::vector<AxiomViolation> violations;
};

/// Checks every bikei axiom over all element tuples and returns all failures.
AxiomReport verify_bikei(const BikeiTable& table);

/// Re-evaluates a reported violation against the table; true if it still fails.
bool witness_reproduces(const BikeiTable& table, const AxiomViolation& violation);

/// Alexander bikei on Z_modulus: x^y = t x + (s - t) y, x_y = s x. Element
/// index k stands for the residue k mod modulus (so index n is 0).
/// Throws Error(InvalidParameters) unless s^2 = t^2 = 1 and 1 + t = s(1 + t).
BikeiTable alexander_bikei(int modulus, int s, int t);

/// Which operation carries the core rule y x^{-1} y; the other is trivial.
enum class CoreSide { Up, Down };

/// Core bikei of a finite group given by its 1-based Cayley table.
/// Throws Error(InvalidGroup) with a failing triple when the table is not a group.
BikeiTable core_bikei(const std::vector<std::vector<int>>& cayley, CoreSide side = CoreSide::Up);

/// F = { x : x^x = x_x = x }, 1-based and sorted.
struct FixedSet {
  std::vector<int> members;
  std::size_t size() const noexcept { return members.size(); }
};

FixedSet fixed_set(const BikeiTable& table);

/// True when x_y = x for all x, y and x^x = x for all x (an involutory quandle).
bool is_kei(const BikeiTable& table);

/// The relabeling of `table` whose combined matrix is lexicographically least.
BikeiTable canonical_form(const BikeiTable& table);

/// All bikei on n elements, sorted by combined matrix. With `dedup`, one
/// canonical representative per isomorphism class. `workers` = 0 uses
/// worker_count(); the result does not depend on it.
std::vector<BikeiTable> enumerate_bikei(int n, bool dedup, unsigned workers = 0);

}  // namespace surfknot
