#include "surfknot/bikei.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "surfknot/error.hpp"
#include "surfknot/parallel.hpp"

namespace surfknot {

BikeiTable::BikeiTable(int order, std::vector<int> up, std::vector<int> down)
    : order_(order), up_(std::move(up)), down_(std::move(down)) {
  if (order_ < 1) throw Error(ErrorKind::MalformedTable, "order must be positive");
  const auto cells = static_cast<std::size_t>(order_ * order_);
  if (up_.size() != cells || down_.size() != cells)
    throw Error(ErrorKind::MalformedTable, "table size does not match order " + std::to_string(order_));
  for (std::size_t k = 0; k < cells; ++k) {
    const int i = static_cast<int>(k) / order_ + 1;
    const int j = static_cast<int>(k) % order_ + 1;
    if (up_[k] < 0 || up_[k] >= order_)
      throw Error(ErrorKind::MalformedTable, "entry at row " + std::to_string(i) + ", column " +
                                                 std::to_string(j) + " is " + std::to_string(up_[k] + 1) +
                                                 ", outside 1.." + std::to_string(order_));
    if (down_[k] < 0 || down_[k] >= order_)
      throw Error(ErrorKind::MalformedTable, "entry at row " + std::to_string(i) + ", column " +
                                                 std::to_string(order_ + j) + " is " +
                                                 std::to_string(down_[k] + 1) + ", outside 1.." +
                                                 std::to_string(order_));
  }
}

BikeiTable BikeiTable::from_matrix(const std::vector<std::vector<int>>& matrix) {
  const int n = static_cast<int>(matrix.size());
  if (n == 0) throw Error(ErrorKind::MalformedTable, "empty matrix");
  std::vector<int> up(static_cast<std::size_t>(n * n)), down(up.size());
  for (int i = 0; i < n; ++i) {
    const auto& row = matrix[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != 2 * n)
      throw Error(ErrorKind::MalformedTable, "row " + std::to_string(i + 1) + " has " +
                                                 std::to_string(row.size()) + " entries, expected " +
                                                 std::to_string(2 * n));
    for (int j = 0; j < n; ++j) {
      up[static_cast<std::size_t>(i * n + j)] = row[static_cast<std::size_t>(j)] - 1;
      down[static_cast<std::size_t>(i * n + j)] = row[static_cast<std::size_t>(n + j)] - 1;
    }
  }
  return BikeiTable(n, std::move(up), std::move(down));
}

std::vector<std::vector<int>> BikeiTable::matrix() const {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(order_),
                                  std::vector<int>(static_cast<std::size_t>(2 * order_)));
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) {
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = up(i, j) + 1;
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(order_ + j)] = down(i, j) + 1;
    }
  return m;
}

namespace {

// Lookup interface shared by full verification and the partial checks used
// while enumerating; -1 marks an entry that is not assigned yet.
struct Ops {
  int n;
  const int* up;
  const int* down;
  int u(int x, int y) const { return (x < 0 || y < 0) ? -1 : up[x * n + y]; }
  int d(int x, int y) const { return (x < 0 || y < 0) ? -1 : down[x * n + y]; }
};

bool differ(int a, int b) { return a >= 0 && b >= 0 && a != b; }

// Evaluates one axiom instance given 0-based witness elements. Returns true
// when the instance is violated (with all entries known).
bool violates(const Ops& o, const std::string& axiom, const std::vector<int>& w) {
  if (axiom == "i") return differ(o.u(w[0], w[0]), o.d(w[0], w[0]));
  if (axiom == "ii") {
    if (w[0] == w[2] && w[1] == w[3]) return false;
    const int a = o.d(w[1], w[0]), b = o.u(w[0], w[1]);
    const int c = o.d(w[3], w[2]), e = o.u(w[2], w[3]);
    return a >= 0 && b >= 0 && a == c && b == e;
  }
  const int x = w[0], y = w[1];
  if (axiom == "iv.up") return differ(o.u(o.u(x, y), y), x);
  if (axiom == "iv.down") return differ(o.d(o.d(x, y), y), x);
  if (axiom == "v") return differ(o.u(x, o.d(y, x)), o.u(x, y));
  if (axiom == "vi") return differ(o.d(x, o.u(y, x)), o.d(x, y));
  const int z = w[2];
  if (axiom == "iii.1") return differ(o.u(o.u(x, y), o.u(z, y)), o.u(o.u(x, z), o.d(y, z)));
  if (axiom == "iii.2") return differ(o.d(o.u(x, y), o.u(z, y)), o.u(o.d(x, z), o.d(y, z)));
  if (axiom == "iii.3") return differ(o.d(o.d(x, y), o.d(z, y)), o.d(o.d(x, z), o.u(y, z)));
  return false;
}

// All violated instances. With `stop_early`, returns after the first one.
std::vector<AxiomViolation> collect(const Ops& o, bool stop_early) {
  std::vector<AxiomViolation> out;
  const int n = o.n;
  auto hit = [&](const char* ax, std::vector<int> w) {
    if (!violates(o, ax, w)) return false;
    out.push_back({ax, std::move(w)});
    return stop_early;
  };
  for (int x = 0; x < n; ++x)
    if (hit("i", {x})) return out;
  {
    // pair map S(x, y) = (y_x, x^y); report each colliding pair once
    std::vector<int> first(static_cast<std::size_t>(n * n), -1);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const int a = o.d(y, x), b = o.u(x, y);
        if (a < 0 || b < 0) continue;
        int& slot = first[static_cast<std::size_t>(a * n + b)];
        if (slot < 0) {
          slot = x * n + y;
        } else if (hit("ii", {slot / n, slot % n, x, y})) {
          return out;
        }
      }
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (const char* ax : {"iii.1", "iii.2", "iii.3"})
          if (hit(ax, {x, y, z})) return out;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (const char* ax : {"iv.up", "iv.down", "v", "vi"})
        if (hit(ax, {x, y})) return out;
  return out;
}

std::vector<int> to_zero_based(std::vector<int> w) {
  for (int& v : w) --v;
  return w;
}

}  // namespace

AxiomReport verify_bikei(const BikeiTable& table) {
  Ops o{table.order(), table.up_table().data(), table.down_table().data()};
  AxiomReport report;
  report.violations = collect(o, false);
  for (auto& v : report.violations)
    for (int& e : v.witness) ++e;
  report.valid = report.violations.empty();
  return report;
}

bool witness_reproduces(const BikeiTable& table, const AxiomViolation& violation) {
  Ops o{table.order(), table.up_table().data(), table.down_table().data()};
  const auto w = to_zero_based(violation.witness);
  for (int e : w)
    if (e < 0 || e >= table.order()) return false;
  const std::size_t need = violation.axiom == "i" ? 1 : violation.axiom == "ii" ? 4
                           : violation.axiom.rfind("iii", 0) == 0                ? 3
                                                                                 : 2;
  if (w.size() != need) return false;
  return violates(o, violation.axiom, w);
}

BikeiTable alexander_bikei(int modulus, int s, int t) {
  if (modulus < 1) throw Error(ErrorKind::InvalidParameters, "modulus must be positive");
  const auto mod = [modulus](long v) { return static_cast<int>(((v % modulus) + modulus) % modulus); };
  s = mod(s);
  t = mod(t);
  if (mod(static_cast<long>(s) * s) != mod(1))
    throw Error(ErrorKind::InvalidParameters, "s^2 = 1 fails in Z_" + std::to_string(modulus));
  if (mod(static_cast<long>(t) * t) != mod(1))
    throw Error(ErrorKind::InvalidParameters, "t^2 = 1 fails in Z_" + std::to_string(modulus));
  if (mod(1 + t) != mod(static_cast<long>(s) * (1 + t)))
    throw Error(ErrorKind::InvalidParameters, "1 + t = s(1 + t) fails in Z_" + std::to_string(modulus));
  // index k (0-based) is element k+1, i.e. residue (k+1) mod m
  const auto residue = [&](int k) { return mod(k + 1); };
  const auto index = [&](int r) { return r == 0 ? modulus - 1 : r - 1; };
  const int n = modulus;
  std::vector<int> up(static_cast<std::size_t>(n * n)), down(up.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const long rx = residue(x), ry = residue(y);
      up[static_cast<std::size_t>(x * n + y)] = index(mod(t * rx + (s - t) * ry));
      down[static_cast<std::size_t>(x * n + y)] = index(mod(s * rx));
    }
  return BikeiTable(n, std::move(up), std::move(down));
}

BikeiTable core_bikei(const std::vector<std::vector<int>>& cayley, CoreSide side) {
  const int n = static_cast<int>(cayley.size());
  if (n == 0) throw Error(ErrorKind::InvalidGroup, "empty Cayley table");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(cayley[static_cast<std::size_t>(i)].size()) != n)
      throw Error(ErrorKind::InvalidGroup, "row " + std::to_string(i + 1) + " is not of length " + std::to_string(n));
    for (int v : cayley[static_cast<std::size_t>(i)])
      if (v < 1 || v > n)
        throw Error(ErrorKind::InvalidGroup, "entry " + std::to_string(v) + " in row " + std::to_string(i + 1) +
                                                 " is outside 1.." + std::to_string(n));
  }
  const auto mul = [&](int a, int b) { return cayley[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] - 1; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw Error(ErrorKind::InvalidGroup, "associativity fails for (" + std::to_string(a + 1) + ", " +
                                                   std::to_string(b + 1) + ", " + std::to_string(c + 1) + ")");
  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul(c, a) == a && mul(a, c) == a;
    if (ok) e = c;
  }
  if (e < 0) throw Error(ErrorKind::InvalidGroup, "no identity element");
  std::vector<int> inv(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == e && mul(b, a) == e) inv[static_cast<std::size_t>(a)] = b;
    if (inv[static_cast<std::size_t>(a)] < 0)
      throw Error(ErrorKind::InvalidGroup, "element " + std::to_string(a + 1) + " has no inverse");
  }
  std::vector<int> core(static_cast<std::size_t>(n * n)), trivial(core.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      core[static_cast<std::size_t>(x * n + y)] = mul(mul(y, inv[static_cast<std::size_t>(x)]), y);
      trivial[static_cast<std::size_t>(x * n + y)] = x;
    }
  if (side == CoreSide::Up) return BikeiTable(n, std::move(core), std::move(trivial));
  return BikeiTable(n, std::move(trivial), std::move(core));
}

FixedSet fixed_set(const BikeiTable& table) {
  FixedSet f;
  for (int x = 0; x < table.order(); ++x)
    if (table.up(x, x) == x && table.down(x, x) == x) f.members.push_back(x + 1);
  return f;
}

bool is_kei(const BikeiTable& table) {
  for (int x = 0; x < table.order(); ++x) {
    if (table.up(x, x) != x) return false;
    for (int y = 0; y < table.order(); ++y)
      if (table.down(x, y) != x) return false;
  }
  return true;
}

namespace {

// Combined row-major matrix, the comparison key for sorting and dedup.
std::vector<int> combined(int n, const std::vector<int>& up, const std::vector<int>& down) {
  std::vector<int> key;
  key.reserve(static_cast<std::size_t>(2 * n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) key.push_back(up[static_cast<std::size_t>(i * n + j)]);
    for (int j = 0; j < n; ++j) key.push_back(down[static_cast<std::size_t>(i * n + j)]);
  }
  return key;
}

std::vector<std::vector<int>> involutions(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = p[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] == i;
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Backtracking over columns: step 2k assigns up-column k, step 2k+1 the
// down-column k, each an involution. Partial tables are pruned whenever an
// axiom instance with all entries assigned already fails.
class Enumerator {
 public:
  explicit Enumerator(int n)
      : n_(n), inv_(involutions(n)), up_(static_cast<std::size_t>(n * n), -1), down_(up_.size(), -1) {}

  const std::vector<std::vector<int>>& choices() const { return inv_; }

  void run_from(std::size_t first_choice, std::vector<BikeiTable>& out) {
    std::fill(up_.begin(), up_.end(), -1);
    std::fill(down_.begin(), down_.end(), -1);
    if (assign(0, inv_[first_choice])) recurse(1, out);
  }

 private:
  bool assign(int step, const std::vector<int>& col) {
    auto& table = (step % 2 == 0) ? up_ : down_;
    const int y = step / 2;
    for (int x = 0; x < n_; ++x) table[static_cast<std::size_t>(x * n_ + y)] = col[static_cast<std::size_t>(x)];
    Ops o{n_, up_.data(), down_.data()};
    return collect(o, true).empty();
  }

  void clear(int step) {
    auto& table = (step % 2 == 0) ? up_ : down_;
    const int y = step / 2;
    for (int x = 0; x < n_; ++x) table[static_cast<std::size_t>(x * n_ + y)] = -1;
  }

  void recurse(int step, std::vector<BikeiTable>& out) {
    if (step == 2 * n_) {
      out.emplace_back(n_, up_, down_);
      return;
    }
    for (const auto& col : inv_) {
      if (assign(step, col)) recurse(step + 1, out);
      clear(step);
    }
  }

  int n_;
  std::vector<std::vector<int>> inv_;
  std::vector<int> up_, down_;
};

void sort_tables(std::vector<BikeiTable>& tables) {
  std::sort(tables.begin(), tables.end(), [](const BikeiTable& a, const BikeiTable& b) {
    return combined(a.order(), a.up_table(), a.down_table()) < combined(b.order(), b.up_table(), b.down_table());
  });
}

}  // namespace

BikeiTable canonical_form(const BikeiTable& table) {
  const int n = table.order();
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<int> best_up, best_down, best_key;
  std::vector<int> up(static_cast<std::size_t>(n * n)), down(up.size());
  do {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const auto k = static_cast<std::size_t>(sigma[static_cast<std::size_t>(x)] * n + sigma[static_cast<std::size_t>(y)]);
        up[k] = sigma[static_cast<std::size_t>(table.up(x, y))];
        down[k] = sigma[static_cast<std::size_t>(table.down(x, y))];
      }
    auto key = combined(n, up, down);
    if (best_key.empty() || key < best_key) {
      best_key = std::move(key);
      best_up = up;
      best_down = down;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return BikeiTable(n, std::move(best_up), std::move(best_down));
}

std::vector<BikeiTable> enumerate_bikei(int n, bool dedup, unsigned workers) {
  if (n < 1) throw Error(ErrorKind::InvalidParameters, "order must be positive");
  if (workers == 0) workers = worker_count();
  const std::size_t branches = Enumerator(n).choices().size();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, branches));
  std::vector<std::vector<BikeiTable>> parts(branches);
  auto work = [&](unsigned id) {
    Enumerator en(n);
    for (std::size_t b = id; b < branches; b += workers) en.run_from(b, parts[b]);
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < workers; ++id) pool.emplace_back(work, id);
  work(0);
  for (auto& th : pool) th.join();

  std::vector<BikeiTable> all;
  for (auto& p : parts)
    for (auto& t : p) all.push_back(dedup ? canonical_form(t) : std::move(t));
  sort_tables(all);
  if (dedup) all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace surfknot
