#include "surfknot/coloring.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <thread>

#include "surfknot/parallel.hpp"

namespace surfknot {

namespace {

int find_root(std::vector<int>& p, int x) {
  while (p[static_cast<std::size_t>(x)] != x) {
    p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
    x = p[static_cast<std::size_t>(x)];
  }
  return x;
}

// Backtracking over equivalence classes of semiarcs (saddles and virtual
// passages force equality). Classical nodes are functional constraints
// (u1, o1) -> (u2, o2) used for forward propagation.
class Solver {
 public:
  Solver(const Diagram& d, const BikeiTable& t, bool id_order) : t_(t), m_(semiarc_count(d)) {
    std::vector<int> p(static_cast<std::size_t>(m_ + 1));
    std::iota(p.begin(), p.end(), 0);
    auto join = [&](int a, int b) { p[static_cast<std::size_t>(find_root(p, a))] = find_root(p, b); };
    for (const auto& n : d.nodes) {
      if (n.kind == NodeKind::Saddle) {
        join(n.slots[0], n.slots[1]);
        join(n.slots[1], n.slots[2]);
        join(n.slots[2], n.slots[3]);
      } else if (n.kind == NodeKind::Virtual) {
        join(n.slots[0], n.slots[2]);
        join(n.slots[1], n.slots[3]);
      }
    }
    class_of_.assign(static_cast<std::size_t>(m_ + 1), -1);
    std::vector<int> root_class(static_cast<std::size_t>(m_ + 1), -1);
    auto cls = [&](int s) {
      const int r = find_root(p, s);
      if (root_class[static_cast<std::size_t>(r)] < 0) root_class[static_cast<std::size_t>(r)] = classes_++;
      return root_class[static_cast<std::size_t>(r)];
    };
    for (int s = 1; s <= m_; ++s) class_of_[static_cast<std::size_t>(s)] = cls(s);
    watch_.resize(static_cast<std::size_t>(classes_));
    for (const auto& n : d.nodes) {
      if (n.kind != NodeKind::Classical) continue;
      const std::array<int, 4> c{class_of_[static_cast<std::size_t>(n.slots[0])], class_of_[static_cast<std::size_t>(n.slots[1])],
                                 class_of_[static_cast<std::size_t>(n.slots[2])], class_of_[static_cast<std::size_t>(n.slots[3])]};
      const int idx = static_cast<int>(rules_.size());
      rules_.push_back(c);
      watch_[static_cast<std::size_t>(c[0])].push_back(idx);
      if (c[1] != c[0]) watch_[static_cast<std::size_t>(c[1])].push_back(idx);
    }
    // branching order: by semiarc id, or along naive-component traversal
    std::vector<bool> listed(static_cast<std::size_t>(classes_), false);
    auto take = [&](int s) {
      const int c = class_of_[static_cast<std::size_t>(s)];
      if (!listed[static_cast<std::size_t>(c)]) {
        listed[static_cast<std::size_t>(c)] = true;
        order_.push_back(c);
      }
    };
    if (id_order) {
      for (int s = 1; s <= m_; ++s) take(s);
    } else {
      for (const auto& comp : naive_components(d))
        for (int s : comp.semiarcs) take(s);
    }
    val_.assign(static_cast<std::size_t>(classes_), -1);
  }

  int order_size() const { return static_cast<int>(order_.size()); }
  int first_class() const { return order_.empty() ? -1 : order_[0]; }

  // Assigns and propagates; on failure the trail is already unwound to `mark`.
  bool assign(int c, int v, std::size_t mark) {
    if (!set(c, v)) {
      undo(mark);
      return false;
    }
    for (std::size_t q = mark; q < trail_.size(); ++q) {
      const int cur = trail_[q];
      for (int r : watch_[static_cast<std::size_t>(cur)]) {
        const auto& k = rules_[static_cast<std::size_t>(r)];
        const int u1 = val_[static_cast<std::size_t>(k[0])], o1 = val_[static_cast<std::size_t>(k[1])];
        if (u1 < 0 || o1 < 0) continue;
        if (!set(k[2], t_.up(u1, o1)) || !set(k[3], t_.down(o1, u1))) {
          undo(mark);
          return false;
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      val_[static_cast<std::size_t>(trail_.back())] = -1;
      trail_.pop_back();
    }
  }

  std::size_t trail_size() const { return trail_.size(); }

  std::uint64_t count(int depth) {
    while (depth < order_size() && val_[static_cast<std::size_t>(order_[static_cast<std::size_t>(depth)])] >= 0) ++depth;
    if (depth == order_size()) return 1;
    const int c = order_[static_cast<std::size_t>(depth)];
    std::uint64_t total = 0;
    for (int v = 0; v < t_.order(); ++v) {
      const std::size_t mark = trail_size();
      if (!assign(c, v, mark)) continue;
      total += count(depth + 1);
      undo(mark);
    }
    return total;
  }

  template <class Visit>
  bool list(int depth, Visit& visit) {
    while (depth < order_size() && val_[static_cast<std::size_t>(order_[static_cast<std::size_t>(depth)])] >= 0) ++depth;
    if (depth == order_size()) {
      std::vector<int> a(static_cast<std::size_t>(m_));
      for (int s = 1; s <= m_; ++s) a[static_cast<std::size_t>(s - 1)] = val_[static_cast<std::size_t>(class_of_[static_cast<std::size_t>(s)])] + 1;
      return visit(a);
    }
    const int c = order_[static_cast<std::size_t>(depth)];
    for (int v = 0; v < t_.order(); ++v) {
      const std::size_t mark = trail_size();
      if (!assign(c, v, mark)) continue;
      const bool more = list(depth + 1, visit);
      undo(mark);
      if (!more) return false;
    }
    return true;
  }

 private:
  bool set(int c, int v) {
    int& cur = val_[static_cast<std::size_t>(c)];
    if (cur >= 0) return cur == v;
    cur = v;
    trail_.push_back(c);
    return true;
  }

  const BikeiTable& t_;
  int m_;
  int classes_ = 0;
  std::vector<int> class_of_;
  std::vector<std::array<int, 4>> rules_;
  std::vector<std::vector<int>> watch_;
  std::vector<int> order_;
  std::vector<int> val_;
  std::vector<int> trail_;
};

std::uint64_t power(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

std::uint64_t color_count(const Diagram& d, const BikeiTable& t, unsigned workers) {
  const std::uint64_t loops = power(static_cast<std::uint64_t>(t.order()), d.free_loops);
  Solver probe(d, t, false);
  const int first = probe.first_class();
  if (first < 0) return loops;
  if (workers == 0) workers = worker_count();
  workers = std::min<unsigned>(workers, static_cast<unsigned>(t.order()));
  // small searches are not worth the thread start-up
  if (workers <= 1 || semiarc_count(d) < 16) return probe.count(0) * loops;

  std::vector<std::uint64_t> partial(static_cast<std::size_t>(t.order()), 0);
  auto work = [&](unsigned id) {
    Solver s(d, t, false);
    for (int v = static_cast<int>(id); v < t.order(); v += static_cast<int>(workers))
      if (s.assign(first, v, 0)) {
        partial[static_cast<std::size_t>(v)] = s.count(1);
        s.undo(0);
      }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < workers; ++id) pool.emplace_back(work, id);
  work(0);
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (auto x : partial) total += x;
  return total * loops;
}

std::vector<Coloring> colorings(const Diagram& d, const BikeiTable& t, std::size_t limit) {
  std::vector<Coloring> out;
  if (limit == 0) return out;
  Solver s(d, t, true);
  const int n = t.order();
  auto visit = [&](const std::vector<int>& a) {
    std::vector<int> loops(static_cast<std::size_t>(d.free_loops), 1);
    while (true) {
      out.push_back({a, loops});
      if (out.size() >= limit) return false;
      int k = d.free_loops - 1;
      while (k >= 0 && loops[static_cast<std::size_t>(k)] == n) loops[static_cast<std::size_t>(k--)] = 1;
      if (k < 0) return true;
      ++loops[static_cast<std::size_t>(k)];
    }
  };
  s.list(0, visit);
  return out;
}

bool is_coloring(const Diagram& d, const BikeiTable& t, const Coloring& c) {
  const int m = semiarc_count(d);
  if (static_cast<int>(c.assignment.size()) != m) return false;
  if (static_cast<int>(c.loop_colors.size()) != d.free_loops) return false;
  for (int v : c.assignment)
    if (v < 1 || v > t.order()) return false;
  for (int v : c.loop_colors)
    if (v < 1 || v > t.order()) return false;
  auto col = [&](int s) { return c.assignment[static_cast<std::size_t>(s - 1)] - 1; };
  for (const auto& n : d.nodes) {
    const auto& s = n.slots;
    switch (n.kind) {
      case NodeKind::Classical:
        if (col(s[2]) != t.up(col(s[0]), col(s[1])) || col(s[3]) != t.down(col(s[1]), col(s[0]))) return false;
        break;
      case NodeKind::Saddle:
        if (col(s[0]) != col(s[1]) || col(s[1]) != col(s[2]) || col(s[2]) != col(s[3])) return false;
        break;
      case NodeKind::Virtual:
        if (col(s[0]) != col(s[2]) || col(s[1]) != col(s[3])) return false;
        break;
    }
  }
  return true;
}

bool two_colorable(const Diagram& d) {
  const int m = semiarc_count(d);
  std::vector<int> parent(static_cast<std::size_t>(m + 1)), parity(parent.size(), 0);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    int p = 0;
    while (parent[static_cast<std::size_t>(x)] != x) {
      p ^= parity[static_cast<std::size_t>(x)];
      x = parent[static_cast<std::size_t>(x)];
    }
    return std::pair{x, p};
  };
  auto unite = [&](int a, int b, int p) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == p;
    parent[static_cast<std::size_t>(ra)] = rb;
    parity[static_cast<std::size_t>(ra)] = pa ^ pb ^ p;
    return true;
  };
  for (const auto& n : d.nodes) {
    const auto& s = n.slots;
    bool ok = true;
    switch (n.kind) {
      case NodeKind::Classical: ok = unite(s[0], s[2], 1) && unite(s[1], s[3], 1); break;
      case NodeKind::Saddle: ok = unite(s[0], s[1], 0) && unite(s[1], s[2], 0) && unite(s[2], s[3], 0); break;
      case NodeKind::Virtual: ok = unite(s[0], s[2], 0) && unite(s[1], s[3], 0); break;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace surfknot
