#pragma once

// Independent oracles for the tests: everything here is computed by direct
// enumeration from the definitions, without calling the library solvers.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "surfknot/bikei.hpp"
#include "surfknot/diagram.hpp"
#include "surfknot/gauss.hpp"
#include "surfknot/io.hpp"

namespace oracle {

using surfknot::BikeiTable;
using surfknot::Diagram;
using surfknot::GaussToken;
using surfknot::GaussWord;
using surfknot::Node;
using surfknot::NodeKind;
using surfknot::TokenKind;

inline std::string fixture(const std::string& name) { return std::string(SURFKNOT_FIXTURES) + "/" + name; }
inline Diagram load(const std::string& name) { return surfknot::read_mvd(fixture(name)); }
inline BikeiTable load_table(const std::string& name) { return surfknot::read_bikei(fixture(name)); }

inline Diagram mvd(const std::string& text) { return surfknot::parse_mvd(text, "inline"); }

inline const std::vector<std::string>& surface_fixtures() {
  static const std::vector<std::string> names{"0_1.mvd",    "8_1.mvd",       "torus.mvd",
                                              "genus2.mvd", "p2_plus.mvd",   "p2_minus.mvd",
                                              "klein.mvd",  "virtual_nonorientable.mvd"};
  return names;
}

inline const std::vector<std::string>& all_fixtures() {
  static const std::vector<std::string> names = [] {
    auto v = surface_fixtures();
    for (const char* extra : {"trefoil.mvd", "braid_trefoil.mvd", "braid_mixed.mvd"}) v.emplace_back(extra);
    return v;
  }();
  return names;
}

// 0-based tables: u[x][y] = x^y, w[x][y] = x_y.
using Op = std::vector<std::vector<int>>;

inline bool naive_bikei(int n, const Op& u, const Op& w) {
  for (int x = 0; x < n; ++x)
    if (u[x][x] != w[x][x]) return false;
  std::vector<bool> hit(static_cast<std::size_t>(n * n), false);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const auto h = static_cast<std::size_t>(w[y][x] * n + u[x][y]);
      if (hit[h]) return false;
      hit[h] = true;
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (u[u[x][y]][y] != x || w[w[x][y]][y] != x) return false;
      if (u[x][w[y][x]] != u[x][y] || w[x][u[y][x]] != w[x][y]) return false;
      for (int z = 0; z < n; ++z) {
        if (u[u[x][y]][u[z][y]] != u[u[x][z]][w[y][z]]) return false;
        if (w[u[x][y]][u[z][y]] != u[w[x][z]][w[y][z]]) return false;
        if (w[w[x][y]][w[z][y]] != w[w[x][z]][u[y][z]]) return false;
      }
    }
  return true;
}

inline Op up_op(const BikeiTable& t) {
  Op o(static_cast<std::size_t>(t.order()), std::vector<int>(static_cast<std::size_t>(t.order())));
  for (int x = 0; x < t.order(); ++x)
    for (int y = 0; y < t.order(); ++y) o[x][y] = t.up(x, y);
  return o;
}

inline Op down_op(const BikeiTable& t) {
  Op o(static_cast<std::size_t>(t.order()), std::vector<int>(static_cast<std::size_t>(t.order())));
  for (int x = 0; x < t.order(); ++x)
    for (int y = 0; y < t.order(); ++y) o[x][y] = t.down(x, y);
  return o;
}

inline bool naive_bikei(const BikeiTable& t) { return naive_bikei(t.order(), up_op(t), down_op(t)); }

inline std::vector<std::vector<int>> involutions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n; ++i) ok = ok && p[p[i]] == i;
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Every bikei of order n (n <= 3), found by filtering all tables whose
// columns are involutions, which the axiom (x^y)^y = (x_y)_y = x forces.
inline std::vector<BikeiTable> brute_bikei(int n) {
  const auto inv = involutions(n);
  const std::size_t k = inv.size();
  std::size_t total = 1;
  for (int i = 0; i < 2 * n; ++i) total *= k;
  std::vector<BikeiTable> out;
  for (std::size_t code = 0; code < total; ++code) {
    Op u(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    Op w = u;
    std::size_t c = code;
    for (int y = 0; y < n; ++y, c /= k)
      for (int x = 0; x < n; ++x) u[x][y] = inv[c % k][x];
    for (int y = 0; y < n; ++y, c /= k)
      for (int x = 0; x < n; ++x) w[x][y] = inv[c % k][x];
    if (!naive_bikei(n, u, w)) continue;
    std::vector<int> uf, wf;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        uf.push_back(u[x][y]);
        wf.push_back(w[x][y]);
      }
    out.emplace_back(n, uf, wf);
  }
  return out;
}

// All bikei with 1 <= n <= 3, computed once.
inline const std::vector<BikeiTable>& small_bikei() {
  static const std::vector<BikeiTable> all = [] {
    std::vector<BikeiTable> v;
    for (int n = 1; n <= 3; ++n)
      for (auto& t : brute_bikei(n)) v.push_back(std::move(t));
    return v;
  }();
  return all;
}

inline bool kei(const BikeiTable& t) {
  for (int x = 0; x < t.order(); ++x) {
    if (t.up(x, x) != x) return false;
    for (int y = 0; y < t.order(); ++y)
      if (t.down(x, y) != x) return false;
  }
  return true;
}

inline int fixed_count(const BikeiTable& t) {
  int f = 0;
  for (int x = 0; x < t.order(); ++x) f += t.up(x, x) == x && t.down(x, x) == x;
  return f;
}

inline int max_label(const Diagram& d) {
  int m = 0;
  for (const auto& n : d.nodes)
    for (int s : n.slots) m = std::max(m, s);
  return m;
}

inline bool satisfies(const Diagram& d, const BikeiTable& t, const std::vector<int>& a) {
  auto c = [&](int s) { return a[static_cast<std::size_t>(s - 1)]; };
  for (const auto& n : d.nodes) {
    const auto& s = n.slots;
    switch (n.kind) {
      case NodeKind::Classical:
        if (c(s[2]) != t.up(c(s[0]), c(s[1])) || c(s[3]) != t.down(c(s[1]), c(s[0]))) return false;
        break;
      case NodeKind::Saddle:
        if (c(s[0]) != c(s[1]) || c(s[0]) != c(s[2]) || c(s[0]) != c(s[3])) return false;
        break;
      case NodeKind::Virtual:
        if (c(s[0]) != c(s[2]) || c(s[1]) != c(s[3])) return false;
        break;
    }
  }
  return true;
}

// n^m labelings checked one by one, times n per free loop.
inline std::uint64_t brute_count(const Diagram& d, const BikeiTable& t) {
  const int m = max_label(d), n = t.order();
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  std::uint64_t count = 0;
  while (true) {
    count += satisfies(d, t, a);
    int k = 0;
    while (k < m && a[static_cast<std::size_t>(k)] == n - 1) a[static_cast<std::size_t>(k++)] = 0;
    if (k == m) break;
    ++a[static_cast<std::size_t>(k)];
  }
  for (int i = 0; i < d.free_loops; ++i) count *= static_cast<std::uint64_t>(n);
  return count;
}

// Tries all 2^m semiarc directions. The first occurrence (in node/slot
// scan order) of semiarc s is its head when bit s is set.
inline bool brute_orientable(const Diagram& d) {
  const int m = max_label(d);
  std::vector<std::array<int, 2>> occ(static_cast<std::size_t>(m + 1), {-1, -1});
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    for (int k = 0; k < 4; ++k) {
      auto& o = occ[static_cast<std::size_t>(d.nodes[i].slots[k])];
      (o[0] < 0 ? o[0] : o[1]) = static_cast<int>(i) * 4 + k;
    }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> in(d.nodes.size() * 4);
    for (int s = 1; s <= m; ++s) {
      const bool first_is_head = (mask >> (s - 1)) & 1;
      in[static_cast<std::size_t>(occ[s][0])] = first_is_head;
      in[static_cast<std::size_t>(occ[s][1])] = !first_is_head;
    }
    bool ok = true;
    for (std::size_t i = 0; ok && i < d.nodes.size(); ++i) {
      const int* io = &in[i * 4];
      if (d.nodes[i].kind == NodeKind::Saddle)
        ok = io[0] == io[2] && io[1] == io[3] && io[0] != io[1];
      else
        ok = io[0] != io[2] && io[1] != io[3];
    }
    if (ok) return true;
  }
  return false;
}

// Random diagram: `count` nodes of the allowed kinds, slots paired by a
// uniformly random perfect matching, semiarcs labeled in random order.
inline Diagram random_diagram(std::mt19937& rng, int count, bool classical = true, bool saddle = true,
                              bool virt = true) {
  std::vector<NodeKind> kinds;
  if (classical) kinds.push_back(NodeKind::Classical);
  if (saddle) kinds.push_back(NodeKind::Saddle);
  if (virt) kinds.push_back(NodeKind::Virtual);
  Diagram d;
  std::vector<int> slots(static_cast<std::size_t>(4 * count));
  std::iota(slots.begin(), slots.end(), 0);
  std::shuffle(slots.begin(), slots.end(), rng);
  std::vector<int> labels(static_cast<std::size_t>(2 * count));
  std::iota(labels.begin(), labels.end(), 1);
  std::shuffle(labels.begin(), labels.end(), rng);
  d.nodes.resize(static_cast<std::size_t>(count));
  for (auto& n : d.nodes) {
    n.kind = kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
    n.marker = n.kind == NodeKind::Saddle ? static_cast<int>(rng() % 2) : 0;
  }
  for (std::size_t i = 0; i < slots.size(); i += 2) {
    const int label = labels[i / 2];
    d.nodes[static_cast<std::size_t>(slots[i] / 4)].slots[static_cast<std::size_t>(slots[i] % 4)] = label;
    d.nodes[static_cast<std::size_t>(slots[i + 1] / 4)].slots[static_cast<std::size_t>(slots[i + 1] % 4)] = label;
  }
  return d;
}

// Same diagram with nodes shuffled, semiarcs renamed and each node given a
// random allowed rotation.
inline Diagram scrambled(const Diagram& d, std::mt19937& rng) {
  const int m = max_label(d);
  std::vector<int> rename(static_cast<std::size_t>(m + 1));
  std::iota(rename.begin(), rename.end(), 0);
  std::shuffle(rename.begin() + 1, rename.end(), rng);
  Diagram out = d;
  for (auto& n : out.nodes) {
    for (int& s : n.slots) s = rename[static_cast<std::size_t>(s)];
    const int rot = n.kind == NodeKind::Classical ? 2 * static_cast<int>(rng() % 2) : static_cast<int>(rng() % 4);
    n = surfknot::rotated(n, rot);
  }
  std::shuffle(out.nodes.begin(), out.nodes.end(), rng);
  return out;
}

struct DetourSite {
  std::vector<int> path;
  std::vector<int> route;
};

// Detour inputs for `d`: every semiarc alone and every pair joined straight
// through a virtual node, each rerouted across nothing, across one other
// semiarc, or across two.
inline std::vector<DetourSite> detour_sites(const Diagram& d) {
  const int m = max_label(d);
  std::vector<std::vector<int>> paths;
  for (int s = 1; s <= m; ++s) paths.push_back({s});
  for (const auto& n : d.nodes) {
    if (n.kind != NodeKind::Virtual) continue;
    for (int k = 0; k < 2; ++k) {
      const int a = n.slots[static_cast<std::size_t>(k)], b = n.slots[static_cast<std::size_t>(k + 2)];
      if (a != b) paths.push_back({a, b});
    }
  }
  std::vector<DetourSite> out;
  for (const auto& p : paths) {
    out.push_back({p, {}});
    std::vector<int> others;
    for (int s = 1; s <= m; ++s)
      if (std::find(p.begin(), p.end(), s) == p.end()) others.push_back(s);
    for (int r : others) out.push_back({p, {r}});
    if (others.size() >= 2) out.push_back({p, {others.back(), others.front()}});
  }
  return out;
}

// Calls `visit` with every word on `chords` chords: each perfect matching of
// the 2k positions, each choice of saddle or classical per chord. Hands,
// flags and which classical end is over are drawn from `rng`.
inline void for_each_word(int chords, std::mt19937& rng, const std::function<void(const GaussWord&)>& visit) {
  const int len = 2 * chords;
  std::vector<int> id(static_cast<std::size_t>(len), 0);
  std::function<void(int)> match = [&](int next) {
    int pos = 0;
    while (pos < len && id[static_cast<std::size_t>(pos)] != 0) ++pos;
    if (pos == len) {
      for (int kinds = 0; kinds < (1 << chords); ++kinds) {
        GaussWord g;
        std::vector<int> seen(static_cast<std::size_t>(chords + 1), 0);
        std::vector<int> hand(static_cast<std::size_t>(chords + 1)), flag(hand.size()), over_first(hand.size());
        for (int c = 1; c <= chords; ++c) {
          hand[static_cast<std::size_t>(c)] = rng() % 2 ? 1 : -1;
          flag[static_cast<std::size_t>(c)] = static_cast<int>(rng() % 2);
          over_first[static_cast<std::size_t>(c)] = static_cast<int>(rng() % 2);
        }
        for (int p = 0; p < len; ++p) {
          const int c = id[static_cast<std::size_t>(p)];
          GaussToken t;
          t.id = c;
          if ((kinds >> (c - 1)) & 1) {
            t.kind = TokenKind::Saddle;
            t.flag = flag[static_cast<std::size_t>(c)];
          } else {
            const bool first = seen[static_cast<std::size_t>(c)] == 0;
            t.kind = first == static_cast<bool>(over_first[static_cast<std::size_t>(c)]) ? TokenKind::Over : TokenKind::Under;
            t.hand = hand[static_cast<std::size_t>(c)];
          }
          ++seen[static_cast<std::size_t>(c)];
          g.tokens.push_back(t);
        }
        visit(g);
      }
      return;
    }
    id[static_cast<std::size_t>(pos)] = next;
    for (int q = pos + 1; q < len; ++q) {
      if (id[static_cast<std::size_t>(q)] != 0) continue;
      id[static_cast<std::size_t>(q)] = next;
      match(next + 1);
      id[static_cast<std::size_t>(q)] = 0;
    }
    id[static_cast<std::size_t>(pos)] = 0;
  };
  match(1);
}

// Exhaustive search over directions of the arcs between consecutive saddle
// endpoints. Passing a saddle reverses the direction (source-sink rule), and
// the two passages of one saddle chord must be of opposite type.
inline bool word_orientable(const GaussWord& g) {
  std::vector<int> pos;
  std::vector<int> chord;
  for (std::size_t i = 0; i < g.tokens.size(); ++i)
    if (g.tokens[i].kind == TokenKind::Saddle) {
      pos.push_back(static_cast<int>(i));
      chord.push_back(g.tokens[i].id);
    }
  const int e = static_cast<int>(pos.size());
  if (e == 0) return true;
  for (int mask = 0; mask < (1 << e); ++mask) {
    // arc j runs from endpoint j to endpoint j + 1; bit set = forward
    auto dir = [&](int j) { return (mask >> (((j % e) + e) % e)) & 1; };
    bool ok = true;
    for (int j = 0; ok && j < e; ++j) ok = dir(j - 1) != dir(j);
    for (int j = 0; ok && j < e; ++j)
      for (int k = j + 1; k < e; ++k)
        if (chord[static_cast<std::size_t>(j)] == chord[static_cast<std::size_t>(k)]) ok = ok && dir(j - 1) != dir(k - 1);
    if (ok) return true;
  }
  return false;
}

}  // namespace oracle
