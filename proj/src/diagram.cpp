#include "surfknot/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "surfknot/error.hpp"
#include "wiring.hpp"

namespace surfknot {

using detail::semiarc_ends;
using detail::Wiring;

Node classical(int u1, int o1, int u2, int o2) { return Node{NodeKind::Classical, {u1, o1, u2, o2}, 0}; }
Node saddle(int a, int b, int c, int d, int m) { return Node{NodeKind::Saddle, {a, b, c, d}, m}; }
Node virtual_node(int a, int b, int c, int d) { return Node{NodeKind::Virtual, {a, b, c, d}, 0}; }

std::vector<std::string> validation_errors(const Diagram& d) {
  std::vector<std::string> errs;
  if (d.free_loops < 0) errs.push_back("negative free loop count " + std::to_string(d.free_loops));
  std::map<int, int> seen;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const auto& n = d.nodes[i];
    if (n.kind == NodeKind::Saddle && n.marker != 0 && n.marker != 1)
      errs.push_back("node " + std::to_string(i + 1) + ": marker " + std::to_string(n.marker) + " is not 0 or 1");
    for (int s : n.slots) {
      if (s < 1) errs.push_back("node " + std::to_string(i + 1) + ": semiarc id " + std::to_string(s) + " is not positive");
      else ++seen[s];
    }
  }
  const int m = seen.empty() ? 0 : seen.rbegin()->first;
  for (int s = 1; s <= m; ++s) {
    const auto it = seen.find(s);
    if (it == seen.end()) errs.push_back("semiarc " + std::to_string(s) + " is missing from 1.." + std::to_string(m));
    else if (it->second == 1) errs.push_back("semiarc " + std::to_string(s) + " occurs once");
    else if (it->second > 2) errs.push_back("semiarc " + std::to_string(s) + " occurs " + std::to_string(it->second) + " times");
  }
  return errs;
}

void validate(const Diagram& d) {
  const auto errs = validation_errors(d);
  if (errs.empty()) return;
  std::string msg;
  for (const auto& e : errs) msg += (msg.empty() ? "" : "; ") + e;
  throw Error(ErrorKind::InvalidDiagram, msg);
}

int semiarc_count(const Diagram& d) {
  int m = 0;
  for (const auto& n : d.nodes)
    for (int s : n.slots) m = std::max(m, s);
  return m;
}

Node rotated(const Node& n, int rot) {
  rot = ((rot % 4) + 4) % 4;
  Node r = n;
  for (int k = 0; k < 4; ++k) r.slots[static_cast<std::size_t>(k)] = n.slots[static_cast<std::size_t>((k + rot) % 4)];
  if (n.kind == NodeKind::Saddle && rot % 2 == 1) r.marker = 1 - n.marker;
  return r;
}

namespace {

std::vector<int> allowed_rotations(NodeKind k) {
  if (k == NodeKind::Classical) return {0, 2};
  return {0, 1, 2, 3};
}

bool node_less(const Node& a, const Node& b) {
  if (a.slots != b.slots) return a.slots < b.slots;
  return a.marker < b.marker;
}

}  // namespace

Node normalized(const Node& n) {
  Node best = n;
  for (int r : allowed_rotations(n.kind)) {
    const Node c = rotated(n, r);
    if (node_less(c, best)) best = c;
  }
  return best;
}

Diagram normalized(const Diagram& d) {
  Diagram out = d;
  for (auto& n : out.nodes) n = normalized(n);
  return out;
}

std::vector<NaiveComponent> naive_components(const Diagram& d) {
  std::vector<NaiveComponent> comps;
  const auto ends = semiarc_ends(d);
  const int m = static_cast<int>(ends.size()) - 1;
  std::vector<bool> used(static_cast<std::size_t>(m + 1), false);
  auto slot_of = [&](int end) { return d.nodes[static_cast<std::size_t>(end / 4)].slots[static_cast<std::size_t>(end % 4)]; };
  for (int s = 1; s <= m; ++s) {
    if (used[static_cast<std::size_t>(s)]) continue;
    NaiveComponent c;
    const int start = ends[static_cast<std::size_t>(s)][0];
    int depart = start;
    do {
      const int arc = slot_of(depart);
      used[static_cast<std::size_t>(arc)] = true;
      c.semiarcs.push_back(arc);
      const auto& pe = ends[static_cast<std::size_t>(arc)];
      const int arrive = pe[0] == depart ? pe[1] : pe[0];
      depart = (arrive / 4) * 4 + (arrive % 4 + 2) % 4;
    } while (depart != start);
    comps.push_back(std::move(c));
  }
  for (int i = 0; i < d.free_loops; ++i) comps.push_back({});
  return comps;
}

DiagramCounts counts(const Diagram& d) {
  DiagramCounts c;
  for (const auto& n : d.nodes) {
    if (n.kind == NodeKind::Classical) ++c.c;
    else if (n.kind == NodeKind::Saddle) ++c.h;
    else ++c.v;
  }
  c.ch = c.c + c.h;
  c.vch = c.ch + c.v;
  return c;
}

Diagram smooth_saddles(const Diagram& d, Level level) {
  Wiring w(d);
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const auto& n = d.nodes[i];
    if (n.kind != NodeKind::Saddle) continue;
    const bool ab_cd = (level == Level::Lower) == (n.marker == 0);
    if (ab_cd) w.dissolve(static_cast<int>(i), {{0, 1}, {2, 3}});
    else w.dissolve(static_cast<int>(i), {{1, 2}, {3, 0}});
  }
  return w.to_diagram();
}

namespace {

// Union-find over semiarc direction bits with parity and a spanning forest
// kept for extracting contradictory cycles.
class ParityForest {
 public:
  explicit ParityForest(int size)
      : parent_(static_cast<std::size_t>(size)), parity_(static_cast<std::size_t>(size), 0),
        adj_(static_cast<std::size_t>(size)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::pair<int, int> find(int x) {
    int p = 0;
    int r = x;
    while (parent_[static_cast<std::size_t>(r)] != r) {
      p ^= parity_[static_cast<std::size_t>(r)];
      r = parent_[static_cast<std::size_t>(r)];
    }
    // path compression
    int cur = x, acc = p;
    while (parent_[static_cast<std::size_t>(cur)] != cur) {
      const int next = parent_[static_cast<std::size_t>(cur)];
      const int np = acc ^ parity_[static_cast<std::size_t>(cur)];
      parent_[static_cast<std::size_t>(cur)] = r;
      parity_[static_cast<std::size_t>(cur)] = acc;
      cur = next;
      acc = np;
    }
    return {r, p};
  }

  // Returns false when the constraint contradicts earlier ones.
  bool unite(int a, int b, int p) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == p;
    parent_[static_cast<std::size_t>(ra)] = rb;
    parity_[static_cast<std::size_t>(ra)] = pa ^ pb ^ p;
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
    return true;
  }

  std::vector<int> tree_path(int a, int b) const {
    std::vector<int> prev(adj_.size(), -1);
    std::queue<int> q;
    q.push(a);
    prev[static_cast<std::size_t>(a)] = a;
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      if (x == b) break;
      for (int y : adj_[static_cast<std::size_t>(x)])
        if (prev[static_cast<std::size_t>(y)] < 0) {
          prev[static_cast<std::size_t>(y)] = x;
          q.push(y);
        }
    }
    std::vector<int> path;
    for (int x = b; x != a; x = prev[static_cast<std::size_t>(x)]) path.push_back(x);
    path.push_back(a);
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace

OrientResult orient(const Diagram& d) {
  const auto ends = semiarc_ends(d);
  const int m = static_cast<int>(ends.size()) - 1;
  // incoming(end) = occurrence index XOR bit(semiarc)
  auto occ = [&](int end) {
    const int s = d.nodes[static_cast<std::size_t>(end / 4)].slots[static_cast<std::size_t>(end % 4)];
    return ends[static_cast<std::size_t>(s)][1] == end ? 1 : 0;
  };
  auto arc = [&](int end) { return d.nodes[static_cast<std::size_t>(end / 4)].slots[static_cast<std::size_t>(end % 4)]; };

  ParityForest uf(m + 1);
  OrientResult res;
  // constraint: incoming(e1) XOR incoming(e2) = want
  auto add = [&](int e1, int e2, int want) {
    const int p = want ^ occ(e1) ^ occ(e2);
    const int a = arc(e1), b = arc(e2);
    if (uf.unite(a, b, p)) return true;
    res.witness = a == b ? std::vector<int>{a} : uf.tree_path(a, b);
    return false;
  };
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const int base = static_cast<int>(i) * 4;
    const bool ok = d.nodes[i].kind == NodeKind::Saddle
                        ? add(base, base + 2, 0) && add(base + 1, base + 3, 0) && add(base, base + 1, 1)
                        : add(base, base + 2, 1) && add(base + 1, base + 3, 1);
    if (!ok) return res;
  }
  res.orientable = true;
  res.orientation.incoming.resize(d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    for (int k = 0; k < 4; ++k) {
      const int e = static_cast<int>(i) * 4 + k;
      res.orientation.incoming[i][static_cast<std::size_t>(k)] = (occ(e) ^ uf.find(arc(e)).second) != 0;
    }
  res.orientation.loop_dirs.assign(static_cast<std::size_t>(d.free_loops), false);
  return res;
}

bool is_orientation(const Diagram& d, const Orientation& o) {
  if (o.incoming.size() != d.nodes.size()) return false;
  if (o.loop_dirs.size() != static_cast<std::size_t>(d.free_loops)) return false;
  const auto ends = semiarc_ends(d);
  auto in = [&](int end) { return o.incoming[static_cast<std::size_t>(end / 4)][static_cast<std::size_t>(end % 4)]; };
  for (std::size_t s = 1; s < ends.size(); ++s)
    if (in(ends[s][0]) == in(ends[s][1])) return false;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const auto& io = o.incoming[i];
    if (d.nodes[i].kind == NodeKind::Saddle) {
      if (io[0] != io[2] || io[1] != io[3] || io[0] == io[1]) return false;
    } else if (io[0] == io[2] || io[1] == io[3]) {
      return false;
    }
  }
  return true;
}

SurfaceClass euler_characteristic(const Diagram& d) {
  SurfaceClass s;
  const int lower = static_cast<int>(naive_components(smooth_saddles(d, Level::Lower)).size());
  const int upper = static_cast<int>(naive_components(smooth_saddles(d, Level::Upper)).size());
  s.euler = lower + upper - counts(d).h;
  s.orientable = orient(d).orientable;
  s.genus_or_crosscaps = s.orientable ? (2 - s.euler) / 2 : 2 - s.euler;
  return s;
}

Diagram crossing_change(const Diagram& d, int node_index) {
  if (node_index < 0 || node_index >= static_cast<int>(d.nodes.size()))
    throw Error(ErrorKind::Precondition, "node index " + std::to_string(node_index + 1) + " out of range");
  const auto& n = d.nodes[static_cast<std::size_t>(node_index)];
  if (n.kind != NodeKind::Classical)
    throw Error(ErrorKind::Precondition, "node " + std::to_string(node_index + 1) + " is not classical");
  Diagram out = d;
  out.nodes[static_cast<std::size_t>(node_index)] = rotated(n, 1);
  return out;
}

int genus_of_projection(const Diagram& d) {
  const auto ends = semiarc_ends(d);
  const int nn = static_cast<int>(d.nodes.size());
  auto other = [&](int end) {
    const int s = d.nodes[static_cast<std::size_t>(end / 4)].slots[static_cast<std::size_t>(end % 4)];
    const auto& pe = ends[static_cast<std::size_t>(s)];
    return pe[0] == end ? pe[1] : pe[0];
  };
  auto is_real = [&](int node) { return d.nodes[static_cast<std::size_t>(node)].kind != NodeKind::Virtual; };
  // real end -> real end, passing straight through virtual nodes
  std::vector<int> partner(static_cast<std::size_t>(4 * nn), -1);
  for (int e = 0; e < 4 * nn; ++e) {
    if (!is_real(e / 4)) continue;
    int x = other(e);
    while (!is_real(x / 4)) x = other((x / 4) * 4 + (x % 4 + 2) % 4);
    partner[static_cast<std::size_t>(e)] = x;
  }
  // connected pieces of the real graph
  std::vector<int> comp(static_cast<std::size_t>(nn), -1);
  int pieces = 0;
  for (int s = 0; s < nn; ++s) {
    if (!is_real(s) || comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = pieces;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int k = 0; k < 4; ++k) {
        const int y = partner[static_cast<std::size_t>(x * 4 + k)] / 4;
        if (comp[static_cast<std::size_t>(y)] < 0) {
          comp[static_cast<std::size_t>(y)] = pieces;
          stack.push_back(y);
        }
      }
    }
    ++pieces;
  }
  std::vector<int> verts(static_cast<std::size_t>(pieces), 0), faces(verts.size(), 0);
  for (int n = 0; n < nn; ++n)
    if (is_real(n)) ++verts[static_cast<std::size_t>(comp[static_cast<std::size_t>(n)])];
  std::vector<bool> seen(static_cast<std::size_t>(4 * nn), false);
  for (int e = 0; e < 4 * nn; ++e) {
    if (!is_real(e / 4) || seen[static_cast<std::size_t>(e)]) continue;
    ++faces[static_cast<std::size_t>(comp[static_cast<std::size_t>(e / 4)])];
    int x = e;
    while (!seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      const int y = partner[static_cast<std::size_t>(x)];
      x = (y / 4) * 4 + (y % 4 + 1) % 4;
    }
  }
  int genus = 0;
  for (int p = 0; p < pieces; ++p) {
    const int chi = verts[static_cast<std::size_t>(p)] - 2 * verts[static_cast<std::size_t>(p)] + faces[static_cast<std::size_t>(p)];
    genus += (2 - chi) / 2;
  }
  return genus;
}

namespace {

// Encoding of the connected piece containing `start`, read from a breadth
// first relabeling that begins at `start` under rotation `rot`.
std::vector<int> encode_from(const Diagram& d, const std::vector<std::array<int, 2>>& ends, int start, int rot,
                             std::vector<int>* members) {
  const int nn = static_cast<int>(d.nodes.size());
  std::vector<int> order(static_cast<std::size_t>(nn), -1), rotation(static_cast<std::size_t>(nn), 0);
  std::vector<int> label(ends.size(), 0);
  std::vector<int> queue{start};
  order[static_cast<std::size_t>(start)] = 0;
  rotation[static_cast<std::size_t>(start)] = rot;
  int next_label = 0;
  std::vector<int> code;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int n = queue[qi];
    const Node r = rotated(d.nodes[static_cast<std::size_t>(n)], rotation[static_cast<std::size_t>(n)]);
    code.push_back(static_cast<int>(r.kind));
    code.push_back(r.marker);
    for (int k = 0; k < 4; ++k) {
      const int s = r.slots[static_cast<std::size_t>(k)];
      if (label[static_cast<std::size_t>(s)] == 0) label[static_cast<std::size_t>(s)] = ++next_label;
      code.push_back(label[static_cast<std::size_t>(s)]);
      const int src = n * 4 + (k + rotation[static_cast<std::size_t>(n)]) % 4;
      const auto& pe = ends[static_cast<std::size_t>(s)];
      const int dst = pe[0] == src ? pe[1] : pe[0];
      const int nb = dst / 4;
      if (order[static_cast<std::size_t>(nb)] >= 0) continue;
      const int t = dst % 4;
      int nr = t;
      if (d.nodes[static_cast<std::size_t>(nb)].kind == NodeKind::Classical) nr = (t >= 2) ? 2 : 0;
      order[static_cast<std::size_t>(nb)] = static_cast<int>(queue.size());
      rotation[static_cast<std::size_t>(nb)] = nr;
      queue.push_back(nb);
    }
  }
  if (members) *members = queue;
  return code;
}

}  // namespace

std::vector<int> canonical_key(const Diagram& d) {
  const auto ends = semiarc_ends(d);
  const int nn = static_cast<int>(d.nodes.size());
  std::vector<bool> done(static_cast<std::size_t>(nn), false);
  std::vector<std::vector<int>> pieces;
  for (int s = 0; s < nn; ++s) {
    if (done[static_cast<std::size_t>(s)]) continue;
    std::vector<int> members;
    encode_from(d, ends, s, 0, &members);
    std::vector<int> best;
    for (int x : members) {
      done[static_cast<std::size_t>(x)] = true;
      for (int r : allowed_rotations(d.nodes[static_cast<std::size_t>(x)].kind)) {
        auto code = encode_from(d, ends, x, r, nullptr);
        if (best.empty() || code < best) best = std::move(code);
      }
    }
    pieces.push_back(std::move(best));
  }
  std::sort(pieces.begin(), pieces.end());
  std::vector<int> key{d.free_loops, static_cast<int>(pieces.size())};
  for (const auto& p : pieces) {
    key.push_back(static_cast<int>(p.size()));
    key.insert(key.end(), p.begin(), p.end());
  }
  return key;
}

bool isomorphic(const Diagram& a, const Diagram& b) { return canonical_key(a) == canonical_key(b); }

}  // namespace surfknot
