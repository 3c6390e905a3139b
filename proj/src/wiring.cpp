#include "wiring.hpp"

#include <algorithm>

#include "surfknot/error.hpp"

namespace surfknot::detail {

std::vector<std::array<int, 2>> semiarc_ends(const Diagram& d) {
  int m = 0;
  for (const auto& n : d.nodes)
    for (int s : n.slots) m = std::max(m, s);
  std::vector<std::array<int, 2>> ends(static_cast<std::size_t>(m + 1), {-1, -1});
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    for (int k = 0; k < 4; ++k) {
      auto& e = ends[static_cast<std::size_t>(d.nodes[i].slots[static_cast<std::size_t>(k)])];
      const int end = static_cast<int>(i) * 4 + k;
      if (e[0] < 0) e[0] = end; else e[1] = end;
    }
  return ends;
}

Wiring::Wiring(const Diagram& d) : free_loops_(d.free_loops) {
  for (const auto& n : d.nodes) {
    kinds_.push_back(n.kind);
    markers_.push_back(n.marker);
    alive_.push_back(true);
  }
  link_.assign(d.nodes.size() * 4, -1);
  thru_.assign(d.nodes.size() * 4, -1);
  const auto ends = semiarc_ends(d);
  for (std::size_t s = 1; s < ends.size(); ++s)
    if (ends[s][0] >= 0 && ends[s][1] >= 0) connect(ends[s][0], ends[s][1]);
}

int Wiring::add_node(NodeKind kind, int marker) {
  kinds_.push_back(kind);
  markers_.push_back(marker);
  alive_.push_back(true);
  link_.resize(link_.size() + 4, -1);
  thru_.resize(thru_.size() + 4, -1);
  return node_count() - 1;
}

int Wiring::add_connector() {
  const int p = add_node(NodeKind::Virtual, 0);
  dissolve(p, {{0, 1}});
  return p;
}

void Wiring::connect(int e1, int e2) {
  link_[static_cast<std::size_t>(e1)] = e2;
  link_[static_cast<std::size_t>(e2)] = e1;
}

void Wiring::dissolve(int node, const std::vector<std::array<int, 2>>& pairs) {
  alive_[static_cast<std::size_t>(node)] = false;
  for (const auto& p : pairs) {
    thru_[static_cast<std::size_t>(node * 4 + p[0])] = node * 4 + p[1];
    thru_[static_cast<std::size_t>(node * 4 + p[1])] = node * 4 + p[0];
  }
}

int Wiring::resolve(int e) const {
  int x = link(e);
  std::size_t guard = 0;
  while (!alive(x / 4)) {
    const int y = thru_[static_cast<std::size_t>(x)];
    if (y < 0 || ++guard > link_.size()) throw Error(ErrorKind::InvalidDiagram, "broken strand in rewrite");
    x = link(y);
  }
  return x;
}

Diagram Wiring::to_diagram() const {
  Diagram out;
  out.free_loops = free_loops_;
  std::vector<int> id(link_.size(), 0);
  std::vector<bool> seen(link_.size(), false);
  int next = 0;
  std::vector<int> live_index(kinds_.size(), -1);
  for (int n = 0; n < node_count(); ++n) {
    if (!alive(n)) continue;
    live_index[static_cast<std::size_t>(n)] = static_cast<int>(out.nodes.size());
    out.nodes.push_back(Node{kind(n), {0, 0, 0, 0}, marker(n)});
  }
  for (int n = 0; n < node_count(); ++n) {
    if (!alive(n)) continue;
    for (int k = 0; k < 4; ++k) {
      const int e = n * 4 + k;
      if (id[static_cast<std::size_t>(e)] != 0) continue;
      // walk the strand, marking dead ends on the way
      int x = link(e);
      while (!alive(x / 4)) {
        seen[static_cast<std::size_t>(x)] = true;
        const int y = thru_[static_cast<std::size_t>(x)];
        seen[static_cast<std::size_t>(y)] = true;
        x = link(y);
      }
      id[static_cast<std::size_t>(e)] = id[static_cast<std::size_t>(x)] = ++next;
    }
  }
  for (int n = 0; n < node_count(); ++n) {
    if (!alive(n)) continue;
    auto& node = out.nodes[static_cast<std::size_t>(live_index[static_cast<std::size_t>(n)])];
    for (int k = 0; k < 4; ++k) node.slots[static_cast<std::size_t>(k)] = id[static_cast<std::size_t>(n * 4 + k)];
  }
  // closed chains made only of dead ends
  for (std::size_t e = 0; e < link_.size(); ++e) {
    if (alive(static_cast<int>(e / 4)) || seen[e] || link_[e] < 0 || thru_[e] < 0) continue;
    int x = static_cast<int>(e);
    do {
      seen[static_cast<std::size_t>(x)] = true;
      const int y = link(x);
      seen[static_cast<std::size_t>(y)] = true;
      x = thru_[static_cast<std::size_t>(y)];
    } while (x != static_cast<int>(e));
    ++out.free_loops;
  }
  return out;
}

}  // namespace surfknot::detail
