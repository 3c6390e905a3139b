#include "surfknot/gauss.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "surfknot/error.hpp"
#include "wiring.hpp"

namespace surfknot {

namespace {

std::string token_text(const GaussToken& t) {
  switch (t.kind) {
    case TokenKind::Over: return "O" + std::to_string(t.id) + (t.hand > 0 ? "+" : "-");
    case TokenKind::Under: return "U" + std::to_string(t.id) + (t.hand > 0 ? "+" : "-");
    case TokenKind::Saddle: return "M" + std::to_string(t.id) + std::to_string(t.flag);
  }
  return "?";
}

[[noreturn]] void malformed(std::size_t index, const GaussToken& t, const std::string& why) {
  throw Error(ErrorKind::MalformedWord, "token " + std::to_string(index + 1) + " (" + token_text(t) + "): " + why);
}

}  // namespace

void validate(const GaussWord& g) {
  struct Seen {
    int over = -1, under = -1, saddle_count = 0, first = -1;
  };
  std::map<int, Seen> chords;
  for (std::size_t i = 0; i < g.tokens.size(); ++i) {
    const auto& t = g.tokens[i];
    if (t.id < 1) malformed(i, t, "chord id must be positive");
    auto& s = chords[t.id];
    if (s.first < 0) s.first = static_cast<int>(i);
    const auto& first = g.tokens[static_cast<std::size_t>(s.first)];
    if (t.kind == TokenKind::Saddle) {
      if (t.flag != 0 && t.flag != 1) malformed(i, t, "saddle flag must be 0 or 1");
      if (first.kind != TokenKind::Saddle) malformed(i, t, "chord is both classical and saddle");
      if (++s.saddle_count > 2) malformed(i, t, "saddle chord has more than two endpoints");
      if (first.flag != t.flag) malformed(i, t, "saddle flags differ between endpoints");
    } else {
      if (t.hand != 1 && t.hand != -1) malformed(i, t, "handedness must be + or -");
      if (first.kind == TokenKind::Saddle) malformed(i, t, "chord is both classical and saddle");
      int& slot = t.kind == TokenKind::Over ? s.over : s.under;
      if (slot >= 0) malformed(i, t, "repeated endpoint");
      slot = static_cast<int>(i);
      if (first.hand != t.hand) malformed(i, t, "handedness differs between endpoints");
    }
  }
  for (const auto& [id, s] : chords) {
    const auto idx = static_cast<std::size_t>(s.first);
    if (g.tokens[idx].kind == TokenKind::Saddle) {
      if (s.saddle_count != 2) malformed(idx, g.tokens[idx], "saddle chord has one endpoint");
    } else if (s.over < 0 || s.under < 0) {
      malformed(idx, g.tokens[idx], "classical chord lacks its " + std::string(s.over < 0 ? "over" : "under") + " endpoint");
    }
  }
}

GaussWord to_gauss(const Diagram& d) {
  validate(d);
  if (d.free_loops > 0) throw Error(ErrorKind::Precondition, "Gauss words cannot carry free loops");
  const auto comps = naive_components(d);
  if (comps.size() > 1)
    throw Error(ErrorKind::MustMerge, std::to_string(comps.size()) +
                                          " naive components; merge them first (merge_components)");
  GaussWord g;
  if (comps.empty()) return g;
  const auto ends = detail::semiarc_ends(d);
  auto arc = [&](int end) { return d.nodes[static_cast<std::size_t>(end / 4)].slots[static_cast<std::size_t>(end % 4)]; };

  struct Passage {
    int node, entry;
  };
  std::vector<Passage> passages;
  const int start = ends[1][0];
  int arrive = start;
  do {
    const int n = arrive / 4, t = arrive % 4;
    if (d.nodes[static_cast<std::size_t>(n)].kind != NodeKind::Virtual) passages.push_back({n, t});
    const int exit = n * 4 + (t + 2) % 4;
    const auto& pe = ends[static_cast<std::size_t>(arc(exit))];
    arrive = pe[0] == exit ? pe[1] : pe[0];
  } while (arrive != start);

  std::map<int, std::vector<int>> entries;  // node -> entry slots in passage order
  std::map<int, int> ids;
  for (const auto& p : passages) {
    entries[p.node].push_back(p.entry);
    if (!ids.count(p.node)) {
      const int next = static_cast<int>(ids.size()) + 1;
      ids[p.node] = next;
    }
  }
  for (const auto& p : passages) {
    const auto& node = d.nodes[static_cast<std::size_t>(p.node)];
    const auto& e = entries[p.node];
    GaussToken tok;
    tok.id = ids[p.node];
    if (node.kind == NodeKind::Classical) {
      const int u = e[0] % 2 == 0 ? e[0] : e[1];
      const int o = e[0] % 2 == 0 ? e[1] : e[0];
      tok.kind = p.entry % 2 == 0 ? TokenKind::Under : TokenKind::Over;
      tok.hand = o == (u + 1) % 4 ? 1 : -1;
    } else {
      const int m = e[0] % 2 == 0 ? node.marker : 1 - node.marker;
      const int rel = (e[1] - e[0] + 4) % 4;
      tok.kind = TokenKind::Saddle;
      tok.flag = rel == 1 ? m : 1 - m;
    }
    g.tokens.push_back(tok);
  }
  return g;
}

namespace {

// Ports around a node, counterclockwise.
enum Port { East = 0, North = 1, West = 2, South = 3 };

struct Arc {  // a semicircle over the baseline
  int edge, seq;
  double x0, x1;
  int half;  // +1 above, -1 below
};

struct Crossing {
  int vnode;
  double t;
  int seq;
  bool first;  // enters at slot 0
  bool enters_one;
};

}  // namespace

Diagram from_gauss(const GaussWord& g) {
  if (g.tokens.empty()) throw Error(ErrorKind::MalformedWord, "empty word has no diagram");
  validate(g);
  const int len = static_cast<int>(g.tokens.size());

  std::map<int, int> chord;  // id -> node index by first appearance
  std::vector<int> node_of(static_cast<std::size_t>(len)), first_pos;
  for (int k = 0; k < len; ++k) {
    const int id = g.tokens[static_cast<std::size_t>(k)].id;
    if (!chord.count(id)) {
      chord[id] = static_cast<int>(first_pos.size());
      first_pos.push_back(k);
    }
    node_of[static_cast<std::size_t>(k)] = chord[id];
  }
  const int nodes = static_cast<int>(first_pos.size());

  // Every node is a cross: the first passage runs West to East, the second
  // vertically in the direction the handedness or flag requires.
  std::vector<Port> entry(static_cast<std::size_t>(len)), exit(static_cast<std::size_t>(len));
  std::vector<Port> slot0(static_cast<std::size_t>(nodes));
  std::vector<int> marker(static_cast<std::size_t>(nodes), 0);
  std::vector<NodeKind> kind(static_cast<std::size_t>(nodes));
  for (int k = 0; k < len; ++k) {
    const auto& tok = g.tokens[static_cast<std::size_t>(k)];
    const int n = node_of[static_cast<std::size_t>(k)];
    const auto kk = static_cast<std::size_t>(k);
    const auto fk = static_cast<std::size_t>(first_pos[static_cast<std::size_t>(n)]);
    const bool first = fk == kk;
    if (first) {
      entry[kk] = West;
      exit[kk] = East;
      continue;
    }
    const auto& head = g.tokens[fk];
    bool up = true;  // second passage enters South
    if (tok.kind == TokenKind::Saddle) {
      kind[static_cast<std::size_t>(n)] = NodeKind::Saddle;
      marker[static_cast<std::size_t>(n)] = tok.flag;
      slot0[static_cast<std::size_t>(n)] = West;
    } else {
      kind[static_cast<std::size_t>(n)] = NodeKind::Classical;
      if (head.kind == TokenKind::Under) {
        up = tok.hand > 0;
        slot0[static_cast<std::size_t>(n)] = West;
      } else {
        up = tok.hand < 0;
        slot0[static_cast<std::size_t>(n)] = up ? South : North;
      }
    }
    entry[kk] = up ? South : North;
    exit[kk] = up ? North : South;
  }

  auto port_x = [](int n, Port p) {
    const double c = 10.0 * (n + 1);
    return p == East ? c + 1 : p == West ? c - 1 : c;
  };
  auto halves = [](Port p) { return p == North ? 1 : p == South ? 2 : 3; };  // bit 1 above, bit 2 below

  std::vector<Arc> arcs;
  for (int k = 0; k < len; ++k) {
    const int nk = (k + 1) % len;
    const Port pa = exit[static_cast<std::size_t>(k)], pb = entry[static_cast<std::size_t>(nk)];
    const double xa = port_x(node_of[static_cast<std::size_t>(k)], pa);
    const double xb = port_x(node_of[static_cast<std::size_t>(nk)], pb);
    const int common = halves(pa) & halves(pb);
    if (common) {
      arcs.push_back({k, 0, xa, xb, (common & 1) ? 1 : -1});
    } else {
      const double xs = 10.0 * (nodes + 1) + 3.0 + 2.0 * k;
      arcs.push_back({k, 0, xa, xs, pa == North ? 1 : -1});
      arcs.push_back({k, 1, xs, xb, pa == North ? -1 : 1});
    }
  }

  std::vector<std::vector<Crossing>> along(static_cast<std::size_t>(len));
  int vcount = 0;
  auto velocity = [](const Arc& a, double x, double y) {
    const double c = (a.x0 + a.x1) / 2;
    double vx = a.half > 0 ? y : -y;
    double vy = a.half > 0 ? -(x - c) : (x - c);
    if (a.x1 < a.x0) vx = -vx, vy = -vy;
    return std::pair{vx, vy};
  };
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      const Arc& a = arcs[i];
      const Arc& b = arcs[j];
      if (a.half != b.half) continue;
      const double alo = std::min(a.x0, a.x1), ahi = std::max(a.x0, a.x1);
      const double blo = std::min(b.x0, b.x1), bhi = std::max(b.x0, b.x1);
      const bool cross = (alo < blo && blo < ahi && ahi < bhi) || (blo < alo && alo < bhi && bhi < ahi);
      if (!cross) continue;
      const double ca = (alo + ahi) / 2, ra = (ahi - alo) / 2;
      const double cb = (blo + bhi) / 2, rb = (bhi - blo) / 2;
      const double x = (ra * ra - rb * rb + cb * cb - ca * ca) / (2 * (cb - ca));
      const double y = a.half * std::sqrt(std::max(0.0, ra * ra - (x - ca) * (x - ca)));
      const auto [ax, ay] = velocity(a, x, y);
      const auto [bx, by] = velocity(b, x, y);
      const bool ccw = ax * by - ay * bx > 0;
      const int v = vcount++;
      along[static_cast<std::size_t>(a.edge)].push_back({v, a.x1 > a.x0 ? x : -x, a.seq, true, false});
      along[static_cast<std::size_t>(b.edge)].push_back({v, b.x1 > b.x0 ? x : -x, b.seq, false, ccw});
    }

  detail::Wiring w{Diagram{}};
  for (int n = 0; n < nodes; ++n) w.add_node(kind[static_cast<std::size_t>(n)], marker[static_cast<std::size_t>(n)]);
  for (int v = 0; v < vcount; ++v) w.add_node(NodeKind::Virtual, 0);
  auto real_end = [&](int n, Port p) { return n * 4 + ((p - slot0[static_cast<std::size_t>(n)]) % 4 + 4) % 4; };
  for (int k = 0; k < len; ++k) {
    auto& cs = along[static_cast<std::size_t>(k)];
    std::sort(cs.begin(), cs.end(), [](const Crossing& a, const Crossing& b) { return std::tie(a.seq, a.t) < std::tie(b.seq, b.t); });
    int cur = real_end(node_of[static_cast<std::size_t>(k)], exit[static_cast<std::size_t>(k)]);
    for (const auto& c : cs) {
      const int base = (nodes + c.vnode) * 4;
      const int in = c.first ? 0 : (c.enters_one ? 1 : 3);
      w.connect(cur, base + in);
      cur = base + (in + 2) % 4;
    }
    const int nk = (k + 1) % len;
    w.connect(cur, real_end(node_of[static_cast<std::size_t>(nk)], entry[static_cast<std::size_t>(nk)]));
  }
  return w.to_diagram();
}

bool gauss_orientable(const GaussWord& g) {
  std::vector<int> saddle_pos;
  std::map<int, std::vector<int>> where;
  for (std::size_t i = 0; i < g.tokens.size(); ++i)
    if (g.tokens[i].kind == TokenKind::Saddle) {
      where[g.tokens[i].id].push_back(static_cast<int>(saddle_pos.size()));
      saddle_pos.push_back(static_cast<int>(i));
    }
  for (const auto& [id, idx] : where) {
    if (idx.size() != 2) continue;
    const int between = idx[1] - idx[0] - 1;
    if (between % 2 != 0) return false;
  }
  return true;
}

GaussWord canonical_word(const GaussWord& g) {
  const std::size_t len = g.tokens.size();
  GaussWord best;
  auto key = [](const GaussWord& w) {
    std::vector<std::tuple<int, int, int, int>> k;
    for (const auto& t : w.tokens) k.emplace_back(static_cast<int>(t.kind), t.id, t.hand, t.flag);
    return k;
  };
  for (std::size_t r = 0; r < len; ++r) {
    GaussWord w;
    std::map<int, int> relabel;
    for (std::size_t i = 0; i < len; ++i) {
      GaussToken t = g.tokens[(i + r) % len];
      if (!relabel.count(t.id)) {
        const int next = static_cast<int>(relabel.size()) + 1;
        relabel[t.id] = next;
      }
      t.id = relabel[t.id];
      w.tokens.push_back(t);
    }
    if (r == 0 || key(w) < key(best)) best = std::move(w);
  }
  return best;
}

std::string format_word(const GaussWord& g) {
  std::string out;
  for (const auto& t : g.tokens) out += (out.empty() ? "" : " ") + token_text(t);
  return out;
}

GaussWord parse_word(const std::string& text) {
  GaussWord g;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    const auto bad = [&](const std::string& why) {
      throw Error(ErrorKind::Parse, "token " + std::to_string(g.tokens.size() + 1) + " '" + tok + "': " + why);
    };
    if (tok.size() < 3) bad("too short");
    GaussToken t;
    const char head = tok[0];
    const char tail = tok.back();
    const std::string digits = tok.substr(1, tok.size() - 2);
    if (head == 'O' || head == 'U') {
      t.kind = head == 'O' ? TokenKind::Over : TokenKind::Under;
      if (tail != '+' && tail != '-') bad("expected + or - after the id");
      t.hand = tail == '+' ? 1 : -1;
    } else if (head == 'M') {
      t.kind = TokenKind::Saddle;
      if (tail != '0' && tail != '1') bad("expected flag 0 or 1 after the id");
      t.flag = tail - '0';
    } else {
      bad("expected O, U or M");
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
      bad("expected a numeric id");
    if (digits.size() > 9) bad("id too large");
    t.id = std::stoi(digits);
    if (t.id < 1) bad("id must be positive");
    g.tokens.push_back(t);
  }
  return g;
}

}  // namespace surfknot
