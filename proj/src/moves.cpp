#include "surfknot/moves.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "schema_data.hpp"
#include "surfknot/error.hpp"
#include "wiring.hpp"

namespace surfknot {

namespace {

[[noreturn]] void schema_error(const std::string& source, int line, const std::string& token, const std::string& why) {
  throw Error(ErrorKind::Parse, source + ":" + std::to_string(line) + ": token '" + token + "': " + why);
}

int parse_label(const std::string& source, int line, const std::string& tok) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used == tok.size() && v >= 1) return v;
  } catch (const std::exception&) {
  }
  schema_error(source, line, tok, "expected a positive integer label");
}

void check_side(const MoveRule& rule, const Pattern& p, const std::string& source, const std::string& side) {
  std::map<int, int> uses;
  for (const auto& n : p.nodes)
    for (int s : n.slots) ++uses[s];
  for (const auto& j : p.joins) {
    ++uses[j[0]];
    ++uses[j[1]];
  }
  const std::set<int> boundary(rule.boundary.begin(), rule.boundary.end());
  for (const auto& [label, count] : uses) {
    const bool is_boundary = boundary.count(label) > 0;
    if (is_boundary && count != 1)
      throw Error(ErrorKind::Parse, source + ": " + side + ": boundary label " + std::to_string(label) + " used " +
                                        std::to_string(count) + " times");
    if (!is_boundary && count != 2)
      throw Error(ErrorKind::Parse, source + ": " + side + ": internal label " + std::to_string(label) + " used " +
                                        std::to_string(count) + " times");
  }
  for (int b : rule.boundary)
    if (!uses.count(b))
      throw Error(ErrorKind::Parse, source + ": " + side + ": boundary label " + std::to_string(b) + " unused");
  if (!p.nodes.empty() && !p.joins.empty())
    throw Error(ErrorKind::Parse, source + ": " + side + " mixes nodes and joins");
  for (const auto& j : p.joins)
    if (!boundary.count(j[0]) || !boundary.count(j[1]))
      throw Error(ErrorKind::Parse, source + ": " + side + ": joins must connect boundary labels");
}

}  // namespace

MoveSchema parse_schema(const std::string& id, const std::string& text, const std::string& source) {
  MoveSchema schema;
  schema.id = id;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  Pattern* side = nullptr;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& head = tok[0];
    if (head == "BOUNDARY") {
      MoveRule rule;
      for (std::size_t i = 1; i < tok.size(); ++i) rule.boundary.push_back(parse_label(source, line, tok[i]));
      schema.variants.push_back(std::move(rule));
      side = nullptr;
      continue;
    }
    if (schema.variants.empty()) schema_error(source, line, head, "expected BOUNDARY first");
    auto& rule = schema.variants.back();
    if (head == "LHS" || head == "RHS") {
      if (tok.size() != 1) schema_error(source, line, tok[1], "unexpected token after " + head);
      side = head == "LHS" ? &rule.lhs : &rule.rhs;
      continue;
    }
    if (!side) schema_error(source, line, head, "expected LHS or RHS");
    auto want = [&](std::size_t n) {
      if (tok.size() != n) schema_error(source, line, head, head + " takes " + std::to_string(n - 1) + " values");
    };
    if (head == "X" || head == "V") {
      want(5);
      Node n{head == "X" ? NodeKind::Classical : NodeKind::Virtual, {}, 0};
      for (int k = 0; k < 4; ++k) n.slots[static_cast<std::size_t>(k)] = parse_label(source, line, tok[static_cast<std::size_t>(k + 1)]);
      side->nodes.push_back(n);
    } else if (head == "S") {
      want(6);
      Node n{NodeKind::Saddle, {}, 0};
      for (int k = 0; k < 4; ++k) n.slots[static_cast<std::size_t>(k)] = parse_label(source, line, tok[static_cast<std::size_t>(k + 1)]);
      if (tok[5] != "0" && tok[5] != "1") schema_error(source, line, tok[5], "marker must be 0 or 1");
      n.marker = tok[5] == "1" ? 1 : 0;
      side->nodes.push_back(n);
    } else if (head == "J") {
      want(3);
      side->joins.push_back({parse_label(source, line, tok[1]), parse_label(source, line, tok[2])});
    } else if (head == "O") {
      want(2);
      side->loops += parse_label(source, line, tok[1]);
    } else {
      schema_error(source, line, head, "unknown item");
    }
  }
  if (schema.variants.empty()) throw Error(ErrorKind::Parse, source + ": no BOUNDARY block");
  for (const auto& rule : schema.variants) {
    check_side(rule, rule.lhs, source, "LHS");
    check_side(rule, rule.rhs, source, "RHS");
  }
  return schema;
}

const std::vector<MoveSchema>& move_catalog() {
  static const std::vector<MoveSchema> catalog = [] {
    std::vector<MoveSchema> out;
    for (const auto& e : detail::embedded_schemas()) {
      std::string id(e.name);
      if (!id.empty() && id.back() == 'p') id.back() = '\'';
      out.push_back(parse_schema(id, std::string(e.text), "moves/schema/" + std::string(e.name) + ".mvd"));
    }
    std::sort(out.begin(), out.end(), [](const MoveSchema& a, const MoveSchema& b) {
      // Y1 < Y1' < Y2 < ...
      return std::make_pair(std::stoi(a.id.substr(1)), a.id) < std::make_pair(std::stoi(b.id.substr(1)), b.id);
    });
    return out;
  }();
  return catalog;
}

std::vector<std::string> move_ids() {
  std::vector<std::string> ids;
  for (const auto& s : move_catalog()) ids.push_back(s.id);
  return ids;
}

const MoveSchema& find_move(const std::string& id) {
  for (const auto& s : move_catalog())
    if (s.id == id) return s;
  std::string known;
  for (const auto& s : move_catalog()) known += (known.empty() ? "" : ", ") + s.id;
  throw Error(ErrorKind::UnknownMove, "'" + id + "' (known: " + known + ")");
}

std::uint64_t diagram_fingerprint(const Diagram& d) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::int64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>((v >> (8 * i)) & 0xff);
      h *= 1099511628211ULL;
    }
  };
  mix(d.free_loops);
  mix(static_cast<std::int64_t>(d.nodes.size()));
  for (const auto& n : d.nodes) {
    mix(static_cast<int>(n.kind));
    for (int s : n.slots) mix(s);
    mix(n.marker);
  }
  return h;
}

std::string to_string(Direction dir) { return dir == Direction::Forward ? "forward" : "backward"; }

namespace {

const Pattern& matched_side(const MoveRule& r, Direction dir) { return dir == Direction::Forward ? r.lhs : r.rhs; }
const Pattern& replacement_side(const MoveRule& r, Direction dir) { return dir == Direction::Forward ? r.rhs : r.lhs; }

bool rotation_allowed(NodeKind k, int rot) { return k != NodeKind::Classical || rot % 2 == 0; }

class Matcher {
 public:
  Matcher(const Diagram& d, const Pattern& p, const std::set<int>& boundary)
      : d_(d), p_(p), boundary_(boundary), ends_(detail::semiarc_ends(d)) {
    for (std::size_t i = 0; i < p.nodes.size(); ++i)
      for (int k = 0; k < 4; ++k) occ_[p.nodes[i].slots[static_cast<std::size_t>(k)]].push_back({static_cast<int>(i), k});
  }

  int arc(int end) const { return d_.nodes[static_cast<std::size_t>(end / 4)].slots[static_cast<std::size_t>(end % 4)]; }
  int link(int end) const {
    const auto& pe = ends_[static_cast<std::size_t>(arc(end))];
    return pe[0] == end ? pe[1] : pe[0];
  }

  // All node assignments; results are (nodes, rotations).
  std::vector<std::pair<std::vector<int>, std::vector<int>>> node_matches() {
    results_.clear();
    nodes_.assign(p_.nodes.size(), -1);
    rots_.assign(p_.nodes.size(), 0);
    if (d_.free_loops >= p_.loops) assign(0);
    return results_;
  }

  // Empty string when the assignment matches; otherwise the first mismatch.
  std::string check(const std::vector<int>& nodes, const std::vector<int>& rots) const {
    if (nodes.size() != p_.nodes.size() || rots.size() != p_.nodes.size()) return "site shape does not fit the move";
    if (d_.free_loops < p_.loops) return "not enough free loops";
    std::set<int> used;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const int n = nodes[i];
      if (n < 0 || n >= static_cast<int>(d_.nodes.size())) return "node " + std::to_string(n + 1) + " does not exist";
      if (!used.insert(n).second) return "node " + std::to_string(n + 1) + " matched twice";
      const auto& pn = p_.nodes[i];
      const auto& dn = d_.nodes[static_cast<std::size_t>(n)];
      if (dn.kind != pn.kind) return "node " + std::to_string(n + 1) + " has the wrong kind";
      if (!rotation_allowed(dn.kind, rots[i])) return "node " + std::to_string(n + 1) + " cannot be rotated that way";
      if (pn.kind == NodeKind::Saddle && rotated(dn, rots[i]).marker != pn.marker)
        return "node " + std::to_string(n + 1) + " has the wrong marker";
    }
    for (const auto& [label, where] : occ_) {
      if (boundary_.count(label) || where.size() != 2) continue;
      const int e1 = nodes[static_cast<std::size_t>(where[0].first)] * 4 + (where[0].second + rots[static_cast<std::size_t>(where[0].first)]) % 4;
      const int e2 = nodes[static_cast<std::size_t>(where[1].first)] * 4 + (where[1].second + rots[static_cast<std::size_t>(where[1].first)]) % 4;
      if (link(e1) != e2)
        return "semiarc " + std::to_string(arc(e1)) + " at node " + std::to_string(e1 / 4 + 1) +
               " no longer joins the expected slot of node " + std::to_string(e2 / 4 + 1);
    }
    return "";
  }

  std::vector<int> internal_arcs(const std::vector<int>& nodes, const std::vector<int>& rots) const {
    std::vector<int> out;
    for (const auto& [label, where] : occ_) {
      if (boundary_.count(label)) continue;
      out.push_back(arc(nodes[static_cast<std::size_t>(where[0].first)] * 4 +
                        (where[0].second + rots[static_cast<std::size_t>(where[0].first)]) % 4));
    }
    return out;
  }

 private:
  void assign(std::size_t i) {
    if (i == p_.nodes.size()) {
      if (check(nodes_, rots_).empty()) results_.emplace_back(nodes_, rots_);
      return;
    }
    const auto& pn = p_.nodes[i];
    // a link to an assigned node fixes the candidate
    for (int k = 0; k < 4; ++k) {
      const int label = pn.slots[static_cast<std::size_t>(k)];
      if (boundary_.count(label)) continue;
      for (const auto& [j, kk] : occ_.at(label)) {
        if (j >= static_cast<int>(i)) continue;
        const int from = nodes_[static_cast<std::size_t>(j)] * 4 + (kk + rots_[static_cast<std::size_t>(j)]) % 4;
        const int to = link(from);
        try_candidate(i, to / 4, ((to % 4) - k + 4) % 4);
        return;
      }
    }
    for (int n = 0; n < static_cast<int>(d_.nodes.size()); ++n)
      for (int r = 0; r < 4; ++r) try_candidate(i, n, r);
  }

  void try_candidate(std::size_t i, int n, int r) {
    const auto& pn = p_.nodes[i];
    const auto& dn = d_.nodes[static_cast<std::size_t>(n)];
    if (dn.kind != pn.kind || !rotation_allowed(dn.kind, r)) return;
    if (pn.kind == NodeKind::Saddle && rotated(dn, r).marker != pn.marker) return;
    for (std::size_t j = 0; j < i; ++j)
      if (nodes_[j] == n) return;
    nodes_[i] = n;
    rots_[i] = r;
    // prune on links to already placed slots
    for (int k = 0; k < 4; ++k) {
      const int label = pn.slots[static_cast<std::size_t>(k)];
      if (boundary_.count(label)) continue;
      for (const auto& [j, kk] : occ_.at(label)) {
        if (j > static_cast<int>(i) || (j == static_cast<int>(i) && kk == k)) continue;
        const int a = n * 4 + (k + r) % 4;
        const int b = nodes_[static_cast<std::size_t>(j)] * 4 + (kk + rots_[static_cast<std::size_t>(j)]) % 4;
        if (link(a) != b) {
          nodes_[i] = -1;
          return;
        }
      }
    }
    assign(i + 1);
    nodes_[i] = -1;
  }

  const Diagram& d_;
  const Pattern& p_;
  const std::set<int>& boundary_;
  std::vector<std::array<int, 2>> ends_;
  std::map<int, std::vector<std::pair<int, int>>> occ_;
  std::vector<int> nodes_, rots_;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> results_;
};

// Join-only sides: each join takes a distinct semiarc (either way round) or a free loop (0).
void join_matches(const Diagram& d, const Pattern& p, std::size_t i, std::vector<int>& arcs, std::vector<int>& flips,
                  int loops_left, std::vector<std::pair<std::vector<int>, std::vector<int>>>& out) {
  if (i == p.joins.size()) {
    out.emplace_back(arcs, flips);
    return;
  }
  if (loops_left > 0) {
    arcs.push_back(0);
    flips.push_back(0);
    join_matches(d, p, i + 1, arcs, flips, loops_left - 1, out);
    arcs.pop_back();
    flips.pop_back();
  }
  const int m = semiarc_count(d);
  for (int s = 1; s <= m; ++s) {
    if (std::find(arcs.begin(), arcs.end(), s) != arcs.end()) continue;
    for (int f = 0; f < 2; ++f) {
      arcs.push_back(s);
      flips.push_back(f);
      join_matches(d, p, i + 1, arcs, flips, loops_left, out);
      arcs.pop_back();
      flips.pop_back();
    }
  }
}

std::string check_joins(const Diagram& d, const Pattern& p, const MoveSite& site) {
  if (site.matched_semiarcs.size() != p.joins.size() || site.flips.size() != p.joins.size() || !site.matched_nodes.empty())
    return "site shape does not fit the move";
  const int m = semiarc_count(d);
  int loops = p.loops;
  std::set<int> seen;
  for (std::size_t i = 0; i < p.joins.size(); ++i) {
    const int s = site.matched_semiarcs[i];
    if (s == 0) {
      ++loops;
      continue;
    }
    if (s < 0 || s > m) return "semiarc " + std::to_string(s) + " does not exist";
    if (!seen.insert(s).second) return "semiarc " + std::to_string(s) + " matched twice";
    if (site.flips[i] != 0 && site.flips[i] != 1) return "bad strand direction";
  }
  if (loops > d.free_loops) return "not enough free loops";
  return "";
}

std::string check_site(const Diagram& d, const MoveSite& site, const MoveRule& rule) {
  const Pattern& p = matched_side(rule, site.direction);
  if (!p.joins.empty() || p.nodes.empty()) return check_joins(d, p, site);
  const std::set<int> boundary(rule.boundary.begin(), rule.boundary.end());
  Matcher mt(d, p, boundary);
  auto why = mt.check(site.matched_nodes, site.rotations);
  if (why.empty() && mt.internal_arcs(site.matched_nodes, site.rotations) != site.matched_semiarcs)
    why = "matched semiarcs differ";
  return why;
}

}  // namespace

std::vector<MoveSite> applicable_sites(const Diagram& d, const std::string& move_id) {
  const auto& schema = find_move(move_id);
  validate(d);
  const auto fp = diagram_fingerprint(d);
  std::vector<MoveSite> sites;
  for (std::size_t v = 0; v < schema.variants.size(); ++v) {
    const auto& rule = schema.variants[v];
    const std::set<int> boundary(rule.boundary.begin(), rule.boundary.end());
    for (Direction dir : {Direction::Forward, Direction::Backward}) {
      const Pattern& p = matched_side(rule, dir);
      MoveSite base;
      base.move_id = schema.id;
      base.variant = static_cast<int>(v);
      base.direction = dir;
      base.fingerprint = fp;
      if (p.nodes.empty()) {
        if (d.free_loops < p.loops) continue;
        std::vector<std::pair<std::vector<int>, std::vector<int>>> found;
        std::vector<int> arcs, flips;
        join_matches(d, p, 0, arcs, flips, d.free_loops - p.loops, found);
        for (auto& [a, f] : found) {
          MoveSite s = base;
          s.matched_semiarcs = std::move(a);
          s.flips = std::move(f);
          sites.push_back(std::move(s));
        }
      } else {
        Matcher mt(d, p, boundary);
        for (auto& [nodes, rots] : mt.node_matches()) {
          MoveSite s = base;
          s.matched_semiarcs = mt.internal_arcs(nodes, rots);
          s.matched_nodes = std::move(nodes);
          s.rotations = std::move(rots);
          sites.push_back(std::move(s));
        }
      }
    }
  }
  auto key = [](const MoveSite& s) {
    const int least = s.matched_nodes.empty() ? INT_MAX : *std::min_element(s.matched_nodes.begin(), s.matched_nodes.end());
    std::vector<int> arcs = s.matched_semiarcs;
    return std::make_tuple(least, s.matched_nodes, arcs, s.flips, s.rotations, s.variant, static_cast<int>(s.direction));
  };
  std::stable_sort(sites.begin(), sites.end(), [&](const MoveSite& a, const MoveSite& b) { return key(a) < key(b); });
  return sites;
}

Diagram apply_move(const Diagram& d, const MoveSite& site) {
  const auto& schema = find_move(site.move_id);
  if (site.variant < 0 || site.variant >= static_cast<int>(schema.variants.size()))
    throw Error(ErrorKind::StaleSite, "variant " + std::to_string(site.variant) + " does not exist for " + site.move_id);
  const auto& rule = schema.variants[static_cast<std::size_t>(site.variant)];
  validate(d);
  if (auto why = check_site(d, site, rule); !why.empty()) throw Error(ErrorKind::StaleSite, describe(site) + ": " + why);
  if (site.fingerprint != diagram_fingerprint(d))
    throw Error(ErrorKind::StaleSite, describe(site) + ": the diagram changed since the site was computed");

  const Pattern& from = matched_side(rule, site.direction);
  const Pattern& to = replacement_side(rule, site.direction);
  const auto ends = detail::semiarc_ends(d);
  detail::Wiring w(d);

  // Outside end reached from each boundary label, or the partner label when
  // two boundary labels are joined to each other outside the pattern.
  std::map<int, int> outside;
  std::map<int, int> paired;
  int loops_used = from.loops;
  if (!from.nodes.empty()) {
    std::map<int, int> end_of;  // boundary label -> its end in d
    for (std::size_t i = 0; i < from.nodes.size(); ++i)
      for (int k = 0; k < 4; ++k) {
        const int label = from.nodes[i].slots[static_cast<std::size_t>(k)];
        if (std::find(rule.boundary.begin(), rule.boundary.end(), label) != rule.boundary.end())
          end_of[label] = site.matched_nodes[i] * 4 + (k + site.rotations[i]) % 4;
      }
    std::map<int, int> label_at;
    for (const auto& [label, e] : end_of) label_at[e] = label;
    for (const auto& [label, e] : end_of) {
      const int o = w.link(e);
      if (label_at.count(o)) paired[label] = label_at[o];
      else outside[label] = o;
    }
    for (int n : site.matched_nodes) w.dissolve(n, {});
  } else {
    for (std::size_t i = 0; i < from.joins.size(); ++i) {
      const int a = from.joins[i][0], b = from.joins[i][1];
      const int s = site.matched_semiarcs[i];
      if (s == 0) {
        paired[a] = b;
        paired[b] = a;
        ++loops_used;
        continue;
      }
      const int f = site.flips[i];
      outside[a] = ends[static_cast<std::size_t>(s)][static_cast<std::size_t>(f)];
      outside[b] = ends[static_cast<std::size_t>(s)][static_cast<std::size_t>(1 - f)];
    }
  }
  w.add_free_loops(-loops_used);

  std::map<int, int> connector;
  for (int b : rule.boundary) connector[b] = w.add_connector();
  for (int b : rule.boundary) {
    const int out = connector[b] * 4;
    if (outside.count(b)) {
      w.connect(out, outside[b]);
    } else if (paired.count(b) && b < paired[b]) {
      w.connect(out, connector[paired[b]] * 4);
    }
  }

  std::map<int, std::vector<int>> internal;
  for (const auto& pn : to.nodes) {
    const int n = w.add_node(pn.kind, pn.marker);
    for (int k = 0; k < 4; ++k) {
      const int label = pn.slots[static_cast<std::size_t>(k)];
      if (connector.count(label)) w.connect(n * 4 + k, connector[label] * 4 + 1);
      else internal[label].push_back(n * 4 + k);
    }
  }
  for (const auto& [label, es] : internal) w.connect(es[0], es[1]);
  for (const auto& j : to.joins) w.connect(connector[j[0]] * 4 + 1, connector[j[1]] * 4 + 1);
  w.add_free_loops(to.loops);
  return w.to_diagram();
}

std::string describe(const MoveSite& site) {
  std::string out = site.move_id + " " + to_string(site.direction) + " variant " + std::to_string(site.variant + 1);
  if (!site.matched_nodes.empty()) {
    out += " nodes";
    for (int n : site.matched_nodes) out += " " + std::to_string(n + 1);
  }
  if (!site.matched_semiarcs.empty()) {
    out += " semiarcs";
    for (int s : site.matched_semiarcs) out += " " + std::to_string(s);
  }
  return out;
}

namespace {

std::size_t component_count(const Diagram& d) { return naive_components(d).size(); }

// Shortest move sequence (bounded depth) that lowers the component count.
bool merge_step(Diagram& d) {
  const std::size_t before = component_count(d);
  for (const auto& site : applicable_sites(d, "Y8")) {
    Diagram next = apply_move(d, site);
    if (component_count(next) < before) {
      d = std::move(next);
      return true;
    }
  }
  const std::vector<std::string> helpers{"Y6", "Y6'", "Y5", "Y4", "Y4'", "Y7", "Y8"};
  std::deque<std::pair<Diagram, int>> queue{{d, 0}};
  std::set<std::vector<int>> seen{canonical_key(d)};
  while (!queue.empty()) {
    auto [cur, depth] = queue.front();
    queue.pop_front();
    if (depth == 2) continue;
    for (const auto& id : helpers)
      for (const auto& site : applicable_sites(cur, id)) {
        Diagram next = apply_move(cur, site);
        if (component_count(next) < before) {
          d = std::move(next);
          return true;
        }
        if (seen.insert(canonical_key(next)).second) queue.emplace_back(std::move(next), depth + 1);
      }
  }
  return false;
}

}  // namespace

Diagram merge_components(const Diagram& d) {
  validate(d);
  Diagram cur = d;
  while (component_count(cur) > 1)
    if (!merge_step(cur))
      throw Error(ErrorKind::Precondition, "no split/merge sequence joins the " +
                                               std::to_string(component_count(cur)) + " naive components");
  return cur;
}

Diagram detour(const Diagram& d, const std::vector<int>& path, const std::vector<int>& route) {
  validate(d);
  const int m = semiarc_count(d);
  if (path.empty()) throw Error(ErrorKind::Precondition, "empty path");
  for (int s : path)
    if (s < 1 || s > m) throw Error(ErrorKind::Precondition, "path semiarc " + std::to_string(s) + " does not exist");
  const std::set<int> on_path(path.begin(), path.end());
  for (int r : route) {
    if (r < 1 || r > m) throw Error(ErrorKind::Precondition, "route semiarc " + std::to_string(r) + " does not exist");
    if (on_path.count(r)) throw Error(ErrorKind::Precondition, "route semiarc " + std::to_string(r) + " lies on the path");
  }
  const auto ends = detail::semiarc_ends(d);
  auto arc = [&](int end) { return d.nodes[static_cast<std::size_t>(end / 4)].slots[static_cast<std::size_t>(end % 4)]; };
  auto other = [&](int end) {
    const auto& pe = ends[static_cast<std::size_t>(arc(end))];
    return pe[0] == end ? pe[1] : pe[0];
  };

  // Walk the path from each end of its first semiarc; keep the direction that works.
  std::set<int> crossed;
  int tail = -1, head = -1;
  std::string failure;
  for (int f = 0; f < 2 && tail < 0; ++f) {
    crossed.clear();
    failure.clear();
    const int start = ends[static_cast<std::size_t>(path[0])][static_cast<std::size_t>(f)];
    int arrive = other(start);
    for (std::size_t i = 1; i < path.size() && failure.empty(); ++i) {
      const int n = arrive / 4;
      const int exit = n * 4 + (arrive % 4 + 2) % 4;
      if (arc(exit) != path[i]) {
        failure = "semiarcs " + std::to_string(path[i - 1]) + " and " + std::to_string(path[i]) +
                  " are not consecutive along a strand";
      } else if (d.nodes[static_cast<std::size_t>(n)].kind != NodeKind::Virtual) {
        failure = "path passes through non-virtual node " + std::to_string(n + 1);
      } else {
        crossed.insert(n);
        arrive = other(exit);
      }
    }
    if (failure.empty()) {
      tail = start;
      head = other(start);
    }
  }
  if (tail < 0) {
    const bool nonvirtual = failure.find("non-virtual") != std::string::npos;
    throw Error(nonvirtual ? ErrorKind::NonVirtualPath : ErrorKind::Precondition, failure);
  }

  detail::Wiring w(d);
  for (int n : crossed) w.dissolve(n, {{0, 2}, {1, 3}});
  // current insertion interval on each crossed semiarc
  std::map<int, std::array<int, 2>> span;
  int cur = tail;
  for (int r : route) {
    if (!span.count(r)) span[r] = ends[static_cast<std::size_t>(r)];
    const int v = w.add_node(NodeKind::Virtual, 0);
    auto& sp = span[r];
    w.connect(cur, v * 4);
    cur = v * 4 + 2;
    w.connect(sp[0], v * 4 + 1);
    sp[0] = v * 4 + 3;
    w.connect(sp[0], sp[1]);
  }
  w.connect(cur, head);
  return w.to_diagram();
}

}  // namespace surfknot
