#include "surfknot/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "surfknot/bikei.hpp"
#include "surfknot/coloring.hpp"
#include "surfknot/diagram.hpp"
#include "surfknot/error.hpp"
#include "surfknot/gauss.hpp"
#include "surfknot/io.hpp"
#include "surfknot/moves.hpp"

namespace surfknot::cli {

namespace {

using Record = std::vector<std::pair<std::string, std::string>>;

class Output {
 public:
  void add(Record r) { records_.push_back(std::move(r)); }
  void add(const std::string& key, const std::string& value) { records_.push_back({{key, value}}); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  void add(const std::string& key, long long value) { add(key, std::to_string(value)); }

  std::string text() const {
    std::string out;
    for (const auto& r : records_) {
      for (std::size_t i = 0; i < r.size(); ++i) out += (i ? " " : "") + r[i].first + "=" + r[i].second;
      out += "\n";
    }
    return out;
  }

  std::string json() const {
    auto typed = [](const std::string& k, const std::string& v) -> nlohmann::ordered_json {
      static const std::set<std::string> lists{"coloring", "loops", "members", "nodes", "semiarcs", "table", "witness"};
      if (lists.count(k)) return v;
      if (v == "true") return true;
      if (v == "false") return false;
      if (!v.empty() && v.size() < 19 && std::all_of(v.begin(), v.end(), [](char c) { return c == '-' || std::isdigit(static_cast<unsigned char>(c)); }) &&
          v.find('-', 1) == std::string::npos && v != "-")
        return std::stoll(v);
      return v;
    };
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records_) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (const auto& [k, v] : r) obj[k] = typed(k, v);
      arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
  }

 private:
  std::vector<Record> records_;
};

std::string join(const std::vector<int>& xs, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
  return out;
}

std::string table_text(const BikeiTable& t) {
  std::string out;
  for (const auto& row : t.matrix()) {
    if (!out.empty()) out += ";";
    out += join(row);
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<int> parse_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError(what, "'" + item + "' is not an integer");
    }
  }
  return out;
}

void emit_diagram(Output& out, const Diagram& d, const std::string& path) {
  const Diagram n = normalized(d);
  out.add("free_loops", static_cast<long long>(n.free_loops));
  for (const auto& node : n.nodes) out.add("node", format_node(node));
  if (!path.empty()) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + path);
    f << write_mvd(n);
  }
}

Level parse_level(const std::string& s) { return s == "lower" ? Level::Lower : Level::Upper; }

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Marked vertex diagrams, bikei and their counting invariants", "surfknot"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  Output out;
  std::function<void()> action;
  auto on = [&](CLI::App* sub, std::function<void()> fn) { sub->callback([&action, fn] { action = fn; }); };

  std::string table_path, diagram_path, gauss_path, out_path, level, move_id, path_text, route_text;
  int order = 0;
  int site_index = 0;
  int node_index = 0;
  bool dedup = false;
  std::size_t limit = 0;

  auto* verify = app.add_subcommand("verify-bikei", "Check a table against the bikei axioms");
  verify->add_option("table", table_path)->required();
  on(verify, [&] {
    const auto report = verify_bikei(read_bikei(table_path));
    out.add("valid", report.valid);
    for (const auto& v : report.violations) out.add({{"violation", v.axiom}, {"witness", join(v.witness)}});
  });

  auto* enumerate = app.add_subcommand("enumerate-bikei", "List every bikei of order n");
  enumerate->add_option("n", order)->required()->check(CLI::Range(1, 6));
  enumerate->add_flag("--dedup", dedup, "Keep one table per isomorphism class");
  on(enumerate, [&] {
    const auto tables = enumerate_bikei(order, dedup);
    out.add("count", static_cast<long long>(tables.size()));
    for (const auto& t : tables) out.add("table", table_text(t));
  });

  auto* fixed = app.add_subcommand("fixed-set", "Elements with x^x = x_x = x");
  fixed->add_option("table", table_path)->required();
  on(fixed, [&] {
    const auto f = fixed_set(read_bikei(table_path));
    out.add("size", static_cast<long long>(f.size()));
    out.add("members", join(f.members));
  });

  auto* count = app.add_subcommand("color-count", "Counting invariant of a diagram");
  count->add_option("diagram", diagram_path)->required();
  count->add_option("table", table_path)->required();
  on(count, [&] {
    const Diagram d = read_mvd(diagram_path);
    const BikeiTable t = read_bikei(table_path);
    out.add("phi", std::to_string(color_count(d, t)));
  });

  auto* list = app.add_subcommand("colorings", "List colorings in lexicographic order");
  list->add_option("diagram", diagram_path)->required();
  list->add_option("table", table_path)->required();
  list->add_option("--limit", limit, "Stop after this many (0 = all)");
  on(list, [&] {
    const Diagram d = read_mvd(diagram_path);
    const auto all = colorings(d, read_bikei(table_path), limit == 0 ? SIZE_MAX : limit);
    out.add("count", static_cast<long long>(all.size()));
    for (const auto& c : all) {
      Record r{{"coloring", join(c.assignment)}};
      if (!c.loop_colors.empty()) r.emplace_back("loops", join(c.loop_colors));
      out.add(std::move(r));
    }
  });

  auto* two = app.add_subcommand("two-colorable", "Colorability by Z_2 with x^y = x_y = x + 1");
  two->add_option("diagram", diagram_path)->required();
  on(two, [&] { out.add("two-colorable", two_colorable(read_mvd(diagram_path))); });

  auto* orientable = app.add_subcommand("orientable", "Orientability of a diagram or Gauss word");
  orientable->add_option("file", diagram_path, ".mvd or .gmvd")->required();
  on(orientable, [&] {
    if (ends_with(diagram_path, ".gmvd")) {
      out.add("orientable", gauss_orientable(read_gmvd(diagram_path)));
      return;
    }
    const auto r = orient(read_mvd(diagram_path));
    out.add("orientable", r.orientable);
    if (!r.orientable) out.add("witness", join(r.witness));
  });

  auto* cnt = app.add_subcommand("counts", "Node tallies");
  cnt->add_option("diagram", diagram_path)->required();
  on(cnt, [&] {
    const Diagram d = read_mvd(diagram_path);
    const auto c = counts(d);
    out.add("c", static_cast<long long>(c.c));
    out.add("h", static_cast<long long>(c.h));
    out.add("v", static_cast<long long>(c.v));
    out.add("ch", static_cast<long long>(c.ch));
    out.add("vch", static_cast<long long>(c.vch));
    out.add("components", static_cast<long long>(naive_components(d).size()));
  });

  auto* smooth = app.add_subcommand("smooth", "Replace every saddle by its lower or upper resolution");
  smooth->add_option("diagram", diagram_path)->required();
  smooth->add_option("--level", level)->required()->check(CLI::IsMember({"lower", "upper"}));
  smooth->add_option("--out", out_path, "Also write the result as .mvd");
  on(smooth, [&] { emit_diagram(out, smooth_saddles(read_mvd(diagram_path), parse_level(level)), out_path); });

  auto* euler = app.add_subcommand("euler", "Euler characteristic and surface type");
  euler->add_option("diagram", diagram_path)->required();
  on(euler, [&] {
    const Diagram d = read_mvd(diagram_path);
    const auto s = euler_characteristic(d);
    out.add("euler", static_cast<long long>(s.euler));
    out.add("orientable", s.orientable);
    out.add(s.orientable ? "genus" : "crosscaps", static_cast<long long>(s.genus_or_crosscaps));
    out.add("closed_surface_assumed", s.assumes_closed_surface);
    out.add("projection_genus", static_cast<long long>(genus_of_projection(d)));
  });

  auto* gauss = app.add_subcommand("gauss", "Convert between diagrams and Gauss words");
  gauss->require_subcommand(1);
  auto* gauss_to = gauss->add_subcommand("to", "Diagram to Gauss word");
  gauss_to->add_option("diagram", diagram_path)->required();
  on(gauss_to, [&] {
    const Diagram d = read_mvd(diagram_path);
    // A lone free loop is the one diagram with an empty word.
    out.add("word", d.nodes.empty() && d.free_loops == 1 ? std::string() : format_word(to_gauss(d)));
  });
  auto* gauss_from = gauss->add_subcommand("from", "Gauss word to diagram");
  gauss_from->add_option("word", gauss_path)->required();
  gauss_from->add_option("--out", out_path, "Also write the result as .mvd");
  on(gauss_from, [&] {
    const GaussWord g = read_gmvd(gauss_path);
    emit_diagram(out, g.tokens.empty() ? Diagram{1, {}} : from_gauss(g), out_path);
  });

  auto* moves = app.add_subcommand("moves", "Yoshikawa moves");
  moves->require_subcommand(1);
  auto* sites = moves->add_subcommand("sites", "List the sites where a move applies");
  sites->add_option("diagram", diagram_path)->required();
  sites->add_option("--move", move_id)->required();
  on(sites, [&] {
    const auto found = applicable_sites(read_mvd(diagram_path), move_id);
    out.add("count", static_cast<long long>(found.size()));
    for (std::size_t i = 0; i < found.size(); ++i) {
      const auto& s = found[i];
      std::vector<int> nodes;
      for (int n : s.matched_nodes) nodes.push_back(n + 1);
      out.add({{"site", std::to_string(i + 1)},
               {"move", s.move_id},
               {"variant", std::to_string(s.variant + 1)},
               {"direction", to_string(s.direction)},
               {"nodes", join(nodes)},
               {"semiarcs", join(s.matched_semiarcs)}});
    }
  });
  auto* apply = moves->add_subcommand("apply", "Apply a move at a listed site");
  apply->add_option("diagram", diagram_path)->required();
  apply->add_option("--move", move_id)->required();
  apply->add_option("--site", site_index, "1-based index from `moves sites`")->required();
  apply->add_option("--out", out_path, "Also write the result as .mvd");
  on(apply, [&] {
    const Diagram d = read_mvd(diagram_path);
    const auto found = applicable_sites(d, move_id);
    if (site_index < 1 || site_index > static_cast<int>(found.size()))
      throw Error(ErrorKind::Precondition, move_id + " has " + std::to_string(found.size()) + " sites, no site " +
                                               std::to_string(site_index));
    emit_diagram(out, apply_move(d, found[static_cast<std::size_t>(site_index - 1)]), out_path);
  });
  auto* merge = moves->add_subcommand("merge", "Join all naive components with split/merge moves");
  merge->add_option("diagram", diagram_path)->required();
  merge->add_option("--out", out_path, "Also write the result as .mvd");
  on(merge, [&] { emit_diagram(out, merge_components(read_mvd(diagram_path)), out_path); });
  auto* ids = moves->add_subcommand("list", "Names of the shipped moves");
  on(ids, [&] {
    for (const auto& id : move_ids()) out.add("move", id);
  });

  auto* det = app.add_subcommand("detour", "Reroute a purely virtual strand");
  det->add_option("diagram", diagram_path)->required();
  det->add_option("--path", path_text, "Comma-separated semiarcs of the virtual strand")->required();
  det->add_option("--route", route_text, "Comma-separated semiarcs to cross instead")->required();
  det->add_option("--out", out_path, "Also write the result as .mvd");
  on(det, [&] {
    const auto route = route_text.empty() || route_text == "-" ? std::vector<int>{} : parse_list(route_text, "--route");
    emit_diagram(out, detour(read_mvd(diagram_path), parse_list(path_text, "--path"), route), out_path);
  });

  auto* change = app.add_subcommand("crossing-change", "Swap over and under at one classical node");
  change->add_option("diagram", diagram_path)->required();
  change->add_option("--node", node_index, "1-based node index")->required();
  change->add_option("--out", out_path, "Also write the result as .mvd");
  on(change, [&] { emit_diagram(out, crossing_change(read_mvd(diagram_path), node_index - 1), out_path); });

  CommandResult result;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, err;
    result.exit_code = app.exit(e, o, err) == 0 ? 0 : 2;
    result.stdout_payload = o.str();
    result.stderr_payload = err.str();
    return result;
  }
  try {
    if (action) action();
  } catch (const CLI::ValidationError& e) {
    result.exit_code = 2;
    result.stderr_payload = std::string("usage: ") + e.what() + "\n";
    return result;
  } catch (const Error& e) {
    result.exit_code = e.kind() == ErrorKind::UnknownMove ? 2 : 1;
    result.stderr_payload = std::string(e.what()) + "\n";
    return result;
  }
  result.stdout_payload = format == "json" ? out.json() : out.text();
  return result;
}

}  // namespace surfknot::cli
