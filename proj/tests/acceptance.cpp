// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "support.hpp"
#include "surfknot/bikei.hpp"
#include "surfknot/coloring.hpp"
#include "surfknot/error.hpp"
#include "surfknot/gauss.hpp"
#include "surfknot/moves.hpp"

using namespace surfknot;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const std::vector<BikeiTable>& tables_up_to_3() {
  static const std::vector<BikeiTable> all = [] {
    std::vector<BikeiTable> v;
    for (int n = 1; n <= 3; ++n)
      for (auto& t : enumerate_bikei(n, false)) v.push_back(std::move(t));
    return v;
  }();
  return all;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

Outcome reference_values() {
  Outcome o;
  const auto t = oracle::load_table("paper_s4.bikei");
  for (const auto& [name, expect] : std::vector<std::pair<std::string, std::uint64_t>>{{"8_1.mvd", 10}, {"0_1.mvd", 4}}) {
    const Diagram d = oracle::load(name);
    const auto start = Clock::now();
    const auto phi = color_count(d, t);
    const double secs = seconds_since(start);
    o.pass = o.pass && phi == expect && secs < 1.0;
    o.detail << name << " phi=" << phi << " (" << secs << " s) ";
  }
  return o;
}

Outcome alexander_matrix() {
  Outcome o;
  const std::vector<std::vector<int>> expect{
      {3, 1, 3, 1, 3, 3, 3, 3}, {4, 2, 4, 2, 2, 2, 2, 2}, {1, 3, 1, 3, 1, 1, 1, 1}, {2, 4, 2, 4, 4, 4, 4, 4}};
  const auto a = alexander_bikei(4, 3, 1);
  const bool same = a.matrix() == expect;
  const bool valid_a = verify_bikei(a).valid;
  const bool valid_s4 = verify_bikei(oracle::load_table("paper_s4.bikei")).valid;
  o.pass = same && valid_a && valid_s4;
  o.detail << "matrix " << (same ? "equal" : "differs") << ", verify " << valid_a << "/" << valid_s4;
  return o;
}

Outcome move_invariance() {
  Outcome o;
  const auto start = Clock::now();
  const auto& tables = tables_up_to_3();
  std::size_t triples = 0, violations = 0, sites_seen = 0;
  std::map<std::string, std::size_t> per_move;
  auto compare = [&](const std::string& name, const std::vector<std::uint64_t>& phi, const Diagram& after,
                     const std::string& label) {
    ++sites_seen;
    ++per_move[label];
    for (std::size_t i = 0; i < tables.size(); ++i) {
      ++triples;
      if (color_count(after, tables[i], 1) != phi[i]) {
        ++violations;
        if (violations <= 3) o.detail << "[violation " << label << " on " << name << "] ";
      }
    }
  };
  for (const auto& name : oracle::all_fixtures()) {
    const Diagram d = oracle::load(name);
    std::vector<std::uint64_t> phi;
    for (const auto& t : tables) phi.push_back(color_count(d, t, 1));
    for (const auto& id : move_ids())
      for (const auto& site : applicable_sites(d, id)) compare(name, phi, apply_move(d, site), id);
    for (const auto& site : oracle::detour_sites(d)) {
      Diagram e;
      try {
        e = detour(d, site.path, site.route);
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::NonVirtualPath) continue;
        throw;
      }
      compare(name, phi, e, "detour");
    }
  }
  const double secs = seconds_since(start);
  bool every_move = per_move.count("detour") > 0;
  for (const auto& id : move_ids()) every_move = every_move && per_move[id] > 0;
  o.pass = violations == 0 && triples >= 500 && secs < 60.0 && every_move;
  o.detail << sites_seen << " sites, " << triples << " triples, " << violations << " violations, " << secs << " s";
  if (!every_move) o.detail << ", some move had no site";
  return o;
}

Outcome unknotted_laws() {
  Outcome o;
  std::size_t checks = 0, bad = 0;
  const std::vector<std::string> orientable{"0_1.mvd", "torus.mvd", "genus2.mvd"};
  const std::vector<std::string> nonorientable{"p2_plus.mvd", "p2_minus.mvd", "klein.mvd"};
  for (const auto& t : tables_up_to_3()) {
    const auto order = static_cast<std::uint64_t>(t.order());
    const auto fixed = static_cast<std::uint64_t>(oracle::fixed_count(t));
    for (const auto& name : orientable) {
      ++checks;
      bad += color_count(oracle::load(name), t) != order;
    }
    for (const auto& name : nonorientable) {
      const auto phi = color_count(oracle::load(name), t);
      ++checks;
      bad += phi != fixed;
      if (oracle::kei(t)) {
        ++checks;
        bad += phi != order;
      }
    }
  }
  o.pass = bad == 0;
  o.detail << checks << " checks, " << bad << " failures";
  return o;
}

Outcome orientability() {
  Outcome o;
  const auto start = Clock::now();
  std::mt19937 rng(2024);
  std::size_t diagrams = 0, words = 0, disagreements = 0;
  for (int trial = 0; trial < 1200; ++trial) {
    const Diagram d = oracle::random_diagram(rng, 1 + trial % 7);
    ++diagrams;
    disagreements += orient(d).orientable != oracle::brute_orientable(d);
  }
  for (int k = 1; k <= 5; ++k)
    oracle::for_each_word(k, rng, [&](const GaussWord& g) {
      ++words;
      const bool expect = oracle::word_orientable(g);
      disagreements += gauss_orientable(g) != expect;
      const Diagram d = from_gauss(g);
      if (semiarc_count(d) <= 16) disagreements += oracle::brute_orientable(d) != expect;
    });
  const double secs = seconds_since(start);
  o.pass = disagreements == 0 && diagrams >= 1000 && secs < 120.0;
  o.detail << diagrams << " diagrams, " << words << " words, " << disagreements << " disagreements, " << secs << " s";
  return o;
}

Outcome solver_vs_brute_force() {
  Outcome o;
  std::mt19937 rng(77);
  const auto& tables = tables_up_to_3();
  std::size_t pairs = 0, bad = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Diagram d = oracle::random_diagram(rng, 1 + trial % 4);
    if (semiarc_count(d) > 8) continue;
    const auto& t = tables[rng() % tables.size()];
    ++pairs;
    bad += color_count(d, t) != oracle::brute_count(d, t);
  }
  o.pass = bad == 0 && pairs >= 200;
  o.detail << pairs << " pairs, " << bad << " mismatches";
  return o;
}

Outcome virtual_phenomenon() {
  Outcome o;
  const Diagram v = oracle::load("virtual_nonorientable.mvd");
  const bool nonorientable = !orient(v).orientable;
  const bool colorable = two_colorable(v);
  std::size_t changes = 0, bad = 0;
  for (const auto& name : oracle::all_fixtures()) {
    const Diagram d = oracle::load(name);
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
      if (d.nodes[i].kind != NodeKind::Classical) continue;
      ++changes;
      bad += two_colorable(crossing_change(d, static_cast<int>(i))) != two_colorable(d);
    }
  }
  o.pass = nonorientable && colorable && bad == 0;
  o.detail << "orientable=" << !nonorientable << " two-colorable=" << colorable << ", " << changes
           << " crossing changes, " << bad << " changed colorability";
  return o;
}

Outcome gauss_round_trip() {
  Outcome o;
  std::size_t fixtures = 0, merged = 0, bad = 0;
  auto check = [&](const std::string& name, const Diagram& d) {
    // the unknot has no tokens; it round trips through the empty word
    const Diagram back = d.nodes.empty() ? d : from_gauss(to_gauss(d));
    const auto a = euler_characteristic(d), b = euler_characteristic(back);
    bool same = a.euler == b.euler && orient(d).orientable == orient(back).orientable;
    for (const auto& t : tables_up_to_3()) same = same && color_count(d, t) == color_count(back, t);
    if (!same) {
      ++bad;
      o.detail << "[" << name << "] ";
    }
  };
  for (const auto& name : oracle::all_fixtures()) {
    const Diagram d = oracle::load(name);
    if (naive_components(d).size() == 1) {
      ++fixtures;
      check(name, d);
    } else {
      ++merged;
      check(name + " merged", merge_components(d));
    }
  }
  o.pass = bad == 0 && fixtures > 0;
  o.detail << fixtures << " single-component fixtures, " << merged << " merged ones, " << bad << " failures";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"reference values", reference_values},
      {"Alexander matrix", alexander_matrix},
      {"move invariance", move_invariance},
      {"unknotted surfaces", unknotted_laws},
      {"orientability", orientability},
      {"solver vs brute force", solver_vs_brute_force},
      {"virtual non-orientable", virtual_phenomenon},
      {"Gauss round trip", gauss_round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail.str()
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
