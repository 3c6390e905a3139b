#include "surfknot/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

#include "surfknot/error.hpp"

namespace surfknot {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    for (std::string t; ls >> t;) line.tokens.push_back(t);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(ErrorKind kind, const std::string& source, int line, const std::string& token, const std::string& why) {
  throw Error(kind, source + ":" + std::to_string(line) + ": token '" + token + "': " + why);
}

int to_int(const std::string& source, int line, const std::string& token) {
  try {
    std::size_t used = 0;
    const long v = std::stol(token, &used);
    if (used == token.size() && v >= INT32_MIN && v <= INT32_MAX) return static_cast<int>(v);
  } catch (const std::exception&) {
  }
  fail(ErrorKind::Parse, source, line, token, "expected an integer");
}

}  // namespace

BikeiTable parse_bikei(const std::string& text, const std::string& source) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorKind::Parse, source + ": empty file, expected the order n");
  const auto& head = lines[0];
  if (head.tokens.size() != 1) fail(ErrorKind::Parse, source, head.number, head.tokens[1], "first line holds only n");
  const int n = to_int(source, head.number, head.tokens[0]);
  if (n < 1) fail(ErrorKind::Parse, source, head.number, head.tokens[0], "order must be positive");
  if (static_cast<int>(lines.size()) - 1 < n)
    throw Error(ErrorKind::Parse, source + ":" + std::to_string(lines.back().number) + ": expected " +
                                      std::to_string(n) + " rows, found " + std::to_string(lines.size() - 1));
  if (static_cast<int>(lines.size()) - 1 > n) {
    const auto& extra = lines[static_cast<std::size_t>(n + 1)];
    fail(ErrorKind::Parse, source, extra.number, extra.tokens[0], "more than " + std::to_string(n) + " rows");
  }
  std::vector<std::vector<int>> matrix;
  for (int i = 1; i <= n; ++i) {
    const auto& l = lines[static_cast<std::size_t>(i)];
    if (static_cast<int>(l.tokens.size()) != 2 * n) {
      const std::string tok = static_cast<int>(l.tokens.size()) > 2 * n ? l.tokens[static_cast<std::size_t>(2 * n)] : l.tokens.back();
      fail(ErrorKind::Parse, source, l.number, tok,
           "row has " + std::to_string(l.tokens.size()) + " entries, expected " + std::to_string(2 * n));
    }
    std::vector<int> row;
    for (std::size_t j = 0; j < l.tokens.size(); ++j) {
      const int v = to_int(source, l.number, l.tokens[j]);
      if (v < 1 || v > n)
        fail(ErrorKind::MalformedTable, source, l.number, l.tokens[j],
             "cell (" + std::to_string(i) + ", " + std::to_string(j + 1) + ") is outside 1.." + std::to_string(n));
      row.push_back(v);
    }
    matrix.push_back(std::move(row));
  }
  return BikeiTable::from_matrix(matrix);
}

Diagram parse_mvd(const std::string& text, const std::string& source) {
  Diagram d;
  bool saw_loops = false;
  for (const auto& l : tokenize(text)) {
    const std::string& head = l.tokens[0];
    auto want = [&](std::size_t count) {
      if (l.tokens.size() < count)
        fail(ErrorKind::Parse, source, l.number, head, head + " needs " + std::to_string(count - 1) + " values");
      if (l.tokens.size() > count) fail(ErrorKind::Parse, source, l.number, l.tokens[count], "unexpected extra value");
    };
    if (head == "O") {
      want(2);
      if (saw_loops) fail(ErrorKind::Parse, source, l.number, head, "repeated O line");
      saw_loops = true;
      d.free_loops = to_int(source, l.number, l.tokens[1]);
      if (d.free_loops < 0) fail(ErrorKind::Parse, source, l.number, l.tokens[1], "loop count must be non-negative");
    } else if (head == "X" || head == "V" || head == "S") {
      want(head == "S" ? 6 : 5);
      Node n;
      n.kind = head == "X" ? NodeKind::Classical : head == "V" ? NodeKind::Virtual : NodeKind::Saddle;
      for (int k = 0; k < 4; ++k) {
        const auto& tok = l.tokens[static_cast<std::size_t>(k + 1)];
        n.slots[static_cast<std::size_t>(k)] = to_int(source, l.number, tok);
        if (n.slots[static_cast<std::size_t>(k)] < 1) fail(ErrorKind::Parse, source, l.number, tok, "semiarc ids start at 1");
      }
      if (head == "S") {
        n.marker = to_int(source, l.number, l.tokens[5]);
        if (n.marker != 0 && n.marker != 1) fail(ErrorKind::Parse, source, l.number, l.tokens[5], "marker must be 0 or 1");
      }
      d.nodes.push_back(n);
    } else {
      fail(ErrorKind::Parse, source, l.number, head, "expected O, X, S or V");
    }
  }
  const auto errs = validation_errors(d);
  if (!errs.empty()) {
    std::string msg;
    for (const auto& e : errs) msg += (msg.empty() ? "" : "; ") + e;
    throw Error(ErrorKind::InvalidDiagram, source + ": " + msg);
  }
  return d;
}

GaussWord parse_gmvd(const std::string& text, const std::string& source) {
  GaussWord g;
  for (const auto& l : tokenize(text)) {
    for (const auto& tok : l.tokens) {
      try {
        const auto one = parse_word(tok);
        g.tokens.push_back(one.tokens.at(0));
      } catch (const Error& e) {
        const std::string msg = e.what();
        const auto colon = msg.find("': ");
        fail(ErrorKind::Parse, source, l.number, tok, colon == std::string::npos ? msg : msg.substr(colon + 3));
      }
    }
  }
  try {
    validate(g);
  } catch (const Error& e) {
    throw Error(ErrorKind::MalformedWord, source + ": " + e.what());
  }
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BikeiTable read_bikei(const std::string& path) { return parse_bikei(read_file(path), path); }
Diagram read_mvd(const std::string& path) { return parse_mvd(read_file(path), path); }
GaussWord read_gmvd(const std::string& path) { return parse_gmvd(read_file(path), path); }

std::string write_bikei(const BikeiTable& t) {
  std::string out = std::to_string(t.order()) + "\n";
  for (const auto& row : t.matrix()) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? " " : "") + std::to_string(row[j]);
    out += "\n";
  }
  return out;
}

std::string format_node(const Node& n) {
  std::string out = n.kind == NodeKind::Classical ? "X" : n.kind == NodeKind::Saddle ? "S" : "V";
  for (int s : n.slots) out += " " + std::to_string(s);
  if (n.kind == NodeKind::Saddle) out += " " + std::to_string(n.marker);
  return out;
}

std::string write_mvd(const Diagram& d) {
  std::string out;
  if (d.free_loops > 0) out += "O " + std::to_string(d.free_loops) + "\n";
  for (const auto& n : d.nodes) out += format_node(normalized(n)) + "\n";
  return out;
}

std::string write_gmvd(const GaussWord& g) { return format_word(g) + "\n"; }

}  // namespace surfknot
