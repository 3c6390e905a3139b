#pragma once

#include <string>

#include "surfknot/bikei.hpp"
#include "surfknot/diagram.hpp"
#include "surfknot/gauss.hpp"

namespace surfknot {

// Parsers report `source:line: token '...': reason` through Error(Parse).
// `source` is only used in messages.

BikeiTable parse_bikei(const std::string& text, const std::string& source = "<input>");
Diagram parse_mvd(const std::string& text, const std::string& source = "<input>");
GaussWord parse_gmvd(const std::string& text, const std::string& source = "<input>");

std::string read_file(const std::string& path);
BikeiTable read_bikei(const std::string& path);
Diagram read_mvd(const std::string& path);
GaussWord read_gmvd(const std::string& path);

std::string write_bikei(const BikeiTable& t);
/// `O k` first when k > 0, then nodes in order, each in normalized form.
std::string write_mvd(const Diagram& d);
std::string write_gmvd(const GaussWord& g);

/// One node as it appears on an `.mvd` line, e.g. `S 1 2 2 1 0`.
std::string format_node(const Node& n);

}  // namespace surfknot
