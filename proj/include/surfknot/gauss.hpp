#pragma once

#include <string>
#include <vector>

#include "surfknot/diagram.hpp"

namespace surfknot {

enum class TokenKind { Over, Under, Saddle };

/// One chord endpoint. Classical tokens carry a handedness (+1 or -1),
/// saddle tokens a flag (0 or 1).
struct GaussToken {
  TokenKind kind = TokenKind::Over;
  int id = 0;
  int hand = 1;
  int flag = 0;

  friend bool operator==(const GaussToken&, const GaussToken&) = default;
};

struct GaussWord {
  std::vector<GaussToken> tokens;

  friend bool operator==(const GaussWord&, const GaussWord&) = default;
};

/// Throws Error(MalformedWord) naming the offending token (1-based index).
void validate(const GaussWord& g);

/// Reads the single naive component of `d`. Virtual nodes emit nothing.
/// Throws Error(MustMerge) for several components and Error(Precondition)
/// for free loops.
GaussWord to_gauss(const Diagram& d);

/// A diagram with one naive component whose Gauss word is `g` up to
/// relabeling and rotation; interleaved chords are separated by virtual nodes.
Diagram from_gauss(const GaussWord& g);

/// Parity criterion: every saddle chord has an even number of saddle
/// endpoints strictly between its two ends.
bool gauss_orientable(const GaussWord& g);

/// Representative of `g` under rotation and relabeling by first appearance.
GaussWord canonical_word(const GaussWord& g);

std::string format_word(const GaussWord& g);
/// Parses whitespace-separated tokens such as `O1+ U2- M30`.
GaussWord parse_word(const std::string& text);

}  // namespace surfknot
