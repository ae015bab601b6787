#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfdg/underlying.hpp"

namespace tfdg {

/// Syntax or reference error in a spec text, with a 1-based source position.
class ParseError : public std::runtime_error {
public:
  ParseError(size_t line, size_t col, const std::string& message);
  size_t line() const { return line_; }
  size_t col() const { return col_; }

private:
  size_t line_;
  size_t col_;
};

/// Parsed contents of one spec text: named digraphs (validated on
/// construction), an optional family assembled from them, named sequences,
/// and named EPSets.  Declaration order is preserved so printing is stable.
struct SpecFile {
  std::vector<std::pair<std::string, RankedDigraph>> digraphs;
  std::vector<std::string> family_prefix_names;
  std::vector<std::string> family_cycle_names;
  std::optional<FamilySpec> family;
  std::vector<std::pair<std::string, EPSequence>> sequences;
  std::vector<std::pair<std::string, EPSet>> epsets;

  const RankedDigraph* find_digraph(const std::string& name) const;
  const EPSequence* find_sequence(const std::string& name) const;
  const EPSet* find_epset(const std::string& name) const;
};

/// Parses the spec text format:
///
///   # comment
///   digraph D rank 1 {
///     arcs a b;
///     v0 [a.src b.src] [a.snk b.snk];
///     ditips0 t:in u:out;
///     v1 [t u];
///   }
///   family { prefix [P]; cycle [D]; }
///   seq s rank 0 { prefix [t _]; cycle [t u]; }
///   seq e kind end { cycle [a.src]; }
///   epset evens {prefix: [], from: 0, mod: 2, residues: [0]};
///
/// Ranks are numbers, `warrow`, or `omega`; omega digraphs additionally use
/// `ditipswarrow` and `vomega` statements.  `_` is the absent marker.  Throws
/// ParseError with a source position on syntax errors, unknown names, and
/// digraphs that fail validation (the report is included).
SpecFile parse_spec(const std::string& text);

/// Prints a SpecFile in the exact format parse_spec reads; parsing the result
/// reproduces the file (round-trip).
std::string print_spec(const SpecFile& file);

/// Parses one EPSet literal, e.g. "{prefix: [1], from: 2, mod: 3, residues: [0]}".
EPSet parse_epset(const std::string& text);

/// Prints an EPSet literal with the set's raw (not re-canonicalized) fields.
std::string print_epset(const EPSet& s);

/// DOT rendering of a standard ranked digraph: 0-vertices as ellipses, arcs
/// as directed edges between them, ditips as point-shaped half-edges attached
/// to their next-rank vertex boxes (direction follows polarity).
std::string to_dot(const RankedDigraph& d, const std::string& name = "D");

/// DOT rendering of a nonstandard digraph; classes are labeled by their
/// canonical representatives as [rep@resolution].
std::string to_dot(const NsDigraph& nsd, const std::string& name = "NsD");

/// DOT rendering of a nonstandard graph (undirected).
std::string to_dot(const NsGraph& g, const std::string& name = "NsG");

}  // namespace tfdg
