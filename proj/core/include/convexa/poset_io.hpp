#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "convexa/poset.hpp"

namespace convexa {

// Text format shared by posets and lattices:
//
//   poset <n>          (or "lattice <n>")
//   <lo> < <hi>        one strict pair per line, any redundancy allowed
//   # comment
//
// Errors are reported as ParseError naming the source and line.
struct RelationFile {
  std::string kind;  // "poset" or "lattice"
  std::size_t n = 0;
  std::vector<Pair> pairs;
  // Optional "# element <i> = <label>" comments, indexed by element.
  std::vector<std::string> labels;
};

RelationFile read_relation_file(std::istream& in, std::string_view source);
RelationFile read_relation_file(const std::string& path);

Poset read_poset(std::istream& in, std::string_view source = "<stdin>");
Poset read_poset_file(const std::string& path);
Poset parse_poset(std::string_view text, std::string_view source = "<string>");

// Covers only, ascending.  Labels (if non-empty) become element comments.
void write_relation(std::ostream& out, std::string_view kind, const Poset& p,
                    const std::vector<std::string>& labels = {});
void write_poset(std::ostream& out, const Poset& p, const std::vector<std::string>& labels = {});
std::string to_string(const Poset& p);

}  // namespace convexa
