#include "convexa/poset_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "convexa/errors.hpp"

namespace convexa {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_count(std::string_view s, std::size_t& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

RelationFile read_relation_file(std::istream& in, std::string_view source) {
  RelationFile f;
  std::string src(source);
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    std::string_view comment;
    if (auto h = line.find('#'); h != std::string_view::npos) {
      comment = trim(line.substr(h + 1));
      line = line.substr(0, h);
    }
    line = trim(line);
    if (have_header && comment.starts_with("element ")) {
      // "# element <i> = <label>"
      auto rest = comment.substr(8);
      auto eq = rest.find('=');
      std::size_t idx;
      if (eq != std::string_view::npos && parse_count(rest.substr(0, eq), idx) && idx < f.n)
        f.labels[idx] = std::string(trim(rest.substr(eq + 1)));
    }
    if (line.empty()) continue;
    if (!have_header) {
      auto sp = line.find_first_of(" \t");
      if (sp == std::string_view::npos) throw ParseError(src, lineno, "expected '<kind> <n>' header");
      auto kind = line.substr(0, sp);
      if (kind != "poset" && kind != "lattice")
        throw ParseError(src, lineno, "unknown header '" + std::string(kind) + "'");
      if (!parse_count(line.substr(sp), f.n)) throw ParseError(src, lineno, "bad element count");
      f.kind = std::string(kind);
      f.labels.assign(f.n, {});
      have_header = true;
      continue;
    }
    auto lt = line.find('<');
    std::size_t lo, hi;
    if (lt == std::string_view::npos || !parse_count(line.substr(0, lt), lo) ||
        !parse_count(line.substr(lt + 1), hi))
      throw ParseError(src, lineno, "expected '<lo> < <hi>'");
    if (lo >= f.n || hi >= f.n) throw ParseError(src, lineno, "element id out of range");
    f.pairs.emplace_back(static_cast<Element>(lo), static_cast<Element>(hi));
  }
  if (!have_header) throw ParseError(src, lineno, "missing header");
  bool any_label = false;
  for (auto& l : f.labels) any_label |= !l.empty();
  if (!any_label) f.labels.clear();
  return f;
}

RelationFile read_relation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_relation_file(in, path);
}

namespace {

Poset to_poset(const RelationFile& f, std::string_view source) {
  try {
    return build_poset(f.n, f.pairs);
  } catch (const CycleError& e) {
    throw ParseError(std::string(source), 0, e.what());
  }
}

}  // namespace

Poset read_poset(std::istream& in, std::string_view source) {
  auto f = read_relation_file(in, source);
  if (f.kind != "poset") throw ParseError(std::string(source), 1, "expected 'poset' header");
  return to_poset(f, source);
}

Poset read_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_poset(in, path);
}

Poset parse_poset(std::string_view text, std::string_view source) {
  std::istringstream in{std::string(text)};
  return read_poset(in, source);
}

void write_relation(std::ostream& out, std::string_view kind, const Poset& p,
                    const std::vector<std::string>& labels) {
  out << kind << ' ' << p.size() << '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) out << "# element " << i << " = " << labels[i] << '\n';
  for (auto [lo, hi] : p.covers()) out << lo << " < " << hi << '\n';
}

void write_poset(std::ostream& out, const Poset& p, const std::vector<std::string>& labels) {
  write_relation(out, "poset", p, labels);
}

std::string to_string(const Poset& p) {
  std::ostringstream os;
  write_poset(os, p);
  return os.str();
}

}  // namespace convexa
