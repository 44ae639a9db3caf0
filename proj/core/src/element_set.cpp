#include "convexa/element_set.hpp"

#include <cctype>
#include <stdexcept>

#include "convexa/errors.hpp"

namespace convexa {

ElementSet make_set(std::size_t universe, std::initializer_list<Element> elems) {
  return make_set(universe, std::vector<Element>(elems));
}

ElementSet make_set(std::size_t universe, const std::vector<Element>& elems) {
  ElementSet s(universe);
  for (Element e : elems) {
    if (e >= universe) throw RangeError("element " + std::to_string(e) + " out of range");
    s.set(e);
  }
  return s;
}

std::vector<Element> members(const ElementSet& s) {
  std::vector<Element> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i))
    out.push_back(static_cast<Element>(i));
  return out;
}

std::string format_set(const ElementSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  out += '}';
  return out;
}

ElementSet parse_set(std::string_view text, std::size_t universe) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '{') throw std::invalid_argument("expected '{'");
  ++i;
  ElementSet s(universe);
  skip();
  if (i < text.size() && text[i] == '}') return s;
  while (true) {
    skip();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw std::invalid_argument("expected element id");
    auto v = std::stoull(std::string(text.substr(start, i - start)));
    if (v >= universe) throw RangeError("element " + std::to_string(v) + " out of range");
    s.set(v);
    skip();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    if (i < text.size() && text[i] == '}') break;
    throw std::invalid_argument("expected ',' or '}'");
  }
  return s;
}

std::uint64_t to_mask(const ElementSet& s) {
  if (s.size() > 64) throw SizeError("set universe exceeds 64 points");
  std::uint64_t m = 0;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) m |= std::uint64_t{1} << i;
  return m;
}

ElementSet from_mask(std::uint64_t mask, std::size_t universe) {
  ElementSet s(universe);
  for (std::size_t i = 0; i < universe && i < 64; ++i)
    if (mask >> i & 1) s.set(i);
  return s;
}

}  // namespace convexa
