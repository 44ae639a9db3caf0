#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace convexa {

using Element = std::uint32_t;
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

ElementSet make_set(std::size_t universe, std::initializer_list<Element> elems);
ElementSet make_set(std::size_t universe, const std::vector<Element>& elems);

std::vector<Element> members(const ElementSet& s);

// "{0,2,3}"
std::string format_set(const ElementSet& s);

// Inverse of format_set.  Throws RangeError on ids >= universe and
// std::invalid_argument on malformed text.
ElementSet parse_set(std::string_view text, std::size_t universe);

// For universes of at most 64 points.
std::uint64_t to_mask(const ElementSet& s);
ElementSet from_mask(std::uint64_t mask, std::size_t universe);

}  // namespace convexa
