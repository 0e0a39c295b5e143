#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "klab/abelian.hpp"

namespace klab::text {

std::string_view trim(std::string_view s);
// Splits on `sep` outside of () and [] nesting.
std::vector<std::string_view> split_top_level(std::string_view s, char sep);
Integer parse_integer(std::string_view s, ErrorKind kind);
std::vector<Integer> parse_integer_list(std::string_view s, ErrorKind kind);
std::string join_integers(std::span<const Integer> v);

}  // namespace klab::text
