#ifndef HECE_UTF8_HPP
#define HECE_UTF8_HPP

#include <string>
#include <string_view>

namespace hece::utf8 {

/// Decodes UTF-8; ill-formed sequences become U+FFFD.
std::u32string decode(std::string_view s);

void append(std::string& out, char32_t c);

std::string encode(std::u32string_view s);

/// Number of codepoints in well-formed UTF-8.
std::size_t length(std::string_view s);

}  // namespace hece::utf8

#endif  // HECE_UTF8_HPP
