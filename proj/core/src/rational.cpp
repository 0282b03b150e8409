// SPDX-License-Identifier: Apache-2.0
#include "hpsr/rational.hpp"

#include <cstdlib>

namespace hpsr {

namespace {

std::uint64_t parse_positive(const std::string& text)
{
  if (text.empty())
    throw ArgError("empty rational component");
  for (char ch : text)
    if (ch < '0' || ch > '9')
      throw ArgError("bad rational '" + text + "'");
  errno = 0;
  char* end = nullptr;
  std::uint64_t v = std::strtoull(text.c_str(), &end, 10);
  if (errno != 0 || end != text.c_str() + text.size())
    throw ArgError("bad rational '" + text + "'");
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text)
{
  std::size_t slash = text.find('/');
  if (slash == std::string::npos)
    return Rational(parse_positive(text), 1);
  return Rational(parse_positive(text.substr(0, slash)),
                  parse_positive(text.substr(slash + 1)));
}

}  // namespace hpsr
