#include "hopfforge/scalar.hpp"

namespace hopfforge {

std::optional<Scalar> Scalar::parse(std::string_view text) {
  auto parse_int = [](std::string_view s, Int& out) -> bool {
    if (s.empty())
      return false;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size())
      return false;
    Int v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        return false;
      v = v * 10 + (s[i] - '0');
    }
    out = neg ? Int(-v) : v;
    return true;
  };

  auto slash = text.find('/');
  Int num, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_int(text, num))
      return std::nullopt;
  } else {
    if (!parse_int(text.substr(0, slash), num))
      return std::nullopt;
    if (!parse_int(text.substr(slash + 1), den))
      return std::nullopt;
    if (den == 0)
      return std::nullopt;
  }
  return Scalar(Rep(num, den));
}

} // namespace hopfforge
