#ifndef MRTRIM_CANONICAL_HPP
#define MRTRIM_CANONICAL_HPP

#include <cstdio>
#include <cstdlib>
#include <string>

namespace mrtrim {

// Canonical number text used by every artifact writer: at most 9 significant
// digits, fixed-point notation below 1e9 (exponent form only at or above),
// always a decimal point, never a negative zero. Equal doubles map to equal
// bytes on every platform, which is what makes artifact files comparable.

inline std::string format_number(double v) {
  if (v == 0) return "0.0";  // merges -0 and +0

  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", v);  // 9 significant digits, rounded
  const std::string s(buf);
  const bool neg = s[0] == '-';
  const std::size_t start = neg ? 1 : 0;
  const std::size_t dot = s.find('.', start);
  const std::size_t e = s.find('e', start);

  std::string digits;
  digits += s[start];
  digits += s.substr(dot + 1, e - dot - 1);
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  const int exp10 = std::atoi(s.c_str() + e + 1);

  std::string out = neg ? "-" : "";
  if (exp10 >= 9) {
    out += digits.front();
    out += '.';
    out += digits.size() > 1 ? digits.substr(1) : "0";
    out += "e+";
    if (exp10 < 10) out += '0';
    out += std::to_string(exp10);
  } else if (exp10 >= 0) {
    const auto int_digits = static_cast<std::size_t>(exp10) + 1;
    if (digits.size() <= int_digits) {
      out += digits;
      out.append(int_digits - digits.size(), '0');
      out += ".0";
    } else {
      out += digits.substr(0, int_digits);
      out += '.';
      out += digits.substr(int_digits);
    }
  } else {
    out += "0.";
    out.append(static_cast<std::size_t>(-exp10) - 1, '0');
    out += digits;
  }
  return out;
}

/// Rounds to the value the canonical text denotes. Idempotent; applied when
/// values are created so in-memory payloads and their files never disagree.
inline double canonical_round(double v) {
  return std::strtod(format_number(v).c_str(), nullptr);
}

}  // namespace mrtrim

#endif  // MRTRIM_CANONICAL_HPP
