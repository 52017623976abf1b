#ifndef LFLOW_RATIONAL_HPP
#define LFLOW_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lflow {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Edge-indexed flow values.
using FlowAssignment = std::vector<Rational>;
/// Vertex-indexed target values.
using GammaVector = std::vector<Rational>;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return denominator_of(r) == 1; }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Integer floor_of(const Rational& r) {
  Integer q = numerator_of(r) / denominator_of(r);
  if (r < 0 && q * denominator_of(r) != numerator_of(r)) --q;
  return q;
}

/// Canonical "p/q" text, or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  if (is_integral(r)) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Accepts "p", "p/q", and finite decimals such as "-0.25".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  auto is_int = [](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto to_int = [](std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s));
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto p = text.substr(0, slash);
    auto q = text.substr(slash + 1);
    if (!is_int(p) || !is_int(q) || q[0] == '-' || q[0] == '+') return fail();
    Integer den = to_int(q);
    if (den == 0) return fail();
    return Rational(to_int(p), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (frac.empty()) return fail();
    for (char c : frac)
      if (c < '0' || c > '9') return fail();
    bool negative = !whole.empty() && whole[0] == '-';
    std::string_view digits = whole;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.remove_prefix(1);
    if (!digits.empty() && !is_int(digits)) return fail();
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer value = (digits.empty() ? Integer(0) : Integer(std::string(digits))) * scale +
                    Integer(std::string(frac));
    return Rational(negative ? Integer(-value) : value, scale);
  }
  if (!is_int(text)) return fail();
  return Rational(to_int(text));
}

inline std::vector<std::string> to_strings(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

}  // namespace lflow

#endif  // LFLOW_RATIONAL_HPP
