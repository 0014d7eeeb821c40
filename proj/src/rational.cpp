#include "mulgen/rational.hpp"

#include <charconv>

namespace mulgen {

namespace {

std::int64_t parse_int(const std::string& text, const std::string& whole) {
  std::int64_t v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::Parse, "not a number: '" + whole + "'");
  }
  return v;
}

}  // namespace

std::string Rational::to_string() const {
  std::int64_t scale = 1;
  int digits = 0;
  while (digits < 18 && scale % den_ != 0) {
    scale *= 10;
    ++digits;
  }
  if (scale % den_ != 0) return std::to_string(num_) + "/" + std::to_string(den_);

  const __int128 scaled = static_cast<__int128>(num_) * (scale / den_);
  const bool negative = scaled < 0;
  const __int128 mag = negative ? -scaled : scaled;
  const auto int_part = static_cast<std::int64_t>(mag / scale);
  auto frac = static_cast<std::int64_t>(mag % scale);
  std::string out = (negative ? "-" : "") + std::to_string(int_part);
  if (digits == 0) return out;
  std::string f = std::to_string(frac);
  f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
  while (!f.empty() && f.back() == '0') f.pop_back();
  if (!f.empty()) out += "." + f;
  return out;
}

Rational Rational::parse(const std::string& text) {
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(parse_int(text, text));
  const std::string int_text = text.substr(0, dot);
  const std::string frac_text = text.substr(dot + 1);
  if (frac_text.empty() || frac_text.size() > 18 || frac_text.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::Parse, "not a number: '" + text + "'");
  }
  const bool negative = !int_text.empty() && int_text[0] == '-';
  const std::string digits = negative ? int_text.substr(1) : int_text;
  const std::int64_t whole = digits.empty() ? 0 : parse_int(digits, text);
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac_text.size(); ++i) den *= 10;
  const Rational r = Rational(whole) + Rational(parse_int(frac_text, text), den);
  return negative ? Rational(-r.num(), r.den()) : r;
}

}  // namespace mulgen
