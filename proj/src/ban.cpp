#include "naipm/ban.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

namespace naipm {

namespace {

std::atomic<int> g_ban_length{kDefaultBanLength};

void check_length(int length) {
  if (length < 1 || length > kMaxBanLength) {
    throw std::invalid_argument("ban length must be in [1, " +
                                std::to_string(kMaxBanLength) + "], got " +
                                std::to_string(length));
  }
}

int common_length(const Ban& a, const Ban& b) {
  if (a.length() == b.length()) return a.length();
  // Zero carries no information, so it adapts to the other operand.
  if (a.is_zero()) return b.length();
  if (b.is_zero()) return a.length();
  throw std::invalid_argument("ban length mismatch: " +
                              std::to_string(a.length()) + " vs " +
                              std::to_string(b.length()));
}

double flush(double value, double scale) {
  return std::abs(value) <= kCancellationTolerance * scale ? 0.0 : value;
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string unit_suffix(int power) {
  if (power == 0) return "";
  const char unit = power > 0 ? 'a' : 'n';
  const int e = std::abs(power);
  return e == 1 ? std::string(1, unit) : std::string(1, unit) + "^" + std::to_string(e);
}

}  // namespace

int ban_length() { return g_ban_length.load(std::memory_order_relaxed); }

void set_ban_length(int length) {
  check_length(length);
  g_ban_length.store(length, std::memory_order_relaxed);
}

ScopedBanLength::ScopedBanLength(int length) : previous_(ban_length()) {
  set_ban_length(length);
}

ScopedBanLength::~ScopedBanLength() { set_ban_length(previous_); }

BanParseError::BanParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)),
      position_(position) {}

Ban::Ban() : length_(ban_length()) {}

Ban::Ban(double value) : length_(ban_length()) { coeffs_[0] = value; }

Ban Ban::from_coeffs(int power, std::span<const double> coeffs, int length) {
  check_length(length);
  if (coeffs.size() > static_cast<std::size_t>(length)) {
    throw std::invalid_argument("too many coefficients for ban length " +
                                std::to_string(length));
  }
  Ban r(power, length);
  std::copy(coeffs.begin(), coeffs.end(), r.coeffs_.begin());
  r.normalize();
  return r;
}

Ban Ban::from_coeffs(int power, std::initializer_list<double> coeffs, int length) {
  return from_coeffs(power, std::span<const double>(coeffs.begin(), coeffs.size()), length);
}

Ban Ban::monomial(double coeff, int power, int length) {
  check_length(length);
  Ban r(power, length);
  r.coeffs_[0] = coeff;
  r.normalize();
  return r;
}

double Ban::coeff_at_power(int p) const {
  const int i = power_ - p;
  return (i >= 0 && i < length_) ? coeffs_[static_cast<std::size_t>(i)] : 0.0;
}

int Ban::last_power() const {
  for (int i = length_ - 1; i >= 0; --i) {
    if (coeffs_[static_cast<std::size_t>(i)] != 0.0) return power_ - i;
  }
  return 0;
}

bool Ban::is_real() const {
  if (is_zero()) return true;
  if (power_ != 0) return false;
  return std::all_of(coeffs_.begin() + 1, coeffs_.begin() + length_,
                     [](double c) { return c == 0.0; });
}

void Ban::normalize() {
  int k = 0;
  while (k < length_ && coeffs_[static_cast<std::size_t>(k)] == 0.0) ++k;
  if (k == length_) {
    coeffs_.fill(0.0);
    power_ = 0;
    return;
  }
  if (k > 0) {
    std::copy(coeffs_.begin() + k, coeffs_.begin() + length_, coeffs_.begin());
    std::fill(coeffs_.begin() + (length_ - k), coeffs_.begin() + length_, 0.0);
    power_ -= k;
  }
}

Ban Ban::operator-() const {
  Ban r = *this;
  for (int i = 0; i < length_; ++i) r.coeffs_[static_cast<std::size_t>(i)] = -r.coeffs_[static_cast<std::size_t>(i)];
  return r;
}

Ban& Ban::operator+=(const Ban& rhs) { return *this = add(*this, rhs); }
Ban& Ban::operator-=(const Ban& rhs) { return *this = add(*this, -rhs); }
Ban& Ban::operator*=(const Ban& rhs) { return *this = mul(*this, rhs); }
Ban& Ban::operator/=(const Ban& rhs) { return *this = mul(*this, reciprocal(rhs)); }

bool Ban::identical(const Ban& other) const {
  return power_ == other.power_ && length_ == other.length_ &&
         std::equal(coeffs_.begin(), coeffs_.begin() + length_, other.coeffs_.begin());
}

Ban add(const Ban& a, const Ban& b) {
  const int length = common_length(a, b);
  if (a.is_zero()) {
    Ban r = b;
    r.length_ = length;
    return r;
  }
  if (b.is_zero()) {
    Ban r = a;
    r.length_ = length;
    return r;
  }
  const int top = std::max(a.power_, b.power_);
  Ban r(top, length);
  std::array<double, kMaxBanLength> scale{};
  for (const Ban* op : {&a, &b}) {
    const int shift = top - op->power_;
    for (int i = shift; i < length; ++i) {
      const double v = op->coeffs_[static_cast<std::size_t>(i - shift)];
      r.coeffs_[static_cast<std::size_t>(i)] += v;
      scale[static_cast<std::size_t>(i)] = std::max(scale[static_cast<std::size_t>(i)], std::abs(v));
    }
  }
  for (int i = 0; i < length; ++i) {
    auto& c = r.coeffs_[static_cast<std::size_t>(i)];
    c = flush(c, scale[static_cast<std::size_t>(i)]);
  }
  r.normalize();
  return r;
}

Ban mul(const Ban& a, const Ban& b) {
  const int length = common_length(a, b);
  if (a.is_zero() || b.is_zero()) {
    Ban r(0, length);
    return r;
  }
  Ban r(a.power_ + b.power_, length);
  for (int k = 0; k < length; ++k) {
    double sum = 0.0;
    double scale = 0.0;
    for (int i = 0; i <= k; ++i) {
      const double term = a.coeffs_[static_cast<std::size_t>(i)] * b.coeffs_[static_cast<std::size_t>(k - i)];
      sum += term;
      scale += std::abs(term);
    }
    r.coeffs_[static_cast<std::size_t>(k)] = flush(sum, scale);
  }
  r.normalize();
  return r;
}

Ban reciprocal(const Ban& a) {
  if (a.is_zero()) throw BanDomainError("reciprocal of zero");
  const int length = a.length_;
  Ban r(-a.power_, length);
  const double inv_lead = 1.0 / a.coeffs_[0];
  r.coeffs_[0] = inv_lead;
  // (c0 + c1 eta + ...) * (r0 + r1 eta + ...) = 1, solved term by term.
  for (int k = 1; k < length; ++k) {
    double sum = 0.0;
    double scale = 0.0;
    for (int j = 1; j <= k; ++j) {
      const double term = a.coeffs_[static_cast<std::size_t>(j)] * r.coeffs_[static_cast<std::size_t>(k - j)];
      sum += term;
      scale += std::abs(term);
    }
    r.coeffs_[static_cast<std::size_t>(k)] = flush(-sum * inv_lead, scale * std::abs(inv_lead));
  }
  r.normalize();
  return r;
}

Ban sqrt_even(const Ban& a) {
  if (a.is_zero()) return a;
  if (a.coeffs_[0] < 0) throw BanDomainError("square root of a negative value");
  if (a.power_ % 2 != 0) {
    throw BanDomainError("square root of a value with odd leading power " +
                         std::to_string(a.power_));
  }
  const int length = a.length_;
  Ban r(a.power_ / 2, length);
  const double root = std::sqrt(a.coeffs_[0]);
  r.coeffs_[0] = root;
  // (r0 + r1 eta + ...)^2 = c0 + c1 eta + ..., solved term by term.
  for (int k = 1; k < length; ++k) {
    double sum = 0.0;
    double scale = std::abs(a.coeffs_[static_cast<std::size_t>(k)]);
    for (int j = 1; j < k; ++j) {
      const double term = r.coeffs_[static_cast<std::size_t>(j)] * r.coeffs_[static_cast<std::size_t>(k - j)];
      sum += term;
      scale += std::abs(term);
    }
    r.coeffs_[static_cast<std::size_t>(k)] =
        flush(a.coeffs_[static_cast<std::size_t>(k)] - sum, scale) / (2.0 * root);
  }
  r.normalize();
  return r;
}

int compare(const Ban& a, const Ban& b) { return add(a, -b).sign(); }

std::strong_ordering operator<=>(const Ban& a, const Ban& b) {
  const int s = compare(a, b);
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool operator==(const Ban& a, const Ban& b) { return compare(a, b) == 0; }

Ban abs(const Ban& a) { return a.sign() < 0 ? -a : a; }

Ban lead_mon(const Ban& a) {
  Ban r(a.power_, a.length_);
  r.coeffs_[0] = a.coeffs_[0];
  if (r.is_zero()) r.power_ = 0;
  return r;
}

Ban magnitude(const Ban& a) {
  if (a.is_zero()) throw BanDomainError("order of magnitude of zero");
  return Ban::monomial(1.0, a.power(), a.length());
}

Ban smallest_order(const Ban& a) {
  if (a.is_zero()) throw BanDomainError("smallest order of magnitude of zero");
  return Ban::monomial(1.0, a.last_power(), a.length());
}

Ban parse_ban(std::string_view text, int length) {
  check_length(length);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                 text[pos] == '\n' || text[pos] == '\r')) {
      ++pos;
    }
  };
  auto is_digit = [&](std::size_t p) { return p < text.size() && text[p] >= '0' && text[p] <= '9'; };

  std::map<int, double, std::greater<>> terms;
  bool first = true;
  skip_ws();
  if (pos == text.size()) throw BanParseError("empty ban literal", pos);
  while (true) {
    skip_ws();
    if (pos == text.size()) {
      if (first) throw BanParseError("empty ban literal", pos);
      break;
    }
    double sign = 1.0;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
      skip_ws();
    } else if (!first) {
      throw BanParseError("expected '+' or '-'", pos);
    }
    first = false;

    const std::size_t term_start = pos;
    double coeff = 1.0;
    bool has_number = false;
    if (is_digit(pos) || (pos < text.size() && text[pos] == '.')) {
      std::size_t end = pos;
      while (is_digit(end)) ++end;
      if (end < text.size() && text[end] == '.') {
        ++end;
        while (is_digit(end)) ++end;
      }
      if (end < text.size() && (text[end] == 'e' || text[end] == 'E')) {
        std::size_t exp = end + 1;
        if (exp < text.size() && (text[exp] == '+' || text[exp] == '-')) ++exp;
        if (!is_digit(exp)) throw BanParseError("malformed exponent", end);
        while (is_digit(exp)) ++exp;
        end = exp;
      }
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, coeff);
      if (ec != std::errc() || ptr != text.data() + end) {
        throw BanParseError("malformed number", pos);
      }
      pos = end;
      has_number = true;
      skip_ws();
    }
    int power = 0;
    if (pos < text.size() && (text[pos] == 'a' || text[pos] == 'n')) {
      const int unit = text[pos] == 'a' ? 1 : -1;
      ++pos;
      skip_ws();
      int exponent = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip_ws();
        if (!is_digit(pos)) throw BanParseError("expected unsigned exponent", pos);
        std::size_t end = pos;
        while (is_digit(end)) ++end;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, exponent);
        if (ec != std::errc()) throw BanParseError("exponent out of range", pos);
        pos = end;
      }
      power = unit * exponent;
    } else if (!has_number) {
      throw BanParseError("expected a number, 'a' or 'n'", term_start);
    }
    terms[power] += sign * coeff;
  }

  std::erase_if(terms, [](const auto& kv) { return kv.second == 0.0; });
  if (terms.empty()) return Ban::monomial(0.0, 0, length);
  const int top = terms.begin()->first;
  const int bottom = terms.rbegin()->first;
  if (top - bottom + 1 > length) {
    throw BanParseError("literal spans " + std::to_string(top - bottom + 1) +
                            " monosemia but the ban length is " + std::to_string(length),
                        0);
  }
  std::array<double, kMaxBanLength> coeffs{};
  for (const auto& [p, c] : terms) coeffs[static_cast<std::size_t>(top - p)] = c;
  return Ban::from_coeffs(top, std::span<const double>(coeffs.data(), static_cast<std::size_t>(length)), length);
}

std::string to_string(const Ban& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (int i = 0; i < a.length(); ++i) {
    const double c = a.coeff(i);
    if (c == 0.0) continue;
    const int p = a.power() - i;
    if (!out.empty() && c > 0) out += '+';
    if (p != 0 && std::abs(c) == 1.0) {
      if (c < 0) out += '-';
    } else {
      out += shortest(c);
    }
    out += unit_suffix(p);
  }
  return out;
}

std::string format_fixed(const Ban& a, int precision) {
  std::string out;
  for (int i = 0; i < a.length(); ++i) {
    const double c = a.coeff(i);
    if (c == 0.0) continue;
    const double mag = std::abs(c);
    char buf[64];
    if (mag >= 1e-2 && mag < 1e4) {
      std::snprintf(buf, sizeof(buf), "%.*f", precision, mag);
    } else {
      std::snprintf(buf, sizeof(buf), "%.*e", precision, mag);
    }
    if (out.empty()) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += buf;
    out += unit_suffix(a.power() - i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace naipm
