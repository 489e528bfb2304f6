#pragma once

#include <array>
#include <compare>
#include <initializer_list>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace naipm {

/// Upper bound on the number of stored monosemia per value.
inline constexpr int kMaxBanLength = 16;

/// Default number of stored monosemia (BAN5).
inline constexpr int kDefaultBanLength = 5;

/// Relative threshold below which a coefficient produced by cancellation
/// is flushed to exact zero.
inline constexpr double kCancellationTolerance = 1e-15;

/// Process-wide number of monosemia used when constructing new values.
int ban_length();
void set_ban_length(int length);

/// Sets the process-wide length for the lifetime of the guard.
class ScopedBanLength {
 public:
  explicit ScopedBanLength(int length);
  ~ScopedBanLength();
  ScopedBanLength(const ScopedBanLength&) = delete;
  ScopedBanLength& operator=(const ScopedBanLength&) = delete;

 private:
  int previous_;
};

/// Raised by operations outside the domain of the kernel (reciprocal of
/// zero, square root of a negative value, magnitude of zero, ...).
class BanDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class BanParseError : public std::invalid_argument {
 public:
  BanParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/**
 * Fixed-length truncated Euclidean number
 *
 *   alpha^power * (c0 + c1 eta + ... + c_{L-1} eta^{L-1}),  eta = 1/alpha.
 *
 * Nonzero values are kept normalized (c0 != 0); zero is canonical (power 0,
 * all coefficients 0). Every arithmetic result is truncated to the L
 * highest-order monosemia. Values are immutable from the outside and all
 * operations are pure.
 */
class Ban {
 public:
  /// Canonical zero at the current process-wide length.
  Ban();

  /// Real embedding.
  Ban(double value);  // NOLINT(google-explicit-constructor)

  /// alpha^power * (coeffs[0] + coeffs[1] eta + ...). The coefficient list may
  /// be shorter than the length; it may not be longer.
  static Ban from_coeffs(int power, std::span<const double> coeffs,
                         int length = ban_length());
  static Ban from_coeffs(int power, std::initializer_list<double> coeffs,
                         int length = ban_length());

  /// Single monosemium coeff * alpha^power.
  static Ban monomial(double coeff, int power, int length = ban_length());
  static Ban alpha(int length = ban_length()) { return monomial(1.0, 1, length); }
  static Ban eta(int length = ban_length()) { return monomial(1.0, -1, length); }

  int power() const { return power_; }
  int length() const { return length_; }
  std::span<const double> coeffs() const { return {coeffs_.data(), static_cast<std::size_t>(length_)}; }
  double coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  /// Leading coefficient (0 for zero).
  double lead() const { return coeffs_[0]; }

  /// Coefficient of alpha^p, 0 when p is outside the stored window.
  double coeff_at_power(int p) const;

  /// Power of the last nonzero stored coefficient.
  int last_power() const;

  bool is_zero() const { return coeffs_[0] == 0.0; }
  bool is_real() const;
  int sign() const { return (coeffs_[0] > 0) - (coeffs_[0] < 0); }

  Ban operator-() const;
  Ban& operator+=(const Ban& rhs);
  Ban& operator-=(const Ban& rhs);
  Ban& operator*=(const Ban& rhs);
  Ban& operator/=(const Ban& rhs);

  friend Ban operator+(Ban lhs, const Ban& rhs) { return lhs += rhs; }
  friend Ban operator-(Ban lhs, const Ban& rhs) { return lhs -= rhs; }
  friend Ban operator*(Ban lhs, const Ban& rhs) { return lhs *= rhs; }
  friend Ban operator/(Ban lhs, const Ban& rhs) { return lhs /= rhs; }

  friend std::strong_ordering operator<=>(const Ban& a, const Ban& b);
  friend bool operator==(const Ban& a, const Ban& b);

  /// Same representation, coefficient by coefficient.
  bool identical(const Ban& other) const;

 private:
  Ban(int power, int length) : power_(power), length_(length) {}
  void normalize();

  friend Ban add(const Ban& a, const Ban& b);
  friend Ban mul(const Ban& a, const Ban& b);
  friend Ban reciprocal(const Ban& a);
  friend Ban sqrt_even(const Ban& a);
  friend Ban lead_mon(const Ban& a);

  std::array<double, kMaxBanLength> coeffs_{};
  int power_ = 0;
  int length_ = kDefaultBanLength;
};

Ban add(const Ban& a, const Ban& b);
Ban mul(const Ban& a, const Ban& b);
Ban reciprocal(const Ban& a);

/// Square root for positive values whose leading power is even.
Ban sqrt_even(const Ban& a);

/// Sign of a - b: -1, 0 or 1.
int compare(const Ban& a, const Ban& b);

Ban abs(const Ban& a);
inline const Ban& min(const Ban& a, const Ban& b) { return b < a ? b : a; }
inline const Ban& max(const Ban& a, const Ban& b) { return a < b ? b : a; }

/// Leading monosemium: alpha^p * c0.
Ban lead_mon(const Ban& a);

/// Order of magnitude alpha^p. Zero is rejected.
Ban magnitude(const Ban& a);

/// alpha^(power of the last nonzero stored coefficient). Zero is rejected.
Ban smallest_order(const Ban& a);

/// Ban literal grammar: term (('+'|'-') term)*, term = decimal [unit ['^' n]]
/// or unit ['^' n], unit 'a' (alpha) or 'n' (eta).
Ban parse_ban(std::string_view text, int length = ban_length());

/// Shortest round-trip rendering in descending powers.
std::string to_string(const Ban& a);

/// Fixed-point rendering for traces, e.g. "0.49a - 1.65". Zero terms are
/// dropped; very small or large coefficients switch to scientific notation.
std::string format_fixed(const Ban& a, int precision = 2);

}  // namespace naipm
