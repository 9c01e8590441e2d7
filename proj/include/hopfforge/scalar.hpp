#ifndef HOPFFORGE_SCALAR_HPP
#define HOPFFORGE_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hopfforge {

/// Exact rational scalar. Always stored reduced with positive denominator;
/// every arithmetic operation is exact. There is deliberately no conversion
/// to floating point anywhere in the library.
class Scalar {
public:
  using Int = boost::multiprecision::cpp_int;
  using Rep = boost::multiprecision::cpp_rational;

  Scalar() = default;
  Scalar(long long n) : v_(n) {}
  Scalar(long long num, long long den) {
    if (den == 0)
      throw std::domain_error("Scalar: zero denominator");
    v_ = Rep(num, den);
  }
  explicit Scalar(Rep v) : v_(std::move(v)) {}

  static const Scalar& zero() {
    static const Scalar s;
    return s;
  }
  static const Scalar& one() {
    static const Scalar s(1);
    return s;
  }

  /// Parses "p", "-p" or "p/q". Returns nullopt on malformed input.
  static std::optional<Scalar> parse(std::string_view text);

  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return v_ == 1; }

  Int numerator() const { return boost::multiprecision::numerator(v_); }
  Int denominator() const { return boost::multiprecision::denominator(v_); }
  const Rep& rep() const { return v_; }

  /// Renders as "p" when the denominator is 1, else "p/q".
  std::string str() const { return v_.str(); }

  Scalar operator-() const { return Scalar(Rep(-v_)); }

  Scalar& operator+=(const Scalar& o) {
    v_ += o.v_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    v_ -= o.v_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    v_ *= o.v_;
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero())
      throw std::domain_error("Scalar: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (b.v_ < a.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Scalar inverse() const {
    if (is_zero())
      throw std::domain_error("Scalar: inverse of zero");
    return Scalar(Rep(1) / v_);
  }

private:
  Rep v_;
};

} // namespace hopfforge

#endif
