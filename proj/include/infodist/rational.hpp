#ifndef INFODIST_RATIONAL_HPP
#define INFODIST_RATIONAL_HPP

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace infodist {

/// Exact rational number on 64-bit numerator/denominator.
///
/// Values are kept reduced with a positive denominator. All arithmetic runs
/// through 128-bit intermediates and throws std::overflow_error if a reduced
/// result leaves the 64-bit range. Instance data at the scale this library
/// targets (small monoids, small integer/rational lengths) never comes close
/// to the limit, so an exception here indicates genuinely pathological input
/// rather than a precision fallback.
class Rat {
 public:
  constexpr Rat() : num_(0), den_(1) {}
  constexpr Rat(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rat(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Renders "n" for integers and "n/d" otherwise; parse() inverts this.
  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  static Rat parse(std::string_view s) {
    auto parse_int = [](std::string_view t) -> std::int64_t {
      if (t.empty()) throw std::invalid_argument("Rat: empty number");
      std::size_t pos = 0;
      errno = 0;
      const std::string tmp(t);
      char* end = nullptr;
      const long long v = std::strtoll(tmp.c_str(), &end, 10);
      pos = static_cast<std::size_t>(end - tmp.c_str());
      if (pos != tmp.size() || errno == ERANGE)
        throw std::invalid_argument("Rat: bad number '" + tmp + "'");
      return v;
    };
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(s));
    return Rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.to_string();
  }

 private:
  using i128 = __int128;

  static Rat make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr i128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr i128 hi = std::numeric_limits<std::int64_t>::max();
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("Rat: value exceeds 64-bit range");
    Rat r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rat abs(const Rat& r) { return r < Rat(0) ? -r : r; }

/// Extended value: a scalar or +infinity. Used where a least Lipschitz
/// constant or an infimum over an empty set must be representable.
template <class V>
struct Ext {
  bool infinite = false;
  V value{};

  Ext() = default;
  Ext(V v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  static Ext inf() {
    Ext e;
    e.infinite = true;
    return e;
  }

  friend bool operator==(const Ext& a, const Ext& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator!=(const Ext& a, const Ext& b) { return !(a == b); }
  friend bool operator<(const Ext& a, const Ext& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const Ext& a, const Ext& b) { return !(b < a); }

  friend Ext operator+(const Ext& a, const Ext& b) {
    if (a.infinite || b.infinite) return inf();
    return Ext(a.value + b.value);
  }
  // 0 * inf = 0: a vanishing length factor kills the whole product.
  friend Ext operator*(const Ext& a, const Ext& b) {
    if (a.infinite) return b == Ext(V(0)) ? Ext(V(0)) : inf();
    if (b.infinite) return a == Ext(V(0)) ? Ext(V(0)) : inf();
    return Ext(a.value * b.value);
  }

  std::string to_string() const {
    if (infinite) return "inf";
    if constexpr (std::is_same_v<V, Rat>) return value.to_string();
    else return std::to_string(value);
  }
};

template <class V>
Ext<V> min(const Ext<V>& a, const Ext<V>& b) {
  return a < b ? a : b;
}

/// Numeric policy: which scalar the algorithms run on. Rat is the default
/// (everything exact, grid arguments apply verbatim); double is the fallback
/// for irrational inputs, with a fixed absolute comparison slack.
template <class V>
struct NumTraits;

template <>
struct NumTraits<Rat> {
  static constexpr bool exact = true;
  static Rat zero() { return Rat(0); }
  static Rat check_tol() { return Rat(0); }
  static double to_double(const Rat& v) { return v.to_double(); }
  static std::string str(const Rat& v) { return v.to_string(); }
};

template <>
struct NumTraits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double check_tol() { return 1e-9; }
  static double to_double(double v) { return v; }
  static std::string str(double v) { return std::to_string(v); }
};

template <class V>
V vabs(const V& v) {
  return v < V(0) ? -v : v;
}

template <class V>
const V& vmin(const V& a, const V& b) {
  return b < a ? b : a;
}

template <class V>
const V& vmax(const V& a, const V& b) {
  return a < b ? b : a;
}

}  // namespace infodist

#endif  // INFODIST_RATIONAL_HPP
