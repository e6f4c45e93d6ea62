#ifndef HVA_RATIONAL_HPP
#define HVA_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "hva/error.hpp"

namespace hva {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number p/q with q >= 1 and gcd(|p|, q) = 1.
///
/// Every constructor and arithmetic operator returns a normalized value, so
/// structural equality of (numerator, denominator) is value equality.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}

    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_ == 0) {
            throw InvalidArgument("rational with zero denominator");
        }
        normalize();
    }

    const BigInt& numerator() const noexcept { return num_; }
    const BigInt& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return num_.sign(); }

    Rational abs() const {
        Rational r = *this;
        if (r.num_.sign() < 0) r.num_ = -r.num_;
        return r;
    }

    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return Rational(a.num_ + b.num_);
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return Rational(a.num_ - b.num_);
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return Rational(a.num_ * b.num_);
        // Cross-reduce first so the product is already in lowest terms.
        BigInt g1 = gcd(a.num_, b.den_);
        BigInt g2 = gcd(b.num_, a.den_);
        Rational r;
        r.num_ = (a.num_ / g1) * (b.num_ / g2);
        r.den_ = (a.den_ / g2) * (b.den_ / g1);
        if (r.num_.is_zero()) r.den_ = 1;
        return r;
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw InvalidArgument("division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        BigInt lhs = a.num_ * b.den_;
        BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Text form "p/q", or "p" when q = 1.
    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    /// Parses "p", "-p", "p/q", "-p/q" (q may also carry a sign; the result is
    /// normalized). Surrounding whitespace is not accepted.
    static Rational parse(std::string_view text) {
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(parse_int(text), BigInt(1));
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static BigInt gcd(const BigInt& a, const BigInt& b) {
        BigInt g = boost::multiprecision::gcd(a, b);
        return g.is_zero() ? BigInt(1) : g;
    }

    static BigInt parse_int(std::string_view s) {
        std::string_view digits = s;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
        if (digits.empty()) throw InvalidArgument("malformed rational '" + std::string(s) + "'");
        for (char c : digits) {
            if (c < '0' || c > '9') throw InvalidArgument("malformed rational '" + std::string(s) + "'");
        }
        BigInt v{std::string(digits)};
        return s.front() == '-' ? BigInt(-v) : v;
    }

    void normalize() {
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (den_ == 1) return;
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

/// rat(p, q): the normalized value p/q. Throws on q = 0.
inline Rational rat(std::int64_t numer, std::int64_t denom) { return Rational(BigInt(numer), BigInt(denom)); }

/// Structural order (numerator, then denominator). Consistent with equality
/// because values are normalized; cheaper than value order for containers.
struct StructuralLess {
    bool operator()(const Rational& a, const Rational& b) const {
        if (a.numerator() != b.numerator()) return a.numerator() < b.numerator();
        return a.denominator() < b.denominator();
    }
};

}  // namespace hva

#endif  // HVA_RATIONAL_HPP
