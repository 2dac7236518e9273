#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace malcev {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number over arbitrary-precision integers.
///
/// Canonical form: denominator > 0, gcd(|numerator|, denominator) = 1,
/// zero stored as 0/1. Every operation returns a canonical value, so
/// equality is plain field-wise comparison.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
        normalize();
    }
    Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}

    /// Parses "p/q" or "p" with optional leading sign.
    static Rational parse(std::string_view text) {
        const auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return Rational(parse_int(text, text));
        return Rational(parse_int(text.substr(0, slash), text),
                        parse_int(text.substr(slash + 1), text));
    }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_ == 1 && num_ == 1; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_.sign(); }

    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) {
            s += '/';
            s += den_.str();
        }
        return s;
    }

    Rational operator-() const { return raw(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return raw(a.num_ + b.num_, BigInt(1));
        BigInt g = gcd(a.den_, b.den_);
        if (g == 1)
            return raw(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
        BigInt t = a.num_ * (b.den_ / g) + b.num_ * (a.den_ / g);
        BigInt g2 = gcd(t, g);
        return raw(t / g2, (a.den_ / g) * (b.den_ / g2));
    }

    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return raw(a.num_ - b.num_, BigInt(1));
        BigInt g = gcd(a.den_, b.den_);
        if (g == 1)
            return raw(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
        BigInt t = a.num_ * (b.den_ / g) - b.num_ * (a.den_ / g);
        BigInt g2 = gcd(t, g);
        return raw(t / g2, (a.den_ / g) * (b.den_ / g2));
    }

    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.num_.is_zero() || b.num_.is_zero()) return Rational();
        if (a.den_ == 1 && b.den_ == 1) return raw(a.num_ * b.num_, BigInt(1));
        BigInt g1 = gcd(a.num_, b.den_);
        BigInt g2 = gcd(b.num_, a.den_);
        return raw((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
    }

    friend Rational operator/(const Rational& a, const Rational& b) {
        return a * b.inverse();
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    /// In-place fused accumulate: *this += a * b.
    void add_product(const Rational& a, const Rational& b) {
        if (a.num_.is_zero() || b.num_.is_zero()) return;
        if (den_ == 1 && a.den_ == 1 && b.den_ == 1) {
            num_ += a.num_ * b.num_;
            return;
        }
        *this += a * b;
    }

    Rational inverse() const {
        if (num_.is_zero()) throw std::domain_error("Rational: division by zero");
        return num_ > 0 ? raw(den_, num_) : raw(-den_, -num_);
    }

    Rational abs() const { return num_ < 0 ? raw(-num_, den_) : *this; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        if (a.den_ == b.den_) return cmp(a.num_, b.num_);
        return cmp(a.num_ * b.den_, b.num_ * a.den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.str();
    }

private:
    static Rational raw(BigInt n, BigInt d) {
        Rational r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

    static std::strong_ordering cmp(const BigInt& a, const BigInt& b) {
        if (a < b) return std::strong_ordering::less;
        if (b < a) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    static BigInt parse_int(std::string_view digits, std::string_view whole) {
        std::string_view body = digits;
        bool negative = false;
        if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
            negative = body.front() == '-';
            body.remove_prefix(1);
        }
        if (body.empty())
            throw std::invalid_argument("Rational: cannot parse '" + std::string(whole) + "'");
        for (char c : body)
            if (c < '0' || c > '9')
                throw std::invalid_argument("Rational: cannot parse '" + std::string(whole) + "'");
        BigInt v{std::string(body)};
        if (negative) v = -v;
        return v;
    }

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        BigInt g = gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

}  // namespace malcev
