#pragma once

// Exact arithmetic in Q and in real quadratic fields Q(sqrt D).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace cyldec {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
Integer floor_of(const Rational& q);

// a + b*sqrt(D).  D == 0 marks an element with no field tag; such values
// (and any value with b == 0) combine with every D.
class QuadNum {
public:
    QuadNum() = default;
    QuadNum(long v) : a_(v) {}
    QuadNum(const Rational& a) : a_(a) {}
    QuadNum(const Rational& a, const Rational& b, std::int64_t D);

    static QuadNum sqrt(std::int64_t D);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    std::int64_t D() const { return D_; }
    bool is_rational() const { return b_ == 0; }

    int sign() const;
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    QuadNum conjugate() const { return QuadNum(a_, -b_, D_); }
    // a^2 - D b^2
    Rational norm() const;
    Integer floor() const;
    double to_double() const;

    QuadNum operator-() const { return QuadNum(-a_, -b_, D_); }
    QuadNum& operator+=(const QuadNum& o);
    QuadNum& operator-=(const QuadNum& o);
    QuadNum& operator*=(const QuadNum& o);
    QuadNum& operator/=(const QuadNum& o);

    friend QuadNum operator+(QuadNum x, const QuadNum& y) { return x += y; }
    friend QuadNum operator-(QuadNum x, const QuadNum& y) { return x -= y; }
    friend QuadNum operator*(QuadNum x, const QuadNum& y) { return x *= y; }
    friend QuadNum operator/(QuadNum x, const QuadNum& y) { return x /= y; }

    friend bool operator==(const QuadNum& x, const QuadNum& y);
    friend bool operator!=(const QuadNum& x, const QuadNum& y) { return !(x == y); }
    friend bool operator<(const QuadNum& x, const QuadNum& y) { return (x - y).sign() < 0; }
    friend bool operator>(const QuadNum& x, const QuadNum& y) { return y < x; }
    friend bool operator<=(const QuadNum& x, const QuadNum& y) { return !(y < x); }
    friend bool operator>=(const QuadNum& x, const QuadNum& y) { return !(x < y); }

private:
    Rational a_{0};
    Rational b_{0};
    std::int64_t D_{0};
};

// Field tag shared by x and y; throws MixedDiscriminants.
std::int64_t common_discriminant(const QuadNum& x, const QuadNum& y);
std::int64_t common_discriminant(std::int64_t D1, std::int64_t D2);

QuadNum abs(const QuadNum& x);
// x reduced into [0, m), m > 0.
QuadNum mod(const QuadNum& x, const QuadNum& m);
// true iff x / y is rational (y != 0).
bool commensurable(const QuadNum& x, const QuadNum& y);

// Accepted forms: "p/q", "p/q+r/s*sqrt(D)", "r/s*sqrt(D)", "-sqrt(D)".
QuadNum parse_quadnum(const std::string& text);
std::string to_string(const QuadNum& x);
std::ostream& operator<<(std::ostream& os, const QuadNum& x);

} // namespace cyldec
