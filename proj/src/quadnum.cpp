#include "cyldec/quadnum.hpp"

#include "cyldec/error.hpp"

#include <cmath>
#include <ostream>

namespace cyldec {

namespace {

bool is_square_free(std::int64_t D) {
    for (std::int64_t p = 2; p * p <= D; ++p)
        if (D % (p * p) == 0)
            return false;
    return true;
}

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out += c;
    return out;
}

} // namespace

Rational parse_rational(const std::string& raw) {
    std::string text = strip_spaces(raw);
    if (text.empty())
        throw Error(ErrorCode::ParseError, "empty rational");
    auto check_int = [&](const std::string& s) {
        std::size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size())
            throw Error(ErrorCode::ParseError, "bad rational '" + raw + "'");
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw Error(ErrorCode::ParseError, "bad rational '" + raw + "'");
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    if (!num.empty() && num[0] == '+')
        num = num.substr(1);
    check_int(num);
    Integer p(num);
    Integer q(1);
    if (slash != std::string::npos) {
        std::string den = text.substr(slash + 1);
        check_int(den);
        q = Integer(den);
        if (q == 0)
            throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + raw + "'");
    }
    return Rational(p, q);
}

std::string to_string(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Integer floor_of(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Integer n = numerator(q), d = denominator(q);
    Integer r = n / d;
    if (n < 0 && r * d != n)
        r -= 1;
    return r;
}

QuadNum::QuadNum(const Rational& a, const Rational& b, std::int64_t D) : a_(a), b_(b), D_(D) {
    if (D_ < 0 || D_ == 1)
        throw Error(ErrorCode::InvalidDiscriminant, "D=" + std::to_string(D_));
    if (D_ == 0 && b_ != 0)
        throw Error(ErrorCode::InvalidDiscriminant, "irrational part without D");
}

QuadNum QuadNum::sqrt(std::int64_t D) {
    if (D < 2 || !is_square_free(D))
        throw Error(ErrorCode::InvalidDiscriminant, "D must be square-free and > 1, got " + std::to_string(D));
    return QuadNum(Rational(0), Rational(1), D);
}

std::int64_t common_discriminant(std::int64_t D1, std::int64_t D2) {
    if (D1 == 0)
        return D2;
    if (D2 == 0 || D1 == D2)
        return D1;
    throw Error(ErrorCode::MixedDiscriminants, std::to_string(D1) + " vs " + std::to_string(D2));
}

std::int64_t common_discriminant(const QuadNum& x, const QuadNum& y) {
    if (x.D() == y.D())
        return x.D();
    if (x.b() == 0 && y.b() == 0)
        return x.D() != 0 ? x.D() : y.D();
    if (x.b() == 0 && x.D() == 0)
        return y.D();
    if (y.b() == 0 && y.D() == 0)
        return x.D();
    return common_discriminant(x.D(), y.D());
}

int QuadNum::sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sb;
    // opposite signs: compare a^2 with D b^2
    Rational lhs = a_ * a_, rhs = b_ * b_ * D_;
    if (lhs == rhs)
        return 0; // impossible for square-free D, kept for safety
    return lhs > rhs ? sa : sb;
}

Rational QuadNum::norm() const { return a_ * a_ - b_ * b_ * D_; }

double QuadNum::to_double() const {
    double v = a_.convert_to<double>();
    if (b_ != 0)
        v += b_.convert_to<double>() * std::sqrt(static_cast<double>(D_));
    return v;
}

Integer QuadNum::floor() const {
    if (b_ == 0)
        return floor_of(a_);
    Integer n(static_cast<long long>(std::floor(to_double())));
    while (QuadNum(Rational(n)) > *this)
        n -= 1;
    while (QuadNum(Rational(n + 1)) <= *this)
        n += 1;
    return n;
}

QuadNum& QuadNum::operator+=(const QuadNum& o) {
    D_ = common_discriminant(*this, o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& o) {
    D_ = common_discriminant(*this, o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadNum& QuadNum::operator*=(const QuadNum& o) {
    D_ = common_discriminant(*this, o);
    Rational a = a_ * o.a_ + b_ * o.b_ * D_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = a;
    b_ = b;
    return *this;
}

QuadNum& QuadNum::operator/=(const QuadNum& o) {
    if (o.is_zero())
        throw Error(ErrorCode::DivisionByZero, "quadratic division");
    D_ = common_discriminant(*this, o);
    Rational n = o.norm();
    QuadNum c = o.conjugate();
    *this *= c;
    a_ /= n;
    b_ /= n;
    return *this;
}

bool operator==(const QuadNum& x, const QuadNum& y) {
    if (x.b_ != y.b_ || x.a_ != y.a_)
        return false;
    if (x.b_ != 0 && x.D_ != y.D_)
        throw Error(ErrorCode::MixedDiscriminants, "comparison across fields");
    return true;
}

QuadNum abs(const QuadNum& x) { return x.sign() < 0 ? -x : x; }

QuadNum mod(const QuadNum& x, const QuadNum& m) {
    if (m.sign() <= 0)
        throw Error(ErrorCode::DivisionByZero, "mod by non-positive value");
    Integer k = (x / m).floor();
    return x - QuadNum(Rational(k)) * m;
}

bool commensurable(const QuadNum& x, const QuadNum& y) {
    if (y.is_zero())
        throw Error(ErrorCode::ZeroValue, "commensurability with zero");
    return (x / y).is_rational();
}

QuadNum parse_quadnum(const std::string& raw) {
    std::string s = strip_spaces(raw);
    auto k = s.find("sqrt(");
    if (k == std::string::npos)
        return QuadNum(parse_rational(s));
    auto close = s.find(')', k);
    if (close == std::string::npos || close + 1 != s.size())
        throw Error(ErrorCode::ParseError, "bad quadratic number '" + raw + "'");
    std::int64_t D = std::stoll(s.substr(k + 5, close - k - 5));
    std::size_t start = k;
    Rational coef(1);
    if (k > 0 && s[k - 1] == '*') {
        std::size_t j = k - 1;
        while (j > 0 && (std::isdigit(static_cast<unsigned char>(s[j - 1])) || s[j - 1] == '/'))
            --j;
        if (j > 0 && (s[j - 1] == '+' || s[j - 1] == '-'))
            --j;
        coef = parse_rational(s.substr(j, k - 1 - j));
        start = j;
    } else if (k > 0 && (s[k - 1] == '+' || s[k - 1] == '-')) {
        start = k - 1;
        if (s[k - 1] == '-')
            coef = -1;
    }
    Rational a(0);
    if (start > 0)
        a = parse_rational(s.substr(0, start));
    return QuadNum(a) + QuadNum(coef) * QuadNum::sqrt(D);
}

std::string to_string(const QuadNum& x) {
    if (x.b() == 0)
        return to_string(x.a());
    std::string root = "sqrt(" + std::to_string(x.D()) + ")";
    std::string bpart;
    if (x.b() == 1)
        bpart = root;
    else if (x.b() == -1)
        bpart = "-" + root;
    else
        bpart = to_string(x.b()) + "*" + root;
    if (x.a() == 0)
        return bpart;
    if (x.b() > 0)
        return to_string(x.a()) + "+" + bpart;
    return to_string(x.a()) + bpart;
}

std::ostream& operator<<(std::ostream& os, const QuadNum& x) { return os << to_string(x); }

const char* error_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotPermutation: return "NotPermutation";
    case ErrorCode::TauNotFixedPointFreeInvolution: return "TauNotFixedPointFreeInvolution";
    case ErrorCode::ThetaNotSection: return "ThetaNotSection";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OrientationMixedWithinOrbit: return "OrientationMixedWithinOrbit";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::UnsupportedProfile: return "UnsupportedProfile";
    case ErrorCode::UnequalComponentCounts: return "UnequalComponentCounts";
    case ErrorCode::InvalidPairing: return "InvalidPairing";
    case ErrorCode::InvalidMetric: return "InvalidMetric";
    case ErrorCode::NonPositiveHeight: return "NonPositiveHeight";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroOrderSingularity: return "ZeroOrderSingularity";
    case ErrorCode::MoreThanTwoSingularities: return "MoreThanTwoSingularities";
    case ErrorCode::NotTwoSingularities: return "NotTwoSingularities";
    case ErrorCode::OddOrderSingularity: return "OddOrderSingularity";
    case ErrorCode::NonPositiveDeterminant: return "NonPositiveDeterminant";
    case ErrorCode::HeightCollapse: return "HeightCollapse";
    case ErrorCode::SingularityCollision: return "SingularityCollision";
    case ErrorCode::NonFieldDirection: return "NonFieldDirection";
    case ErrorCode::MixedDiscriminants: return "MixedDiscriminants";
    case ErrorCode::InvalidDiscriminant: return "InvalidDiscriminant";
    case ErrorCode::ZeroValue: return "ZeroValue";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidSurface: return "InvalidSurface";
    case ErrorCode::ScenarioAssertionFailed: return "ScenarioAssertionFailed";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace cyldec
