#include "ctclock/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>

namespace ctclock {

namespace {

bool valid_integer_token(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw InvalidInput("Rational: zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::abs(num_), den_);
    num_ /= g;
    den_ /= g;
}

Rational Rational::parse(std::string_view text) {
    const std::string_view t = trim(text);
    const auto slash = t.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_integer_token(t)) throw InvalidInput("Rational: cannot parse '" + std::string(text) + "'");
        return Rational(BigInt(std::string(t)));
    }
    const std::string_view p = trim(t.substr(0, slash));
    const std::string_view q = trim(t.substr(slash + 1));
    if (!valid_integer_token(p) || !valid_integer_token(q)) {
        throw InvalidInput("Rational: cannot parse '" + std::string(text) + "'");
    }
    return Rational(BigInt(std::string(p)), BigInt(std::string(q)));
}

double Rational::to_double() const {
    // Both halves exactly representable: one correctly rounded division.
    static const BigInt two53 = BigInt(1) << 53;
    if (num_ > -two53 && num_ < two53 && den_ < two53)
        return num_.convert_to<double>() / den_.convert_to<double>();
    boost::multiprecision::cpp_rational r(num_, den_);
    return r.convert_to<double>();
}

std::string Rational::str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw InvalidInput("Rational: division by zero");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    reduce();
    return *this;
}

Rational abs(const Rational& r) { return r.is_positive() || r.is_zero() ? r : -r; }

} // namespace ctclock
