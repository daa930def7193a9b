#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace vrc {

/// Exact rational scalar used for all distances and filtration values.
/// Decimal input strings ("2.5", "1e-3") are converted losslessly, so the
/// same representation backs both rational and tolerance-based spaces.
class Rational {
public:
    using Backend = boost::multiprecision::cpp_rational;

    Rational() = default;
    Rational(int v) : value_(v) {}
    Rational(long long v) : value_(v) {}
    Rational(long long num, long long den) : value_(num) { value_ /= den; }
    explicit Rational(Backend v) : value_(std::move(v)) {}

    /// Accepts "3", "-7", "3/4", "2.5", ".5", "1e-3", "2.5e-2".
    /// Throws Error(Parse) on malformed input.
    static Rational parse(std::string_view text);

    double to_double() const { return value_.convert_to<double>(); }
    std::string str() const;

    bool is_zero() const { return value_.is_zero(); }
    bool is_integer() const;

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) { value_ /= o.value_; return *this; }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(Backend(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    const Backend& backend() const { return value_; }

private:
    Backend value_{0};
};

Rational abs(const Rational& a);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace vrc
