#include "vrc/rational.hpp"

#include "vrc/errors.hpp"

#include <cctype>
#include <ostream>

namespace vrc {

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt pow10(unsigned e) {
    BigInt r(1);
    for (unsigned i = 0; i < e; ++i) r *= 10;
    return r;
}

[[noreturn]] void bad(std::string_view text) {
    throw Error(ErrorKind::Parse, "invalid number: '" + std::string(text) + "'");
}

} // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) bad(text);

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) bad(text);

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (num.empty() || den.empty()) bad(text);
        for (char c : num) if (!std::isdigit(static_cast<unsigned char>(c))) bad(text);
        for (char c : den) if (!std::isdigit(static_cast<unsigned char>(c))) bad(text);
        BigInt n{std::string(num)};
        BigInt d{std::string(den)};
        if (d.is_zero()) bad(text);
        Backend v(n, d);
        if (negative) v = -v;
        return Rational(std::move(v));
    }

    // decimal: digits [. digits] [e|E [+-] digits]
    std::string digits;
    int frac_digits = 0;
    long exponent = 0;
    size_t i = 0;
    bool any_digit = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        digits += s[i];
        any_digit = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            digits += s[i];
            ++frac_digits;
            any_digit = true;
        }
    }
    if (!any_digit) bad(text);
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            eneg = s[i] == '-';
            ++i;
        }
        if (i == s.size()) bad(text);
        long e = 0;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad(text);
            if (e > 100000) bad(text);
            e = e * 10 + (s[i] - '0');
        }
        exponent = eneg ? -e : e;
    }
    if (i != s.size()) bad(text);

    BigInt mantissa(digits.empty() ? "0" : digits);
    long net = exponent - frac_digits;
    Backend v;
    if (net >= 0)
        v = Backend(mantissa * pow10(static_cast<unsigned>(net)));
    else
        v = Backend(mantissa, pow10(static_cast<unsigned>(-net)));
    if (negative) v = -v;
    return Rational(std::move(v));
}

std::string Rational::str() const {
    return value_.str();
}

bool Rational::is_integer() const {
    return denominator(value_) == 1;
}

Rational abs(const Rational& a) {
    return a < Rational(0) ? -a : a;
}

const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

} // namespace vrc
