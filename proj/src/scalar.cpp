#include "niep/scalar.hpp"

#include "niep/error.hpp"

#include <charconv>
#include <cctype>
#include <cstdlib>

namespace niep {

std::optional<double> exact_sqrt(double x)
{
    if (x < 0.0)
        return std::nullopt;
    return std::sqrt(x);
}

std::optional<Rational> exact_sqrt(const Rational& x)
{
    if (sgn(x) < 0)
        return std::nullopt;
    const mpz_class& num = x.get_num();
    const mpz_class& den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

std::string to_string(double x)
{
    if (x == 0.0)
        return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string to_string(const Rational& x) { return x.get_str(); }

namespace {

std::string trimmed(std::string_view text)
{
    std::size_t b = 0, e = text.size();
    while (b < e && (text[b] == ' ' || text[b] == '\t'))
        ++b;
    while (e > b && (text[e - 1] == ' ' || text[e - 1] == '\t'))
        --e;
    return std::string(text.substr(b, e - b));
}

// Exact decimal -> rational: [sign] digits [. digits] [e|E [sign] digits]
Rational parse_decimal(const std::string& s)
{
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-'))
        negative = s[i++] == '-';
    mpz_class mantissa = 0;
    long scale = 0;
    bool any_digit = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
        mantissa = mantissa * 10 + (s[i] - '0');
        any_digit = true;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            mantissa = mantissa * 10 + (s[i] - '0');
            --scale;
            any_digit = true;
        }
    }
    if (!any_digit)
        throw Error(Errc::InvalidInput, "not a number: '" + s + "'");
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        char* end = nullptr;
        long exponent = std::strtol(s.c_str() + i, &end, 10);
        if (end == s.c_str() + i)
            throw Error(Errc::InvalidInput, "bad exponent in '" + s + "'");
        i = static_cast<std::size_t>(end - s.c_str());
        scale += exponent;
    }
    if (i != s.size())
        throw Error(Errc::InvalidInput, "trailing characters in '" + s + "'");
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational r = scale < 0 ? Rational(mantissa, pow10) : Rational(mantissa * pow10);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

} // namespace

template <>
Rational parse_scalar<Rational>(std::string_view text)
{
    std::string s = trimmed(text);
    if (s.empty())
        throw Error(Errc::InvalidInput, "empty number");
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Rational num = parse_decimal(s.substr(0, slash));
        Rational den = parse_decimal(s.substr(slash + 1));
        if (sgn(den) == 0)
            throw Error(Errc::InvalidInput, "zero denominator in '" + s + "'");
        return Rational(num / den);
    }
    return parse_decimal(s);
}

namespace {

double parse_double(const std::string& s)
{
    parse_decimal(s); // validates the grammar
    return std::strtod(s.c_str(), nullptr);
}

} // namespace

template <>
double parse_scalar<double>(std::string_view text)
{
    std::string s = trimmed(text);
    if (s.empty())
        throw Error(Errc::InvalidInput, "empty number");
    if (auto slash = s.find('/'); slash != std::string::npos) {
        double den = parse_double(s.substr(slash + 1));
        if (den == 0.0)
            throw Error(Errc::InvalidInput, "zero denominator in '" + s + "'");
        return parse_double(s.substr(0, slash)) / den;
    }
    return parse_double(s);
}

} // namespace niep
