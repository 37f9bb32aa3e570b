#include "qde/rational.hpp"

#include <stdexcept>

namespace qde {

double to_double(const BigRational& r) { return r.convert_to<double>(); }

std::string to_string(const BigRational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

BigRational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in: " + text);
        return BigRational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        auto e = text.find_first_of("eE");
        if (e == std::string::npos) return BigRational(BigInt(text));
        // Scientific notation without a dot, e.g. "5e-3".
        BigRational mantissa(BigInt(text.substr(0, e)));
        int exp = std::stoi(text.substr(e + 1));
        BigInt p10 = 1;
        for (int i = 0; i < (exp < 0 ? -exp : exp); ++i) p10 *= 10;
        return exp < 0 ? mantissa / BigRational(p10) : mantissa * BigRational(p10);
    }
    std::string digits = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    int exp10 = 0;
    auto e = frac.find_first_of("eE");
    if (e != std::string::npos) {
        exp10 = std::stoi(frac.substr(e + 1));
        frac = frac.substr(0, e);
    }
    bool negative = !digits.empty() && digits[0] == '-';
    if (negative) digits = digits.substr(1);
    else if (!digits.empty() && digits[0] == '+') digits = digits.substr(1);
    BigInt num = digits.empty() ? BigInt(0) : BigInt(digits);
    BigInt den = 1;
    for (char c : frac) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad number: " + text);
        num = num * 10 + (c - '0');
        den *= 10;
    }
    BigRational r(num, den);
    if (negative) r = -r;
    if (exp10 != 0) {
        BigInt p10 = 1;
        for (int i = 0; i < (exp10 < 0 ? -exp10 : exp10); ++i) p10 *= 10;
        r = exp10 < 0 ? r / BigRational(p10) : r * BigRational(p10);
    }
    return r;
}

}  // namespace qde
