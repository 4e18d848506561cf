#include "ctfpack/rational.hpp"

#include <cstdio>
#include <stdexcept>

namespace ctfpack {

std::string to_fraction(const Rational& r)
{
    Rational c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_human(const Rational& r, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, r.get_d());
    return to_fraction(r) + " (" + buf + ")";
}

Rational parse_rational(std::string_view text)
{
    const std::string s(text);
    const auto slash = s.find('/');
    mpz_class num, den{1};
    try {
        if (slash == std::string::npos)
            num = mpz_class(s, 10);
        else {
            num = mpz_class(s.substr(0, slash), 10);
            den = mpz_class(s.substr(slash + 1), 10);
        }
    }
    catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace ctfpack
