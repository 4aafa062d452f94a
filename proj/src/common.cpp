#include "mero/common.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace mero {

std::string format_complex(cplx z)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

namespace {

double parse_real(const std::string& s, const std::string& whole)
{
    if (s.empty() || s == "+")
        return 1.0;
    if (s == "-")
        return -1.0;
    std::size_t start = s[0] == '+' ? 1 : 0;
    double v = 0;
    auto [p, ec] = std::from_chars(s.data() + start, s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError("malformed complex number '" + whole + "'");
    return v;
}

} // namespace

cplx parse_complex(const std::string& in)
{
    std::string s;
    for (char c : in)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        throw ConfigError("empty complex number");
    if (s.back() != 'i' && s.back() != 'j') {
        if (s == "+" || s == "-")
            throw ConfigError("malformed complex number '" + in + "'");
        return {parse_real(s, in), 0.0};
    }
    s.pop_back();
    // split at the last sign that is not an exponent sign
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    if (cut == std::string::npos)
        return {0.0, parse_real(s, in)};
    std::string re = s.substr(0, cut), im = s.substr(cut);
    if (re.empty() || re == "+" || re == "-")
        throw ConfigError("malformed complex number '" + in + "'");
    return {parse_real(re, in), parse_real(im, in)};
}

} // namespace mero
