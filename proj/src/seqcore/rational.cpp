#include <cvxdiff/rational.hpp>

#include <cctype>

namespace cvxdiff {

namespace {

BigInt parse_int(std::string_view text, std::string_view whole)
{
    std::size_t pos = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+'))
        pos = 1;
    if (pos == text.size())
        throw FormatError("malformed rational '" + std::string(whole) + "'");
    for (std::size_t i = pos; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw FormatError("malformed rational '" + std::string(whole) + "'");
    if (text[0] == '+')
        text.remove_prefix(1);
    return BigInt(std::string(text));
}

} // namespace

Rat parse_rat(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rat(parse_int(text, text));

    BigInt num = parse_int(text.substr(0, slash), text);
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
        throw FormatError("denominator must be a positive integer in '" + std::string(text) + "'");
    BigInt den = parse_int(den_text, text);
    if (den <= 0)
        throw FormatError("denominator must be positive in '" + std::string(text) + "'");
    if (boost::multiprecision::gcd(num, den) != 1)
        throw FormatError("rational '" + std::string(text) + "' is not in lowest terms");
    return Rat(num, den);
}

std::string format_rat(const Rat& value)
{
    if (is_integer(value))
        return boost::multiprecision::numerator(value).str();
    return boost::multiprecision::numerator(value).str() + "/" +
           boost::multiprecision::denominator(value).str();
}

BigInt floor_rat(const Rat& value)
{
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    BigInt q = num / den; // truncates toward zero
    if (num < 0 && q * den != num)
        q -= 1;
    return q;
}

BigInt ceil_rat(const Rat& value)
{
    return -floor_rat(-value);
}

} // namespace cvxdiff
