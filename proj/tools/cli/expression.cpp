#include "expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace cxosc_cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

double parse_factor(const std::string& text)
{
    if (text == "pi")
        return kPi;
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw std::invalid_argument("cannot parse '" + text + "' as a number");
    return value;
}

} // namespace

double parse_time(const std::string& raw)
{
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            text.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

    double sign = 1.0;
    std::size_t pos = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
        sign = text[0] == '-' ? -1.0 : 1.0;
        pos = 1;
    }

    double value = 1.0;
    char op = '*';
    while (pos <= text.size()) {
        const std::size_t next = text.find_first_of("*/", pos);
        const std::string token = text.substr(pos, next == std::string::npos ? std::string::npos
                                                                              : next - pos);
        const double factor = parse_factor(token);
        value = op == '*' ? value * factor : value / factor;
        if (next == std::string::npos)
            break;
        op = text[next];
        pos = next + 1;
    }
    value *= sign;
    if (!std::isfinite(value))
        throw std::invalid_argument("time '" + raw + "' is not finite");
    return value;
}

} // namespace cxosc_cli
