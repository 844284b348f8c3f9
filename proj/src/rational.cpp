#include "ftap/rational.hpp"

#include "ftap/errors.hpp"

#include <cctype>

namespace ftap {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    const bool ok = slash == std::string_view::npos
                        ? is_integer_literal(num, true)
                        : is_integer_literal(num, true) && is_integer_literal(text.substr(slash + 1), false);
    if (!ok) throw InputError("not a rational literal: \"" + std::string(text) + "\"");

    std::string buffer(text);
    if (buffer.front() == '+') buffer.erase(0, 1);
    Rational value;
    if (value.set_str(buffer, 10) != 0) throw InputError("not a rational literal: \"" + std::string(text) + "\"");
    if (value.get_den() == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
    value.canonicalize();
    return value;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

}  // namespace ftap
