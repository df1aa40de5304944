#include "collidere/rational.hpp"

#include <cstdlib>

namespace collidere {

Rational rat_from_string(const std::string& text) {
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text));
        long long num = std::stoll(text.substr(0, slash));
        long long den = std::stoll(text.substr(slash + 1));
        if (den == 0) throw Error(ErrorCode::SyntaxError, "zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::SyntaxError, "cannot read rational '" + text + "'");
    }
}

}  // namespace collidere
