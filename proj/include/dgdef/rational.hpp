#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <string>

namespace dgdef {

// Exact arbitrary-precision rational scalar. No floating point anywhere.
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// Parses "p", "-p" or "p/q". Returns nullopt on malformed input.
inline std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(boost::multiprecision::cpp_int(s));
        }
        boost::multiprecision::cpp_int num(s.substr(0, slash));
        boost::multiprecision::cpp_int den(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
        return Rat(num, den);
    } catch (...) {
        return std::nullopt;
    }
}

inline Rat factorial(unsigned n) {
    Rat r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace dgdef
