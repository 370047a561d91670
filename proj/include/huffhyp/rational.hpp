#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace huffhyp {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// num/den with the sign moved onto the numerator.
inline Rat make_rat(const BigInt& num, const BigInt& den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    return Rat(num) / Rat(den);
}

inline Rat make_rat(std::int64_t num, std::int64_t den) { return make_rat(BigInt(num), BigInt(den)); }

/// Lossless "num/den" rendering; denominator always positive, integers as "n/1".
inline std::string to_string(const Rat& r)
{
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Inverse of to_string; also accepts a bare integer.
inline Rat parse_rat(const std::string& s)
{
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(BigInt(s));
        }
        return make_rat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

inline bool is_integer(const Rat& r) { return boost::multiprecision::denominator(r) == 1; }

inline long double to_long_double(const Rat& r) { return r.convert_to<long double>(); }

inline BigInt from_i128(__int128 v)
{
    if (v >= INT64_MIN && v <= INT64_MAX) {
        return BigInt(static_cast<std::int64_t>(v));
    }
    const bool neg = v < 0;
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt out(static_cast<std::uint64_t>(mag >> 64));
    out <<= 64;
    out += static_cast<std::uint64_t>(mag);
    return neg ? BigInt(-out) : out;
}

}  // namespace huffhyp
