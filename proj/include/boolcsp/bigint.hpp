#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace boolcsp {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(std::uint64_t e) {
    BigInt r = 1;
    r <<= static_cast<unsigned>(e);
    return r;
}

inline BigInt ipow(const BigInt& base, std::uint64_t e) {
    return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

inline std::string to_string(const BigInt& v) { return v.str(); }

} // namespace boolcsp
