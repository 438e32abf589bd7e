#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace hyperindex {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(std::int64_t base, std::int64_t exp) {
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

} // namespace hyperindex
