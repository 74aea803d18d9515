#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace matchbound {

using BigInt = boost::multiprecision::cpp_int;

// Natural log of a positive integer, accurate to double precision even when
// the value itself overflows double range.
double ln_bigint(const BigInt& v);

// log base 2, same contract.
double log2_bigint(const BigInt& v);

}  // namespace matchbound
