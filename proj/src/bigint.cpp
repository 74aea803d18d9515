#include "matchbound/bigint.hpp"

#include <cmath>
#include <iterator>
#include <vector>

#include "matchbound/errors.hpp"

namespace matchbound {

namespace {

// log(v) = log(top two 64-bit chunks) + (bits below them) * ln 2. The top
// chunk alone can be as short as one bit, so the pair is needed to carry a
// full double mantissa; beyond that the only loss is the final rounding.
double log_bigint_base_e(const BigInt& v) {
  if (v <= 0) throw Error("logarithm of a nonpositive count");
  if (v == 1) return 0.0;
  if (boost::multiprecision::msb(v) <= 900) return std::log(v.convert_to<double>());
  std::vector<std::uint64_t> chunks;
  boost::multiprecision::export_bits(v, std::back_inserter(chunks), 64, true);
  const double mantissa =
      std::ldexp(static_cast<double>(chunks[0]), 64) + static_cast<double>(chunks[1]);
  const std::size_t below = 64 * (chunks.size() - 2);
  return std::log(mantissa) + static_cast<double>(below) * M_LN2;
}

}  // namespace

double ln_bigint(const BigInt& v) { return log_bigint_base_e(v); }

double log2_bigint(const BigInt& v) { return log_bigint_base_e(v) / M_LN2; }

}  // namespace matchbound
