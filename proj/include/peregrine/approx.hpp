#pragma once

#include <cstdint>

namespace peregrine {

// Arithmetic dispatch. approx follows the switch pipeline's vocabulary
// (bit shifts against power-of-two rounded operands, low-precision lookup
// units); exact is a full-precision twin with identical signatures.
enum class ApproxMode { approx, exact };

// 64-bit quantity kept as two 32-bit halves, the way the pipeline registers
// store it. value = hi * 2^32 + lo.
struct Wide64 {
  uint32_t lo = 0;
  uint32_t hi = 0;

  constexpr uint64_t value() const { return (uint64_t{hi} << 32) | lo; }

  static constexpr Wide64 from_u64(uint64_t v) {
    return Wide64{static_cast<uint32_t>(v & 0xFFFFFFFFu),
                  static_cast<uint32_t>(v >> 32)};
  }

  friend constexpr bool operator==(const Wide64&, const Wide64&) = default;
};

inline constexpr Wide64 kWide64Max{0xFFFFFFFFu, 0xFFFFFFFFu};

// Smallest e with 2^e >= v (e = 0 for v = 1). Throws std::domain_error for
// v == 0.
unsigned ceil_pow2_exp(uint64_t v);

// a / b. Approx mode rounds the divisor up to the next power of two and
// right-shifts; exact mode is floor division. Throws std::domain_error for
// b == 0.
uint64_t shift_div(uint64_t a, uint64_t b, ApproxMode mode);

// a * b. Approx mode rounds the second operand up to the next power of two
// and left-shifts. Saturates at UINT64_MAX instead of wrapping.
uint64_t shift_mul(uint64_t a, uint64_t b, ApproxMode mode);

// sqrt(v) as a 16.16 fixed-point value. Approx mode models a low-precision
// math unit: the mantissa is quantized to 4 fractional bits and looked up,
// then recombined with the exponent (relative error <= 2^-4 for v >= 1,
// exact at power-of-two lattice points). Exact mode is floor(sqrt(v)*2^16).
uint32_t approx_sqrt(uint32_t v, ApproxMode mode);

// Same lookup scheme over a 64-bit radicand (the engine feeds it radius
// terms that exceed 32 bits). 16.16 result in a u64.
uint64_t approx_sqrt64(uint64_t v, ApproxMode mode);

// v^2 through the same mantissa lookup, exact for powers of two. Saturates
// at Wide64 max.
Wide64 approx_square(uint32_t v, ApproxMode mode);

// acc + addend exactly as the pipeline performs it across three stages:
// (1) low 32-bit sum, (2) carry, (3) high 32-bit sum. Saturates at Wide64
// max when the high half overflows.
Wide64 wide_add(Wide64 acc, uint32_t addend);

// wide_add over a 64-bit addend, chunked into the same low/carry/high steps.
Wide64 wide_add64(Wide64 acc, uint64_t addend);

// Signed-magnitude accumulator over Wide64, used for sums whose terms can
// carry either sign (residual products). Additions of same-signed terms go
// through the wide_add carry chain.
struct SignedWide {
  bool negative = false;
  Wide64 mag{};

  void add(bool term_negative, uint64_t term_magnitude);
  double signed_value() const;

  friend constexpr bool operator==(const SignedWide&, const SignedWide&) = default;
};

}  // namespace peregrine
