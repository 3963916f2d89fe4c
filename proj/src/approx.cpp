#include "peregrine/approx.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace peregrine {

namespace {

// 4-bit mantissa decomposition: v ~= (q/16) * 2^k with q in [16, 31] after
// round-to-nearest (a carry out of q == 32 bumps the exponent).
struct Mantissa4 {
  uint32_t q;
  int k;
};

Mantissa4 quantize4(uint64_t v) {
  int k = std::bit_width(v) - 1;
  uint32_t q;
  if (k <= 4) {
    q = static_cast<uint32_t>(v << (4 - k));  // exact, no fractional bits lost
  } else {
    uint64_t half = uint64_t{1} << (k - 5);
    q = static_cast<uint32_t>((v + half) >> (k - 4));
  }
  if (q == 32) {
    q = 16;
    ++k;
  }
  return {q, k};
}

// sqrt((16+i)/16) and sqrt(2*(16+i)/16) in 2.30 fixed point. Entries for the
// exact lattice mantissas (1.0, 25/16, ...) are exactly representable, which
// keeps power-of-two inputs lossless.
struct SqrtTables {
  uint32_t even[16];
  uint32_t odd[16];
  SqrtTables() {
    for (int i = 0; i < 16; ++i) {
      double m = (16 + i) / 16.0;
      even[i] = static_cast<uint32_t>(std::llround(std::sqrt(m) * double{1 << 30}));
      odd[i] = static_cast<uint32_t>(std::llround(std::sqrt(2.0 * m) * double{1 << 30}));
    }
  }
};

const SqrtTables& sqrt_tables() {
  static const SqrtTables tables;
  return tables;
}

uint64_t isqrt_u128(unsigned __int128 x) {
  if (x == 0) return 0;
  auto s = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(x)));
  while (s > 0 && s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return static_cast<uint64_t>(s);
}

}  // namespace

unsigned ceil_pow2_exp(uint64_t v) {
  if (v == 0) throw std::domain_error("ceil_pow2_exp: v must be >= 1");
  return static_cast<unsigned>(std::bit_width(v - 1));
}

uint64_t shift_div(uint64_t a, uint64_t b, ApproxMode mode) {
  if (b == 0) throw std::domain_error("shift_div: divisor must be >= 1");
  if (mode == ApproxMode::exact) return a / b;
  unsigned e = ceil_pow2_exp(b);
  if (e >= 64) return 0;
  return a >> e;
}

uint64_t shift_mul(uint64_t a, uint64_t b, ApproxMode mode) {
  if (b == 0) throw std::domain_error("shift_mul: second operand must be >= 1");
  if (a == 0) return 0;
  if (mode == ApproxMode::exact) {
    if (a > UINT64_MAX / b) return UINT64_MAX;
    return a * b;
  }
  unsigned e = ceil_pow2_exp(b);
  if (e >= 64 || a > (UINT64_MAX >> e)) return UINT64_MAX;
  return a << e;
}

uint64_t approx_sqrt64(uint64_t v, ApproxMode mode) {
  if (v == 0) return 0;
  if (mode == ApproxMode::exact) {
    return isqrt_u128(static_cast<unsigned __int128>(v) << 32);
  }
  auto [q, k] = quantize4(v);
  const auto& tabs = sqrt_tables();
  uint64_t r = (k & 1) ? tabs.odd[q - 16] : tabs.even[q - 16];
  int shift = k / 2 - 14;  // 2.30 table entry scaled by 2^(k/2), emitted 16.16
  return shift >= 0 ? (r << shift) : (r >> -shift);
}

uint32_t approx_sqrt(uint32_t v, ApproxMode mode) {
  uint64_t r = approx_sqrt64(v, mode);
  return r > 0xFFFFFFFFu ? 0xFFFFFFFFu : static_cast<uint32_t>(r);
}

Wide64 approx_square(uint32_t v, ApproxMode mode) {
  if (v == 0) return Wide64{};
  if (mode == ApproxMode::exact) {
    return Wide64::from_u64(uint64_t{v} * v);
  }
  auto [q, k] = quantize4(v);
  uint64_t q2 = uint64_t{q} * q;      // (quantized mantissa * 16)^2
  int shift = 2 * k - 8;              // value = q2 * 2^(2k) / 256
  if (shift < 0) return Wide64::from_u64(q2 >> -shift);
  if (shift >= 64 || q2 > (UINT64_MAX >> shift)) return kWide64Max;
  return Wide64::from_u64(q2 << shift);
}

Wide64 wide_add(Wide64 acc, uint32_t addend) {
  uint64_t lo_sum = uint64_t{acc.lo} + addend;                 // (1) low sum
  uint32_t carry = (lo_sum >> 32) ? 1u : 0u;                   // (2) carry
  uint64_t hi_sum = uint64_t{acc.hi} + carry;                  // (3) high sum
  if (hi_sum > 0xFFFFFFFFu) return kWide64Max;
  return Wide64{static_cast<uint32_t>(lo_sum), static_cast<uint32_t>(hi_sum)};
}

Wide64 wide_add64(Wide64 acc, uint64_t addend) {
  acc = wide_add(acc, static_cast<uint32_t>(addend & 0xFFFFFFFFu));
  uint32_t hi_part = static_cast<uint32_t>(addend >> 32);
  if (hi_part) {
    uint64_t hi_sum = uint64_t{acc.hi} + hi_part;
    if (hi_sum > 0xFFFFFFFFu) return kWide64Max;
    acc.hi = static_cast<uint32_t>(hi_sum);
  }
  return acc;
}

void SignedWide::add(bool term_negative, uint64_t term_magnitude) {
  if (term_magnitude == 0) return;
  if (negative == term_negative) {
    mag = wide_add64(mag, term_magnitude);
    return;
  }
  uint64_t current = mag.value();
  if (term_magnitude > current) {
    mag = Wide64::from_u64(term_magnitude - current);
    negative = term_negative;
  } else {
    mag = Wide64::from_u64(current - term_magnitude);
  }
  if (mag.value() == 0) negative = false;
}

double SignedWide::signed_value() const {
  double v = static_cast<double>(mag.value());
  return negative ? -v : v;
}

}  // namespace peregrine
