#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

namespace rpp {

/// Element of GF(2^r) for r <= 64, stored as the bit pattern of a polynomial
/// over GF(2) reduced modulo the field modulus. Plain data; all arithmetic
/// lives on Field so the modulus is never duplicated per element.
struct Fe {
  std::uint64_t v = 0;
  friend constexpr bool operator==(Fe a, Fe b) { return a.v == b.v; }
  friend constexpr bool operator!=(Fe a, Fe b) { return a.v != b.v; }
  constexpr explicit operator bool() const { return v != 0; }
};

namespace detail {

// carryless 64x64 -> 128 bit polynomial product
inline unsigned __int128 clmul(std::uint64_t a, std::uint64_t b) {
#if defined(__PCLMUL__)
  __m128i p = _mm_clmulepi64_si128(_mm_cvtsi64_si128(static_cast<long long>(a)),
                                   _mm_cvtsi64_si128(static_cast<long long>(b)), 0);
  unsigned __int128 lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(p));
  unsigned __int128 hi = static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_srli_si128(p, 8)));
  return lo | (hi << 64);
#else
  // 4-bit windowed shift-and-xor fallback
  unsigned __int128 tab[16];
  tab[0] = 0;
  tab[1] = a;
  for (int i = 2; i < 16; i += 2) {
    tab[i] = tab[i / 2] << 1;
    tab[i + 1] = tab[i] ^ a;
  }
  unsigned __int128 r = 0;
  for (int s = 0; s < 64; s += 4) r ^= tab[(b >> s) & 0xF] << s;
  return r;
#endif
}

inline int poly_degree(unsigned __int128 x) {
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 64);
  if (hi) return 127 - std::countl_zero(hi);
  std::uint64_t lo = static_cast<std::uint64_t>(x);
  return lo ? 63 - std::countl_zero(lo) : -1;
}

}  // namespace detail

/// GF(2^r) with a configurable irreducible modulus (an (r+1)-bit pattern).
/// Immutable after construction and shareable across threads.
class Field {
 public:
  /// Field with the built-in modulus for the given extension degree.
  explicit Field(unsigned bits) : Field(bits, default_modulus(bits)) {}

  /// Field with an explicit modulus; rejects patterns that are not
  /// irreducible of degree exactly `bits`.
  Field(unsigned bits, unsigned __int128 modulus);

  unsigned bits() const { return bits_; }
  unsigned __int128 modulus() const { return (static_cast<unsigned __int128>(1) << bits_) | tail_; }
  std::uint64_t pattern_mask() const { return mask_; }

  /// Built-in irreducible modulus for supported degrees; throws otherwise.
  static unsigned __int128 default_modulus(unsigned bits);

  static constexpr Fe zero() { return {}; }
  static constexpr Fe one() { return {1}; }

  /// Element from a raw bit pattern; rejects patterns wider than r bits.
  Fe element(std::uint64_t pattern) const {
    if (pattern & ~mask_) throw std::invalid_argument("field: pattern exceeds extension degree");
    return {pattern};
  }

  Fe add(Fe a, Fe b) const { return {a.v ^ b.v}; }

  Fe mul(Fe a, Fe b) const { return {reduce(detail::clmul(a.v, b.v))}; }

  Fe square(Fe a) const { return {reduce(detail::clmul(a.v, a.v))}; }

  Fe pow(Fe a, std::uint64_t e) const;

  /// Multiplicative inverse by extended Euclid over GF(2)[x]; zero input is
  /// a division-by-zero condition.
  Fe inv(Fe a) const;

  /// The unique square root (squaring is the Frobenius bijection): a^(2^(r-1)).
  Fe sqrt(Fe a) const {
    Fe r = a;
    for (unsigned i = 1; i < bits_; ++i) r = square(r);
    return r;
  }

  /// Uniform draw of an r-bit pattern from a caller-owned generator state.
  Fe sample(std::mt19937_64& rng) const { return {rng() & mask_}; }

 private:
  std::uint64_t reduce(unsigned __int128 p) const {
    if (bits_ == 64) {
      while (std::uint64_t hi = static_cast<std::uint64_t>(p >> 64)) {
        p = (p & mask_) ^ detail::clmul(hi, tail_);
      }
      return static_cast<std::uint64_t>(p);
    }
    while (std::uint64_t hi = static_cast<std::uint64_t>(p >> bits_)) {
      p = (p & mask_) ^ detail::clmul(hi, tail_);
    }
    return static_cast<std::uint64_t>(p);
  }

  bool modulus_is_irreducible() const;

  unsigned bits_ = 64;
  std::uint64_t mask_ = ~0ULL;
  std::uint64_t tail_ = 0;  // modulus with the x^bits term dropped
};

}  // namespace rpp
