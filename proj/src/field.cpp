#include "rpp/field.hpp"

#include <utility>

namespace rpp {

namespace {

using u128 = unsigned __int128;

u128 poly_mod(u128 value, u128 modulus) {
  int dm = detail::poly_degree(modulus);
  for (int d = detail::poly_degree(value); d >= dm; d = detail::poly_degree(value)) {
    value ^= modulus << (d - dm);
  }
  return value;
}

u128 poly_gcd(u128 a, u128 b) {
  while (b != 0) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

unsigned __int128 Field::default_modulus(unsigned bits) {
  switch (bits) {
    case 2: return 0x7;                                     // x^2+x+1
    case 3: return 0xB;                                     // x^3+x+1
    case 4: return 0x13;                                    // x^4+x+1
    case 5: return 0x25;                                    // x^5+x^2+1
    case 6: return 0x5B;                                    // x^6+x^4+x^3+x+1
    case 8: return 0x11B;                                   // x^8+x^4+x^3+x+1
    case 12: return 0x1053;                                 // x^12+x^6+x^4+x+1
    case 16: return 0x1002B;                                // x^16+x^5+x^3+x+1
    case 32: return (static_cast<u128>(1) << 32) | 0x400007;  // x^32+x^22+x^2+x+1
    case 64: return (static_cast<u128>(1) << 64) | 0x1B;      // x^64+x^4+x^3+x+1
    default: throw std::invalid_argument("field: no built-in modulus for this degree");
  }
}

Field::Field(unsigned bits, unsigned __int128 modulus) {
  if (bits < 2 || bits > 64) throw std::invalid_argument("field: extension degree out of range");
  bits_ = bits;
  mask_ = bits == 64 ? ~0ULL : ((1ULL << bits) - 1);
  if (detail::poly_degree(modulus) != static_cast<int>(bits)) {
    throw std::invalid_argument("field: modulus degree must equal the extension degree");
  }
  tail_ = static_cast<std::uint64_t>(modulus) & mask_;
  if (!modulus_is_irreducible()) throw std::invalid_argument("field: modulus is reducible");
}

Fe Field::pow(Fe a, std::uint64_t e) const {
  Fe r = one();
  Fe base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = square(base);
    e >>= 1;
  }
  return r;
}

Fe Field::inv(Fe a) const {
  if (a.v == 0) throw std::domain_error("field: inverse of zero");
  if (a.v == 1) return one();

  // Extended Euclid. Peeling one division step against the modulus up front
  // keeps the remainders in 64 bits: with deg a = d, the first remainder is
  // M ^ a*x^(b-d), whose x^b term cancels.
  const int da = detail::poly_degree(a.v);
  const unsigned shift0 = bits_ - static_cast<unsigned>(da);  // in [1, 63]
  std::uint64_t u = a.v;
  std::uint64_t v = (tail_ ^ (a.v << shift0)) & mask_;
  u128 gu = 1;
  u128 gv = static_cast<u128>(1) << shift0;

  int du = da;
  int dv = detail::poly_degree(v);
  while (u != 1) {
    // v stays nonzero until u reaches 1: the gcd is 1. Selects compile to
    // conditional moves; the swap direction is data-dependent.
    const bool sw = du < dv;
    const std::uint64_t su = sw ? v : u, sv = sw ? u : v;
    const u128 sgu = sw ? gv : gu, sgv = sw ? gu : gv;
    const int d = sw ? dv - du : du - dv;
    dv = sw ? du : dv;
    u = su ^ (sv << d);
    v = sv;
    gu = sgu ^ (sgv << d);
    gv = sgv;
    du = u ? 63 - std::countl_zero(u) : -1;
  }
  return {static_cast<std::uint64_t>(poly_mod(gu, modulus()))};
}

bool Field::modulus_is_irreducible() const {
  // Rabin's test: x^(2^r) == x mod f, and for every prime q | r,
  // gcd(x^(2^(r/q)) - x, f) == 1.
  const Fe x{2};
  Fe t = x;
  for (unsigned i = 0; i < bits_; ++i) t = square(t);
  if (t != x) return false;

  for (unsigned rem = bits_, q = 2; rem > 1; ++q) {
    if (rem % q != 0) continue;
    while (rem % q == 0) rem /= q;
    Fe s = x;
    for (unsigned i = 0; i < bits_ / q; ++i) s = square(s);
    u128 g = poly_gcd(static_cast<u128>(s.v ^ x.v), modulus());
    if (g != 1) return false;
  }
  return true;
}

}  // namespace rpp
