#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <random>

#include "doctest.h"
#include "rpp/field.hpp"

using rpp::Fe;
using rpp::Field;

namespace {

// independent long multiplication: shift-and-reduce, one bit at a time
std::uint64_t mul_shift_reduce(std::uint64_t a, std::uint64_t b, unsigned bits,
                               std::uint64_t tail) {
  std::uint64_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    if (b >> i & 1) r ^= a;
    const bool overflow = a >> (bits - 1) & 1;
    a <<= 1;
    if (bits < 64) a &= (1ULL << bits) - 1;
    if (overflow) a ^= tail;
  }
  return r;
}

}  // namespace

TEST_CASE("additive identities") {
  const Field f(64);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Fe a = f.sample(rng);
    CHECK(f.add(a, Field::zero()) == a);
    CHECK(f.add(a, a) == Field::zero());
  }
  CHECK(f.add(Fe{0b011}, Fe{0b101}) == Fe{0b110});
}

TEST_CASE("multiplication in GF(2^3), modulus x^3+x+1") {
  const Field f(3);
  CHECK(f.mul(Fe{0b010}, Fe{0b010}) == Fe{0b100});  // x*x = x^2
  CHECK(f.mul(Fe{0b100}, Fe{0b010}) == Fe{0b011});  // x^2*x = x+1
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const Fe a = f.sample(rng);
    CHECK(f.mul(a, Field::one()) == a);
  }
}

TEST_CASE("full GF(2^3) multiplication table equals shift-and-reduce long multiplication") {
  const Field f(3);
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      CHECK(f.mul(Fe{a}, Fe{b}).v == mul_shift_reduce(a, b, 3, 0b011));
    }
  }
}

TEST_CASE("mul agrees with shift-and-reduce at r=64 and r=16") {
  std::mt19937_64 rng(3);
  for (unsigned bits : {16u, 64u}) {
    const Field f(bits);
    const std::uint64_t tail = static_cast<std::uint64_t>(f.modulus() & f.pattern_mask());
    for (int i = 0; i < 200; ++i) {
      const Fe a = f.sample(rng), b = f.sample(rng);
      CHECK(f.mul(a, b).v == mul_shift_reduce(a.v, b.v, bits, tail));
    }
  }
}

TEST_CASE("field axioms hold exhaustively at r=3") {
  const Field f(3);
  for (std::uint64_t a = 0; a < 8; ++a) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      CHECK(f.mul(Fe{a}, Fe{b}) == f.mul(Fe{b}, Fe{a}));
      for (std::uint64_t c = 0; c < 8; ++c) {
        CHECK(f.mul(f.mul(Fe{a}, Fe{b}), Fe{c}) == f.mul(Fe{a}, f.mul(Fe{b}, Fe{c})));
        CHECK(f.mul(Fe{a}, f.add(Fe{b}, Fe{c})) ==
              f.add(f.mul(Fe{a}, Fe{b}), f.mul(Fe{a}, Fe{c})));
      }
    }
  }
}

TEST_CASE("field axioms on random triples at r=64") {
  const Field f(64);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const Fe a = f.sample(rng), b = f.sample(rng), c = f.sample(rng);
    CHECK(f.mul(a, b) == f.mul(b, a));
    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
  }
}

TEST_CASE("inverses") {
  const Field f3(3);
  // exhaustive search oracle over the 7 nonzero elements
  for (std::uint64_t a = 1; a < 8; ++a) {
    std::uint64_t found = 0;
    for (std::uint64_t b = 1; b < 8; ++b) {
      if (f3.mul(Fe{a}, Fe{b}) == Field::one()) found = b;
    }
    CHECK(f3.inv(Fe{a}).v == found);
  }
  CHECK(f3.inv(Fe{0b010}) == Fe{0b101});
  CHECK(f3.inv(Field::one()) == Field::one());

  for (unsigned bits : {8u, 16u, 32u, 64u}) {
    const Field f(bits);
    std::mt19937_64 rng(bits);
    for (int i = 0; i < 100; ++i) {
      Fe a = f.sample(rng);
      if (a.v == 0) continue;
      CHECK(f.mul(a, f.inv(a)) == Field::one());
      // Fermat route: a^(2^r - 2)
      std::uint64_t e = bits == 64 ? ~0ULL - 1 : (1ULL << bits) - 2;
      CHECK(f.inv(a) == f.pow(a, e));
    }
    CHECK_THROWS_AS(f.inv(Field::zero()), std::domain_error);
  }
}

TEST_CASE("square roots") {
  const Field f4(2);  // GF(4) = {0, 1, w, w^2}
  const Fe w{0b10}, w2{0b11};
  CHECK(f4.mul(w, w) == w2);
  CHECK(f4.sqrt(w) == w2);  // (w^2)^2 = w^4 = w
  CHECK(f4.sqrt(Field::zero()) == Field::zero());
  CHECK(f4.sqrt(Field::one()) == Field::one());

  const Field f(64);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Fe a = f.sample(rng);
    CHECK(f.sqrt(f.mul(a, a)) == a);
    const Fe s = f.sqrt(a);
    CHECK(f.mul(s, s) == a);
  }
}

TEST_CASE("sampling is deterministic per seed") {
  const Field f(64);
  std::mt19937_64 a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 16; ++i) {
    const Fe x = f.sample(a), y = f.sample(b), z = f.sample(c);
    all_equal = all_equal && x == y;
    any_diff = any_diff || x != z;
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("uniformity at r=8: byte frequencies within 5 sigma") {
  const Field f(8);
  std::mt19937_64 rng(6);
  const int draws = 100000;
  std::map<std::uint64_t, int> freq;
  for (int i = 0; i < draws; ++i) ++freq[f.sample(rng).v];
  const double expected = draws / 256.0;
  const double sigma = std::sqrt(draws * (1.0 / 256) * (255.0 / 256));
  for (std::uint64_t b = 0; b < 256; ++b) {
    CHECK(std::abs(freq[b] - expected) <= 5 * sigma);
  }
}

TEST_CASE("moduli validation") {
  for (unsigned bits : {8u, 16u, 32u, 64u}) CHECK_NOTHROW(Field{bits});
  // x^4 + 1 = (x+1)^4 is reducible
  CHECK_THROWS_AS(Field(4, 0b10001), std::invalid_argument);
  // degree mismatch
  CHECK_THROWS_AS(Field(8, 0b1011), std::invalid_argument);
  // element pattern wider than the field
  const Field f(8);
  CHECK_THROWS_AS(f.element(0x100), std::invalid_argument);
  CHECK(f.element(0xFF) == Fe{0xFF});
}
