#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rpp/field.hpp"

namespace rpp {

/// Dense row-major matrix over GF(2^r).
struct FieldMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Fe> a;

  FieldMatrix() = default;
  FieldMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Fe& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  Fe at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// Determinant by Gaussian elimination with first-nonzero pivoting.
/// Non-square input yields 0; the empty 0x0 matrix yields 1.
Fe determinant(const Field& f, FieldMatrix m);

/// In-place determinant of an n x n grid; clobbers `data`. Hot path for the
/// sieve, which reuses one scratch buffer across many subsets.
Fe determinant_destructive(const Field& f, std::size_t n, Fe* data);

/// Pfaffian of an even-dimensional symmetric zero-diagonal matrix, computed
/// as sqrt(det); valid because pf^2 = det and square roots are unique in
/// characteristic two. Odd dimension yields 0; a shape violation throws.
Fe pfaffian(const Field& f, const FieldMatrix& m);

/// Pair-partition expansion, dimension <= 8. Independent check of pfaffian().
Fe pfaffian_by_expansion(const Field& f, const FieldMatrix& m);

/// Skew elimination (congruence transforms), dimension <= 40.
Fe pfaffian_by_elimination(const Field& f, FieldMatrix m);

/// Coefficients c_0..c_L of the unique degree-<=L polynomial through the
/// given L+1 points with pairwise distinct abscissae (Lagrange basis).
std::vector<Fe> interpolate(const Field& f, std::span<const std::pair<Fe, Fe>> points,
                            std::size_t degree_bound);

/// Horner evaluation of a coefficient vector (c_0 first).
Fe poly_eval(const Field& f, std::span<const Fe> coeffs, Fe z);

}  // namespace rpp
