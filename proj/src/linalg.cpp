#include "rpp/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace rpp {

namespace {

void check_alternating(const FieldMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("pfaffian: matrix must be square");
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (m.at(i, i).v != 0) throw std::invalid_argument("pfaffian: diagonal must be zero");
    for (std::size_t j = i + 1; j < m.cols; ++j) {
      if (m.at(i, j) != m.at(j, i)) throw std::invalid_argument("pfaffian: matrix must be symmetric");
    }
  }
}

}  // namespace

Fe determinant_destructive(const Field& f, std::size_t n, Fe* a) {
  Fe det = Field::one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv * n + col].v == 0) ++piv;
    if (piv == n) return Field::zero();
    if (piv != col) {
      // row swap; no sign change in characteristic two
      for (std::size_t j = col; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
    }
    const Fe pivot = a[col * n + col];
    det = f.mul(det, pivot);
    const Fe pinv = f.inv(pivot);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Fe factor = f.mul(a[r * n + col], pinv);
      if (!factor) continue;
      for (std::size_t j = col + 1; j < n; ++j) {
        a[r * n + j] = f.add(a[r * n + j], f.mul(factor, a[col * n + j]));
      }
      a[r * n + col] = Field::zero();
    }
  }
  return det;
}

Fe determinant(const Field& f, FieldMatrix m) {
  if (m.rows != m.cols) return Field::zero();
  return determinant_destructive(f, m.rows, m.a.data());
}

Fe pfaffian(const Field& f, const FieldMatrix& m) {
  check_alternating(m);
  if (m.rows % 2 != 0) return Field::zero();
  FieldMatrix scratch = m;
  return f.sqrt(determinant_destructive(f, scratch.rows, scratch.a.data()));
}

Fe pfaffian_by_expansion(const Field& f, const FieldMatrix& m) {
  check_alternating(m);
  if (m.rows > 8) throw std::invalid_argument("pfaffian_by_expansion: dimension > 8");
  if (m.rows % 2 != 0) return Field::zero();

  std::vector<int> free_ids(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) free_ids[i] = static_cast<int>(i);

  // sum over pair partitions: match the first unpaired index with every other
  auto rec = [&](auto&& self, std::vector<int>& ids) -> Fe {
    if (ids.empty()) return Field::one();
    Fe sum = Field::zero();
    int first = ids.front();
    for (std::size_t t = 1; t < ids.size(); ++t) {
      int partner = ids[t];
      Fe entry = m.at(first, partner);
      if (!entry) continue;
      std::vector<int> rest;
      rest.reserve(ids.size() - 2);
      for (std::size_t s = 1; s < ids.size(); ++s) {
        if (s != t) rest.push_back(ids[s]);
      }
      sum = f.add(sum, f.mul(entry, self(self, rest)));
    }
    return sum;
  };
  return rec(rec, free_ids);
}

Fe pfaffian_by_elimination(const Field& f, FieldMatrix m) {
  check_alternating(m);
  if (m.rows > 40) throw std::invalid_argument("pfaffian_by_elimination: dimension > 40");
  if (m.rows % 2 != 0) return Field::zero();
  const std::size_t n = m.rows;

  Fe pf = Field::one();
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    std::size_t piv = i + 1;
    while (piv < n && m.at(i, piv).v == 0) ++piv;
    if (piv == n) return Field::zero();
    if (piv != i + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(i + 1, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(j, piv), m.at(j, i + 1));
    }
    const Fe p = m.at(i, i + 1);
    pf = f.mul(pf, p);
    const Fe pinv = f.inv(p);
    for (std::size_t r = i + 2; r < n; ++r) {
      // zero column i via row i+1, column i+1 via row i; congruence
      // transforms keep the trailing block alternating and pf unchanged
      const Fe f1 = f.mul(m.at(r, i), pinv);
      const Fe f2 = f.mul(m.at(r, i + 1), pinv);
      if (f1.v) {
        for (std::size_t j = 0; j < n; ++j) m.at(r, j) = f.add(m.at(r, j), f.mul(f1, m.at(i + 1, j)));
        for (std::size_t j = 0; j < n; ++j) m.at(j, r) = f.add(m.at(j, r), f.mul(f1, m.at(j, i + 1)));
      }
      if (f2.v) {
        for (std::size_t j = 0; j < n; ++j) m.at(r, j) = f.add(m.at(r, j), f.mul(f2, m.at(i, j)));
        for (std::size_t j = 0; j < n; ++j) m.at(j, r) = f.add(m.at(j, r), f.mul(f2, m.at(j, i)));
      }
    }
  }
  return pf;
}

std::vector<Fe> interpolate(const Field& f, std::span<const std::pair<Fe, Fe>> points,
                            std::size_t degree_bound) {
  const std::size_t n = degree_bound + 1;
  if (points.size() != n) throw std::invalid_argument("interpolate: need exactly L+1 points");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i].first == points[j].first) {
        throw std::invalid_argument("interpolate: repeated evaluation point");
      }
    }
  }

  // master polynomial N(z) = prod (z + z_i), monic of degree n
  std::vector<Fe> master(n + 1);
  master[0] = Field::one();
  std::size_t deg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    master[deg + 1] = Field::one();
    for (std::size_t j = deg; j > 0; --j) {
      master[j] = f.add(master[j - 1], f.mul(points[i].first, master[j]));
    }
    master[0] = f.mul(master[0], points[i].first);
    ++deg;
  }

  std::vector<Fe> coeffs(n);
  std::vector<Fe> quotient(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Fe zi = points[i].first;
    // synthetic division of the monic master by (z + z_i)
    quotient[n - 1] = master[n];
    for (std::size_t j = n - 1; j > 0; --j) {
      quotient[j - 1] = f.add(master[j], f.mul(zi, quotient[j]));
    }
    const Fe denom = poly_eval(f, quotient, zi);
    const Fe scale = f.mul(points[i].second, f.inv(denom));
    if (!scale) continue;
    for (std::size_t j = 0; j < n; ++j) {
      coeffs[j] = f.add(coeffs[j], f.mul(scale, quotient[j]));
    }
  }
  return coeffs;
}

Fe poly_eval(const Field& f, std::span<const Fe> coeffs, Fe z) {
  Fe acc = Field::zero();
  for (std::size_t i = coeffs.size(); i > 0; --i) {
    acc = f.add(f.mul(acc, z), coeffs[i - 1]);
  }
  return acc;
}

}  // namespace rpp
