// Test-only oracles, kept independent of the library code paths they
// check: a recurrence route to subspace counts, exhaustive matrix
// counting, and the classical line constructions on diagonal surfaces
// and split quadrics.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fano/fano.hpp"

namespace oracle {

/// Subspace count via the q-Pascal recurrence
/// [a b]_q = [a-1 b-1]_q + q^b [a-1 b]_q, independent of the product
/// formula in the library.
inline fano::BigInt q_binomial_recurrence(int a, int b, int q) {
  if (b < 0 || b > a) return 0;
  std::vector<std::vector<fano::BigInt>> table(a + 1, std::vector<fano::BigInt>(a + 1, 0));
  for (int i = 0; i <= a; ++i) {
    table[i][0] = 1;
    for (int j = 1; j <= i; ++j) {
      fano::BigInt qpow = 1;
      for (int e = 0; e < j; ++e) qpow *= q;
      table[i][j] = table[i - 1][j - 1] + qpow * (j <= i - 1 ? table[i - 1][j] : 0);
    }
  }
  return table[a][b];
}

/// Checks RREF shape and full rank without using the library's
/// elimination: row-major entries of a rows x cols matrix.
inline bool is_full_rank_rref(const std::vector<std::uint32_t>& m, int rows, int cols) {
  int prev_pivot = -1;
  for (int i = 0; i < rows; ++i) {
    int pivot = -1;
    for (int j = 0; j < cols; ++j) {
      if (m[static_cast<std::size_t>(i) * cols + j] != 0) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0 || pivot <= prev_pivot) return false;          // zero row or disorder
    if (m[static_cast<std::size_t>(i) * cols + pivot] != 1) return false;
    for (int r = 0; r < rows; ++r)
      if (r != i && m[static_cast<std::size_t>(r) * cols + pivot] != 0) return false;
    prev_pivot = pivot;
  }
  return true;
}

/// Exhaustive count of full-rank RREF b x a matrices over F_q: every
/// matrix is generated and tested. Only feasible for q^(a*b) small.
inline long brute_force_rref_count(int a, int b, std::uint32_t q) {
  const int cells = a * b;
  std::vector<std::uint32_t> m(cells, 0);
  long count = 0;
  for (;;) {
    if (is_full_rank_rref(m, b, a)) ++count;
    int i = cells - 1;
    while (i >= 0 && ++m[i] == q) m[i--] = 0;
    if (i < 0) break;
  }
  return count;
}

/// All x in F_p with x^e = target.
inline std::vector<std::uint32_t> roots_of(const fano::PrimeField& field, std::uint32_t e,
                                           std::uint32_t target) {
  std::vector<std::uint32_t> roots;
  for (std::uint32_t x = 0; x < field.modulus(); ++x)
    if (field.pow(x, e) == target) roots.push_back(x);
  return roots;
}

/// The classical lines on the diagonal surface x0^d + x1^d + x2^d + x3^d
/// in P^3: for each of the three pairings {{a,b},{c,e}} of the
/// coordinates and each pair (alpha, beta) of d-th roots of -1, the span
/// of the two rows with 1 in column a (resp. c) and alpha in column b
/// (resp. beta in column e). On that span the form restricts to
/// s^d (1 + alpha^d) + t^d (1 + beta^d), which vanishes identically.
inline std::vector<fano::PlaneRref> diagonal_surface_lines(const fano::PrimeField& field,
                                                           std::uint32_t d) {
  const auto roots = roots_of(field, d, field.modulus() - 1);  // d-th roots of -1
  static constexpr int pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  std::vector<fano::PlaneRref> lines;
  for (const auto& pairing : pairings) {
    for (std::uint32_t alpha : roots) {
      for (std::uint32_t beta : roots) {
        std::vector<std::uint32_t> row1(4, 0), row2(4, 0);
        row1[pairing[0]] = 1;
        row1[pairing[1]] = alpha;
        row2[pairing[2]] = 1;
        row2[pairing[3]] = beta;
        lines.push_back(fano::PlaneRref::from_span(field, 3, {row1, row2}));
      }
    }
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

/// The two rulings of the split quadric x0*x3 - x1*x2 in P^3, via the
/// Segre parameterization (s,t) x (u,v) -> (su, sv, tu, tv): fixing the
/// first factor gives one ruling, fixing the second gives the other,
/// p+1 lines each.
inline std::vector<fano::PlaneRref> split_quadric_rulings(const fano::PrimeField& field) {
  std::vector<fano::PlaneRref> lines;
  for (std::uint32_t g = 0; g < field.modulus(); ++g) {
    lines.push_back(fano::PlaneRref::from_span(field, 3, {{1, 0, g, 0}, {0, 1, 0, g}}));
    lines.push_back(fano::PlaneRref::from_span(field, 3, {{1, g, 0, 0}, {0, 0, 1, g}}));
  }
  lines.push_back(fano::PlaneRref::from_span(field, 3, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
  lines.push_back(fano::PlaneRref::from_span(field, 3, {{0, 1, 0, 0}, {0, 0, 0, 1}}));
  std::sort(lines.begin(), lines.end());
  return lines;
}

/// Random sparse polynomial with up to max_terms terms of total degree
/// at most max_degree.
inline fano::FpPoly random_poly(const fano::PrimeField& field, std::size_t nvars,
                                std::uint32_t max_degree, std::size_t max_terms,
                                std::mt19937_64& rng) {
  fano::FpPoly f(field, nvars);
  const std::size_t terms = 1 + rng() % max_terms;
  for (std::size_t t = 0; t < terms; ++t) {
    fano::Monomial mono(nvars);
    std::uint32_t remaining = max_degree;
    for (std::size_t v = 0; v < nvars; ++v) {
      const std::uint32_t e = static_cast<std::uint32_t>(rng() % (remaining + 1));
      mono.set_exponent(v, e);
      remaining -= e;
    }
    f.add_term(mono, static_cast<std::uint32_t>(rng() % field.modulus()));
  }
  return f;
}

/// Random (rows x cols) matrix of full row rank over F_p.
inline std::vector<std::vector<std::uint32_t>> random_full_rank_matrix(
    const fano::PrimeField& field, int rows, int cols, std::mt19937_64& rng) {
  for (;;) {
    fano::FpMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        m.at(i, j) = static_cast<std::uint32_t>(rng() % field.modulus());
    if (fano::matrix_rank(field, m) == rows) {
      std::vector<std::vector<std::uint32_t>> out(rows, std::vector<std::uint32_t>(cols));
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out[i][j] = m.at(i, j);
      return out;
    }
  }
}

}  // namespace oracle
