#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fano/errors.hpp"
#include "fano/integers.hpp"
#include "fano/linalg.hpp"
#include "fano/prime_field.hpp"

namespace fano {

/// Strictly increasing (k+1)-subset of {0, ..., n}: the pivot columns of
/// an RREF representative, indexing an affine chart of G(k, n).
using PivotSet = std::vector<int>;

/// Default cap on the number of planes an enumeration may touch.
inline constexpr std::int64_t kDefaultPlaneBudget = 10'000'000;

/// Thrown when an enumeration would exceed its plane budget; carries the
/// exact count that was refused.
class budget_exceeded : public error {
 public:
  budget_exceeded(BigInt count, BigInt budget)
      : error("plane enumeration refused: " + count.str() + " candidate planes exceed budget " +
              budget.str()),
        count_(std::move(count)),
        budget_(std::move(budget)) {}

  [[nodiscard]] const BigInt& count() const noexcept { return count_; }
  [[nodiscard]] const BigInt& budget() const noexcept { return budget_; }

 private:
  BigInt count_;
  BigInt budget_;
};

/// All (k+1)-element pivot sets in {0..n}, in lexicographic order.
inline std::vector<PivotSet> all_pivot_sets(int n, int k) {
  if (k < 0 || n < 0 || k > n) throw invalid_input("all_pivot_sets: need 0 <= k <= n");
  const int size = k + 1;
  std::vector<PivotSet> result;
  PivotSet subset(size);
  for (int i = 0; i < size; ++i) subset[i] = i;
  for (;;) {
    result.push_back(subset);
    int i = size - 1;
    while (i >= 0 && subset[i] == n - (size - 1 - i)) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
  }
  return result;
}

/// Free entry slots of the RREF chart with the given pivots, row-major:
/// row i may hold arbitrary values at columns right of its pivot that
/// are not pivots themselves.
inline std::vector<std::pair<int, int>> chart_free_positions(int n, const PivotSet& pivots) {
  std::vector<bool> is_pivot(n + 1, false);
  for (int p : pivots) {
    if (p < 0 || p > n) throw invalid_input("chart_free_positions: pivot out of range");
    is_pivot[p] = true;
  }
  std::vector<std::pair<int, int>> free_positions;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (int col = pivots[i] + 1; col <= n; ++col)
      if (!is_pivot[col]) free_positions.emplace_back(static_cast<int>(i), col);
  return free_positions;
}

/// The unique reduced-row-echelon-form representative of a k-plane in
/// P^n(F_p): a full-rank (k+1) x (n+1) matrix with pivot entries 1,
/// zeros elsewhere in pivot columns and left of pivots. Two planes are
/// equal exactly when their matrices are.
class PlaneRref {
 public:
  [[nodiscard]] const PrimeField& field() const noexcept { return field_; }
  [[nodiscard]] int ambient_dim() const noexcept { return n_; }
  [[nodiscard]] int plane_dim() const noexcept { return k_; }
  [[nodiscard]] int rows() const noexcept { return k_ + 1; }
  [[nodiscard]] int cols() const noexcept { return n_ + 1; }
  [[nodiscard]] std::uint32_t at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols() + j];
  }
  [[nodiscard]] const std::vector<std::uint32_t>& entries() const noexcept { return entries_; }
  [[nodiscard]] const PivotSet& pivots() const noexcept { return pivots_; }

  /// Row i as a coordinate vector.
  [[nodiscard]] std::vector<std::uint32_t> row(int i) const {
    return {entries_.begin() + static_cast<std::ptrdiff_t>(i) * cols(),
            entries_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols()};
  }

  [[nodiscard]] std::vector<std::vector<std::uint32_t>> row_vectors() const {
    std::vector<std::vector<std::uint32_t>> rs;
    rs.reserve(rows());
    for (int i = 0; i < rows(); ++i) rs.push_back(row(i));
    return rs;
  }

  /// The free entries in row-major chart order; (pivots, free entries)
  /// is the plane's coordinate in its chart.
  [[nodiscard]] std::vector<std::uint32_t> free_entries() const {
    std::vector<std::uint32_t> params;
    for (auto [i, j] : chart_free_positions(n_, pivots_)) params.push_back(at(i, j));
    return params;
  }

  /// Canonicalize a spanning set: rows are RREF-reduced and the plane
  /// dimension is read off the rank.
  [[nodiscard]] static PlaneRref from_span(const PrimeField& field, int n,
                                           const std::vector<std::vector<std::uint32_t>>& rows) {
    if (rows.empty()) throw invalid_input("PlaneRref::from_span: no rows");
    FpMatrix m(static_cast<int>(rows.size()), n + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(rows[i].size()) != n + 1)
        throw invalid_input("PlaneRref::from_span: row length must be n+1");
      for (int j = 0; j <= n; ++j) m.at(static_cast<int>(i), j) = rows[i][j] % field.modulus();
    }
    const int rank = rref_in_place(field, m);
    if (rank == 0) throw invalid_input("PlaneRref::from_span: zero span");
    std::vector<std::uint32_t> entries(static_cast<std::size_t>(rank) * (n + 1));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j <= n; ++j) entries[static_cast<std::size_t>(i) * (n + 1) + j] = m.at(i, j);
    return PlaneRref(field, n, rank - 1, std::move(entries));
  }

  /// Wrap entries that are already in RREF; validates the form.
  [[nodiscard]] static PlaneRref from_rref(const PrimeField& field, int n, int k,
                                           std::vector<std::uint32_t> entries) {
    PlaneRref plane(field, n, k, std::move(entries));
    PlaneRref reduced = from_span(field, n, plane.row_vectors());
    if (!(reduced == plane)) throw invalid_input("PlaneRref::from_rref: matrix is not in RREF");
    return plane;
  }

  /// Enumeration order: pivot set first (lexicographic), then the free
  /// entries (lexicographic, row-major).
  friend bool operator<(const PlaneRref& a, const PlaneRref& b) {
    if (a.pivots_ != b.pivots_) return a.pivots_ < b.pivots_;
    return a.free_entries() < b.free_entries();
  }

  friend bool operator==(const PlaneRref& a, const PlaneRref& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.k_ == b.k_ && a.entries_ == b.entries_;
  }

 private:
  friend PlaneRref plane_from_chart(const PrimeField&, int, const PivotSet&,
                                    const std::vector<std::uint32_t>&);

  PlaneRref(const PrimeField& field, int n, int k, std::vector<std::uint32_t> entries)
      : field_(field), n_(n), k_(k), entries_(std::move(entries)) {
    if (n < 0 || k < 0 || k > n) throw invalid_input("PlaneRref: need 0 <= k <= n");
    if (entries_.size() != static_cast<std::size_t>(k + 1) * (n + 1))
      throw invalid_input("PlaneRref: wrong entry count");
    for (std::uint32_t e : entries_)
      if (e >= field_.modulus()) throw invalid_input("PlaneRref: entry not reduced mod p");
    pivots_.reserve(k + 1);
    for (int i = 0; i <= k; ++i) {
      int col = 0;
      while (col <= n && at(i, col) == 0) ++col;
      if (col > n) throw invalid_input("PlaneRref: zero row");
      pivots_.push_back(col);
    }
  }

  PrimeField field_;
  int n_;
  int k_;
  std::vector<std::uint32_t> entries_;
  PivotSet pivots_;
};

/// Build the unique plane of a chart from its free-entry vector.
inline PlaneRref plane_from_chart(const PrimeField& field, int n, const PivotSet& pivots,
                                  const std::vector<std::uint32_t>& params) {
  const auto free_positions = chart_free_positions(n, pivots);
  if (params.size() != free_positions.size())
    throw invalid_input("plane_from_chart: expected " + std::to_string(free_positions.size()) +
                        " free entries, got " + std::to_string(params.size()));
  const int k = static_cast<int>(pivots.size()) - 1;
  std::vector<std::uint32_t> entries(static_cast<std::size_t>(k + 1) * (n + 1), 0);
  for (int i = 0; i <= k; ++i) {
    if (pivots[i] < 0 || pivots[i] > n || (i > 0 && pivots[i] <= pivots[i - 1]))
      throw invalid_input("plane_from_chart: pivots must be strictly increasing in [0, n]");
    entries[static_cast<std::size_t>(i) * (n + 1) + pivots[i]] = 1;
  }
  for (std::size_t idx = 0; idx < params.size(); ++idx) {
    auto [i, j] = free_positions[idx];
    if (params[idx] >= field.modulus())
      throw invalid_input("plane_from_chart: entry not reduced mod p");
    entries[static_cast<std::size_t>(i) * (n + 1) + j] = params[idx];
  }
  return PlaneRref(field, n, k, std::move(entries));
}

/// Deterministic stream of every k-plane in P^n(F_p), each exactly once,
/// in lexicographic (pivot set, free entries) order. Construction checks
/// the total count against the budget and refuses loudly when exceeded.
class PlaneEnumerator {
 public:
  PlaneEnumerator(const PrimeField& field, int n, int k,
                  BigInt budget = BigInt(kDefaultPlaneBudget))
      : field_(field), n_(n), k_(k) {
    if (k < 0 || k > n - 1) throw invalid_input("PlaneEnumerator: need 0 <= k <= n-1");
    total_ = gaussian_binomial(n + 1, k + 1, field.modulus());
    if (total_ > budget) throw budget_exceeded(total_, budget);
    pivot_sets_ = all_pivot_sets(n, k);
    enter_chart(0);
  }

  /// Number of planes the full stream will emit.
  [[nodiscard]] const BigInt& total_count() const noexcept { return total_; }

  [[nodiscard]] std::optional<PlaneRref> next() {
    if (chart_index_ >= pivot_sets_.size()) return std::nullopt;
    PlaneRref plane = plane_from_chart(field_, n_, pivot_sets_[chart_index_], params_);
    advance();
    return plane;
  }

 private:
  void enter_chart(std::size_t idx) {
    chart_index_ = idx;
    if (chart_index_ < pivot_sets_.size()) {
      params_.assign(chart_free_positions(n_, pivot_sets_[chart_index_]).size(), 0);
    }
  }

  void advance() {
    // Odometer over the free entries, last position fastest: this is
    // exactly lexicographic order on the vector.
    const std::uint32_t p = field_.modulus();
    for (std::size_t i = params_.size(); i-- > 0;) {
      if (++params_[i] < p) return;
      params_[i] = 0;
    }
    enter_chart(chart_index_ + 1);
  }

  PrimeField field_;
  int n_;
  int k_;
  BigInt total_;
  std::vector<PivotSet> pivot_sets_;
  std::size_t chart_index_ = 0;
  std::vector<std::uint32_t> params_;
};

/// Materialize the full stream.
inline std::vector<PlaneRref> enumerate_planes(const PrimeField& field, int n, int k,
                                               BigInt budget = BigInt(kDefaultPlaneBudget)) {
  PlaneEnumerator stream(field, n, k, std::move(budget));
  std::vector<PlaneRref> planes;
  while (auto plane = stream.next()) planes.push_back(std::move(*plane));
  return planes;
}

/// Projective incidence: true iff the two planes share a projective
/// point, i.e. the stacked row spaces are dependent.
inline bool planes_meet(const PlaneRref& a, const PlaneRref& b) {
  if (!(a.field() == b.field()) || a.ambient_dim() != b.ambient_dim())
    throw invalid_input("planes_meet: mismatched ambient spaces");
  const int rows = a.rows() + b.rows();
  FpMatrix m(rows, a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
  return matrix_rank(a.field(), std::move(m)) < rows;
}

/// The (p^{k+1} - 1)/(p - 1) projective F_p-points of the plane, each
/// normalized so its first nonzero coordinate is 1, in deterministic
/// order.
inline std::vector<std::vector<std::uint32_t>> points_of_plane(const PlaneRref& plane) {
  const PrimeField& field = plane.field();
  const std::uint32_t p = field.modulus();
  const int k = plane.plane_dim();
  std::vector<std::vector<std::uint32_t>> points;
  std::vector<std::uint32_t> u(static_cast<std::size_t>(k) + 1, 0);
  for (int lead = 0; lead <= k; ++lead) {
    std::fill(u.begin(), u.end(), 0);
    u[lead] = 1;
    // Odometer over coordinates after the leading 1.
    for (;;) {
      std::vector<std::uint32_t> x(plane.cols(), 0);
      for (int i = lead; i <= k; ++i) {
        if (u[i] == 0) continue;
        for (int j = 0; j < plane.cols(); ++j)
          x[j] = field.add(x[j], field.mul(u[i], plane.at(i, j)));
      }
      points.push_back(std::move(x));
      int i = k;
      while (i > lead && ++u[i] == p) u[i--] = 0;
      if (i == lead) break;
    }
  }
  return points;
}

}  // namespace fano
