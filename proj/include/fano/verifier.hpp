#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "fano/errors.hpp"
#include "fano/grassmann.hpp"
#include "fano/integers.hpp"
#include "fano/linalg.hpp"
#include "fano/mpoly.hpp"

namespace fano {

using FpPoly = MPoly<PrimeField>;

/// An explicit complete intersection X = V(g_1, ..., g_s) in P^n(F_p):
/// homogeneous nonzero polynomials in n+1 variables with 1 <= s <= n-2.
class CompleteIntersectionInstance {
 public:
  CompleteIntersectionInstance(const PrimeField& field, int n, std::vector<FpPoly> polys)
      : field_(field), n_(n), polys_(std::move(polys)) {
    if (polys_.empty()) throw invalid_input("instance: needs at least one polynomial");
    const int s = static_cast<int>(polys_.size());
    if (s > n_ - 2)
      throw invalid_input("instance: codimension " + std::to_string(s) + " exceeds n-2");
    for (const auto& g : polys_) {
      if (!(g.ring() == field_)) throw invalid_input("instance: polynomial field mismatch");
      if (g.nvars() != static_cast<std::size_t>(n_ + 1))
        throw invalid_input("instance: polynomials must have n+1 variables");
      if (g.is_zero()) throw invalid_input("instance: zero polynomial");
      if (!g.is_homogeneous()) throw invalid_input("instance: polynomials must be homogeneous");
    }
  }

  [[nodiscard]] const PrimeField& field() const noexcept { return field_; }
  [[nodiscard]] int ambient_dim() const noexcept { return n_; }
  [[nodiscard]] int codim() const noexcept { return static_cast<int>(polys_.size()); }
  [[nodiscard]] const std::vector<FpPoly>& polys() const noexcept { return polys_; }

  [[nodiscard]] std::vector<int> degrees() const {
    std::vector<int> d;
    d.reserve(polys_.size());
    for (const auto& g : polys_) d.push_back(static_cast<int>(*g.total_degree()));
    return d;
  }

 private:
  PrimeField field_;
  int n_;
  std::vector<FpPoly> polys_;
};

/// The enumerated F_p-points of the k-plane family of an instance,
/// in the deterministic enumeration order, with an optional incidence
/// matrix.
struct FanoPointSet {
  FanoPointSet(const PrimeField& f, int n_, int k_) : field(f), n(n_), k(k_) {}

  PrimeField field;
  int n;
  int k;
  std::vector<PlaneRref> planes;
  std::optional<std::vector<std::vector<bool>>> meets;
};

/// Defining equations of the k-plane family inside one Grassmannian
/// chart: for each defining polynomial g of degree d, the C(d+k, k)
/// coefficients of the u-monomials of g restricted to the universal
/// plane of the chart, as polynomials in the chart's free coordinates.
/// A parameter vector is a common zero of the generators exactly when
/// its plane lies on X.
struct ChartIdeal {
  PivotSet pivots;
  std::vector<std::pair<int, int>> free_positions;
  std::vector<FpPoly> generators;        // flat, grouped by input polynomial
  std::vector<std::size_t> per_poly_counts;
};

/// Build the chart ideal for one pivot set.
inline ChartIdeal build_chart_ideal(const CompleteIntersectionInstance& X, int k,
                                    const PivotSet& pivots) {
  if (static_cast<int>(pivots.size()) != k + 1)
    throw invalid_input("build_chart_ideal: pivot set size must be k+1");
  const PrimeField& field = X.field();
  const int n = X.ambient_dim();
  ChartIdeal out;
  out.pivots = pivots;
  out.free_positions = chart_free_positions(n, pivots);
  const std::size_t nfree = out.free_positions.size();
  const std::size_t uvars = static_cast<std::size_t>(k) + 1;
  const std::size_t all_vars = uvars + nfree;

  // Universal plane of the chart: row i is the pivot unit vector plus
  // one symbolic chart variable per free slot. Substituting gives
  // g(u . M) as a polynomial in (u, y).
  std::vector<std::size_t> free_index(static_cast<std::size_t>(k + 1) * (n + 1), SIZE_MAX);
  for (std::size_t idx = 0; idx < nfree; ++idx) {
    auto [i, j] = out.free_positions[idx];
    free_index[static_cast<std::size_t>(i) * (n + 1) + j] = idx;
  }
  std::vector<FpPoly> images;
  images.reserve(n + 1);
  for (int j = 0; j <= n; ++j) {
    FpPoly form(field, all_vars);
    for (int i = 0; i <= k; ++i) {
      if (pivots[i] == j) {
        Monomial mono(all_vars);
        mono.set_exponent(i, 1);
        form.add_term(std::move(mono), field.one());
      } else if (const std::size_t idx = free_index[static_cast<std::size_t>(i) * (n + 1) + j];
                 idx != SIZE_MAX) {
        Monomial mono(all_vars);
        mono.set_exponent(i, 1);
        mono.set_exponent(uvars + idx, 1);
        form.add_term(std::move(mono), field.one());
      }
    }
    images.push_back(std::move(form));
  }

  for (const auto& g : X.polys()) {
    const auto d = static_cast<std::uint32_t>(*g.total_degree());
    FpPoly restricted = substitute(g, images);
    // Split each (u, y) term into its u-monomial and its y-part.
    std::map<Monomial, FpPoly, GradedLexGreater> by_u_monomial;
    for (const auto& [mono, coeff] : restricted.terms()) {
      std::vector<std::uint32_t> u_exps(mono.exps().begin(), mono.exps().begin() + uvars);
      std::vector<std::uint32_t> y_exps(mono.exps().begin() + uvars, mono.exps().end());
      auto [it, inserted] = by_u_monomial.try_emplace(Monomial(std::move(u_exps)), field, nfree);
      it->second.add_term(Monomial(std::move(y_exps)), coeff);
    }
    std::size_t count = 0;
    for (const auto& u_mono : monomials_of_degree(uvars, d)) {
      auto it = by_u_monomial.find(u_mono);
      out.generators.push_back(it == by_u_monomial.end() ? FpPoly(field, nfree)
                                                         : it->second);
      ++count;
    }
    out.per_poly_counts.push_back(count);
  }
  return out;
}

/// Chart ideals for every pivot set, in lexicographic pivot order.
inline std::vector<ChartIdeal> fano_ideal_charts(const CompleteIntersectionInstance& X, int k) {
  if (k < 1 || k > X.ambient_dim() - X.codim() - 1)
    throw invalid_input("fano_ideal_charts: need 1 <= k <= n-s-1");
  std::vector<ChartIdeal> charts;
  for (const auto& pivots : all_pivot_sets(X.ambient_dim(), k))
    charts.push_back(build_chart_ideal(X, k, pivots));
  return charts;
}

/// How fano_points decides containment. Both routes are symbolic; they
/// share no code beyond the polynomial ring, which is what makes their
/// agreement a meaningful check.
enum class EnumerationStrategy {
  GlobalStream,  // stream every RREF plane, restrict each polynomial to it
  ChartIdeals,   // precompute chart ideals, evaluate them on chart points
};

namespace detail {

inline std::vector<PlaneRref> scan_chart(const CompleteIntersectionInstance& X, int k,
                                         const PivotSet& pivots) {
  const ChartIdeal ideal = build_chart_ideal(X, k, pivots);
  const PrimeField& field = X.field();
  const std::uint32_t p = field.modulus();
  std::vector<PlaneRref> found;
  std::vector<std::uint32_t> params(ideal.free_positions.size(), 0);
  for (;;) {
    bool vanishes = true;
    for (const auto& gen : ideal.generators) {
      if (gen.evaluate(params) != 0) {
        vanishes = false;
        break;
      }
    }
    if (vanishes) found.push_back(plane_from_chart(field, X.ambient_dim(), pivots, params));
    std::size_t i = params.size();
    while (i > 0 && ++params[i - 1] == p) params[--i] = 0;
    if (i == 0) break;
  }
  return found;
}

}  // namespace detail

/// Exhaustively compute the F_p-points of the k-plane family of X:
/// exactly the planes on which every defining polynomial restricts to
/// the zero polynomial. Deterministic enumeration order; refuses with
/// the candidate count when the Grassmannian exceeds the budget.
inline FanoPointSet fano_points(const CompleteIntersectionInstance& X, int k,
                                EnumerationStrategy strategy = EnumerationStrategy::ChartIdeals,
                                BigInt budget = BigInt(kDefaultPlaneBudget), int threads = 1) {
  const int n = X.ambient_dim();
  if (k < 1 || k > n - X.codim() - 1)
    throw invalid_input("fano_points: need 1 <= k <= n-s-1");
  FanoPointSet result(X.field(), n, k);

  if (strategy == EnumerationStrategy::GlobalStream) {
    PlaneEnumerator stream(X.field(), n, k, std::move(budget));
    while (auto plane = stream.next()) {
      bool contained = true;
      for (const auto& g : X.polys()) {
        if (!restrict_to_plane(g, plane->row_vectors()).is_zero()) {
          contained = false;
          break;
        }
      }
      if (contained) result.planes.push_back(std::move(*plane));
    }
    return result;
  }

  const BigInt total = gaussian_binomial(n + 1, k + 1, X.field().modulus());
  if (total > budget) throw budget_exceeded(total, std::move(budget));
  const auto pivot_sets = all_pivot_sets(n, k);

  if (threads <= 1) {
    for (const auto& pivots : pivot_sets) {
      auto found = detail::scan_chart(X, k, pivots);
      result.planes.insert(result.planes.end(), std::make_move_iterator(found.begin()),
                           std::make_move_iterator(found.end()));
    }
    return result;
  }

  // Charts are independent; scan them from a worker pool and merge in
  // lexicographic pivot order so the output does not depend on the
  // worker count.
  std::vector<std::vector<PlaneRref>> per_chart(pivot_sets.size());
  std::atomic<std::size_t> next_chart{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next_chart.fetch_add(1);
      if (idx >= pivot_sets.size()) return;
      try {
        per_chart[idx] = detail::scan_chart(X, k, pivot_sets[idx]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int pool_size = std::min<int>(threads, static_cast<int>(pivot_sets.size()));
  pool.reserve(pool_size);
  for (int i = 0; i < pool_size; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  for (auto& found : per_chart)
    result.planes.insert(result.planes.end(), std::make_move_iterator(found.begin()),
                         std::make_move_iterator(found.end()));
  return result;
}

/// Symmetric incidence matrix: meets[i][j] is true when planes i and j
/// share a projective point.
inline std::vector<std::vector<bool>> compute_meet_matrix(const std::vector<PlaneRref>& planes) {
  const std::size_t count = planes.size();
  std::vector<std::vector<bool>> meets(count, std::vector<bool>(count, false));
  for (std::size_t i = 0; i < count; ++i) {
    meets[i][i] = true;
    for (std::size_t j = i + 1; j < count; ++j) {
      const bool m = planes_meet(planes[i], planes[j]);
      meets[i][j] = m;
      meets[j][i] = m;
    }
  }
  return meets;
}

/// Connected components of the disjointness graph: vertices are the
/// planes, edges join planes that do NOT meet. On a split quadric
/// surface the two rulings are internally disjoint and meet each other
/// pointwise, so they come out as exactly the two components.
inline std::vector<std::vector<std::size_t>> meet_components(const FanoPointSet& s) {
  if (s.planes.empty()) throw invalid_input("meet_components: empty point set");
  std::vector<std::vector<bool>> local;
  const std::vector<std::vector<bool>>* matrix = nullptr;
  if (s.meets) {
    matrix = &*s.meets;
  } else {
    local = compute_meet_matrix(s.planes);
    matrix = &local;
  }
  const std::size_t count = s.planes.size();
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (!(*matrix)[i][j]) parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < count; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> components;
  components.reserve(groups.size());
  for (auto& [root, members] : groups) components.push_back(std::move(members));
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

/// Seeded dense random homogeneous instance; the same seed always
/// produces the same polynomials. A drawn-all-zero polynomial gets its
/// leading monomial forced to 1 to keep the instance valid.
inline CompleteIntersectionInstance random_instance(int n, const std::vector<int>& degrees,
                                                    const PrimeField& field, std::uint64_t seed) {
  if (degrees.empty() || static_cast<int>(degrees.size()) > n - 2)
    throw invalid_input("random_instance: need 1 <= s <= n-2");
  for (int d : degrees)
    if (d < 1) throw invalid_input("random_instance: degrees must be positive");
  std::mt19937_64 rng(seed);
  const std::uint32_t p = field.modulus();
  std::vector<FpPoly> polys;
  for (int d : degrees) {
    FpPoly g(field, static_cast<std::size_t>(n) + 1);
    const auto monos = monomials_of_degree(static_cast<std::size_t>(n) + 1,
                                           static_cast<std::uint32_t>(d));
    for (const auto& mono : monos)
      g.add_term(mono, static_cast<std::uint32_t>(rng() % p));
    if (g.is_zero()) g.add_term(monos.front(), field.one());
    polys.push_back(std::move(g));
  }
  return CompleteIntersectionInstance(field, n, std::move(polys));
}

/// Rank of the symmetric Gram matrix of a quadratic form; n+1 means the
/// quadric is smooth. Needs an odd characteristic to halve the
/// off-diagonal coefficients.
inline int quadric_rank(const FpPoly& g) {
  const PrimeField& field = g.ring();
  if (field.modulus() == 2)
    throw invalid_input(
        "quadric_rank: refusing characteristic 2 (the symmetric Gram matrix is undefined "
        "because off-diagonal coefficients cannot be halved)");
  if (g.is_zero() || !g.is_homogeneous() || *g.total_degree() != 2)
    throw invalid_input("quadric_rank: input must be a nonzero homogeneous quadratic");
  const int nvars = static_cast<int>(g.nvars());
  const std::uint32_t half = field.inv(2 % field.modulus());
  FpMatrix gram(nvars, nvars);
  for (const auto& [mono, coeff] : g.terms()) {
    int first = -1, second = -1;
    for (int i = 0; i < nvars; ++i) {
      for (std::uint32_t e = 0; e < mono.exponent(i); ++e) {
        if (first < 0)
          first = i;
        else
          second = i;
      }
    }
    if (second < 0) second = first;
    if (first == second) {
      gram.at(first, first) = coeff;
    } else {
      const std::uint32_t halved = field.mul(coeff, half);
      gram.at(first, second) = halved;
      gram.at(second, first) = halved;
    }
  }
  return matrix_rank(field, std::move(gram));
}

/// Rank of the s x (n+1) Jacobian matrix of the instance at a point of
/// X; rank s certifies smoothness there. Rejects points off X.
inline int jacobian_rank_at(const CompleteIntersectionInstance& X,
                            std::vector<std::uint32_t> point) {
  const PrimeField& field = X.field();
  if (point.size() != static_cast<std::size_t>(X.ambient_dim()) + 1)
    throw invalid_input("jacobian_rank_at: point length must be n+1");
  for (auto& c : point) c %= field.modulus();
  bool nonzero = false;
  for (auto c : point) nonzero = nonzero || c != 0;
  if (!nonzero) throw invalid_input("jacobian_rank_at: zero vector is not a projective point");
  for (const auto& g : X.polys())
    if (g.evaluate(point) != 0)
      throw invalid_input("jacobian_rank_at: point does not lie on the instance");
  FpMatrix jac(X.codim(), X.ambient_dim() + 1);
  for (int i = 0; i < X.codim(); ++i)
    for (int j = 0; j <= X.ambient_dim(); ++j)
      jac.at(i, j) = X.polys()[i].partial_derivative(j).evaluate(point);
  return matrix_rank(field, std::move(jac));
}

}  // namespace fano
