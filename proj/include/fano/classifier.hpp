#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fano/errors.hpp"
#include "fano/integers.hpp"

namespace fano {

/// Discrete input for the classification of the family of k-planes on a
/// complete intersection of multi-degree (d_1, ..., d_s) in P^n.
/// Degrees are kept sorted ascending, so the multiset has one canonical
/// representation.
struct FanoSetup {
  int n = 0;
  std::vector<int> degrees;
  int k = 0;

  [[nodiscard]] int codim() const noexcept { return static_cast<int>(degrees.size()); }

  [[nodiscard]] BigInt degree_product() const {
    BigInt prod(1);
    for (int d : degrees) prod *= d;
    return prod;
  }

  friend bool operator==(const FanoSetup&, const FanoSetup&) = default;
};

enum class FanoStatus {
  GenericallyEmpty,      // empty for very general members
  EmptyForAllSmooth,     // empty for every smooth member (quadric range)
  NonemptyFinite,        // expected dimension 0
  NonemptyPositiveDim,   // expected dimension >= 1
};

enum class ComponentCount { One, Two, NotDetermined };

/// Whether the verdict is a very-general statement (it may fail on
/// special members) or holds for every smooth member.
enum class ScopeNote { VeryGeneralX, AllSmoothX };

[[nodiscard]] inline std::string to_string(FanoStatus s) {
  switch (s) {
    case FanoStatus::GenericallyEmpty: return "GenericallyEmpty";
    case FanoStatus::EmptyForAllSmooth: return "EmptyForAllSmooth";
    case FanoStatus::NonemptyFinite: return "NonemptyFinite";
    case FanoStatus::NonemptyPositiveDim: return "NonemptyPositiveDim";
  }
  return "?";
}

[[nodiscard]] inline std::string to_string(ComponentCount c) {
  switch (c) {
    case ComponentCount::One: return "One";
    case ComponentCount::Two: return "Two";
    case ComponentCount::NotDetermined: return "NotDetermined";
  }
  return "?";
}

[[nodiscard]] inline std::string to_string(ScopeNote s) {
  return s == ScopeNote::VeryGeneralX ? "VeryGeneralX" : "AllSmoothX";
}

/// The full generic verdict for one setup.
struct FanoClassification {
  FanoSetup raw;
  FanoSetup normalized;
  BigInt t;                                  // expected dimension
  BigInt degree_product;
  FanoStatus status = FanoStatus::GenericallyEmpty;
  ComponentCount component_count = ComponentCount::NotDetermined;
  std::optional<BigInt> canonical_degree;    // defined when nonempty
  BigInt m;                                  // ample-canonical threshold
  bool rationally_connected = false;
  bool general_type = false;
  bool curve_free_certificate = false;
  ScopeNote scope_note = ScopeNote::VeryGeneralX;
  std::vector<std::string> notes;

  /// Equality of everything except the raw-parameter echo; two padded
  /// presentations of the same geometry compare equal here.
  [[nodiscard]] bool verdict_equals(const FanoClassification& o) const {
    return normalized == o.normalized && t == o.t && degree_product == o.degree_product &&
           status == o.status && component_count == o.component_count &&
           canonical_degree == o.canonical_degree && m == o.m &&
           rationally_connected == o.rationally_connected && general_type == o.general_type &&
           curve_free_certificate == o.curve_free_certificate && scope_note == o.scope_note;
  }
};

/// Strip every degree-1 factor (a hyperplane section just lowers the
/// ambient dimension) and validate the result: afterwards all degrees
/// are >= 2, 1 <= s <= n-2 and 1 <= k <= n-s-1.
inline FanoSetup normalize(const FanoSetup& setup) {
  if (setup.degrees.empty()) throw invalid_input("setup: needs at least one degree");
  for (int d : setup.degrees)
    if (d < 1) throw invalid_input("setup: degrees must be positive");
  FanoSetup out;
  out.k = setup.k;
  int ones = 0;
  for (int d : setup.degrees) {
    if (d == 1)
      ++ones;
    else
      out.degrees.push_back(d);
  }
  if (out.degrees.empty())
    throw invalid_input("setup: X is a linear space (all degrees 1); nothing to classify");
  std::sort(out.degrees.begin(), out.degrees.end());
  out.n = setup.n - ones;
  const int s = out.codim();
  if (s > out.n - 2)
    throw invalid_input("setup: codimension " + std::to_string(s) + " exceeds n-2 = " +
                        std::to_string(out.n - 2) + " after normalization");
  if (out.k < 1 || out.k > out.n - s - 1)
    throw invalid_input("setup: k must satisfy 1 <= k <= n-s-1 (here n-s-1 = " +
                        std::to_string(out.n - s - 1) + ")");
  return out;
}

/// Inverse of normalize: re-embed into P^M by prepending M-n degree-1
/// factors.
inline FanoSetup pad_degrees(const FanoSetup& setup, int M) {
  if (M < setup.n) throw invalid_input("pad_degrees: M must be at least n");
  FanoSetup out;
  out.n = M;
  out.k = setup.k;
  out.degrees.assign(static_cast<std::size_t>(M - setup.n), 1);
  out.degrees.insert(out.degrees.end(), setup.degrees.begin(), setup.degrees.end());
  std::sort(out.degrees.begin(), out.degrees.end());
  return out;
}

namespace detail {

inline BigInt sum_binomial(const std::vector<int>& degrees, int top_offset, int bottom) {
  BigInt sum(0);
  for (int d : degrees) sum += binomial(d + top_offset, bottom);
  return sum;
}

}  // namespace detail

/// Expected dimension t = (k+1)(n-k) - sum_i C(d_i + k, k). Invariant
/// under degree-1 padding, so any valid presentation may be passed.
inline BigInt expected_dimension(const FanoSetup& setup) {
  normalize(setup);  // validation only
  return BigInt(setup.k + 1) * (setup.n - setup.k) -
         detail::sum_binomial(setup.degrees, setup.k, setup.k);
}

/// Degree c of the canonical bundle O(c) in the Pluecker polarization:
/// c = -n - 1 + sum_i C(d_i + k, k + 1). Negative means Fano, positive
/// means ample canonical.
inline BigInt canonical_degree(const FanoSetup& setup) {
  normalize(setup);
  return BigInt(-setup.n - 1) + detail::sum_binomial(setup.degrees, setup.k, setup.k + 1);
}

/// Threshold m with: the canonical bundle is ample iff n <= m.
/// m = sum_i C(d_i + k, k + 1) - 2; equivalently canonical_degree =
/// m - n + 1.
inline BigInt ample_threshold_m(const std::vector<int>& degrees, int k) {
  return detail::sum_binomial(degrees, k, k + 1) - 2;
}

/// The curve-freeness bound for non-quadric complete intersections:
///   n <= k - 1 + (1/(k+2)) sum_i C(d_i + k + 1, k + 1),
/// evaluated exactly as (k+2)(n-k+1) <= sum_i C(d_i + k + 1, k + 1).
/// When it holds, the k-plane family of a very general member carries
/// neither rational nor elliptic curves.
inline bool curve_free_bound_holds(const FanoSetup& setup) {
  const FanoSetup norm = normalize(setup);
  if (norm.degree_product() == 2)
    throw invalid_input("curve_free_bound_holds: quadrics are excluded (degree product 2)");
  return BigInt(setup.k + 2) * (setup.n - setup.k + 1) <=
         detail::sum_binomial(setup.degrees, setup.k + 1, setup.k + 1);
}

/// Fano criterion: sum_i C(d_i + k, k + 1) <= n, i.e. canonical degree
/// <= -1; a smooth Fano variety is rationally connected.
inline bool rationally_connected_criterion(const FanoSetup& setup) {
  normalize(setup);
  return detail::sum_binomial(setup.degrees, setup.k, setup.k + 1) <= setup.n;
}

/// Complete generic classification. The quadric case (degree product 2)
/// is an all-smooth-members statement; everything else is a
/// very-general-member statement.
inline FanoClassification classify(const FanoSetup& setup) {
  FanoClassification out;
  out.raw = setup;
  std::sort(out.raw.degrees.begin(), out.raw.degrees.end());
  out.normalized = normalize(setup);
  const FanoSetup& norm = out.normalized;
  const int k = norm.k;
  const int ns = norm.n - norm.codim();  // dim X, invariant under padding
  out.degree_product = norm.degree_product();
  out.t = expected_dimension(norm);
  out.m = ample_threshold_m(norm.degrees, k);

  if (out.degree_product == 2) {
    // X is (a linear section of) a smooth quadric hypersurface.
    out.scope_note = ScopeNote::AllSmoothX;
    if (k > ns / 2) {
      out.status = FanoStatus::EmptyForAllSmooth;
      out.component_count = ComponentCount::NotDetermined;
    } else {
      // Here t = (k+1)(n-s-3k/2) >= (k+1)(n-s)/4 > 0.
      out.status = FanoStatus::NonemptyPositiveDim;
      out.canonical_degree = BigInt(-ns + k);
      out.rationally_connected = true;
      if (ns % 2 == 0 && k == ns / 2) {
        out.component_count = ComponentCount::Two;
        out.notes.push_back(
            "two disjoint irreducible components; each is isomorphic to the (k-1)-plane "
            "family of a general hyperplane section");
      } else {
        out.component_count = ComponentCount::One;
      }
    }
    return out;
  }

  out.scope_note = ScopeNote::VeryGeneralX;
  if (out.t < 0) {
    out.status = FanoStatus::GenericallyEmpty;
    out.component_count = ComponentCount::NotDetermined;
    return out;
  }
  out.status = out.t == 0 ? FanoStatus::NonemptyFinite : FanoStatus::NonemptyPositiveDim;
  out.component_count =
      out.t == 0 ? ComponentCount::NotDetermined : ComponentCount::One;
  if (out.t == 0)
    out.notes.push_back("finite count; its cardinality is not predicted by the generic theory");
  out.canonical_degree = canonical_degree(norm);
  out.rationally_connected = rationally_connected_criterion(norm);
  out.general_type = BigInt(norm.n) <= out.m;
  out.curve_free_certificate = curve_free_bound_holds(norm);
  return out;
}

}  // namespace fano
