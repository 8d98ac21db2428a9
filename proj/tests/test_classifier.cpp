#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fano/classifier.hpp"

using fano::ample_threshold_m;
using fano::BigInt;
using fano::canonical_degree;
using fano::classify;
using fano::ComponentCount;
using fano::curve_free_bound_holds;
using fano::expected_dimension;
using fano::FanoSetup;
using fano::FanoStatus;
using fano::normalize;
using fano::pad_degrees;
using fano::rationally_connected_criterion;
using fano::ScopeNote;

namespace {

/// Every valid setup with n <= n_max, s <= s_max, 2 <= d_i <= d_max,
/// 1 <= k <= k_max.
std::vector<FanoSetup> grid(int n_max, int s_max, int d_max, int k_max) {
  std::vector<FanoSetup> setups;
  std::vector<int> degrees;
  auto rec = [&](auto&& self, int remaining, int lo) -> void {
    if (!degrees.empty()) {
      const int s = static_cast<int>(degrees.size());
      for (int n = s + 2; n <= n_max; ++n)
        for (int k = 1; k <= std::min(k_max, n - s - 1); ++k)
          setups.push_back(FanoSetup{n, degrees, k});
    }
    if (remaining == 0) return;
    for (int d = lo; d <= d_max; ++d) {
      degrees.push_back(d);
      self(self, remaining - 1, d);
      degrees.pop_back();
    }
  };
  rec(rec, s_max, 2);
  return setups;
}

}  // namespace

TEST_CASE("normalization strips hyperplane factors") {
  const auto norm = normalize(FanoSetup{5, {1, 1, 3}, 1});
  CHECK(norm == FanoSetup{3, {3}, 1});
  CHECK(normalize(FanoSetup{4, {2, 3}, 1}) == FanoSetup{4, {2, 3}, 1});
  CHECK_THROWS_AS(normalize(FanoSetup{3, {1, 1, 1}, 1}), fano::invalid_input);
  CHECK_THROWS_AS(normalize(FanoSetup{4, {1, 1, 2}, 1}), fano::invalid_input);  // s > n-2
  CHECK_THROWS_AS(normalize(FanoSetup{4, {2}, 3}), fano::invalid_input);        // k > n-s-1
  CHECK_THROWS_AS(normalize(FanoSetup{4, {2}, 0}), fano::invalid_input);
  CHECK_THROWS_AS(normalize(FanoSetup{4, {}, 1}), fano::invalid_input);
  CHECK_THROWS_AS(normalize(FanoSetup{4, {0, 2}, 1}), fano::invalid_input);
}

TEST_CASE("padding embeds into a larger ambient space") {
  const FanoSetup base{3, {3}, 1};
  CHECK(pad_degrees(base, 5) == FanoSetup{5, {1, 1, 3}, 1});
  CHECK(pad_degrees(base, 3) == base);
  CHECK_THROWS_AS(pad_degrees(base, 2), fano::invalid_input);
  for (const auto& setup : grid(8, 2, 4, 3))
    for (int M = setup.n; M <= setup.n + 5; ++M)
      CHECK(normalize(pad_degrees(setup, M)) == normalize(setup));
}

TEST_CASE("expected dimension values") {
  CHECK(expected_dimension(FanoSetup{3, {3}, 1}) == 0);
  CHECK(expected_dimension(FanoSetup{4, {3}, 1}) == 2);  // cubic threefold
  CHECK(expected_dimension(FanoSetup{5, {2, 2}, 1}) == 2);
  CHECK(expected_dimension(FanoSetup{3, {4}, 1}) == -1);
}

TEST_CASE("canonical degree values") {
  CHECK(canonical_degree(FanoSetup{4, {3}, 1}) == 1);
  CHECK(canonical_degree(FanoSetup{5, {2, 2}, 1}) == 0);
  CHECK(canonical_degree(FanoSetup{3, {2}, 1}) == -1);
}

TEST_CASE("ample threshold values") {
  CHECK(ample_threshold_m({5}, 1) == 13);
  CHECK(ample_threshold_m({3}, 1) == 4);
  CHECK(ample_threshold_m({2}, 1) == 1);
}

TEST_CASE("curve-freeness bound") {
  CHECK(curve_free_bound_holds(FanoSetup{7, {5}, 1}));   // equality: 21 = 21
  CHECK_FALSE(curve_free_bound_holds(FanoSetup{8, {5}, 1}));
  CHECK(curve_free_bound_holds(FanoSetup{3, {3}, 1}));   // 9 <= 10
  CHECK_THROWS_AS(curve_free_bound_holds(FanoSetup{5, {2}, 1}), fano::invalid_input);
  CHECK_THROWS_AS(curve_free_bound_holds(FanoSetup{6, {1, 2}, 1}), fano::invalid_input);
}

TEST_CASE("rational connectedness criterion") {
  CHECK(rationally_connected_criterion(FanoSetup{4, {2}, 1}));
  CHECK_FALSE(rationally_connected_criterion(FanoSetup{4, {3}, 1}));
  CHECK_FALSE(rationally_connected_criterion(FanoSetup{5, {2, 2}, 1}));
}

TEST_CASE("classification of the quadric surface") {
  const auto cls = classify(FanoSetup{3, {2}, 1});
  CHECK(cls.status == FanoStatus::NonemptyPositiveDim);
  CHECK(cls.t == 1);
  CHECK(cls.component_count == ComponentCount::Two);
  CHECK(cls.canonical_degree == BigInt(-1));
  CHECK(cls.rationally_connected);
  CHECK_FALSE(cls.general_type);
  CHECK_FALSE(cls.curve_free_certificate);
  CHECK(cls.scope_note == ScopeNote::AllSmoothX);
  REQUIRE_FALSE(cls.notes.empty());
  CHECK(cls.notes.front().find("hyperplane section") != std::string::npos);
}

TEST_CASE("classification of empty cases") {
  const auto quadric = classify(FanoSetup{4, {2}, 2});
  CHECK(quadric.status == FanoStatus::EmptyForAllSmooth);
  CHECK(quadric.scope_note == ScopeNote::AllSmoothX);
  CHECK_FALSE(quadric.canonical_degree.has_value());

  const auto quartic = classify(FanoSetup{3, {4}, 1});
  CHECK(quartic.status == FanoStatus::GenericallyEmpty);
  CHECK(quartic.t == -1);
  CHECK(quartic.scope_note == ScopeNote::VeryGeneralX);
  CHECK_FALSE(quartic.canonical_degree.has_value());
  CHECK(quartic.component_count == ComponentCount::NotDetermined);
}

TEST_CASE("classification of a certified general-type case") {
  const auto cls = classify(FanoSetup{7, {5}, 1});
  CHECK(cls.status == FanoStatus::NonemptyPositiveDim);
  CHECK(cls.t == 6);
  CHECK(cls.component_count == ComponentCount::One);
  CHECK(cls.m == 13);
  CHECK(cls.general_type);
  CHECK(cls.curve_free_certificate);
  CHECK(cls.canonical_degree == BigInt(7));
}

TEST_CASE("classify normalizes and echoes both setups") {
  const auto cls = classify(FanoSetup{5, {3, 1, 1}, 1});
  CHECK(cls.raw == FanoSetup{5, {1, 1, 3}, 1});  // degrees echoed sorted
  CHECK(cls.normalized == FanoSetup{3, {3}, 1});
  CHECK(cls.t == 0);
  CHECK(cls.status == FanoStatus::NonemptyFinite);
  CHECK(cls.component_count == ComponentCount::NotDetermined);
}

TEST_CASE("bound equivalence with the ample threshold") {
  for (const auto& setup : grid(12, 2, 4, 3)) {
    if (setup.degree_product() == 2) continue;
    const BigInt t = expected_dimension(setup);
    const BigInt m = ample_threshold_m(setup.degrees, setup.k);
    CAPTURE(setup.n, setup.k);
    CHECK(curve_free_bound_holds(setup) == (m - setup.n >= t));
  }
}

TEST_CASE("certificate forces general type in positive dimension") {
  for (const auto& setup : grid(12, 2, 4, 3)) {
    if (setup.degree_product() == 2) continue;
    const auto cls = classify(setup);
    if (cls.curve_free_certificate && cls.t >= 1) {
      CHECK(*cls.canonical_degree >= cls.t + 1);
      CHECK(cls.general_type);
    }
  }
}

TEST_CASE("classification is invariant under padding") {
  for (const auto& setup : grid(9, 2, 4, 2)) {
    const auto base = classify(setup);
    for (int M = setup.n + 1; M <= setup.n + 5; ++M) {
      const auto padded = classify(pad_degrees(setup, M));
      CHECK(padded.verdict_equals(base));
      CHECK_FALSE(padded.raw == base.raw);
    }
  }
}

TEST_CASE("quadric branch matches the generic dimension formula") {
  for (int n = 3; n <= 12; ++n) {
    for (int k = 1; k <= n - 2; ++k) {
      const FanoSetup setup{n, {2}, k};
      const int ns = n - 1;
      const BigInt doubled = BigInt(k + 1) * (2 * ns - 3 * k);
      CHECK(doubled % 2 == 0);  // (k+1)(n-s-3k/2) is an integer
      CHECK(doubled / 2 == expected_dimension(setup));
      const auto cls = classify(setup);
      if (k <= ns / 2) {
        CHECK(cls.t == doubled / 2);
        CHECK(cls.canonical_degree == BigInt(-ns + k));
        CHECK(*cls.canonical_degree <= -1);
        CHECK(cls.rationally_connected);
        CHECK(cls.component_count ==
              (ns % 2 == 0 && k == ns / 2 ? ComponentCount::Two : ComponentCount::One));
      } else {
        CHECK(cls.status == FanoStatus::EmptyForAllSmooth);
      }
      // Padded presentation of the same quadric geometry.
      const auto padded = classify(FanoSetup{n + 2, {1, 1, 2}, k});
      CHECK(padded.verdict_equals(cls));
    }
  }
}

TEST_CASE("hypersurface specialization of the bound") {
  for (int d = 3; d <= 10; ++d)
    for (int n = 3; n <= 30; ++n)
      CHECK(curve_free_bound_holds(FanoSetup{n, {d}, 1}) == (6 * n <= (d + 1) * (d + 2)));
}

TEST_CASE("status encodes the sign of t away from quadrics") {
  for (const auto& setup : grid(10, 2, 4, 3)) {
    if (setup.degree_product() == 2) continue;
    const auto cls = classify(setup);
    if (cls.t < 0) CHECK(cls.status == FanoStatus::GenericallyEmpty);
    if (cls.t == 0) CHECK(cls.status == FanoStatus::NonemptyFinite);
    if (cls.t > 0) {
      CHECK(cls.status == FanoStatus::NonemptyPositiveDim);
      CHECK(cls.component_count == ComponentCount::One);
    }
    CHECK((cls.component_count == ComponentCount::Two) == false);
  }
}
