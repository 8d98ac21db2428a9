// Classifies a handful of classical plane families and prints the
// verdicts side by side.
#include <iostream>

#include "fano/classifier.hpp"

int main() {
  using fano::FanoSetup;
  const FanoSetup setups[] = {
      {3, {2}, 1},     // lines on a quadric surface: two rulings
      {3, {3}, 1},     // lines on a cubic surface: the classical 27
      {4, {3}, 1},     // lines on a cubic threefold: the Fano surface
      {5, {2, 2}, 1},  // lines on an intersection of two quadrics
      {3, {4}, 1},     // lines on a quartic surface: generically none
      {7, {5}, 1},     // certified curve-free general-type case
      {4, {2}, 2},     // 2-planes on a quadric threefold: empty
  };
  for (const auto& setup : setups) {
    const auto cls = fano::classify(setup);
    std::cout << "n=" << setup.n << " d=(";
    for (std::size_t i = 0; i < setup.degrees.size(); ++i)
      std::cout << (i ? "," : "") << setup.degrees[i];
    std::cout << ") k=" << setup.k << "  ->  " << fano::to_string(cls.status)
              << ", t=" << cls.t << ", components=" << fano::to_string(cls.component_count);
    if (cls.canonical_degree) std::cout << ", K=O(" << *cls.canonical_degree << ")";
    if (cls.curve_free_certificate) std::cout << ", curve-free certified";
    std::cout << "\n";
  }
  return 0;
}
