// Enumerates the 27 lines on the diagonal cubic surface over F_7 and
// prints their RREF representatives with the incidence summary.
#include <iostream>

#include "fano/verifier.hpp"

int main() {
  const fano::PrimeField f7(7);
  const fano::CompleteIntersectionInstance surface(
      f7, 3, {fano::parse_mpoly("x0^3+x1^3+x2^3+x3^3", 4, f7)});
  auto points = fano::fano_points(surface, 1);
  std::cout << points.planes.size() << " lines:\n";
  for (const auto& line : points.planes) {
    std::cout << "  [";
    for (int i = 0; i < line.rows(); ++i) {
      std::cout << (i ? " | " : "");
      for (int j = 0; j < line.cols(); ++j) std::cout << (j ? " " : "") << line.at(i, j);
    }
    std::cout << "]\n";
  }
  const auto components = fano::meet_components(points);
  std::cout << "disjointness components: " << components.size() << "\n";
  return 0;
}
