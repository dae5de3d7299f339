// 2d pipeline on f = (z - 2)(z - 4): base walls at the log root moduli,
// wall values of an admissible path, and the degree of the transformed
// bundle matching the path's intersection number with the cut.

#include <cstdio>

#include "syz/transform.hpp"

using namespace syz;

int main() {
  auto X = conic_fibration(parse_laurent("8 - 6 z1 + z1^2", 1));
  auto base = base_2d(X);
  std::printf("walls:");
  for (double s : base.walls) std::printf(" %.6f", s);
  std::printf("\nchambers:");
  for (const auto& c : base.chambers) std::printf(" %s", c.name.c_str());
  auto m = monodromy_2d();
  std::printf("\nwall monodromy: [[%lld,%lld],[%lld,%lld]]\n", (long long)m.m[0][0],
              (long long)m.m[0][1], (long long)m.m[1][0], (long long)m.m[1][1]);

  // a path crossing the cut [2, 4] once, with asymptotic vertical ends
  AdmissiblePath2D g{{{3.0, -1.0}, {3.0, 1.0}, {3.5, -0.5}, {3.2, 1.2}},
                     2.0,
                     4.0,
                     {0.0, -1.0},
                     {0.0, 1.0}};
  std::vector<double> roots{2.0, 4.0};
  auto xi = wall_values_from_path(g, roots);
  std::printf("wall values: (%lld, %lld)\n", (long long)xi[0], (long long)xi[1]);

  auto line = syz_transform_2d(xi, base);
  std::printf("transition %s -> %s: %s\n", line.bundle.charts[0].c_str(),
              line.bundle.charts[1].c_str(),
              unit_to_string(line.bundle.transitions.at({0, 1})).c_str());
  std::printf("degree %lld == intersection number %d: %s\n", (long long)*line.degree,
              intersection_number_2d(g),
              *line.degree == intersection_number_2d(g) ? "yes" : "no");
  return 0;
}
