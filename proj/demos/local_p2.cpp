// Full 3d pipeline on f = 4 + z1 + z2 + 1/(z1 z2): regular subdivision of
// the Newton polytope, the toric Calabi-Yau fan with its certificates, the
// amoeba with labeled complement chambers, and the mirror bundle of a
// tropical section.

#include <cstdio>

#include "syz/toric_fan.hpp"
#include "syz/transform.hpp"

using namespace syz;

int main() {
  auto f = parse_laurent("4 + z1 + z2 + z1^-1*z2^-1", 2);
  auto P = newton_polytope(f);

  // lift the interior point below the hull corners to triangulate
  Lifting heights;
  for (const auto& a : P.lattice_points) heights[a] = 0;
  heights[{0, 0}] = Rational(-1);
  auto sub = regular_subdivision(P, heights);
  std::printf("subdivision: %zu cells over %zu lattice points\n", sub.cells.size(),
              P.lattice_points.size());

  auto fan = fan_from_subdivision(sub);
  auto eta = calabi_yau_certificate(fan);
  std::printf("fan: %zu rays, %zu maximal cones\n", fan.rays.size(), fan.max_cones.size());
  std::printf("  calabi_yau: %s, smooth: %s, convex support: %s\n", eta ? "yes" : "no",
              smoothness_check(fan) ? "yes" : "no", support_convexity(fan) ? "yes" : "no");

  auto curve = dual_tropical_curve(sub);
  std::printf("dual curve: %zu vertices, %zu bounded edges, %zu legs\n", curve.vertices.size(),
              curve.bounded_edges.size(), curve.legs.size());

  auto box = default_box(curve);
  auto raster = amoeba_raster(f, box, 96);
  auto labeling = chamber_labeling(raster, f);
  std::printf("amoeba on [%g,%g]x[%g,%g]: %d complement chambers\n", box.x0, box.x1, box.y0,
              box.y1, labeling.count);
  for (int c = 0; c < labeling.count; ++c)
    std::printf("  chamber %s%s\n", exp_to_string(labeling.labels[c]).c_str(),
                labeling.unbounded[c] ? "" : " (bounded)");

  // the zero section transforms to the structure sheaf; a nonzero gradient
  // twists the transitions
  auto zero = syz_transform_3d(section_from_gradient({Rational(0), Rational(0)}, curve), curve);
  auto twisted = syz_transform_3d(section_from_gradient({Rational(1), Rational(0)}, curve), curve);
  std::printf("zero section -> structure sheaf: %s\n", zero.structure_sheaf() ? "yes" : "no");
  std::printf("gradient (1,0) section -> structure sheaf: %s (%zu charts, %zu transitions)\n",
              twisted.structure_sheaf() ? "yes" : "no", twisted.bundle.charts.size(),
              twisted.bundle.transitions.size());
  return 0;
}
