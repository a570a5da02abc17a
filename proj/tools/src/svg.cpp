#include "svg.hpp"

#include <sstream>
#include <vector>

#include "meandric/meander.hpp"

namespace meandric::tools {
namespace {

constexpr int kStep = 40;
constexpr int kMargin = 30;

// Golden-angle hue walk: neighbouring loop indices get distant hues.
std::string loop_colour(int index) {
  const int hue = (index * 137 + 210) % 360;
  return "hsl(" + std::to_string(hue) + ",70%,42%)";
}

}  // namespace

std::string render_svg(const NcPartition& alpha, const NcPartition& beta) {
  const auto upper = fatten(alpha).partner;
  const auto lower = fatten(beta).partner;
  const auto loops = trace_loops(alpha, beta);
  const int points = static_cast<int>(upper.size());

  std::vector<int> loop_of(points, 0);
  for (int k = 0; k < static_cast<int>(loops.size()); ++k) {
    for (int label : loops[k]) loop_of[label] = k;
  }

  const int max_radius = (points - 1) * kStep / 2;
  const int width = 2 * kMargin + (points - 1) * kStep;
  const int height = 2 * kMargin + 2 * max_radius;
  const int base = kMargin + max_radius;
  auto x_of = [](int label) { return kMargin + label * kStep; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  svg << "<title>alpha=" << format_cycles(alpha)
      << " beta=" << format_cycles(beta) << " n=" << alpha.size()
      << " loops=" << loops.size() << "</title>\n";
  svg << "<line x1=\"" << kMargin / 2 << "\" y1=\"" << base << "\" x2=\""
      << width - kMargin / 2 << "\" y2=\"" << base
      << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";

  auto arcs = [&](const std::vector<int>& partner, int sweep) {
    for (int x = 0; x < points; ++x) {
      const int y = partner[x];
      if (y < x) continue;
      const int radius = (y - x) * kStep / 2;
      svg << "<path d=\"M " << x_of(x) << ' ' << base << " A " << radius << ' '
          << radius << " 0 0 " << sweep << ' ' << x_of(y) << ' ' << base
          << "\" fill=\"none\" stroke=\"" << loop_colour(loop_of[x])
          << "\" stroke-width=\"2\"/>\n";
    }
  };
  arcs(upper, 1);
  arcs(lower, 0);

  for (int x = 0; x < points; ++x) {
    svg << "<circle cx=\"" << x_of(x) << "\" cy=\"" << base
        << "\" r=\"3\" fill=\"#222\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace meandric::tools
