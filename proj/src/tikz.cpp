#include "cgw/tikz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cgw/errors.hpp"

namespace cgw {

namespace {

constexpr double kDotRadiusCm = 0.05;

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s(buf);
  if (s == "-0.0000") s = "0.0000";
  return s;
}

}  // namespace

std::string export_tikz(const Configuration& conf, double width_cm) {
  if (!(width_cm > 0) || !std::isfinite(width_cm)) {
    throw InputError("TikZ width must be a positive number of centimeters");
  }
  double x0 = conf.circle(0).cx - conf.circle(0).r;
  double x1 = conf.circle(0).cx + conf.circle(0).r;
  double y0 = conf.circle(0).cy - conf.circle(0).r;
  for (const Circle& c : conf.circles()) {
    x0 = std::min(x0, c.cx - c.r);
    x1 = std::max(x1, c.cx + c.r);
    y0 = std::min(y0, c.cy - c.r);
  }
  const double scale = x1 > x0 ? width_cm / (x1 - x0) : 1.0;

  std::string out = "\\begin{tikzpicture}\n";
  for (Element e = 0; e < conf.ground().size(); ++e) {
    const Circle& c = conf.circle(e);
    const std::string at = "(" + fixed4((c.cx - x0) * scale) + "," + fixed4((c.cy - y0) * scale) + ")";
    if (c.r > 0) {
      out += "  \\draw " + at + " circle [radius=" + fixed4(c.r * scale) + "];\n";
    } else {
      out += "  \\filldraw " + at + " circle [radius=" + fixed4(kDotRadiusCm) + "];\n";
    }
    out += "  \\node at " + at + " {$" + std::string(1, GroundSet::label(e)) + "$};\n";
  }
  out += "\\end{tikzpicture}\n";
  return out;
}

}  // namespace cgw
