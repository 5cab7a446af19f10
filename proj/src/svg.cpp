#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "dropshape/cli.hpp"

namespace dropshape {

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double scale;     // px per cm, isotropic
  double x_center;  // px of the symmetry axis
  double y_base;    // px of the substrate plane z = 0
  double map_x(double rho) const { return x_center + scale * rho; }
  double map_y(double z) const { return y_base - scale * z; }
};

// the drop is axisymmetric; emit the full silhouette by mirroring the
// half-profile across the axis, walking down one side and up the other
std::string silhouette(const ProfileSamples<double>& prof, const Frame& f) {
  const Eigen::Index n = prof.points.rows();
  std::string d;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    d += d.empty() ? "M " : " L ";
    d += px(f.map_x(-prof.points(i, 0))) + " " + px(f.map_y(prof.points(i, 1)));
  }
  for (Eigen::Index i = 1; i < n; ++i)
    d += " L " + px(f.map_x(prof.points(i, 0))) + " " + px(f.map_y(prof.points(i, 1)));
  return d;
}

}  // namespace

std::string render_profile_svg(const ProfileSamples<double>& solid,
                               const std::string& solid_label,
                               const std::optional<ProfileSamples<double>>& dashed,
                               const std::string& dashed_label,
                               const std::string& subtitle) {
  if (solid.points.rows() < 2)
    throw invalid_parameter("render_profile_svg: need at least 2 profile points");

  const double width = 800, height = 600, margin = 60;
  double rho_max = solid.points.col(0).maxCoeff();
  double z_max = solid.points.col(1).maxCoeff();
  if (dashed) {
    rho_max = std::max(rho_max, dashed->points.col(0).maxCoeff());
    z_max = std::max(z_max, dashed->points.col(1).maxCoeff());
  }
  if (!(rho_max > 0) || !(z_max > 0))
    throw invalid_parameter("render_profile_svg: degenerate profile extent");
  rho_max *= 1.05;
  z_max *= 1.05;

  Frame f;
  f.scale = std::min((width - 2 * margin) / (2 * rho_max), (height - 2 * margin) / z_max);
  f.x_center = width / 2;
  f.y_base = height - margin;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
  out += "<rect width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
  out += "<line x1=\"" + px(margin / 2) + "\" y1=\"" + px(f.y_base) + "\" x2=\"" +
         px(width - margin / 2) + "\" y2=\"" + px(f.y_base) +
         "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  if (dashed) {
    out += "<path d=\"" + silhouette(*dashed, f) +
           "\" fill=\"none\" stroke=\"#666666\" stroke-width=\"1.5\" "
           "stroke-dasharray=\"6 4\"/>\n";
  }
  out += "<path d=\"" + silhouette(solid, f) +
         "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";

  double legend_y = 24;
  out += "<line x1=\"20\" y1=\"" + px(legend_y) + "\" x2=\"52\" y2=\"" + px(legend_y) +
         "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  out += "<text x=\"60\" y=\"" + px(legend_y + 5) +
         "\" font-family=\"monospace\" font-size=\"14\" fill=\"#000000\">" +
         solid_label + "</text>\n";
  if (dashed) {
    legend_y += 20;
    out += "<line x1=\"20\" y1=\"" + px(legend_y) + "\" x2=\"52\" y2=\"" + px(legend_y) +
           "\" stroke=\"#666666\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    out += "<text x=\"60\" y=\"" + px(legend_y + 5) +
           "\" font-family=\"monospace\" font-size=\"14\" fill=\"#666666\">" +
           dashed_label + "</text>\n";
  }
  out += "<text x=\"20\" y=\"" + px(height - 16) +
         "\" font-family=\"monospace\" font-size=\"13\" fill=\"#000000\">" +
         subtitle + "</text>\n";
  // scale bar: 0.1 cm reference in the lower right corner
  const double bar = 0.1 * f.scale;
  out += "<line x1=\"" + px(width - margin - bar) + "\" y1=\"" + px(height - 24) +
         "\" x2=\"" + px(width - margin) + "\" y2=\"" + px(height - 24) +
         "\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  out += "<text x=\"" + px(width - margin - bar) + "\" y=\"" + px(height - 32) +
         "\" font-family=\"monospace\" font-size=\"12\" fill=\"#000000\">0.1 cm</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace dropshape
