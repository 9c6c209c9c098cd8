#include "gla/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

namespace gla {

namespace {

void require_stream(const std::ofstream& out, const std::filesystem::path& p) {
  if (!out) throw std::runtime_error("cannot open " + p.string() + " for writing");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// classic blue-cyan-green-yellow-red ramp on [0,1]
void ramp_rgb(double v, int& r, int& g, int& b) {
  v = std::clamp(v, 0.0, 1.0);
  if (v < 0.25) {
    r = 0;
    g = static_cast<int>(255 * (v / 0.25));
    b = 255;
  } else if (v < 0.5) {
    r = 0;
    g = 255;
    b = static_cast<int>(255 * (1.0 - (v - 0.25) / 0.25));
  } else if (v < 0.75) {
    r = static_cast<int>(255 * ((v - 0.5) / 0.25));
    g = 255;
    b = 0;
  } else {
    r = 255;
    g = static_cast<int>(255 * (1.0 - (v - 0.75) / 0.25));
    b = 0;
  }
}

void hue_rgb(double h, int& r, int& g, int& b) {  // h in [0,1)
  const double x = h * 6.0;
  const int sector = static_cast<int>(x) % 6;
  const int frac = static_cast<int>(255 * (x - std::floor(x)));
  switch (sector) {
    case 0: r = 255; g = frac; b = 0; break;
    case 1: r = 255 - frac; g = 255; b = 0; break;
    case 2: r = 0; g = 255; b = frac; break;
    case 3: r = 0; g = 255 - frac; b = 255; break;
    case 4: r = frac; g = 0; b = 255; break;
    default: r = 255; g = 0; b = 255 - frac; break;
  }
}

template <typename ColorFn>
void write_cells_svg(int nr, int nt, ColorFn color,
                     const std::filesystem::path& path, int max_cells) {
  const int stride_r = std::max(1, nr / max_cells);
  const int stride_t = std::max(1, nt / max_cells);
  const int cols = (nr + stride_r - 1) / stride_r;
  const int rows = (nt + stride_t - 1) / stride_t;
  const int cell = 3;

  std::ofstream out(path);
  require_stream(out, path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * cell
      << "\" height=\"" << rows * cell << "\">\n";
  for (int ci = 0; ci < cols; ++ci) {
    for (int cj = 0; cj < rows; ++cj) {
      int r, g, b;
      color(std::min(ci * stride_r, nr - 1), std::min(cj * stride_t, nt - 1),
            r, g, b);
      out << "<rect x=\"" << ci * cell << "\" y=\"" << (rows - 1 - cj) * cell
          << "\" width=\"" << cell << "\" height=\"" << cell
          << "\" fill=\"rgb(" << r << ',' << g << ',' << b << ")\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace

void write_csv(const ScalarField& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  require_stream(out, path);
  out << "s,theta,value\n";
  for (int i = 0; i < f.n_radial(); ++i)
    for (int j = 0; j < f.n_angular(); ++j)
      out << fmt(f.s(i)) << ',' << fmt(f.theta(j)) << ','
          << fmt(f.values(j, i)) << '\n';
}

void write_csv(const ComplexField& u, const std::filesystem::path& path) {
  std::ofstream out(path);
  require_stream(out, path);
  out << "s,theta,re,im\n";
  for (int i = 0; i < u.n_radial(); ++i)
    for (int j = 0; j < u.n_angular(); ++j)
      out << fmt(u.s(i)) << ',' << fmt(u.theta(j)) << ','
          << fmt(u.values(j, i).real()) << ',' << fmt(u.values(j, i).imag())
          << '\n';
}

void write_modulus_svg(const ComplexField& u, const std::filesystem::path& path,
                       int max_cells) {
  const ArrayXXd mod = u.values.abs();
  const double hi = std::max(1.0, mod.maxCoeff());
  write_cells_svg(
      u.n_radial(), u.n_angular(),
      [&](int i, int j, int& r, int& g, int& b) {
        ramp_rgb(mod(j, i) / hi, r, g, b);
      },
      path, max_cells);
}

void write_phase_svg(const ComplexField& u, const std::filesystem::path& path,
                     int max_cells) {
  write_cells_svg(
      u.n_radial(), u.n_angular(),
      [&](int i, int j, int& r, int& g, int& b) {
        const double h = (std::arg(u.values(j, i)) + pi) / (2.0 * pi);
        hue_rgb(std::clamp(h, 0.0, 0.999999), r, g, b);
      },
      path, max_cells);
}

void write_scalar_svg(const ScalarField& f, const std::filesystem::path& path,
                      int max_cells) {
  const double lo = f.values.minCoeff(), hi = f.values.maxCoeff();
  const double span = (hi > lo) ? hi - lo : 1.0;
  write_cells_svg(
      f.n_radial(), f.n_angular(),
      [&](int i, int j, int& r, int& g, int& b) {
        ramp_rgb((f.values(j, i) - lo) / span, r, g, b);
      },
      path, max_cells);
}

void write_trace_svg(const std::vector<double>& values,
                     const std::filesystem::path& path,
                     const std::string& label) {
  const int w = 640, h = 360, margin = 40;
  std::ofstream out(path);
  require_stream(out, path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  if (values.size() >= 2) {
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    const double span = (hi > lo) ? hi - lo : 1.0;
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (size_t k = 0; k < values.size(); ++k) {
      const double x =
          margin + (w - 2 * margin) * double(k) / double(values.size() - 1);
      const double y = h - margin - (h - 2 * margin) * (values[k] - lo) / span;
      out << fmt(x) << ',' << fmt(y) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << margin << "\" y=\"20\" font-size=\"13\">" << label
        << " [" << fmt(lo) << ", " << fmt(hi) << "]</text>\n";
  }
  out << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\""
      << w - margin << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
  out << "</svg>\n";
}

std::string vortices_json(const VortexSet& vs) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : vs.entries) {
    arr.push_back({{"x", v.x},
                   {"y", v.y},
                   {"winding", v.winding},
                   {"boundary_distance", v.boundary_distance}});
  }
  return arr.dump();
}

}  // namespace gla
