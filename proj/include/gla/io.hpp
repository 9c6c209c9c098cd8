#ifndef GLA_IO_HPP
#define GLA_IO_HPP

#include "gla/field.hpp"
#include "gla/topology.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace gla {

/// CSV export, row-major over (s, theta), header `s,theta,value`.
void write_csv(const ScalarField& f, const std::filesystem::path& path);

/// CSV export, row-major over (s, theta), header `s,theta,re,im`.
void write_csv(const ComplexField& u, const std::filesystem::path& path);

/// Heatmap of |u| over the (s, theta) rectangle as a self-contained SVG
/// (one rect per downsampled cell).
void write_modulus_svg(const ComplexField& u, const std::filesystem::path& path,
                       int max_cells = 256);

/// Phase portrait: hue encodes arg(u).
void write_phase_svg(const ComplexField& u, const std::filesystem::path& path,
                     int max_cells = 256);

/// Scalar heatmap with a linear color ramp between the field extremes.
void write_scalar_svg(const ScalarField& f, const std::filesystem::path& path,
                      int max_cells = 256);

/// Polyline plot of a trace (e.g. energy against recorded step).
void write_trace_svg(const std::vector<double>& values,
                     const std::filesystem::path& path,
                     const std::string& label);

/// JSON array text for a vortex set: [{"x":..,"y":..,"winding":..,
/// "boundary_distance":..}, ...].
std::string vortices_json(const VortexSet& vs);

}  // namespace gla

#endif
