#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pscheb/dynamics.hpp"
#include "pscheb/pseudospectrum.hpp"
#include "pscheb/spectral.hpp"

namespace pscheb::io {

/// Shortest decimal that round-trips, in scientific notation.
std::string format_double(double v);

/// Parses a double written by format_double (or any plain decimal).
double parse_double(std::string_view s);

std::string spectrum_csv(const SpectrumResult& s);

struct SpectrumRow {
  int index = 0;
  double re = 0, im = 0;
  bool resolved = true;
};
std::vector<SpectrumRow> parse_spectrum_csv(std::string_view text);

std::string field_csv(const PseudospectrumField& f);
std::string contours_csv(std::span<const ContourLine> lines);
std::string trajectory_csv(const Trajectory& t);
std::string evolution_csv(const EvolutionTrace& t);

/// Row-major; complex matrices as interleaved re_j, im_j columns.
std::string matrix_csv(const CMatrix& m);
std::string matrix_csv(const RMatrix& m);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t h);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace pscheb::io
