#include "pscheb/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pscheb/errors.hpp"

namespace pscheb::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  return {buf, res.ptr};
}

double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '+')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InvalidArgument("cannot parse number '" + std::string(s) + "'");
  return v;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string spectrum_csv(const SpectrumResult& s) {
  std::string out = "index,re,im,resolved\n";
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    out += std::to_string(i + 1) + ',' + format_double(s.eigenvalues(i).real()) + ',' +
           format_double(s.eigenvalues(i).imag()) + ',' +
           (i < static_cast<Eigen::Index>(s.resolved.size()) && s.resolved[i] ? "1" : "0") +
           '\n';
  }
  return out;
}

std::vector<SpectrumRow> parse_spectrum_csv(std::string_view text) {
  std::vector<SpectrumRow> rows;
  std::size_t line_no = 0;
  bool header = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line != "index,re,im,resolved")
        throw InvalidArgument("spectrum csv: unexpected header '" + std::string(line) + "'");
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 4)
      throw InvalidArgument("spectrum csv: line " + std::to_string(line_no) +
                            " does not have 4 fields");
    SpectrumRow r;
    r.index = static_cast<int>(parse_double(f[0]));
    r.re = parse_double(f[1]);
    r.im = parse_double(f[2]);
    r.resolved = parse_double(f[3]) != 0;
    rows.push_back(r);
  }
  return rows;
}

std::string field_csv(const PseudospectrumField& f) {
  std::string out = "re,im,sigma_min\n";
  for (std::size_t a = 0; a < f.re_axis.size(); ++a)
    for (std::size_t b = 0; b < f.im_axis.size(); ++b)
      out += format_double(f.re_axis[a]) + ',' + format_double(f.im_axis[b]) + ',' +
             format_double(f.values(a, b)) + '\n';
  return out;
}

std::string contours_csv(std::span<const ContourLine> lines) {
  std::string out = "level,line,vertex,re,im,closed\n";
  for (std::size_t l = 0; l < lines.size(); ++l)
    for (std::size_t v = 0; v < lines[l].vertices.size(); ++v)
      out += format_double(lines[l].level) + ',' + std::to_string(l) + ',' +
             std::to_string(v) + ',' + format_double(lines[l].vertices[v].real()) + ',' +
             format_double(lines[l].vertices[v].imag()) + ',' +
             (lines[l].closed ? "1" : "0") + '\n';
  return out;
}

std::string trajectory_csv(const Trajectory& t) {
  std::string out = "t,re_z,im_z,re_w,im_w\n";
  for (const auto& s : t.samples)
    out += format_double(s.t) + ',' + format_double(s.z.real()) + ',' +
           format_double(s.z.imag()) + ',' + format_double(s.w.real()) + ',' +
           format_double(s.w.imag()) + '\n';
  return out;
}

std::string evolution_csv(const EvolutionTrace& t) {
  std::string out = "t,norm\n";
  for (std::size_t i = 0; i < t.times.size(); ++i)
    out += format_double(t.times[i]) + ',' + format_double(t.norms[i]) + '\n';
  return out;
}

std::string matrix_csv(const CMatrix& m) {
  std::string out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (j) out += ',';
    out += "re_" + std::to_string(j) + ",im_" + std::to_string(j);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j).real()) + ',' + format_double(m(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

std::string matrix_csv(const RMatrix& m) {
  std::string out;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (j) out += ',';
    out += "c_" + std::to_string(j);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

}  // namespace pscheb::io
