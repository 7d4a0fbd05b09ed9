#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

#include "pscheb/errors.hpp"
#include "pscheb/pseudospectrum.hpp"

namespace pscheb {

namespace {

struct Segment {
  std::int64_t edge[2];
  cplx point[2];
};

std::vector<ContourLine> trace_level(const PseudospectrumField& f,
                                     const RMatrix& logs, double level) {
  const double target = std::log10(level);
  const auto nr = static_cast<std::int64_t>(f.re_axis.size());
  const auto ni = static_cast<std::int64_t>(f.im_axis.size());

  // Horizontal edge (a,b)-(a+1,b) has key 2(a ni + b), vertical (a,b)-(a,b+1)
  // has key 2(a ni + b) + 1.
  auto hkey = [ni](std::int64_t a, std::int64_t b) { return 2 * (a * ni + b); };
  auto vkey = [ni](std::int64_t a, std::int64_t b) { return 2 * (a * ni + b) + 1; };
  auto val = [&](std::int64_t a, std::int64_t b) { return logs(a, b) - target; };
  auto pos = [&](std::int64_t a, std::int64_t b) {
    return cplx{f.re_axis[a], f.im_axis[b]};
  };
  auto cross = [&](std::int64_t a0, std::int64_t b0, std::int64_t a1,
                   std::int64_t b1) {
    const double f0 = val(a0, b0), f1 = val(a1, b1);
    const double t = f0 / (f0 - f1);
    return pos(a0, b0) + t * (pos(a1, b1) - pos(a0, b0));
  };

  std::vector<Segment> segs;
  for (std::int64_t a = 0; a + 1 < nr; ++a) {
    for (std::int64_t b = 0; b + 1 < ni; ++b) {
      // corners: 0 = (a,b), 1 = (a+1,b), 2 = (a+1,b+1), 3 = (a,b+1)
      const std::array<double, 4> v{val(a, b), val(a + 1, b), val(a + 1, b + 1),
                                    val(a, b + 1)};
      std::array<bool, 4> up{};
      for (int k = 0; k < 4; ++k) up[k] = v[k] >= 0;
      // edges: 0 bottom (0-1), 1 right (1-2), 2 top (3-2), 3 left (0-3)
      const std::array<std::int64_t, 4> key{hkey(a, b), vkey(a + 1, b),
                                            hkey(a, b + 1), vkey(a, b)};
      auto point = [&](int e) {
        switch (e) {
          case 0: return cross(a, b, a + 1, b);
          case 1: return cross(a + 1, b, a + 1, b + 1);
          case 2: return cross(a, b + 1, a + 1, b + 1);
          default: return cross(a, b, a, b + 1);
        }
      };
      const std::array<bool, 4> cut{up[0] != up[1], up[1] != up[2],
                                    up[3] != up[2], up[0] != up[3]};
      const int ncut = cut[0] + cut[1] + cut[2] + cut[3];
      auto add = [&](int e0, int e1) {
        segs.push_back({{key[e0], key[e1]}, {point(e0), point(e1)}});
      };
      if (ncut == 2) {
        int e[2], m = 0;
        for (int k = 0; k < 4; ++k)
          if (cut[k]) e[m++] = k;
        add(e[0], e[1]);
      } else if (ncut == 4) {
        const bool center_up = (v[0] + v[1] + v[2] + v[3]) / 4 >= 0;
        if (center_up == up[0]) {
          add(0, 1);  // isolate corner 1
          add(2, 3);  // isolate corner 3
        } else {
          add(0, 3);  // isolate corner 0
          add(1, 2);  // isolate corner 2
        }
      }
    }
  }

  std::unordered_map<std::int64_t, std::array<std::int64_t, 2>> at_edge;
  at_edge.reserve(segs.size() * 2);
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(segs.size()); ++s) {
    for (int end = 0; end < 2; ++end) {
      auto [it, fresh] = at_edge.try_emplace(segs[s].edge[end],
                                             std::array<std::int64_t, 2>{-1, -1});
      auto& slot = it->second;
      (slot[0] < 0 ? slot[0] : slot[1]) = s;
    }
  }
  auto other = [&](std::int64_t edge, std::int64_t s) {
    const auto& slot = at_edge.at(edge);
    return slot[0] == s ? slot[1] : slot[0];
  };

  std::vector<bool> used(segs.size(), false);
  std::vector<ContourLine> lines;
  auto walk = [&](std::int64_t s, int entry_end) {
    ContourLine line;
    line.level = level;
    line.vertices.push_back(segs[s].point[entry_end]);
    const std::int64_t start_edge = segs[s].edge[entry_end];
    std::int64_t cur = s;
    int exit_end = 1 - entry_end;
    while (true) {
      used[cur] = true;
      line.vertices.push_back(segs[cur].point[exit_end]);
      const std::int64_t edge = segs[cur].edge[exit_end];
      if (edge == start_edge) {
        line.closed = true;
        line.vertices.back() = line.vertices.front();
        break;
      }
      const std::int64_t next = other(edge, cur);
      if (next < 0 || used[next]) break;
      exit_end = segs[next].edge[0] == edge ? 1 : 0;
      cur = next;
    }
    lines.push_back(std::move(line));
  };

  // Open chains start at edges touched by a single segment.
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(segs.size()); ++s) {
    if (used[s]) continue;
    for (int end = 0; end < 2; ++end) {
      if (!used[s] && other(segs[s].edge[end], s) < 0) walk(s, end);
    }
  }
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(segs.size()); ++s)
    if (!used[s]) walk(s, 0);
  return lines;
}

}  // namespace

std::vector<ContourLine> contours(const PseudospectrumField& f,
                                  std::span<const double> levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0)) throw InvalidArgument("contour levels must be positive");
    if (i > 0 && !(levels[i] < levels[i - 1]))
      throw InvalidArgument("contour levels must be strictly descending");
  }
  std::vector<ContourLine> out;
  if (f.values.size() == 0) return out;
  const RMatrix logs =
      f.values.array().max(std::numeric_limits<double>::min()).log10().matrix();
  const double lo = f.values.minCoeff(), hi = f.values.maxCoeff();
  for (double eps : levels) {
    if (!(eps > lo && eps < hi)) continue;
    auto lines = trace_level(f, logs, eps);
    std::move(lines.begin(), lines.end(), std::back_inserter(out));
  }
  return out;
}

}  // namespace pscheb
