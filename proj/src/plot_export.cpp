#include "ctflow/plot_export.hpp"

#include "ctflow/errors.hpp"

#include <cstdio>
#include <ostream>
#include <unordered_map>

namespace ctflow {

std::vector<SurfacePoint> surface_points(const ScalarField& f)
{
  const auto& g = f.grid();
  std::vector<SurfacePoint> pts;
  pts.reserve(f.size());
  for (int k = 0; k < g.ny(); ++k)
    for (int j = 0; j < g.nx(); ++j)
      pts.push_back({g.x_center(j), g.y_center(k), f(j, k)});
  return pts;
}

namespace {

struct Segment
{
  long edge[2];
  std::array<double, 2> point[2];
};

} // namespace

std::vector<Polyline> contour_lines(const ScalarField& f, double level)
{
  const auto& g = f.grid();
  const int nx = g.nx(), ny = g.ny();
  std::vector<Segment> segs;

  // Lattice edge ids: 2 * point index for the edge to the right, +1 for the
  // edge upwards.
  auto hid = [nx](int j, int k) { return 2L * (long(k) * nx + j); };
  auto vid = [nx](int j, int k) { return 2L * (long(k) * nx + j) + 1; };

  for (int k = 0; k + 1 < ny; ++k)
    for (int j = 0; j + 1 < nx; ++j) {
      // Corners counter-clockwise from bottom-left.
      const int cj[4] = {j, j + 1, j + 1, j};
      const int ck[4] = {k, k, k + 1, k + 1};
      double v[4];
      bool above[4];
      for (int c = 0; c < 4; ++c) {
        v[c] = f(cj[c], ck[c]);
        above[c] = v[c] >= level;
      }
      // Edge e joins corners e and (e+1)%4: bottom, right, top, left.
      const long ids[4] = {hid(j, k), vid(j + 1, k), hid(j, k + 1), vid(j, k)};
      std::array<double, 2> cross[4];
      bool has[4];
      int count = 0;
      for (int e = 0; e < 4; ++e) {
        const int a = e, b = (e + 1) % 4;
        has[e] = above[a] != above[b];
        if (!has[e])
          continue;
        ++count;
        const double t = (level - v[a]) / (v[b] - v[a]);
        cross[e] = {g.x_center(cj[a]) + t * (g.x_center(cj[b]) - g.x_center(cj[a])),
                    g.y_center(ck[a]) + t * (g.y_center(ck[b]) - g.y_center(ck[a]))};
      }
      if (count == 2) {
        int e0 = -1, e1 = -1;
        for (int e = 0; e < 4; ++e)
          if (has[e])
            (e0 < 0 ? e0 : e1) = e;
        segs.push_back({{ids[e0], ids[e1]}, {cross[e0], cross[e1]}});
      } else if (count == 4) {
        const bool centre = 0.25 * (v[0] + v[1] + v[2] + v[3]) >= level;
        for (int c = 0; c < 4; ++c) {
          if (above[c] == centre)
            continue;
          // Cut off corner c: its two adjacent edges are c-1 and c.
          const int ea = (c + 3) % 4, eb = c;
          segs.push_back({{ids[ea], ids[eb]}, {cross[ea], cross[eb]}});
        }
      }
    }

  std::unordered_multimap<long, std::size_t> by_edge;
  for (std::size_t s = 0; s < segs.size(); ++s)
    for (int e = 0; e < 2; ++e)
      by_edge.emplace(segs[s].edge[e], s);
  std::vector<bool> used(segs.size(), false);

  auto other_segment = [&](long edge, std::size_t self) -> long {
    const auto [b, e] = by_edge.equal_range(edge);
    for (auto it = b; it != e; ++it)
      if (it->second != self && !used[it->second])
        return long(it->second);
    return -1;
  };
  auto degree = [&](long edge) {
    const auto [b, e] = by_edge.equal_range(edge);
    return std::distance(b, e);
  };

  std::vector<Polyline> lines;
  auto trace = [&](std::size_t start, int start_end) {
    Polyline pl{level, false, {}};
    std::size_t s = start;
    int from = start_end;
    const long first_edge = segs[s].edge[from];
    pl.points.push_back(segs[s].point[from]);
    while (true) {
      used[s] = true;
      const int to = 1 - from;
      pl.points.push_back(segs[s].point[to]);
      const long edge = segs[s].edge[to];
      if (edge == first_edge && pl.points.size() > 2) {
        pl.closed = true;
        break;
      }
      const long nxt = other_segment(edge, s);
      if (nxt < 0)
        break;
      s = std::size_t(nxt);
      from = segs[s].edge[0] == edge ? 0 : 1;
    }
    lines.push_back(std::move(pl));
  };

  // Open chains start at an edge touched by a single segment.
  for (std::size_t s = 0; s < segs.size(); ++s)
    for (int e = 0; e < 2 && !used[s]; ++e)
      if (degree(segs[s].edge[e]) == 1)
        trace(s, e);
  for (std::size_t s = 0; s < segs.size(); ++s)
    if (!used[s])
      trace(s, 0);
  return lines;
}

void write_surface(std::ostream& out, const ScalarField& f)
{
  out << "# ctflow surface v1\n"
      << "points " << f.size() << "\n";
  char buf[96];
  for (const auto& p : surface_points(f)) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x, p.y, p.value);
    out << buf;
  }
}

void write_contours(std::ostream& out, const ScalarField& f, const std::vector<double>& levels)
{
  if (levels.empty())
    throw ConfigError("contour export needs at least one level");
  out << "# ctflow contours v1\n";
  char buf[64];
  for (double level : levels) {
    const auto lines = contour_lines(f, level);
    std::snprintf(buf, sizeof buf, "%.17g", level);
    out << "level " << buf << " polylines " << lines.size() << "\n";
    for (const auto& pl : lines) {
      out << "polyline " << pl.points.size() << (pl.closed ? " closed" : " open") << "\n";
      for (const auto& p : pl.points) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p[0], p[1]);
        out << buf;
      }
    }
  }
}

} // namespace ctflow
