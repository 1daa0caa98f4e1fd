#include "chemowave/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "chemowave/errors.hpp"

namespace chemowave {

namespace {
std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
}  // namespace

void write_snapshot(std::ostream& os, const SimState& state, const Field* c) {
  const GridSpec& g = state.grid();
  os << "# t=" << fmt17(state.t) << '\n';
  for (std::size_t i = 0; i < g.n_nodes(); ++i) {
    os << fmt17(g.x(i)) << ' ' << fmt17(state.u[i]) << ' ' << fmt17(state.v[i]);
    if (c) os << ' ' << fmt17((*c)[i]);
    os << '\n';
  }
}

void write_snapshot(const std::filesystem::path& path, const SimState& state, const Field* c) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_snapshot(os, state, c);
  if (!os) throw IoError("write failed for " + path.string());
}

SimState read_snapshot(const std::filesystem::path& path, const GridSpec& grid) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  std::string line;
  double t = 0.0;
  std::vector<double> u, v;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("t=");
      if (pos != std::string::npos) t = std::stod(line.substr(pos + 2));
      continue;
    }
    std::istringstream ls(line);
    double x = 0, uu = 0, vv = 0;
    if (!(ls >> x >> uu >> vv)) throw IoError(path.string() + ": malformed row " + std::to_string(row));
    if (row >= grid.n_nodes() || std::abs(x - grid.x(row)) > 1e-9 * grid.dx() + 1e-12 * std::abs(x)) {
      throw IoError(path.string() + ": node " + std::to_string(row) + " does not match the grid");
    }
    u.push_back(uu);
    v.push_back(vv);
    ++row;
  }
  if (row != grid.n_nodes()) {
    throw IoError(path.string() + ": expected " + std::to_string(grid.n_nodes()) + " rows, got " +
                  std::to_string(row));
  }
  return SimState(Field(grid, std::move(u)), Field(grid, std::move(v)), t);
}

}  // namespace chemowave
