#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "chemowave/grid.hpp"
#include "chemowave/solver.hpp"

namespace chemowave {

/// Writes "# t=<time>" then one "x u v [c]" row per node, 17 significant digits.
void write_snapshot(std::ostream& os, const SimState& state, const Field* c = nullptr);
void write_snapshot(const std::filesystem::path& path, const SimState& state,
                    const Field* c = nullptr);

/// Reads a snapshot file. The node coordinates must match `grid` to 1e-9 dx.
/// Throws IoError on unreadable or malformed input.
SimState read_snapshot(const std::filesystem::path& path, const GridSpec& grid);

}  // namespace chemowave
