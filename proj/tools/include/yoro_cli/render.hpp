#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "yoro/tilegrid.hpp"

namespace yoro::cli {

struct RenderOptions {
  std::size_t scale = 8;  // pixels per tile side
  // Cells painted with marker instead of their tile color.
  std::vector<std::pair<std::size_t, std::size_t>> overlay;
  Rgb marker{255, 105, 180};
};

// Row-major RGB8 pixels, (width * scale) x (height * scale).
std::vector<std::uint8_t> rasterize(const TileGrid& grid, const TileCatalog& catalog, const RenderOptions& options);

// Throws yoro::Error on I/O failure.
void write_png(const std::string& path, const TileGrid& grid, const TileCatalog& catalog,
               const RenderOptions& options);

// Text dump; overlay cells are drawn as '*'.
std::string render_ascii(const TileGrid& grid, const TileCatalog& catalog, const RenderOptions& options);

}  // namespace yoro::cli
