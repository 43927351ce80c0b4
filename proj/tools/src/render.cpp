#include "yoro_cli/render.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

#include "yoro/error.hpp"

namespace yoro::cli {

std::vector<std::uint8_t> rasterize(const TileGrid& grid, const TileCatalog& catalog, const RenderOptions& options) {
  if (options.scale == 0) throw InvalidArgument("render: scale must be positive");
  const std::size_t s = options.scale;
  const std::size_t pw = grid.width * s, ph = grid.height * s;
  std::vector<bool> marked(grid.size(), false);
  for (auto [x, y] : options.overlay)
    if (x < grid.width && y < grid.height) marked[grid.index(x, y)] = true;

  std::vector<std::uint8_t> px(pw * ph * 3);
  for (std::size_t y = 0; y < grid.height; ++y) {
    for (std::size_t x = 0; x < grid.width; ++x) {
      const Rgb c = marked[grid.index(x, y)] ? options.marker : catalog.color(grid.at(x, y));
      for (std::size_t dy = 0; dy < s; ++dy) {
        std::uint8_t* row = px.data() + ((y * s + dy) * pw + x * s) * 3;
        for (std::size_t dx = 0; dx < s; ++dx) {
          row[dx * 3 + 0] = c.r;
          row[dx * 3 + 1] = c.g;
          row[dx * 3 + 2] = c.b;
        }
      }
    }
  }
  return px;
}

void write_png(const std::string& path, const TileGrid& grid, const TileCatalog& catalog,
               const RenderOptions& options) {
  const auto px = rasterize(grid, catalog, options);
  const auto pw = static_cast<png_uint_32>(grid.width * options.scale);
  const auto ph = static_cast<png_uint_32>(grid.height * options.scale);

  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp) throw Error("render: cannot open " + path + " for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("render: png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("render: png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("render: libpng failed writing " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, pw, ph, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (png_uint_32 y = 0; y < ph; ++y)
    png_write_row(png, const_cast<png_bytep>(px.data() + static_cast<std::size_t>(y) * pw * 3));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

std::string render_ascii(const TileGrid& grid, const TileCatalog& catalog, const RenderOptions& options) {
  std::string out = format_grid(grid, catalog);
  for (auto [x, y] : options.overlay)
    if (x < grid.width && y < grid.height) out[y * (grid.width + 1) + x] = '*';
  return out;
}

}  // namespace yoro::cli
