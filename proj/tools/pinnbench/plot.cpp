#include "plot.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pinn/errors.hpp"

namespace plot {

namespace {

struct Image {
  int w;
  int h;
  std::vector<unsigned char> rgb;

  Image(int w_, int h_) : w(w_), h(h_), rgb(static_cast<std::size_t>(w_) * h_ * 3, 255) {}

  void set(int x, int y, unsigned char r, unsigned char g, unsigned char b) {
    if (x < 0 || x >= w || y < 0 || y >= h) return;
    const std::size_t i = (static_cast<std::size_t>(y) * w + x) * 3;
    rgb[i] = r;
    rgb[i + 1] = g;
    rgb[i + 2] = b;
  }

  void line(int x0, int y0, int x1, int y1, unsigned char r, unsigned char g,
            unsigned char b) {
    const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
      set(x0, y0, r, g, b);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }
};

void write_png(const Image& img, const std::filesystem::path& path) {
  FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (!fp) throw pinn::Error("plot: cannot open " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw pinn::Error("plot: png write failed for " + path.string());
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.w), static_cast<png_uint_32>(img.h),
               8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.h));
  for (int y = 0; y < img.h; ++y) {
    rows[static_cast<std::size_t>(y)] =
        const_cast<png_bytep>(img.rgb.data() + static_cast<std::size_t>(y) * img.w * 3);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

// blue-white-red diverging ramp over [0, 1]
void ramp(double v, unsigned char& r, unsigned char& g, unsigned char& b) {
  v = std::clamp(v, 0.0, 1.0);
  if (v < 0.5) {
    const double s = v * 2.0;
    r = static_cast<unsigned char>(40 + 215 * s);
    g = static_cast<unsigned char>(70 + 185 * s);
    b = 255;
  } else {
    const double s = (v - 0.5) * 2.0;
    r = 255;
    g = static_cast<unsigned char>(255 - 185 * s);
    b = static_cast<unsigned char>(255 - 215 * s);
  }
}

void render_heatmap(Image& img, int x0, int y0, int w, int h,
                    const pinn::fdm::FieldGrid& g, int it, int field, double lo,
                    double hi) {
  const double span = hi > lo ? hi - lo : 1.0;
  for (int py = 0; py < h; ++py) {
    const int iy = py * g.ny() / h;
    for (int px = 0; px < w; ++px) {
      const int ix = px * g.nx() / w;
      unsigned char r, gg, b;
      ramp((g.at(it, field, ix, g.ny() - 1 - iy) - lo) / span, r, gg, b);
      img.set(x0 + px, y0 + py, r, gg, b);
    }
  }
}

void minmax(const pinn::fdm::FieldGrid& g, int it, int field, double& lo, double& hi) {
  lo = 1e300;
  hi = -1e300;
  for (double v : g.slice(it, field)) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
}

}  // namespace

void heatmap_png(const pinn::fdm::FieldGrid& g, int time_index, int field,
                 const std::filesystem::path& path) {
  Image img(620, 620);
  double lo, hi;
  minmax(g, time_index, field, lo, hi);
  render_heatmap(img, 10, 10, 600, 600, g, time_index, field, lo, hi);
  write_png(img, path);
}

void heatmap_pair_png(const pinn::fdm::FieldGrid& pred, const pinn::fdm::FieldGrid& ref,
                      int time_index, int field, const std::filesystem::path& path) {
  Image img(1240, 620);
  double lo1, hi1, lo2, hi2;
  minmax(pred, 0, field, lo1, hi1);
  minmax(ref, time_index, field, lo2, hi2);
  const double lo = std::min(lo1, lo2), hi = std::max(hi1, hi2);
  render_heatmap(img, 10, 10, 600, 600, pred, 0, field, lo, hi);
  render_heatmap(img, 630, 10, 600, 600, ref, time_index, field, lo, hi);
  write_png(img, path);
}

void slices_png(const pinn::fdm::FieldGrid& pred, const pinn::fdm::FieldGrid& ref,
                int field, std::span<const int> time_indices,
                const std::filesystem::path& path) {
  const int W = 900, H = 560, ml = 60, mr = 20, mt = 20, mb = 40;
  Image img(W, H);

  double lo = 1e300, hi = -1e300;
  for (int it : time_indices) {
    double a, b;
    minmax(pred, it, field, a, b);
    lo = std::min(lo, a);
    hi = std::max(hi, b);
    minmax(ref, it, field, a, b);
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  if (!(hi > lo)) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const int pw = W - ml - mr, ph = H - mt - mb;
  img.line(ml, mt, ml, mt + ph, 0, 0, 0);
  img.line(ml, mt + ph, ml + pw, mt + ph, 0, 0, 0);
  for (int tick = 0; tick <= 10; ++tick) {
    img.line(ml + tick * pw / 10, mt + ph, ml + tick * pw / 10, mt + ph + 5, 0, 0, 0);
    img.line(ml - 5, mt + tick * ph / 10, ml, mt + tick * ph / 10, 0, 0, 0);
  }

  const unsigned char colors[3][3] = {{202, 51, 51}, {34, 120, 190}, {40, 150, 60}};
  auto plot_curve = [&](const pinn::fdm::FieldGrid& g, int it, const unsigned char* c,
                        bool thick) {
    int px_prev = 0, py_prev = 0;
    for (int ix = 0; ix < g.nx(); ++ix) {
      const double v = g.at(it, field, ix);
      const int px = ml + static_cast<int>((static_cast<double>(ix) / (g.nx() - 1)) * pw);
      const int py = mt + static_cast<int>((1.0 - (v - lo) / (hi - lo)) * ph);
      if (ix > 0) {
        img.line(px_prev, py_prev, px, py, c[0], c[1], c[2]);
        if (thick) img.line(px_prev, py_prev + 1, px, py + 1, c[0], c[1], c[2]);
      }
      px_prev = px;
      py_prev = py;
    }
  };
  for (std::size_t s = 0; s < time_indices.size() && s < 3; ++s) {
    const unsigned char grey[3] = {150, 150, 150};
    plot_curve(ref, time_indices[s], grey, true);
  }
  for (std::size_t s = 0; s < time_indices.size() && s < 3; ++s) {
    plot_curve(pred, time_indices[s], colors[s], false);
  }
  write_png(img, path);
}

}  // namespace plot
