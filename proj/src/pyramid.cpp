#include "ddq/pyramid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ddq {
namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Linear interpolation in the form that preserves constants bitwise.
float lerp(float a, float b, float t) { return a + t * (b - a); }

}  // namespace

FeaturePyramid FeaturePyramid::zeros(int image_w, int image_h,
                                     std::span<const int> strides,
                                     int channels) {
  if (image_w < 1 || image_h < 1 || channels < 1 || strides.empty()) {
    throw ShapeError("pyramid: zeros() needs a positive image size, stride list and channel count");
  }
  FeaturePyramid p;
  p.levels.reserve(strides.size());
  for (int s : strides) {
    PyramidLevel lvl;
    lvl.stride = s;
    lvl.height = ceil_div(image_h, s);
    lvl.width = ceil_div(image_w, s);
    lvl.channels = channels;
    lvl.data.assign(static_cast<std::size_t>(lvl.height) * lvl.width * channels,
                    0.0f);
    p.levels.push_back(std::move(lvl));
  }
  validate(p);
  return p;
}

void validate(const FeaturePyramid& p) {
  if (p.levels.empty()) throw ShapeError("pyramid: no levels");
  const int c = p.levels.front().channels;
  // Image sizes compatible with ceil(H_img / stride) == H_l form the interval
  // ((H_l - 1)*stride, H_l*stride]; the intersection across levels must be
  // non-empty in both dimensions.
  double h_lo = 0, h_hi = 1e18, w_lo = 0, w_hi = 1e18;
  int prev_stride = 0;
  for (const auto& lvl : p.levels) {
    if (lvl.stride < 1 || lvl.height < 1 || lvl.width < 1 || lvl.channels < 1) {
      throw ShapeError("pyramid: level with non-positive stride, size or channels");
    }
    if (lvl.channels != c) {
      throw ShapeError("pyramid: levels disagree on channel count");
    }
    if (lvl.stride <= prev_stride) {
      throw ShapeError("pyramid: strides must strictly increase");
    }
    prev_stride = lvl.stride;
    if (lvl.data.size() !=
        static_cast<std::size_t>(lvl.height) * lvl.width * lvl.channels) {
      throw ShapeError("pyramid: level data size does not match H*W*C");
    }
    h_lo = std::max(h_lo, static_cast<double>(lvl.height - 1) * lvl.stride);
    h_hi = std::min(h_hi, static_cast<double>(lvl.height) * lvl.stride);
    w_lo = std::max(w_lo, static_cast<double>(lvl.width - 1) * lvl.stride);
    w_hi = std::min(w_hi, static_cast<double>(lvl.width) * lvl.stride);
  }
  if (h_lo >= h_hi || w_lo >= w_hi) {
    throw ShapeError("pyramid: level sizes inconsistent with any common image size");
  }
}

std::vector<float> bilinear_resize(std::span<const float> src, int src_h,
                                   int src_w, int k, int target_h,
                                   int target_w) {
  if (k < 1 || src_h < 1 || src_w < 1) {
    throw ShapeError("pyramid: bilinear_resize source must be at least 1x1x1");
  }
  if (target_h < 1 || target_w < 1) {
    throw ShapeError("pyramid: bilinear_resize target size is zero");
  }
  if (src.size() != static_cast<std::size_t>(src_h) * src_w * k) {
    throw ShapeError("pyramid: bilinear_resize source size mismatch");
  }
  std::vector<float> out(static_cast<std::size_t>(target_h) * target_w * k);
  const double sy = static_cast<double>(src_h) / target_h;
  const double sx = static_cast<double>(src_w) / target_w;
  for (int ty = 0; ty < target_h; ++ty) {
    double fy = (ty + 0.5) * sy - 0.5;
    fy = std::min(std::max(fy, 0.0), static_cast<double>(src_h - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, src_h - 1);
    const float wy = static_cast<float>(fy - y0);
    for (int tx = 0; tx < target_w; ++tx) {
      double fx = (tx + 0.5) * sx - 0.5;
      fx = std::min(std::max(fx, 0.0), static_cast<double>(src_w - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, src_w - 1);
      const float wx = static_cast<float>(fx - x0);
      const std::size_t o = (static_cast<std::size_t>(ty) * target_w + tx) * k;
      const std::size_t s00 = (static_cast<std::size_t>(y0) * src_w + x0) * k;
      const std::size_t s01 = (static_cast<std::size_t>(y0) * src_w + x1) * k;
      const std::size_t s10 = (static_cast<std::size_t>(y1) * src_w + x0) * k;
      const std::size_t s11 = (static_cast<std::size_t>(y1) * src_w + x1) * k;
      for (int ch = 0; ch < k; ++ch) {
        const float top = lerp(src[s00 + ch], src[s01 + ch], wx);
        const float bot = lerp(src[s10 + ch], src[s11 + ch], wx);
        out[o + ch] = lerp(top, bot, wy);
      }
    }
  }
  return out;
}

namespace {

// Extract channels [ch0, ch0+k) of a level as a contiguous H x W x k slice.
std::vector<float> channel_slice(const PyramidLevel& lvl, int ch0, int k) {
  std::vector<float> out(static_cast<std::size_t>(lvl.height) * lvl.width * k);
  std::size_t o = 0;
  for (int r = 0; r < lvl.height; ++r) {
    for (int c = 0; c < lvl.width; ++c) {
      for (int ch = 0; ch < k; ++ch) out[o++] = lvl.at(r, c, ch0 + ch);
    }
  }
  return out;
}

// Write an H x W x k slice into channels [ch0, ch0+k) of a level.
void write_slice(PyramidLevel& lvl, std::span<const float> slice, int ch0,
                 int k) {
  std::size_t i = 0;
  for (int r = 0; r < lvl.height; ++r) {
    for (int c = 0; c < lvl.width; ++c) {
      for (int ch = 0; ch < k; ++ch) lvl.at(r, c, ch0 + ch) = slice[i++];
    }
  }
}

// Resize channels [src_ch0, src_ch0+k) of src to dst's grid and store them in
// dst channels [dst_ch0, dst_ch0+k).
void exchange(const PyramidLevel& src, int src_ch0, PyramidLevel& dst,
              int dst_ch0, int k) {
  const auto slice = channel_slice(src, src_ch0, k);
  const auto resized = bilinear_resize(slice, src.height, src.width, k,
                                       dst.height, dst.width);
  write_slice(dst, resized, dst_ch0, k);
}

}  // namespace

FeaturePyramid pyramid_shuffle(const FeaturePyramid& p, const ShuffleSpec& spec) {
  validate(p);
  const int s = spec.exchanged_channels;
  const int c = p.channels();
  if (s < 0 || 2 * s > c) {
    throw ShapeError("pyramid: shuffle spec needs 0 <= 2*S <= C, got S=" +
                     std::to_string(s) + " C=" + std::to_string(c));
  }
  FeaturePyramid out = p;
  if (s == 0 || p.levels.size() < 2) return out;
  const int n = static_cast<int>(p.levels.size());
  for (int i = 0; i < n; ++i) {
    if (i > 0) {
      exchange(p.levels[i - 1], 0, out.levels[i], 0, s);
    } else {
      // Single-neighbor edge: the first level exchanges block [0,S) with the
      // level above it.
      exchange(p.levels[1], 0, out.levels[0], 0, s);
    }
    if (i > 0 && i + 1 < n) {
      exchange(p.levels[i + 1], s, out.levels[i], s, s);
    }
    // Last level: no upper neighbor, channels [S,2S) stay its own.
  }
  return out;
}

std::vector<LevelShape> level_shapes(int image_w, int image_h,
                                     std::span<const int> strides) {
  if (image_w < 1 || image_h < 1) {
    throw ShapeError("pyramid: image size must be positive");
  }
  std::vector<LevelShape> shapes;
  shapes.reserve(strides.size());
  for (int s : strides) {
    if (s < 1) throw ShapeError("pyramid: stride must be positive");
    shapes.push_back({s, ceil_div(image_h, s), ceil_div(image_w, s)});
  }
  return shapes;
}

AnchorQueryInit dense_query_init(std::span<const LevelShape> shapes) {
  AnchorQueryInit init;
  std::size_t total = 0;
  for (const auto& sh : shapes) {
    total += static_cast<std::size_t>(sh.height) * sh.width;
  }
  init.sites.reserve(total);
  for (std::size_t l = 0; l < shapes.size(); ++l) {
    const auto& sh = shapes[l];
    for (int r = 0; r < sh.height; ++r) {
      for (int c = 0; c < sh.width; ++c) {
        init.sites.push_back({(c + 0.5) * sh.stride, (r + 0.5) * sh.stride,
                              static_cast<int>(l)});
      }
    }
  }
  return init;
}

AnchorQueryInit dense_query_init(const FeaturePyramid& p) {
  validate(p);
  std::vector<LevelShape> shapes;
  shapes.reserve(p.levels.size());
  for (const auto& lvl : p.levels) {
    shapes.push_back({lvl.stride, lvl.height, lvl.width});
  }
  return dense_query_init(shapes);
}

}  // namespace ddq
