#pragma once

#include <span>
#include <vector>

#include "ddq/error.hpp"

namespace ddq {

// One feature-pyramid level: an H x W grid of C-channel vectors with a pixel
// stride. Data is row-major, channel-last: index (r, c, ch) = (r*W + c)*C + ch.
struct PyramidLevel {
  int stride = 0;
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<float> data;

  float at(int r, int c, int ch) const {
    return data[(static_cast<std::size_t>(r) * width + c) * channels + ch];
  }
  float& at(int r, int c, int ch) {
    return data[(static_cast<std::size_t>(r) * width + c) * channels + ch];
  }
};

// Multi-level pyramid. All levels share the channel count, strides strictly
// increase, and level sizes must be consistent with a common input image
// (H_l = ceil(H_img / stride_l)); validate() enforces this.
struct FeaturePyramid {
  std::vector<PyramidLevel> levels;

  int channels() const { return levels.empty() ? 0 : levels.front().channels; }

  // Zero-filled pyramid for an image of the given size.
  static FeaturePyramid zeros(int image_w, int image_h,
                              std::span<const int> strides, int channels);
};

// Throws ShapeError if the pyramid breaks any structural invariant.
void validate(const FeaturePyramid& p);

// Number of channels exchanged per neighbor direction. 2*S <= C so a level
// keeps at least C-2S of its own channels.
struct ShuffleSpec {
  int exchanged_channels = 64;  // the paper's S
};

// Bilinear resize of an H x W x k slice with half-pixel sample centers
// (align-corners-false). Constant inputs map to the same constant exactly.
// Throws ShapeError on an empty target.
std::vector<float> bilinear_resize(std::span<const float> src, int src_h,
                                   int src_w, int k, int target_h,
                                   int target_w);

// Cross-level channel exchange. All reads come from the pre-shuffle pyramid.
// For a level with a lower neighbor, channels [0,S) are replaced by the
// bilinear-resized channels [0,S) of that neighbor; the first level instead
// takes channels [0,S) of its single (upper) neighbor. Interior levels
// replace channels [S,2S) with the resized channels [S,2S) of the level
// above; the last level keeps its own [S,2S). Remaining channels are always
// untouched. Throws ShapeError if 2*S > C.
FeaturePyramid pyramid_shuffle(const FeaturePyramid& p, const ShuffleSpec& s);

// One query site per feature point. Anchors sit at cell centers:
// ((col + 0.5)*stride, (row + 0.5)*stride). Flat indices enumerate levels in
// order, row-major within a level.
struct AnchorSite {
  double x = 0;
  double y = 0;
  int level = 0;
};

struct AnchorQueryInit {
  std::vector<AnchorSite> sites;  // flat query index == position
};

struct LevelShape {
  int stride = 0;
  int height = 0;
  int width = 0;
};

AnchorQueryInit dense_query_init(std::span<const LevelShape> shapes);
AnchorQueryInit dense_query_init(const FeaturePyramid& p);
// Shapes from an image size: H_l = ceil(image_h / stride_l).
std::vector<LevelShape> level_shapes(int image_w, int image_h,
                                     std::span<const int> strides);

}  // namespace ddq
