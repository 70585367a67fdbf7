// Copyright 2026 The PoseKit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POSEKIT_IMAGE_HPP_
#define POSEKIT_IMAGE_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "posekit/error.hpp"

namespace posekit {

struct HeatmapTraits {
  static constexpr const char* kName = "heatmap";
  static bool valid(double v) { return std::isfinite(v); }
};

struct MaskTraits {
  static constexpr const char* kName = "mask";
  static bool valid(double v) { return v >= 0.0 && v <= 1.0; }
};

// Dense row-major grid. Pixel (x, y) has its center at integer coordinates
// (x, y) and covers [x - 0.5, x + 0.5] x [y - 0.5, y + 0.5].
template <class Traits>
class Grid2D {
 public:
  Grid2D() = default;

  Grid2D(int width, int height, double fill = 0.0)
      : width_(width), height_(height) {
    if (width < 1 || height < 1) throw_invalid("grid dimensions must be >= 1");
    check(fill);
    values_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  static Grid2D from_values(int width, int height, std::vector<double> values) {
    Grid2D g(width, height);
    if (values.size() != g.values_.size()) {
      throw_invalid("grid value count does not match dimensions");
    }
    for (double v : values) check(v);
    g.values_ = std::move(values);
    return g;
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  double at(int x, int y) const { return values_[index(x, y)]; }
  void set(int x, int y, double v) {
    check(v);
    values_[index(x, y)] = v;
  }

  bool same_shape(const Grid2D& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

 private:
  static void check(double v) {
    if (!Traits::valid(v)) {
      throw_invalid(std::string(Traits::kName) + " value out of range");
    }
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

using Heatmap2D = Grid2D<HeatmapTraits>;
using Mask2D = Grid2D<MaskTraits>;

enum class PgmEncoding { kAscii /* P2 */, kBinary /* P5 */ };

// Raw PGM raster plus the real-valued scale it encodes: a sample s means
// s / maxval * scale. The scale is carried in a "# posekit-scale <value>"
// comment; files without it decode with scale 1.
struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 65535;
  double scale = 1.0;
  std::vector<std::uint16_t> samples;

  std::vector<double> to_values() const;
};

PgmImage read_pgm(std::istream& in);
PgmImage read_pgm_file(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const PgmImage& image, PgmEncoding encoding);

// Quantizes values into [0, 65535]. Negative values clamp to 0. The scale is
// max(1, max value), so maps in [0, 1] keep scale 1.
PgmImage quantize(int width, int height, std::span<const double> values);

void write_heatmap_pgm(const std::filesystem::path& path, const Heatmap2D& h,
                       PgmEncoding encoding = PgmEncoding::kBinary);
Heatmap2D read_heatmap_pgm(const std::filesystem::path& path);
// Decoded values above 1 (a scale > 1) are rejected.
Mask2D read_mask_pgm(const std::filesystem::path& path);

}  // namespace posekit

#endif  // POSEKIT_IMAGE_HPP_
