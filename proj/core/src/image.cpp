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

#include "posekit/image.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace posekit {
namespace {

constexpr const char* kScaleTag = "posekit-scale";

// Reads header tokens, skipping comments and collecting a scale comment.
class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(std::istream& in) : in_(in) {}

  std::string token() {
    std::string tok;
    int c;
    while ((c = in_.get()) != EOF) {
      if (c == '#') {
        std::string comment;
        std::getline(in_, comment);
        parse_comment(comment);
        if (!tok.empty()) return tok;
        continue;
      }
      if (std::isspace(c)) {
        if (!tok.empty()) return tok;
        continue;
      }
      tok.push_back(static_cast<char>(c));
    }
    if (tok.empty()) throw_invalid("PGM: truncated header");
    return tok;
  }

  int integer() {
    const std::string tok = token();
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw_invalid("PGM: invalid header value '" + tok + "'");
    }
    return v;
  }

  double scale() const { return scale_; }

 private:
  void parse_comment(const std::string& comment) {
    std::istringstream is(comment);
    std::string tag;
    double value = 0.0;
    if (is >> tag >> value && tag == kScaleTag) {
      if (!(value > 0.0) || !std::isfinite(value)) {
        throw_invalid("PGM: invalid scale comment");
      }
      scale_ = value;
    }
  }

  std::istream& in_;
  double scale_ = 1.0;
};

}  // namespace

std::vector<double> PgmImage::to_values() const {
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out[i] = static_cast<double>(samples[i]) / maxval * scale;
  }
  return out;
}

PgmImage read_pgm(std::istream& in) {
  PgmHeaderReader header(in);
  const std::string magic = header.token();
  if (magic != "P2" && magic != "P5") {
    throw_invalid("PGM: unsupported magic '" + magic + "'");
  }
  PgmImage img;
  img.width = header.integer();
  img.height = header.integer();
  img.maxval = header.integer();
  if (img.width < 1 || img.height < 1) throw_invalid("PGM: bad dimensions");
  if (img.maxval < 1 || img.maxval > 65535) throw_invalid("PGM: bad maxval");
  img.scale = header.scale();

  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  img.samples.resize(n);
  if (magic == "P2") {
    for (std::size_t i = 0; i < n; ++i) {
      long v = -1;
      if (!(in >> v) || v < 0 || v > img.maxval) {
        throw_invalid("PGM: bad or missing sample " + std::to_string(i));
      }
      img.samples[i] = static_cast<std::uint16_t>(v);
    }
  } else {
    // header.token() consumed exactly one whitespace byte after maxval.
    const bool wide = img.maxval > 255;
    for (std::size_t i = 0; i < n; ++i) {
      int hi = in.get();
      int v = hi;
      if (wide) {
        const int lo = in.get();
        if (lo == EOF) hi = EOF;
        v = (hi << 8) | lo;
      }
      if (hi == EOF) throw_invalid("PGM: truncated raster");
      if (v > img.maxval) throw_invalid("PGM: sample exceeds maxval");
      img.samples[i] = static_cast<std::uint16_t>(v);
    }
  }
  return img;
}

PgmImage read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kUnresolved, "cannot open " + path.string());
  try {
    return read_pgm(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

void write_pgm(std::ostream& out, const PgmImage& img, PgmEncoding encoding) {
  out << (encoding == PgmEncoding::kAscii ? "P2" : "P5") << '\n';
  std::ostringstream scale;
  scale.precision(17);
  scale << img.scale;
  out << "# " << kScaleTag << ' ' << scale.str() << '\n';
  out << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
  if (encoding == PgmEncoding::kAscii) {
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        if (x) out << ' ';
        out << img.samples[static_cast<std::size_t>(y) * img.width + x];
      }
      out << '\n';
    }
  } else {
    const bool wide = img.maxval > 255;
    for (std::uint16_t s : img.samples) {
      if (wide) out.put(static_cast<char>(s >> 8));
      out.put(static_cast<char>(s & 0xff));
    }
  }
}

PgmImage quantize(int width, int height, std::span<const double> values) {
  PgmImage img;
  img.width = width;
  img.height = height;
  img.maxval = 65535;
  double peak = 1.0;
  for (double v : values) peak = std::max(peak, v);
  img.scale = peak;
  img.samples.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double q = std::round(std::max(values[i], 0.0) / peak * 65535.0);
    img.samples[i] = static_cast<std::uint16_t>(std::clamp(q, 0.0, 65535.0));
  }
  return img;
}

void write_heatmap_pgm(const std::filesystem::path& path, const Heatmap2D& h,
                       PgmEncoding encoding) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_invalid("cannot write " + path.string());
  write_pgm(out, quantize(h.width(), h.height(), h.values()), encoding);
  if (!out) throw_invalid("failed writing " + path.string());
}

Heatmap2D read_heatmap_pgm(const std::filesystem::path& path) {
  const PgmImage img = read_pgm_file(path);
  return Heatmap2D::from_values(img.width, img.height, img.to_values());
}

Mask2D read_mask_pgm(const std::filesystem::path& path) {
  const PgmImage img = read_pgm_file(path);
  std::vector<double> values = img.to_values();
  for (double v : values) {
    if (v > 1.0) throw_invalid(path.string() + ": mask values exceed 1");
  }
  return Mask2D::from_values(img.width, img.height, std::move(values));
}

}  // namespace posekit
