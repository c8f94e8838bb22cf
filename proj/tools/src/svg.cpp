// Copyright 2026 The dastable Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dastable/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "dastable/errors.hpp"
#include "dastable/random_source.hpp"

namespace dastable::cli {

namespace {

constexpr std::array<int, 8> kGrays = {0x10, 0x28, 0x40, 0x58, 0x70, 0x88, 0xa0, 0xb8};

// Fixed two-decimal rendering, independent of the global locale.
void append_fixed(std::string& out, double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 2);
  out.append(buf, r.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string hex_gray(int g) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s = "#";
  for (int i = 0; i < 3; ++i) {
    s += kDigits[g >> 4];
    s += kDigits[g & 15];
  }
  return s;
}

}  // namespace

int cluster_gray(std::optional<std::int64_t> cluster) {
  if (!cluster) return 0;
  return kGrays[mix_seed(static_cast<std::uint64_t>(*cluster)) % kGrays.size()];
}

std::string render_svg(const PointPattern& pattern, const Rect& window, const SvgStyle& style,
                       const std::string& title) {
  validate_window(window);
  if (pattern.points().size() > style.max_points) {
    throw ResourceError("pattern has " + std::to_string(pattern.points().size()) +
                        " points, above the SVG limit of " + std::to_string(style.max_points));
  }
  const double size = style.size;
  std::string out;
  out.reserve(256 + 64 * pattern.points().size());
  const std::string side = std::to_string(style.size);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + side + "\" height=\"" + side +
         "\" viewBox=\"0 0 " + side + " " + side + "\">\n";
  out += "<title>" + escape(title) + "</title>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + side + "\" height=\"" + side +
         "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  for (const PatternPoint& p : pattern.points()) {
    const auto* xy = std::get_if<Point2>(&p.location);
    if (xy == nullptr) throw ParameterError("SVG output needs a planar pattern");
    const double cx = (xy->x - window.x0) / window.width() * size;
    const double cy = (window.y1 - xy->y) / window.height() * size;
    const double r = style.point_radius * std::min(std::sqrt(static_cast<double>(p.multiplicity)), 8.0);
    out += "<circle cx=\"";
    append_fixed(out, cx);
    out += "\" cy=\"";
    append_fixed(out, cy);
    out += "\" r=\"";
    append_fixed(out, r);
    out += "\" fill=\"" + hex_gray(cluster_gray(p.cluster)) + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dastable::cli
