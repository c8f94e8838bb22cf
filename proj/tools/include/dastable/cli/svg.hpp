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

#ifndef DASTABLE_CLI_SVG_HPP_
#define DASTABLE_CLI_SVG_HPP_

#include <string>

#include "dastable/cli/config.hpp"
#include "dastable/measure.hpp"

namespace dastable::cli {

// Gray level (0 black .. 255 white) for a cluster tag. Untagged points are
// black; tags map to a fixed set of eight mid-to-dark grays through a hash so
// neighbouring tags differ.
int cluster_gray(std::optional<std::int64_t> cluster);

// Scatter plot of a planar pattern over `window` on a square canvas. Points
// with multiplicity m are drawn with radius r sqrt(m), capped at 8r. Output
// depends only on its arguments. Throws ParameterError on discrete points
// and ResourceError above style.max_points stored points.
std::string render_svg(const PointPattern& pattern, const Rect& window, const SvgStyle& style,
                       const std::string& title);

}  // namespace dastable::cli

#endif  // DASTABLE_CLI_SVG_HPP_
