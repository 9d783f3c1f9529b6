#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "planestereo/image.hpp"

namespace planestereo {

/// Twice the signed area of triangle (a, b, c) in pixel coordinates
/// (u right, v down). Positive for the orientation all triangulation
/// output uses. Exact for |coordinates| < 2^20.
long long orient2d(const Pixel& a, const Pixel& b, const Pixel& c);

/// Sign of the in-circle determinant: +1 when d lies strictly inside the
/// circumcircle of positively oriented (a, b, c), 0 when cocircular,
/// -1 outside. Exact for |coordinates| < 2^20.
int inCircleSign(const Pixel& a, const Pixel& b, const Pixel& c, const Pixel& d);

/// Delaunay triangulation of a set of distinct integer points.
///
/// Returns positively oriented vertex-index triples into `points`, in a
/// deterministic order for a given input. Collinear inputs (or fewer than
/// three points) yield an empty list. Every triangle satisfies the empty
/// circumcircle property; cocircular point groups are triangulated in a
/// deterministic but otherwise arbitrary way.
std::vector<std::array<int, 3>> delaunayTriangulate(const std::vector<Pixel>& points);

} // namespace planestereo
