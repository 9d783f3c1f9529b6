#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "planestereo/disparity.hpp"
#include "planestereo/image.hpp"
#include "planestereo/sparse.hpp"

namespace planestereo {

/// Disparity-space plane d = a*u + b*v + c over one triangle.
struct DisparityPlane {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double at(double u, double v) const { return a * u + b * v + c; }
};

/// Solves [u_i v_i 1] * (a, b, c) = d_i for the three vertices.
/// Throws DegenerateTriangle when the vertices are collinear in (u, v).
DisparityPlane fitPlane(const SupportPoint& v1, const SupportPoint& v2, const SupportPoint& v3);

/// Delaunay triangulation of support points with per-triangle disparity
/// planes and a rasterized pixel -> triangle lookup covering the convex hull.
class DisparityMesh {
public:
    static constexpr int kOutside = -1;

    DisparityMesh(std::vector<SupportPoint> vertices, std::vector<std::array<int, 3>> triangles,
                  int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    const std::vector<SupportPoint>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
    const std::vector<DisparityPlane>& planes() const { return planes_; }

    /// Triangle index at a pixel, or kOutside. Shared edges and vertices
    /// resolve to exactly one triangle (top-left fill rule; mesh vertices on
    /// the hull boundary are assigned their first incident triangle).
    int triangleAt(int u, int v) const { return lookup_[std::size_t(v) * width_ + u]; }

    const std::vector<std::int32_t>& lookup() const { return lookup_; }

    /// Plain OFF dump (vertices as u v d) for external viewers.
    void writeOff(std::ostream& out) const;

private:
    void rasterize();

    std::vector<SupportPoint> vertices_;
    std::vector<std::array<int, 3>> triangles_;
    std::vector<DisparityPlane> planes_;
    std::vector<std::int32_t> lookup_;
    int width_;
    int height_;
};

/// Builds the mesh for a deduplicated support set. Throws
/// FewerThanThreePoints below three points; collinear sets produce a mesh
/// with zero triangles.
DisparityMesh triangulate(const std::vector<SupportPoint>& points, int width, int height);

/// Evaluates the containing triangle's plane at every mask pixel. Pixels
/// outside the hull or whose plane value leaves [0, maxDisparity) are
/// invalid.
DisparityMap interpolate(const DisparityMesh& mesh, const GradientMask& domain,
                         float maxDisparity);

/// Same over the full image.
DisparityMap interpolate(const DisparityMesh& mesh, float maxDisparity);

} // namespace planestereo
