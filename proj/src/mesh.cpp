#include "planestereo/mesh.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "planestereo/delaunay.hpp"
#include "planestereo/error.hpp"

namespace planestereo {

DisparityPlane fitPlane(const SupportPoint& v1, const SupportPoint& v2, const SupportPoint& v3) {
    const long long u1 = v1.u, u2 = v2.u, u3 = v3.u;
    const long long w1 = v1.v, w2 = v2.v, w3 = v3.v;
    const long long det = u1 * (w2 - w3) + u2 * (w3 - w1) + u3 * (w1 - w2);
    if (det == 0) {
        throw DegenerateTriangle("collinear vertices at (" + std::to_string(v1.u) + "," +
                                 std::to_string(v1.v) + ")");
    }
    const double d1 = v1.d, d2 = v2.d, d3 = v3.d;
    const double detA = d1 * double(w2 - w3) + d2 * double(w3 - w1) + d3 * double(w1 - w2);
    const double detB = double(u1) * (d2 - d3) + double(u2) * (d3 - d1) + double(u3) * (d1 - d2);
    const double detC = d1 * double(u2 * w3 - u3 * w2) - d2 * double(u1 * w3 - u3 * w1) +
                        d3 * double(u1 * w2 - u2 * w1);
    return {detA / double(det), detB / double(det), detC / double(det)};
}

namespace {

long long floorDiv(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

long long ceilDiv(long long a, long long b) {
    return -floorDiv(-a, b);
}

} // namespace

DisparityMesh::DisparityMesh(std::vector<SupportPoint> vertices,
                             std::vector<std::array<int, 3>> triangles, int width, int height)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      lookup_(std::size_t(width) * height, kOutside),
      width_(width),
      height_(height) {
    planes_.reserve(triangles_.size());
    for (const auto& t : triangles_) {
        planes_.push_back(fitPlane(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]));
    }
    rasterize();
}

void DisparityMesh::rasterize() {
    // Exact edge functions with the top-left tie rule: a pixel exactly on an
    // edge counts as covered iff an infinitesimally shifted sample at
    // (u+eps, v+eps^2) would be inside. Interior pixels on shared edges or
    // vertices therefore land in exactly one triangle.
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& tr = triangles_[t];
        const SupportPoint& p0 = vertices_[tr[0]];
        const SupportPoint& p1 = vertices_[tr[1]];
        const SupportPoint& p2 = vertices_[tr[2]];

        const int x[3] = {p0.u, p1.u, p2.u};
        const int y[3] = {p0.v, p1.v, p2.v};

        const int vMin = std::max(0, std::min({y[0], y[1], y[2]}));
        const int vMax = std::min(height_ - 1, std::max({y[0], y[1], y[2]}));

        long long A[3];
        long long tieBias[3];
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3;
            A[i] = y[i] - y[j];
            const bool tieAccept = (y[j] < y[i]) || (y[j] == y[i] && x[j] > x[i]);
            tieBias[i] = tieAccept ? 0 : 1;
        }

        for (int v = vMin; v <= vMax; ++v) {
            long long lo = 0;
            long long hi = width_ - 1;
            bool rowEmpty = false;
            for (int i = 0; i < 3 && !rowEmpty; ++i) {
                const int j = (i + 1) % 3;
                const long long K =
                    (long long)(x[j] - x[i]) * (v - y[i]) + (long long)(y[j] - y[i]) * x[i];
                const long long m = tieBias[i];
                if (A[i] > 0) {
                    lo = std::max(lo, ceilDiv(m - K, A[i]));
                } else if (A[i] < 0) {
                    hi = std::min(hi, floorDiv(K - m, -A[i]));
                } else if (K < m) {
                    rowEmpty = true;
                }
            }
            if (rowEmpty || lo > hi) {
                continue;
            }
            std::int32_t* row = lookup_.data() + std::size_t(v) * width_;
            std::fill(row + lo, row + hi + 1, std::int32_t(t));
        }
    }

    // Hull-boundary vertices can fall outside every triangle under the tie
    // rule; pin each vertex pixel to its first incident triangle so vertex
    // queries always resolve.
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        for (int corner : triangles_[t]) {
            const SupportPoint& p = vertices_[corner];
            if (p.u >= 0 && p.u < width_ && p.v >= 0 && p.v < height_) {
                std::int32_t& cell = lookup_[std::size_t(p.v) * width_ + p.u];
                if (cell == kOutside) {
                    cell = std::int32_t(t);
                }
            }
        }
    }
}

void DisparityMesh::writeOff(std::ostream& out) const {
    out << "OFF\n" << vertices_.size() << ' ' << triangles_.size() << " 0\n";
    for (const SupportPoint& p : vertices_) {
        out << p.u << ' ' << p.v << ' ' << p.d << '\n';
    }
    for (const auto& t : triangles_) {
        out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
}

DisparityMesh triangulate(const std::vector<SupportPoint>& points, int width, int height) {
    if (points.size() < 3) {
        throw FewerThanThreePoints("triangulation needs at least 3 support points, got " +
                                   std::to_string(points.size()));
    }
    std::vector<Pixel> coords;
    coords.reserve(points.size());
    for (const SupportPoint& p : points) {
        coords.push_back({p.u, p.v});
    }
    auto triangles = delaunayTriangulate(coords);
    return DisparityMesh(points, std::move(triangles), width, height);
}

DisparityMap interpolate(const DisparityMesh& mesh, const GradientMask& domain,
                         float maxDisparity) {
    DisparityMap map(mesh.width(), mesh.height());
    const auto& planes = mesh.planes();
    for (const Pixel& p : domain.points()) {
        const int t = mesh.triangleAt(p.u, p.v);
        if (t == DisparityMesh::kOutside) {
            continue;
        }
        const float d = float(planes[t].at(p.u, p.v));
        if (d >= 0.0f && d < maxDisparity) {
            map.set(p.u, p.v, d);
        }
    }
    return map;
}

DisparityMap interpolate(const DisparityMesh& mesh, float maxDisparity) {
    DisparityMap map(mesh.width(), mesh.height());
    const auto& planes = mesh.planes();
    for (int v = 0; v < mesh.height(); ++v) {
        for (int u = 0; u < mesh.width(); ++u) {
            const int t = mesh.triangleAt(u, v);
            if (t == DisparityMesh::kOutside) {
                continue;
            }
            const float d = float(planes[t].at(u, v));
            if (d >= 0.0f && d < maxDisparity) {
                map.set(u, v, d);
            }
        }
    }
    return map;
}

} // namespace planestereo
