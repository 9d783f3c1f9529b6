#include "planestereo/delaunay.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "planestereo/error.hpp"

namespace planestereo {

long long orient2d(const Pixel& a, const Pixel& b, const Pixel& c) {
    const long long abx = b.u - a.u;
    const long long aby = b.v - a.v;
    const long long acx = c.u - a.u;
    const long long acy = c.v - a.v;
    return abx * acy - aby * acx;
}

int inCircleSign(const Pixel& a, const Pixel& b, const Pixel& c, const Pixel& d) {
    const long long adx = a.u - d.u;
    const long long ady = a.v - d.v;
    const long long bdx = b.u - d.u;
    const long long bdy = b.v - d.v;
    const long long cdx = c.u - d.u;
    const long long cdy = c.v - d.v;
    const long long aq = adx * adx + ady * ady;
    const long long bq = bdx * bdx + bdy * bdy;
    const long long cq = cdx * cdx + cdy * cdy;

    using Wide = __int128;
    const Wide det = Wide(adx) * (Wide(bdy) * cq - Wide(cdy) * bq) -
                     Wide(ady) * (Wide(bdx) * cq - Wide(cdx) * bq) +
                     Wide(aq) * (Wide(bdx) * cdy - Wide(cdx) * bdy);
    if (det > 0) {
        return 1;
    }
    if (det < 0) {
        return -1;
    }
    return 0;
}

namespace {

// Incremental sweep: points are inserted in lexicographic (u, v) order, so
// every new point lies outside (or on the boundary line of) the hull built so
// far. New triangles fan from the point to the strictly visible hull chain
// and Lawson flips restore the empty-circumcircle property. All predicates
// are exact, so the result is deterministic for a given input.
class SweepTriangulator {
public:
    explicit SweepTriangulator(std::vector<Pixel> pts) : pts_(std::move(pts)) {
        const int n = int(pts_.size());
        hullNext_.assign(n, -1);
        hullPrev_.assign(n, -1);
        hullEdge_.assign(n, -1);
        tri_.reserve(std::size_t(n) * 6);
        twin_.reserve(std::size_t(n) * 6);
    }

    std::vector<std::array<int, 3>> build() {
        const int n = int(pts_.size());
        if (n < 3) {
            return {};
        }

        // Leading run of collinear points; grows until a point leaves the
        // line or the input is exhausted.
        std::vector<int> line{0};
        int i = 1;
        while (i < n && (line.size() < 2 || orient2d(pts_[line[0]], pts_[line[1]], pts_[i]) == 0)) {
            line.push_back(i);
            ++i;
        }
        if (i == n) {
            return {}; // fully collinear input
        }

        buildFan(line, i);
        for (++i; i < n; ++i) {
            insert(i);
        }

        std::vector<std::array<int, 3>> out;
        out.reserve(tri_.size() / 3);
        for (std::size_t t = 0; t < tri_.size(); t += 3) {
            out.push_back({tri_[t], tri_[t + 1], tri_[t + 2]});
        }
        return out;
    }

private:
    static int nextEdge(int e) { return e - e % 3 + (e + 1) % 3; }

    int addTriangle(int a, int b, int c, int twinAB, int twinBC, int twinCA) {
        const int e = int(tri_.size());
        tri_.push_back(a);
        tri_.push_back(b);
        tri_.push_back(c);
        twin_.push_back(twinAB);
        twin_.push_back(twinBC);
        twin_.push_back(twinCA);
        if (twinAB >= 0) twin_[twinAB] = e;
        if (twinBC >= 0) twin_[twinBC] = e + 1;
        if (twinCA >= 0) twin_[twinCA] = e + 2;
        return e;
    }

    void link(int e, int f) {
        twin_[e] = f;
        if (f >= 0) {
            twin_[f] = e;
        }
    }

    bool visible(int hullVertex, const Pixel& p) const {
        return orient2d(pts_[hullVertex], pts_[hullNext_[hullVertex]], p) < 0;
    }

    // First two dimensions of the triangulation: a fan from the sorted
    // collinear prefix to the first off-line point. The fan is Delaunay as
    // built: a circle through two line points excludes the rest of the line.
    void buildFan(const std::vector<int>& line, int apex) {
        const int k = int(line.size());
        const long long side = orient2d(pts_[line[0]], pts_[line[1]], pts_[apex]);
        int prevShared = -1;
        for (int j = 0; j + 1 < k; ++j) {
            if (side > 0) {
                // (line[j], line[j+1], apex); shares edge line[j]->apex with
                // the previous fan triangle's apex->line[j] halfedge.
                const int e = addTriangle(line[j], line[j + 1], apex, -1, -1, prevShared);
                if (j == 0) {
                    hullEdge_[apex] = e + 2; // apex -> line[0]
                }
                hullEdge_[line[j]] = e;     // line[j] -> line[j+1]
                prevShared = e + 1;         // line[j+1] -> apex
            } else {
                // (line[j+1], line[j], apex); shares edge line[j]->apex with
                // the previous fan triangle's apex->line[j] halfedge.
                const int e = addTriangle(line[j + 1], line[j], apex, -1, prevShared, -1);
                if (j == 0) {
                    hullEdge_[line[0]] = e + 1; // line[0] -> apex
                }
                hullEdge_[line[j + 1]] = e;     // line[j+1] -> line[j]
                prevShared = e + 2;             // apex -> line[j+1]
            }
        }
        if (side > 0) {
            hullEdge_[line[k - 1]] = prevShared; // line[k-1] -> apex
            for (int j = 0; j + 1 < k; ++j) {
                setHullLink(line[j], line[j + 1]);
            }
            setHullLink(line[k - 1], apex);
            setHullLink(apex, line[0]);
        } else {
            hullEdge_[apex] = prevShared; // apex -> line[k-1]
            for (int j = 0; j + 1 < k; ++j) {
                setHullLink(line[j + 1], line[j]);
            }
            setHullLink(line[0], apex);
            setHullLink(apex, line[k - 1]);
        }
        last_ = apex;
    }

    void setHullLink(int a, int b) {
        hullNext_[a] = b;
        hullPrev_[b] = a;
    }

    void insert(int ip) {
        const Pixel p = pts_[ip];

        int start = -1;
        int v = last_;
        do {
            if (visible(v, p)) {
                start = v;
                break;
            }
            v = hullNext_[v];
        } while (v != last_);
        if (start < 0) {
            throw Error("triangulation invariant violated: no hull edge visible");
        }

        int a = start;
        while (hullPrev_[a] != start && visible(hullPrev_[a], p)) {
            a = hullPrev_[a];
        }
        int b = hullNext_[start];
        while (b != start && visible(b, p)) {
            b = hullNext_[b];
        }

        int prevE1 = -1;
        int firstE0 = -1;
        for (int x = a; x != b;) {
            const int xn = hullNext_[x];
            const int base = hullEdge_[x];
            const int e = addTriangle(x, ip, xn, prevE1, -1, base);
            if (firstE0 < 0) {
                firstE0 = e;
            }
            prevE1 = e + 1;
            pushLegal(e + 2);
            x = xn;
        }

        setHullLink(a, ip);
        setHullLink(ip, b);
        hullEdge_[a] = firstE0;
        hullEdge_[ip] = prevE1;
        last_ = ip;

        legalizeAll();
    }

    void pushLegal(int e) { stack_.push_back(e); }

    void legalizeAll() {
        while (!stack_.empty()) {
            const int e = stack_.back();
            stack_.pop_back();
            const int f = twin_[e];
            if (f < 0) {
                continue;
            }
            const int e1 = nextEdge(e);
            const int e2 = nextEdge(e1);
            const int f1 = nextEdge(f);
            const int f2 = nextEdge(f1);
            const int a = tri_[e];
            const int b = tri_[e1];
            const int c = tri_[e2];
            const int d = tri_[f2];
            if (inCircleSign(pts_[a], pts_[b], pts_[c], pts_[d]) <= 0) {
                continue;
            }

            // Flip the shared edge a-b to the diagonal c-d.
            const int tE1 = twin_[e1];
            const int tE2 = twin_[e2];
            const int tF1 = twin_[f1];
            const int tF2 = twin_[f2];
            tri_[e] = a;
            tri_[e1] = d;
            tri_[e2] = c;
            tri_[f] = d;
            tri_[f1] = b;
            tri_[f2] = c;
            link(e1, f2);
            link(e, tF1);
            if (tF1 < 0) {
                hullEdge_[a] = e;
            }
            link(f, tF2);
            if (tF2 < 0) {
                hullEdge_[d] = f;
            }
            link(f1, tE1);
            if (tE1 < 0) {
                hullEdge_[b] = f1;
            }
            link(e2, tE2);
            if (tE2 < 0) {
                hullEdge_[c] = e2;
            }
            pushLegal(e);
            pushLegal(f);
            pushLegal(f1);
            pushLegal(e2);
        }
    }

    std::vector<Pixel> pts_;
    std::vector<int> tri_;
    std::vector<int> twin_;
    std::vector<int> hullNext_;
    std::vector<int> hullPrev_;
    std::vector<int> hullEdge_;
    std::vector<int> stack_;
    int last_ = -1;
};

} // namespace

std::vector<std::array<int, 3>> delaunayTriangulate(const std::vector<Pixel>& points) {
    constexpr int kCoordLimit = 1 << 20;
    for (const Pixel& p : points) {
        if (std::abs(p.u) >= kCoordLimit || std::abs(p.v) >= kCoordLimit) {
            throw Error("triangulation coordinates must be below 2^20");
        }
    }

    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        if (points[lhs].u != points[rhs].u) return points[lhs].u < points[rhs].u;
        if (points[lhs].v != points[rhs].v) return points[lhs].v < points[rhs].v;
        return lhs < rhs;
    });
    // Keep the first of any coincident points.
    std::vector<int> kept;
    kept.reserve(order.size());
    for (int idx : order) {
        if (!kept.empty() && points[kept.back()] == points[idx]) {
            continue;
        }
        kept.push_back(idx);
    }

    std::vector<Pixel> sorted;
    sorted.reserve(kept.size());
    for (int idx : kept) {
        sorted.push_back(points[idx]);
    }

    SweepTriangulator builder(std::move(sorted));
    auto triangles = builder.build();
    for (auto& t : triangles) {
        t = {kept[t[0]], kept[t[1]], kept[t[2]]};
    }
    return triangles;
}

} // namespace planestereo
