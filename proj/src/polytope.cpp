#include "equivar/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace equivar {

namespace {

int affine_rank(const std::vector<IntVec>& pts, const std::vector<int>& subset) {
    if (subset.empty()) return -1;  // rank convention: dim of affine span
    int d = static_cast<int>(pts[subset[0]].size());
    IntMat diffs(static_cast<int>(subset.size()) - 1, d);
    for (size_t i = 1; i < subset.size(); ++i)
        for (int j = 0; j < d; ++j)
            diffs.at(static_cast<int>(i) - 1, j) = pts[subset[i]][j] - pts[subset[0]][j];
    return rank(diffs);
}

Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
    return s;
}

void primitivize(IntVec& v) {
    Int g = 0;
    for (Int x : v) g = std::gcd(g, std::abs(x));
    if (g > 1)
        for (Int& x : v) x /= g;
}

// Primitive normal of the hyperplane through the given d points, or empty
// if they do not affinely span a hyperplane. Generalized cross product of
// the d-1 difference vectors.
IntVec hyperplane_normal(const std::vector<IntVec>& pts, const std::vector<int>& subset, int d) {
    IntMat diffs(d - 1, d);
    for (int i = 1; i < d; ++i)
        for (int j = 0; j < d; ++j)
            diffs.at(i - 1, j) = pts[subset[i]][j] - pts[subset[0]][j];
    IntVec n(d, 0);
    bool nonzero = false;
    for (int j = 0; j < d; ++j) {
        IntMat minor(d - 1, d - 1);
        for (int r = 0; r < d - 1; ++r)
            for (int c = 0, mc = 0; c < d; ++c) {
                if (c == j) continue;
                minor.at(r, mc++) = diffs.at(r, c);
            }
        Int v = det(minor);
        n[j] = (j % 2 == 0) ? v : -v;
        if (v != 0) nonzero = true;
    }
    if (!nonzero) return {};
    primitivize(n);
    return n;
}

uint64_t facet_mask(const std::vector<int>& facets) {
    uint64_t m = 0;
    for (int f : facets) m |= (uint64_t{1} << f);
    return m;
}

}  // namespace

std::vector<int> LatticePolytope::faces_of_dim(int k) const {
    std::vector<int> out;
    for (const Face& f : faces)
        if (f.dim == k) out.push_back(f.id);
    return out;
}

int LatticePolytope::face_by_facet_set(const std::vector<int>& facetSet) const {
    for (const Face& f : faces)
        if (f.containingFacets == facetSet) return f.id;
    return -1;
}

LatticePolytope build_polytope(const std::vector<IntVec>& points, BuildOptions opts) {
    if (points.empty()) fail(ErrorKind::Schema, "empty vertex list");
    int d = static_cast<int>(points[0].size());
    for (const IntVec& p : points)
        if (static_cast<int>(p.size()) != d) fail(ErrorKind::Schema, "inconsistent vertex dimensions");

    std::vector<IntVec> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (static_cast<int>(pts.size()) > opts.maxVertices)
        fail(ErrorKind::TooLarge, "vertex count exceeds cap");

    LatticePolytope P;
    P.dim = d;

    if (d == 0) {
        P.vertices = {IntVec{}};
        Face empty{0, -1, {}, {}};
        Face top{1, 0, {0}, {}};
        P.faces = {empty, top};
        P.emptyFace = 0;
        P.topFace = 1;
        return P;
    }

    std::vector<int> all(pts.size());
    std::iota(all.begin(), all.end(), 0);
    if (affine_rank(pts, all) < d)
        fail(ErrorKind::NotFullDimensional, "affine span has dimension < d");

    // hyperplane scan over d-subsets
    int n = static_cast<int>(pts.size());
    std::set<std::pair<IntVec, Int>> facetSet;
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    while (true) {
        IntVec nrm = hyperplane_normal(pts, idx, d);
        if (!nrm.empty()) {
            Int lo = dot(nrm, pts[0]), hi = lo;
            for (const IntVec& p : pts) {
                Int v = dot(nrm, p);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            Int v0 = dot(nrm, pts[idx[0]]);
            if (v0 == lo && lo < hi) {
                facetSet.insert({nrm, lo});
            } else if (v0 == hi && lo < hi) {
                IntVec neg = nrm;
                for (Int& x : neg) x = -x;
                facetSet.insert({neg, -hi});
            }
        }
        int pos = d - 1;
        while (pos >= 0 && idx[pos] == n - d + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < d; ++i) idx[i] = idx[i - 1] + 1;
    }

    std::vector<HalfSpace> facets;
    for (const auto& [nrm, off] : facetSet) facets.push_back({nrm, off});

    // vertex = point whose active facet normals span full rank
    std::vector<int> vertexIdx;
    for (int i = 0; i < n; ++i) {
        std::vector<int> active;
        for (size_t f = 0; f < facets.size(); ++f)
            if (dot(facets[f].normal, pts[i]) == facets[f].offset) active.push_back(static_cast<int>(f));
        IntMat normals(static_cast<int>(active.size()), d);
        for (size_t r = 0; r < active.size(); ++r)
            for (int j = 0; j < d; ++j) normals.at(static_cast<int>(r), j) = facets[active[r]].normal[j];
        if (rank(normals) == d)
            vertexIdx.push_back(i);
        else if (!opts.stripRedundant)
            fail(ErrorKind::RedundantVertex, "input point is not an extreme point");
    }

    P.vertices.reserve(vertexIdx.size());
    for (int i : vertexIdx) P.vertices.push_back(pts[i]);
    P.facets = std::move(facets);
    if (static_cast<int>(P.facets.size()) > 63) fail(ErrorKind::TooLarge, "too many facets");

    // face lattice: close facet vertex sets under intersection
    std::set<std::vector<int>> faceSets;
    std::vector<int> allVerts(P.vertices.size());
    std::iota(allVerts.begin(), allVerts.end(), 0);
    faceSets.insert(allVerts);
    std::vector<std::vector<int>> facetVerts(P.facets.size());
    for (size_t f = 0; f < P.facets.size(); ++f) {
        for (size_t v = 0; v < P.vertices.size(); ++v)
            if (dot(P.facets[f].normal, P.vertices[v]) == P.facets[f].offset)
                facetVerts[f].push_back(static_cast<int>(v));
        faceSets.insert(facetVerts[f]);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> current(faceSets.begin(), faceSets.end());
        for (size_t i = 0; i < current.size(); ++i)
            for (size_t f = 0; f < facetVerts.size(); ++f) {
                std::vector<int> inter;
                std::set_intersection(current[i].begin(), current[i].end(), facetVerts[f].begin(),
                                      facetVerts[f].end(), std::back_inserter(inter));
                if (faceSets.insert(inter).second) grew = true;
            }
    }
    faceSets.insert({});

    std::vector<Face> faces;
    for (const std::vector<int>& vs : faceSets) {
        Face f;
        f.vertexSet = vs;
        f.dim = affine_rank(P.vertices, vs);
        for (size_t i = 0; i < facetVerts.size(); ++i)
            if (std::includes(facetVerts[i].begin(), facetVerts[i].end(), vs.begin(), vs.end()))
                f.containingFacets.push_back(static_cast<int>(i));
        faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        return std::tie(a.dim, a.vertexSet) < std::tie(b.dim, b.vertexSet);
    });
    for (size_t i = 0; i < faces.size(); ++i) {
        faces[i].id = static_cast<int>(i);
        if (faces[i].dim == -1) P.emptyFace = static_cast<int>(i);
        if (faces[i].dim == d) P.topFace = static_cast<int>(i);
    }
    P.faces = std::move(faces);
    return P;
}

LatticePolytope translate(const LatticePolytope& p, const IntVec& shift) {
    std::vector<IntVec> verts = p.vertices;
    for (IntVec& v : verts)
        for (size_t j = 0; j < v.size(); ++j) v[j] += shift[j];
    return build_polytope(verts);
}

namespace {

// Enumerates lattice points of mP by bounding-box scan, calling
// fn(point, activeFacetMask) for each point inside.
template <typename Fn>
void scan_dilate(const LatticePolytope& p, Int m, Fn&& fn) {
    int d = p.dim;
    if (d == 0) {
        fn(IntVec{}, uint64_t{0});
        return;
    }
    IntVec lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
        Int mn = p.vertices[0][j], mx = mn;
        for (const IntVec& v : p.vertices) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        lo[j] = m * mn;
        hi[j] = m * mx;
    }
    IntVec x = lo;
    while (true) {
        bool inside = true;
        uint64_t active = 0;
        for (size_t f = 0; f < p.facets.size(); ++f) {
            Int s = 0;
            const IntVec& nrm = p.facets[f].normal;
            for (int j = 0; j < d; ++j) s += nrm[j] * x[j];
            Int rhs = m * p.facets[f].offset;
            if (s < rhs) {
                inside = false;
                break;
            }
            if (s == rhs) active |= (uint64_t{1} << f);
        }
        if (inside) fn(x, active);
        int j = 0;
        while (j < d && x[j] == hi[j]) {
            x[j] = lo[j];
            ++j;
        }
        if (j == d) break;
        ++x[j];
    }
}

}  // namespace

std::vector<IntVec> lattice_points(const LatticePolytope& p, Int m, Region region) {
    if (m < 0) fail(ErrorKind::Schema, "negative dilate");
    std::vector<IntVec> out;
    scan_dilate(p, m, [&](const IntVec& x, uint64_t active) {
        if (region == Region::Interior && active != 0) return;
        out.push_back(x);
    });
    return out;
}

std::vector<std::pair<IntVec, bool>> lattice_points_flagged(const LatticePolytope& p, Int m) {
    if (m < 0) fail(ErrorKind::Schema, "negative dilate");
    std::vector<std::pair<IntVec, bool>> out;
    scan_dilate(p, m, [&](const IntVec& x, uint64_t active) { out.emplace_back(x, active == 0); });
    return out;
}

std::vector<IntVec> stratum_points(const LatticePolytope& p, Int m, int k) {
    if (m < 0 || k < 0 || k > p.dim) fail(ErrorKind::Schema, "stratum out of range");
    if (m == 0) {
        // 0P is a point, the relative interior of the degenerate top face
        if (k == p.dim) return {IntVec(static_cast<size_t>(p.dim), 0)};
        return {};
    }
    // face lookup by active-facet mask
    std::map<uint64_t, int> dimByMask;
    for (const Face& f : p.faces)
        if (f.dim >= 0) dimByMask[facet_mask(f.containingFacets)] = f.dim;
    std::vector<IntVec> out;
    scan_dilate(p, m, [&](const IntVec& x, uint64_t active) {
        auto it = dimByMask.find(active);
        if (it == dimByMask.end())
            fail(ErrorKind::InvariantViolation, "lattice point with no matching face");
        if (it->second == k) out.push_back(x);
    });
    return out;
}

Classification classify(const LatticePolytope& p) {
    Classification c;
    c.isSimplex = p.is_simplex();
    c.isSimple = true;
    for (const Face& f : p.faces)
        if (f.dim == 0 && static_cast<int>(f.containingFacets.size()) != p.dim) c.isSimple = false;
    std::vector<IntVec> interior = lattice_points(p, 1, Region::Interior);
    if (interior.size() == 1) {
        IntVec shift = interior[0];
        for (Int& s : shift) s = -s;
        bool ok = true;
        for (const HalfSpace& h : p.facets) {
            Int off = h.offset;
            for (size_t j = 0; j < h.normal.size(); ++j) off += h.normal[j] * shift[j];
            // facet of the recentered polytope: <n, x> >= offset - <n, c>
            if (off != -1) ok = false;
        }
        if (ok) {
            c.reflexive = true;
            c.recenterShift = shift;
            c.recentered = translate(p, shift);
        }
    }
    return c;
}

LatticePolytope polar_dual(const LatticePolytope& p) {
    Classification c = classify(p);
    bool centered = c.reflexive && std::all_of(c.recenterShift.begin(), c.recenterShift.end(),
                                               [](Int x) { return x == 0; });
    if (!centered) fail(ErrorKind::NotReflexive, "polar dual requires a centered reflexive polytope");
    std::vector<IntVec> duals;
    for (const HalfSpace& h : p.facets) duals.push_back(h.normal);
    return build_polytope(duals);
}

bool is_smooth(const LatticePolytope& p) {
    for (const Face& f : p.faces) {
        if (f.dim != 0) continue;
        if (static_cast<int>(f.containingFacets.size()) != p.dim) return false;
        IntMat nm(p.dim, p.dim);
        for (int r = 0; r < p.dim; ++r)
            for (int j = 0; j < p.dim; ++j) nm.at(r, j) = p.facets[f.containingFacets[r]].normal[j];
        Int dt = det(nm);
        if (dt != 1 && dt != -1) return false;
    }
    return true;
}

}  // namespace equivar
