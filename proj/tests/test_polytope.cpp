#include <doctest.h>

#include <random>
#include <set>

#include "equivar/polytope.hpp"

using namespace equivar;

namespace {

LatticePolytope unit_square() {
    return build_polytope({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
}

LatticePolytope simplex2() { return build_polytope({{0, 0}, {1, 0}, {0, 1}}); }

std::vector<IntVec> dilated_simplex_verts(int d, Int m) {
    std::vector<IntVec> v;
    v.push_back(IntVec(d, 0));
    for (int i = 0; i < d; ++i) {
        IntVec e(d, 0);
        e[i] = m;
        v.push_back(e);
    }
    return v;
}

int count_faces_of_dim(const LatticePolytope& p, int k) {
    int n = 0;
    for (const Face& f : p.faces)
        if (f.dim == k) ++n;
    return n;
}

}  // namespace

TEST_CASE("unit square combinatorics") {
    LatticePolytope p = unit_square();
    CHECK(p.facets.size() == 4);
    CHECK(count_faces_of_dim(p, 0) == 4);
    CHECK(count_faces_of_dim(p, 1) == 4);
    CHECK(count_faces_of_dim(p, 2) == 1);
    CHECK(count_faces_of_dim(p, -1) == 1);
}

TEST_CASE("standard 2-simplex combinatorics") {
    LatticePolytope p = simplex2();
    CHECK(p.facets.size() == 3);
    CHECK(count_faces_of_dim(p, 1) == 3);
    CHECK(p.is_simplex());
}

TEST_CASE("octahedron facet scan") {
    LatticePolytope p = build_polytope(
        {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
    CHECK(p.facets.size() == 8);
    CHECK(count_faces_of_dim(p, 0) == 6);
    CHECK(count_faces_of_dim(p, 1) == 12);
    CHECK(count_faces_of_dim(p, 2) == 8);
    CHECK_FALSE(classify(p).isSimple);
}

TEST_CASE("redundant input points") {
    CHECK_THROWS_AS(build_polytope({{0, 0}, {2, 0}, {0, 2}, {1, 1}}), Error);
    BuildOptions opts;
    opts.stripRedundant = true;
    LatticePolytope p = build_polytope({{0, 0}, {2, 0}, {0, 2}, {1, 1}, {0, 1}}, opts);
    CHECK(p.vertices.size() == 3);
}

TEST_CASE("degenerate input rejected") {
    CHECK_THROWS_AS(build_polytope({{0, 0}, {1, 0}, {2, 0}}), Error);
}

TEST_CASE("vertex cap") {
    BuildOptions opts;
    opts.maxVertices = 3;
    CHECK_THROWS_AS(build_polytope({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, opts), Error);
}

TEST_CASE("simple polytopes: codimension equals containing-facet count") {
    for (const LatticePolytope& p :
         {unit_square(), simplex2(), build_polytope({{0}, {3}}),
          build_polytope({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}})}) {
        REQUIRE(classify(p).isSimple);
        for (const Face& f : p.faces)
            if (f.dim >= 0)
                CHECK(static_cast<int>(f.containingFacets.size()) == p.dim - f.dim);
    }
}

TEST_CASE("lattice point counts") {
    CHECK(lattice_points(unit_square(), 2, Region::All).size() == 9);
    auto interior = lattice_points(simplex2(), 3, Region::Interior);
    REQUIRE(interior.size() == 1);
    CHECK(interior[0] == IntVec{1, 1});

    LatticePolytope big = build_polytope({{0, 0}, {2, 0}, {0, 2}, {2, 2}});
    auto mids = stratum_points(big, 1, 1);
    std::set<IntVec> expect{{1, 0}, {0, 1}, {2, 1}, {1, 2}};
    CHECK(std::set<IntVec>(mids.begin(), mids.end()) == expect);
}

TEST_CASE("strata partition all points") {
    LatticePolytope p = build_polytope({{0, 0}, {3, 0}, {0, 2}});
    for (Int m = 0; m <= 3; ++m) {
        size_t total = 0;
        for (int k = 0; k <= p.dim; ++k) total += stratum_points(p, m, k).size();
        CHECK(total == lattice_points(p, m, Region::All).size());
    }
}

TEST_CASE("classification") {
    LatticePolytope sq = build_polytope({{-1, -1}, {1, -1}, {-1, 1}, {1, 1}});
    Classification c = classify(sq);
    CHECK(c.isSimple);
    CHECK_FALSE(c.isSimplex);
    CHECK(c.reflexive);
    CHECK(c.recenterShift == IntVec{0, 0});

    LatticePolytope seg = build_polytope({{0}, {1}});
    Classification cs = classify(seg);
    CHECK(cs.isSimple);
    CHECK(cs.isSimplex);
    CHECK_FALSE(cs.reflexive);

    LatticePolytope s5 = build_polytope(dilated_simplex_verts(4, 5));
    Classification c5 = classify(s5);
    CHECK(c5.isSimple);
    CHECK(c5.isSimplex);
    CHECK(c5.reflexive);
    CHECK(c5.recenterShift == IntVec{-1, -1, -1, -1});
}

TEST_CASE("polar duality") {
    LatticePolytope sq = build_polytope({{-1, -1}, {1, -1}, {-1, 1}, {1, 1}});
    LatticePolytope diamond = polar_dual(sq);
    std::set<IntVec> verts(diamond.vertices.begin(), diamond.vertices.end());
    std::set<IntVec> expect{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    CHECK(verts == expect);
    CHECK(polar_dual(diamond).vertices == sq.vertices);

    LatticePolytope quintic = *classify(build_polytope(dilated_simplex_verts(4, 5))).recentered;
    LatticePolytope mirror = polar_dual(quintic);
    CHECK(mirror.is_simplex());
    std::set<IntVec> mv(mirror.vertices.begin(), mirror.vertices.end());
    CHECK(mv.count(IntVec{-1, -1, -1, -1}) == 1);
    CHECK(mv.count(IntVec{1, 0, 0, 0}) == 1);
    CHECK(polar_dual(mirror).vertices == quintic.vertices);

    CHECK_THROWS_AS(polar_dual(build_polytope({{0}, {1}})), Error);
}

TEST_CASE("smoothness of normal fans") {
    CHECK(is_smooth(build_polytope({{-1, -1}, {1, -1}, {-1, 1}, {1, 1}})));
    // recentered 3*simplex: normal fan = fan of the projective plane
    CHECK(is_smooth(build_polytope({{2, -1}, {-1, 2}, {-1, -1}})));
    // its polar has normal-fan singularities (the face fan of the above)
    CHECK_FALSE(is_smooth(build_polytope({{1, 0}, {0, 1}, {-1, -1}})));
    // diamond has a non-unimodular vertex cone
    CHECK_FALSE(is_smooth(build_polytope({{1, 0}, {-1, 0}, {0, 1}, {0, -1}})));
}

TEST_CASE("face lattice is graded") {
    for (const LatticePolytope& p :
         {unit_square(), simplex2(),
          build_polytope({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}})}) {
        // every maximal chain from the empty face to P has length dim+2
        // (checked via: every face of dim k has a subface of dim k-1 in its closure)
        for (const Face& f : p.faces) {
            if (f.dim <= 0) continue;
            bool found = false;
            for (const Face& g : p.faces)
                if (g.dim == f.dim - 1 &&
                    std::includes(f.vertexSet.begin(), f.vertexSet.end(), g.vertexSet.begin(),
                                  g.vertexSet.end()))
                    found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("randomized simplices: scan agrees with barycentric membership") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> coord(-3, 3);
    int done = 0;
    while (done < 12) {
        int d = 1 + static_cast<int>(rng() % 3);
        std::vector<IntVec> verts;
        for (int i = 0; i <= d; ++i) {
            IntVec v(d);
            for (Int& x : v) x = coord(rng);
            verts.push_back(v);
        }
        LatticePolytope p;
        try {
            p = build_polytope(verts);
        } catch (const Error&) {
            continue;  // degenerate sample
        }
        ++done;
        // independent membership: solve for barycentric coordinates over Q
        IntMat B(d + 1, d + 1);
        for (int c = 0; c <= d; ++c) {
            for (int j = 0; j < d; ++j) B.at(j, c) = p.vertices[c][j];
            B.at(d, c) = 1;
        }
        Int dt = det(B);
        IntMat adj = adjugate(B);
        Int m = 2;
        auto pts = lattice_points(p, m, Region::All);
        std::set<IntVec> inSet(pts.begin(), pts.end());
        // bounding box count via barycentric test
        IntVec lo(d, 0), hi(d, 0);
        for (int j = 0; j < d; ++j) {
            lo[j] = hi[j] = m * p.vertices[0][j];
            for (const IntVec& v : p.vertices) {
                lo[j] = std::min(lo[j], m * v[j]);
                hi[j] = std::max(hi[j], m * v[j]);
            }
        }
        IntVec x = lo;
        size_t count = 0;
        while (true) {
            IntVec w(d + 1);
            for (int j = 0; j < d; ++j) w[j] = x[j];
            w[d] = m;
            IntVec a = mat_apply(adj, w);
            bool inside = true;
            for (Int ai : a) {
                Int s = dt > 0 ? ai : -ai;
                if (s < 0) inside = false;
            }
            if (inside) {
                ++count;
                CHECK(inSet.count(x) == 1);
            } else {
                CHECK(inSet.count(x) == 0);
            }
            int j = 0;
            while (j < d && x[j] == hi[j]) {
                x[j] = lo[j];
                ++j;
            }
            if (j == d) break;
            ++x[j];
        }
        CHECK(count == pts.size());
    }
}
