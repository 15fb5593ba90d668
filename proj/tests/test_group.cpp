#include <doctest.h>

#include <numeric>
#include <random>

#include "equivar/ehrhart.hpp"
#include "equivar/group.hpp"

using namespace equivar;

namespace {

LatticePolytope simplex2() { return build_polytope({{0, 0}, {1, 0}, {0, 1}}); }

FiniteGroup sym3_on_simplex(const LatticePolytope& p) {
    std::vector<int> t{0, 2, 1}, c{1, 2, 0};
    return generate_group(
        {element_from_vertex_permutation(p, t), element_from_vertex_permutation(p, c)}, p);
}

LatticePolytope centered_square() {
    return build_polytope({{-1, -1}, {1, -1}, {-1, 1}, {1, 1}});
}

}  // namespace

TEST_CASE("Sym_3 on the triangle") {
    LatticePolytope p = simplex2();
    FiniteGroup g = sym3_on_simplex(p);
    CHECK(g.order() == 6);
    CHECK(g.num_classes() == 3);
    std::vector<size_t> sizes;
    for (auto& c : g.classes) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<size_t>{1, 2, 3});
}

TEST_CASE("inversion on a segment") {
    LatticePolytope p = build_polytope({{-1}, {1}});
    GroupElement inv;
    inv.linear = IntMat(1, 1);
    inv.linear.at(0, 0) = -1;
    inv.translation = {0};
    FiniteGroup g = generate_group({inv}, p);
    CHECK(g.order() == 2);
    CHECK(g.num_classes() == 2);
}

TEST_CASE("Sym_5 on the recentered quintic simplex") {
    std::vector<IntVec> verts{{-1, -1, -1, -1}};
    for (int i = 0; i < 4; ++i) {
        IntVec v(4, -1);
        v[i] = 4;
        verts.push_back(v);
    }
    LatticePolytope p = build_polytope(verts);
    std::vector<int> t{1, 0, 2, 3, 4}, c{1, 2, 3, 4, 0};
    FiniteGroup g = generate_group(
        {element_from_vertex_permutation(p, t), element_from_vertex_permutation(p, c)}, p);
    CHECK(g.order() == 120);
    CHECK(g.num_classes() == 7);
}

TEST_CASE("non-symmetry generators are rejected") {
    LatticePolytope p = simplex2();
    GroupElement shear;
    shear.linear = IntMat(2, 2);
    shear.linear.at(0, 0) = 1;
    shear.linear.at(0, 1) = 1;
    shear.linear.at(1, 1) = 1;
    shear.translation = {0, 0};
    CHECK_THROWS_AS(generate_group({shear}, p), Error);
}

TEST_CASE("exterior characters") {
    LatticePolytope cube =
        build_polytope({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
    FiniteGroup triv = trivial_group(cube);
    CHECK(exterior_character(triv, 0).values() == IntVec{1});
    CHECK(exterior_character(triv, 1).values() == IntVec{3});
    CHECK(exterior_character(triv, 2).values() == IntVec{3});
    CHECK(exterior_character(triv, 3).values() == IntVec{1});

    LatticePolytope sq = centered_square();
    GroupElement rot;
    rot.linear = IntMat(2, 2);
    rot.linear.at(0, 1) = -1;
    rot.linear.at(1, 0) = 1;
    rot.translation = {0, 0};
    FiniteGroup c4 = generate_group({rot}, sq);
    ClassFunction w1 = exterior_character(c4, 1);
    ClassFunction w2 = exterior_character(c4, 2);
    int rotClass = c4.classOf[c4.index_of(rot)];
    CHECK(w1.at_class(rotClass) == 0);
    CHECK(w2.at_class(rotClass) == 1);

    FiniteGroup s3 = sym3_on_simplex(simplex2());
    ClassFunction det = det_character(s3);
    // transpositions have determinant -1 in the reflection representation
    bool sawMinus = false;
    for (Int v : det.values()) sawMinus = sawMinus || v == -1;
    CHECK(sawMinus);
    CHECK((det * det) == ClassFunction::trivial(s3));
}

TEST_CASE("exterior generating identity and duality") {
    // sum_k (-1)^k wedge^k(g) t^k = det(I - rho(g) t), and
    // wedge^i rho * det(rho) = wedge^{d-i} rho
    LatticePolytope p = simplex2();
    FiniteGroup g = sym3_on_simplex(p);
    int d = p.dim;
    ClassFunction det = det_character(g);
    for (int c = 0; c < g.num_classes(); ++c) {
        IntVec poly = char_like_poly(g.rep(c).linear);
        for (int k = 0; k <= d; ++k) {
            Int wk = exterior_character(g, k).at_class(c);
            CHECK(poly[k] == (k % 2 == 0 ? wk : -wk));
        }
    }
    for (int i = 0; i <= d; ++i)
        CHECK((exterior_character(g, i) * det) == exterior_character(g, d - i));
}

TEST_CASE("induced characters") {
    LatticePolytope p = simplex2();
    FiniteGroup g = sym3_on_simplex(p);

    // identity induction
    std::vector<int> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    Subgroup whole = make_subgroup(g, all);
    ClassFunction chi = vertex_character(g);
    CHECK(induce(whole, restrict_to(chi, whole)) == chi);

    // induction from a transposition subgroup of the trivial character is
    // the coset permutation character (3, 1, 0)
    int transposition = -1;
    for (int e = 1; e < g.order(); ++e) {
        auto ct = g.vertexPerm[e];
        int fixed = 0;
        for (size_t i = 0; i < ct.size(); ++i)
            if (ct[i] == static_cast<int>(i)) ++fixed;
        if (fixed == 1) {
            transposition = e;
            break;
        }
    }
    REQUIRE(transposition >= 0);
    Subgroup h = make_subgroup(g, {0, transposition});
    ClassFunction ind = induce(h, ClassFunction::trivial(*h.group));
    for (int c = 0; c < g.num_classes(); ++c) {
        size_t sz = g.classes[c].size();
        Int expect = sz == 1 ? 3 : (sz == 3 ? 1 : 0);
        CHECK(ind.at_class(c) == expect);
    }

    // regular character of C2 from the trivial subgroup
    LatticePolytope seg = build_polytope({{-1}, {1}});
    GroupElement inv;
    inv.linear = IntMat(1, 1);
    inv.linear.at(0, 0) = -1;
    inv.translation = {0};
    FiniteGroup c2 = generate_group({inv}, seg);
    Subgroup trivialSub = make_subgroup(c2, {0});
    ClassFunction reg = induce(trivialSub, ClassFunction::trivial(*trivialSub.group));
    CHECK(reg.dim() == 2);
    CHECK(reg.at_element(1) == 0);
    ClassFunction sgn = det_character(c2);
    CHECK(multiplicity(reg, sgn) == 1);
}

TEST_CASE("multiplicity counts orbits per the permutation lemma") {
    LatticePolytope p = simplex2();
    FiniteGroup g = sym3_on_simplex(p);
    ClassFunction chi = vertex_character(g);
    CHECK(multiplicity(chi, ClassFunction::trivial(g)) == 1);
    CHECK(multiplicity(chi, det_character(g)) == 0);
    CHECK_THROWS_AS(multiplicity(chi, chi), Error);  // not a linear character
}

TEST_CASE("Frobenius reciprocity spot check") {
    LatticePolytope p = simplex2();
    FiniteGroup g = sym3_on_simplex(p);
    std::mt19937 rng(3);
    for (int e = 1; e < g.order(); ++e) {
        Subgroup h = make_subgroup(g, {0, e, g.mul(e, e), g.mul(g.mul(e, e), e)});
        for (int trial = 0; trial < 4; ++trial) {
            IntVec vals(h.group->num_classes());
            for (Int& v : vals) v = static_cast<Int>(rng() % 5);
            // force a genuine class function: arbitrary values are fine
            ClassFunction chi(h.group.get(), vals);
            for (const ClassFunction& lambda : {ClassFunction::trivial(g), det_character(g)})
                CHECK(induce(h, chi).inner(lambda) == chi.inner(restrict_to(lambda, h)));
        }
    }
}

TEST_CASE("face isotropy of the whole polytope is the whole group") {
    LatticePolytope p = simplex2();
    FiniteGroup g = sym3_on_simplex(p);
    FaceAction fa = face_isotropy(g, p, p.topFace);
    CHECK(fa.isotropy.members.size() == 6);
    CHECK(fa.facePolytope.dim == 2);
    // restricted determinants agree with det(rho)
    ClassFunction det = det_character(g);
    for (int c = 0; c < fa.isotropy.group->num_classes(); ++c) {
        int parentElem = fa.isotropy.members[fa.isotropy.group->classReps[c]];
        CHECK(fa.detRestricted.at_class(c) == det.at_element(parentElem));
    }
}

TEST_CASE("edge isotropy of the triangle") {
    LatticePolytope p = simplex2();
    FiniteGroup g = sym3_on_simplex(p);
    // edge between vertices 0 and some other vertex
    int edgeId = -1;
    for (const Face& f : p.faces)
        if (f.dim == 1) {
            edgeId = f.id;
            break;
        }
    REQUIRE(edgeId >= 0);
    FaceAction fa = face_isotropy(g, p, edgeId);
    CHECK(fa.isotropy.members.size() == 2);
    CHECK(fa.facePolytope.dim == 1);
    // the non-identity member acts on the edge lattice by -1
    int c = fa.isotropy.group->classOf[1];
    CHECK(fa.restricted[1].linear.at(0, 0) == -1);
    CHECK(fa.detRestricted.at_class(c) == -1);
}

TEST_CASE("vertex isotropy under a fixed-point-free rotation") {
    LatticePolytope sq = centered_square();
    GroupElement neg;
    neg.linear = IntMat(2, 2);
    neg.linear.at(0, 0) = -1;
    neg.linear.at(1, 1) = -1;
    neg.translation = {0, 0};
    FiniteGroup c2 = generate_group({neg}, sq);
    int vertexId = sq.faces_of_dim(0).front();
    FaceAction fa = face_isotropy(c2, sq, vertexId);
    CHECK(fa.isotropy.members == std::vector<int>{0});
    CHECK(fa.facePolytope.dim == 0);
}

TEST_CASE("face frames saturate the direction lattice") {
    // edge from (0,0) to (2,2): vertex differences span 2Z(1,1) but the
    // face lattice is Z(1,1)
    LatticePolytope p = build_polytope({{0, 0}, {2, 2}, {2, 0}});
    int edgeId = -1;
    for (const Face& f : p.faces)
        if (f.dim == 1 && f.vertexSet == std::vector<int>{0, 2}) edgeId = f.id;
    REQUIRE(edgeId >= 0);
    auto [basis, anchor] = face_lattice_frame(p, edgeId);
    REQUIRE(basis.cols == 1);
    CHECK(std::abs(basis.at(0, 0)) == 1);
    CHECK(std::abs(basis.at(1, 0)) == 1);
    CHECK(anchor == IntVec{0, 0});
    // the edge polytope in face coordinates is a length-2 segment, so the
    // midpoint lattice point is visible there
    FiniteGroup triv = trivial_group(p);
    FaceAction fa = face_isotropy(triv, p, edgeId);
    CHECK(lattice_points(fa.facePolytope, 1, Region::All).size() == 3);
}

TEST_CASE("permutation characters count fixed points") {
    LatticePolytope p = simplex2();
    FiniteGroup g = sym3_on_simplex(p);
    ClassFunction chi = vertex_character(g);
    for (int c = 0; c < g.num_classes(); ++c) {
        int fixed = 0;
        for (size_t i = 0; i < p.vertices.size(); ++i)
            if (g.vertexPerm[g.classReps[c]][i] == static_cast<int>(i)) ++fixed;
        CHECK(chi.at_class(c) == fixed);
    }
}
