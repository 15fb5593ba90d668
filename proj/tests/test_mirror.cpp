#include <doctest.h>

#include <set>

#include "equivar/mirror.hpp"

using namespace equivar;

namespace {

LatticePolytope simplex(int d, Int m) {
    std::vector<IntVec> v{IntVec(d, 0)};
    for (int i = 0; i < d; ++i) {
        IntVec e(d, 0);
        e[i] = m;
        v.push_back(e);
    }
    return build_polytope(v);
}

FiniteGroup segment_inversion(const LatticePolytope& p) {
    GroupElement inv;
    inv.linear = IntMat(1, 1);
    inv.linear.at(0, 0) = -1;
    inv.translation = {0};
    return generate_group({inv}, p);
}

}  // namespace

TEST_CASE("self-dual segment pair with inversion passes the full check") {
    LatticePolytope seg = build_polytope({{-1}, {1}});
    FiniteGroup c2 = segment_inversion(seg);
    MirrorPair pair = mirror_pair(seg, c2);
    CHECK(pair.dual.vertices == seg.vertices);
    MirrorReport rep = smooth_pair_check(pair);
    CHECK(rep.fullChecked);
    CHECK(rep.relationHolds);
}

TEST_CASE("square/diamond pair with the trivial group (elliptic curves)") {
    LatticePolytope sq = build_polytope({{-1, -1}, {1, -1}, {-1, 1}, {1, 1}});
    FiniteGroup triv = trivial_group(sq);
    MirrorPair pair = mirror_pair(sq, triv);
    CHECK(pair.dual.vertices.size() == 4);
    MirrorReport rep = smooth_pair_check(pair);
    CHECK(rep.fullChecked);  // d = 2: both hypersurfaces are smooth curves
    CHECK(rep.relationHolds);
    // both sides have H^{1,0} = chi*_P = 1
    CHECK(rep.primal->at(1, 0).values() == IntVec{1});
    CHECK(rep.dualDiamond->at(1, 0).values() == IntVec{1});
}

TEST_CASE("mirror pair recenters and dualizes the quintic simplex") {
    LatticePolytope p = simplex(4, 5);
    std::vector<int> t{1, 0, 2, 3, 4}, c{1, 2, 3, 4, 0};
    FiniteGroup g = generate_group(
        {element_from_vertex_permutation(p, t), element_from_vertex_permutation(p, c)}, p);
    MirrorPair pair = mirror_pair(p, g);
    CHECK(pair.polytope.vertices.size() == 5);
    CHECK(pair.dual.is_simplex());
    CHECK(pair.group->order() == 120);
    CHECK(pair.dualGroup->order() == 120);
    CHECK(pair.group->classOf == pair.dualGroup->classOf);
    // dual action determinant matches the primal one classwise
    CHECK(det_character(*pair.group).values() == det_character(*pair.dualGroup).values());
    CHECK(polar_dual(pair.dual).vertices == pair.polytope.vertices);
}

TEST_CASE("prediction operator is an involution") {
    LatticePolytope p = simplex(2, 3);
    std::vector<int> t{0, 2, 1}, c{1, 2, 0};
    FiniteGroup g = generate_group(
        {element_from_vertex_permutation(p, t), element_from_vertex_permutation(p, c)}, p);
    HodgeDiamond d = hodge_diamond(acted(p, g));
    ClassFunction det = det_character(g);
    HodgeDiamond pred = predicted_mirror_diamond(d, det);
    HodgeDiamond back = predicted_mirror_diamond(pred, det);
    for (int a = 0; a <= d.dim; ++a)
        for (int b = 0; b <= d.dim; ++b) CHECK(back.at(a, b) == d.at(a, b));
    // boundary of the prediction: predicted H^{d-1,0} = det * H^{0,0} = det
    CHECK(pred.at(1, 0) == det);
}

TEST_CASE("non-reflexive input is rejected") {
    LatticePolytope p = build_polytope({{0}, {1}});
    FiniteGroup g = trivial_group(p);
    CHECK_THROWS_AS(mirror_pair(p, g), Error);
}

TEST_CASE("fermat scenario bundles") {
    ScenarioBundle b = scenario_fermat(2, 3);
    CHECK(b.P.is_simplex());
    CHECK(b.group->order() == 6);
    // expected trace at the identity of H^{1,0}: one interior tuple (1,1,1)
    CHECK(fermat_expected_trace(2, 3, {1, 1, 1}, 1) == 1);
    // transposition, cycle type (2,1): a_1 even multiples... count solutions
    CHECK(fermat_expected_trace(2, 3, {2, 1}, 1) == -1);
    CHECK(fermat_expected_trace(2, 3, {3}, 1) == 1);
}

TEST_CASE("quintic-mirror scenario") {
    ScenarioBundle b = scenario_quintic_mirror();
    REQUIRE(b.pair.has_value());
    CHECK(b.P.dim == 4);
    CHECK(b.group->num_classes() == 7);
    CHECK(b.pair->dual.is_simplex());
    REQUIRE(b.expectedDiamond.has_value());
    CHECK(b.expectedDiamond->at(2, 1).dim() == 101);
    CHECK(b.expectedMirrorDiamond->at(1, 1).dim() == 101);
    CHECK(b.expectedQuotient->at(1, 1) == 1);
    CHECK(b.expectedQuotient->at(2, 1) == 5);
    CHECK(b.expectedMirrorQuotient->at(1, 1) == 5);
    CHECK(b.expectedMirrorQuotient->at(2, 1) == 1);
    // the expected mirror diamond is the prediction applied to the left one
    IntVec sgnVals;
    for (int c = 0; c < b.group->num_classes(); ++c)
        sgnVals.push_back(b.expectedDiamond->at(0, 3).at_class(c));
    ClassFunction sgn(b.group.get(), sgnVals);
    HodgeDiamond predicted = predicted_mirror_diamond(*b.expectedDiamond, sgn);
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q)
            CHECK(predicted.at(p, q) == b.expectedMirrorDiamond->at(p, q));
}

TEST_CASE("cycle types of symmetric group elements") {
    ScenarioBundle b = scenario_fermat(2, 3);
    std::multiset<std::vector<Int>> types;
    for (int c = 0; c < b.group->num_classes(); ++c)
        types.insert(cycle_type(*b.group, b.group->classReps[c]));
    std::multiset<std::vector<Int>> expect{{1, 1, 1}, {2, 1}, {3}};
    CHECK(types == expect);
}
