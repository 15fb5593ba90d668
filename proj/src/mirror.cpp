#include "equivar/mirror.hpp"

#include <algorithm>
#include <numeric>

namespace equivar {

namespace {

IntMat dual_matrix(const IntMat& a) { return mat_transpose(unimodular_inverse(a)); }

bool same_vertex_sets(const LatticePolytope& a, const LatticePolytope& b) {
    return a.vertices == b.vertices;  // both lex-sorted
}

bool values_match(const ClassFunction& a, const ClassFunction& b) {
    return a.values() == b.values();
}

}  // namespace

MirrorPair mirror_pair(const LatticePolytope& P, const FiniteGroup& g) {
    Classification cls = classify(P);
    if (!cls.reflexive) fail(ErrorKind::NotReflexive, "polytope is not a translate of a reflexive polytope");
    LatticePolytope centered = *cls.recentered;
    const IntVec& s = cls.recenterShift;

    std::vector<GroupElement> linearElems;
    for (const GroupElement& e : g.elements) {
        IntVec shifted = mat_apply(e.linear, s);
        GroupElement r{e.linear, e.translation};
        for (size_t j = 0; j < r.translation.size(); ++j)
            r.translation[j] += s[j] - shifted[j];
        for (Int t : r.translation)
            if (t != 0)
                fail(ErrorKind::InvariantViolation,
                     "action does not fix the unique interior lattice point");
        linearElems.push_back(std::move(r));
    }
    FiniteGroup centeredGroup = group_from_elements(std::move(linearElems), centered);

    LatticePolytope dual = polar_dual(centered);
    std::vector<GroupElement> dualElems;
    for (const GroupElement& e : centeredGroup.elements)
        dualElems.push_back({dual_matrix(e.linear), IntVec(static_cast<size_t>(P.dim), 0)});
    FiniteGroup dualGroup;
    try {
        dualGroup = group_from_elements(std::move(dualElems), dual);
    } catch (const Error& err) {
        if (err.kind() == ErrorKind::NotSymmetry)
            fail(ErrorKind::DualNotInvariant, "dual action does not preserve the polar polytope");
        throw;
    }
    if (centeredGroup.classOf != dualGroup.classOf)
        fail(ErrorKind::InvariantViolation, "dual group class structure is misaligned");
    if (det_character(centeredGroup).values() != det_character(dualGroup).values())
        fail(ErrorKind::InvariantViolation, "dual action determinant disagrees with det(rho)");
    if (!same_vertex_sets(polar_dual(dual), centered))
        fail(ErrorKind::InvariantViolation, "polar duality is not an involution on this pair");

    MirrorPair mp;
    mp.polytope = std::move(centered);
    mp.dual = std::move(dual);
    mp.group = std::make_shared<const FiniteGroup>(std::move(centeredGroup));
    mp.dualGroup = std::make_shared<const FiniteGroup>(std::move(dualGroup));
    return mp;
}

HodgeDiamond predicted_mirror_diamond(const HodgeDiamond& source, const ClassFunction& detChar) {
    if (detChar.group() != source.group)
        fail(ErrorKind::InvariantViolation, "det character lives on a different group");
    int n = source.dim;
    HodgeDiamond out;
    out.group = source.group;
    out.dim = n;
    out.entries.assign(static_cast<size_t>(n + 1) * (n + 1), ClassFunction::zero(*source.group));
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) out.at(p, q) = detChar * source.at(n - p, q);
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            if (!(detChar * out.at(n - p, q) == source.at(p, q)))
                fail(ErrorKind::InvariantViolation, "mirror prediction is not an involution");
    return out;
}

MirrorReport smooth_pair_check(const MirrorPair& pair) {
    MirrorReport rep;
    Classification cp = classify(pair.polytope);
    Classification cd = classify(pair.dual);
    rep.primalSimple = cp.isSimple;
    rep.dualSimple = cd.isSimple;
    rep.primalSmooth = is_smooth(pair.polytope);
    rep.dualSmooth = is_smooth(pair.dual);
    if (!rep.primalSimple) fail(ErrorKind::NotSimple, "primal polytope is not simple");
    if (!rep.dualSimple) fail(ErrorKind::NotSimple, "dual polytope is not simple");

    int d = pair.polytope.dim;
    rep.primal = hodge_diamond(acted(pair.polytope, *pair.group));
    rep.dualDiamond = hodge_diamond(acted(pair.dual, *pair.dualGroup));
    ClassFunction detRho = det_character(*pair.group);
    rep.predictedDual = predicted_mirror_diamond(*rep.primal, detRho);

    rep.fullChecked = (rep.primalSmooth && rep.dualSmooth) || d <= 2;
    rep.relationHolds = true;
    int n = d - 1;
    rep.cells.assign(n + 1, std::vector<CellStatus>(n + 1, CellStatus::PredictedOnly));
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            bool checkable = rep.fullChecked || p == 0 || q == 0;
            if (!checkable) continue;
            rep.cells[p][q] = CellStatus::Verified;
            if (!values_match(rep.predictedDual->at(p, q), rep.dualDiamond->at(p, q)))
                rep.relationHolds = false;
        }
    if (rep.fullChecked)
        rep.notes.push_back(d <= 2 ? "full check: hypersurfaces of curves/points are smooth"
                                   : "full check: both polytopes are smooth");
    else
        rep.notes.push_back("boundary rows checked; interior cells require a crepant resolution");
    return rep;
}

Int fermat_expected_trace(int d, Int m, const std::vector<Int>& cycleType, int p) {
    int r = static_cast<int>(cycleType.size());
    Int target = static_cast<Int>(p + 1) * m;
    Int count = 0;
    std::vector<Int> a(static_cast<size_t>(r), 1);
    if (m <= 1) return 0;
    while (true) {
        Int sum = 0;
        for (int i = 0; i < r; ++i) sum += cycleType[i] * a[i];
        if (sum == target) ++count;
        int i = 0;
        while (i < r && a[i] == m - 1) {
            a[i] = 1;
            ++i;
        }
        if (i == r) break;
        ++a[i];
    }
    int sgn = (d + 1 - r) % 2 == 0 ? 1 : -1;
    return sgn * count;
}

std::vector<Int> cycle_type(const FiniteGroup& g, int elementIdx) {
    const std::vector<int>& perm = g.vertexPerm[elementIdx];
    std::vector<char> seen(perm.size(), 0);
    std::vector<Int> type;
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        Int len = 0;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = perm[j];
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

namespace {

// m * (standard d-simplex): conv{0, m e_1, ..., m e_d}
LatticePolytope dilated_standard_simplex(int d, Int m) {
    std::vector<IntVec> verts;
    verts.push_back(IntVec(static_cast<size_t>(d), 0));
    for (int i = 0; i < d; ++i) {
        IntVec v(static_cast<size_t>(d), 0);
        v[i] = m;
        verts.push_back(v);
    }
    return build_polytope(verts);
}

FiniteGroup symmetric_group_on_vertices(const LatticePolytope& P) {
    int n = static_cast<int>(P.vertices.size());
    std::vector<int> transposition(n), cycle(n);
    std::iota(transposition.begin(), transposition.end(), 0);
    std::swap(transposition[0], transposition[1]);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    std::vector<GroupElement> gens{element_from_vertex_permutation(P, transposition),
                                   element_from_vertex_permutation(P, cycle)};
    return generate_group(gens, P);
}

}  // namespace

namespace {

Int vertex_perm_sign(const FiniteGroup& g, int elem) {
    const std::vector<int>& perm = g.vertexPerm[elem];
    std::vector<char> seen(perm.size(), 0);
    int cycles = 0;
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            j = perm[j];
        }
    }
    return ((static_cast<int>(perm.size()) - cycles) % 2 == 0) ? 1 : -1;
}

HodgeDiamond blank_diamond(const FiniteGroup& g, int n) {
    HodgeDiamond d;
    d.group = &g;
    d.dim = n;
    d.entries.assign(static_cast<size_t>(n + 1) * (n + 1), ClassFunction::zero(g));
    return d;
}

QuotientDiamond quotient_from_grid(int n, const std::vector<std::vector<Int>>& rows) {
    QuotientDiamond q;
    q.dim = n;
    for (const auto& row : rows) q.entries.insert(q.entries.end(), row.begin(), row.end());
    return q;
}

}  // namespace

ScenarioBundle scenario_fermat(int d, Int m) {
    if (d < 1 || m < 1) fail(ErrorKind::Schema, "fermat scenario requires d >= 1 and m >= 1");
    ScenarioBundle b;
    b.name = "fermat";
    b.fermatDim = d;
    b.fermatDegree = m;
    b.P = dilated_standard_simplex(d, m);
    b.group = std::make_shared<const FiniteGroup>(symmetric_group_on_vertices(b.P));
    for (int p = 0; p <= d - 1; ++p) {
        std::vector<Int> row;
        for (int c = 0; c < b.group->num_classes(); ++c)
            row.push_back(fermat_expected_trace(d, m, cycle_type(*b.group, b.group->classReps[c]), p));
        b.expectedPrimitiveTraces.push_back(std::move(row));
    }
    return b;
}

ScenarioBundle scenario_quintic_mirror() {
    ScenarioBundle b;
    b.name = "quintic-mirror";
    LatticePolytope P = dilated_standard_simplex(4, 5);
    FiniteGroup sym5 = symmetric_group_on_vertices(P);
    if (sym5.order() != 120 || sym5.num_classes() != 7)
        fail(ErrorKind::InvariantViolation, "unexpected symmetric group structure");
    b.pair = mirror_pair(P, sym5);
    b.P = b.pair->polytope;
    b.group = b.pair->group;
    b.fermatDim = 4;
    b.fermatDegree = 5;

    // expected diamonds, assembled from the sign character and
    // mu = 1 + 2 Ind_{S3}(1) + 2 Ind_{S2xS2}(1)
    const FiniteGroup& G = *b.group;
    IntVec sgnVals(G.num_classes());
    for (int c = 0; c < G.num_classes(); ++c) sgnVals[c] = vertex_perm_sign(G, G.classReps[c]);
    ClassFunction sgn(&G, sgnVals);
    std::vector<int> s3members, s22members;
    for (int e = 0; e < G.order(); ++e) {
        const std::vector<int>& vp = G.vertexPerm[e];
        if (vp[0] == 0 && vp[1] == 1) s3members.push_back(e);
        bool block01 = (vp[0] == 0 && vp[1] == 1) || (vp[0] == 1 && vp[1] == 0);
        bool block23 = (vp[2] == 2 && vp[3] == 3) || (vp[2] == 3 && vp[3] == 2);
        if (block01 && block23 && vp[4] == 4) s22members.push_back(e);
    }
    Subgroup s3 = make_subgroup(G, s3members);
    Subgroup s22 = make_subgroup(G, s22members);
    ClassFunction mu = ClassFunction::trivial(G) +
                       induce(s3, ClassFunction::trivial(*s3.group)).scaled(2) +
                       induce(s22, ClassFunction::trivial(*s22.group)).scaled(2);
    if (mu.dim() != 101) fail(ErrorKind::InvariantViolation, "mu is not 101-dimensional");

    HodgeDiamond left = blank_diamond(G, 3);
    ClassFunction one = ClassFunction::trivial(G);
    for (int p = 0; p <= 3; ++p) left.at(p, p) = one;
    left.at(3, 0) = sgn;
    left.at(0, 3) = sgn;
    left.at(2, 1) = sgn * mu;
    left.at(1, 2) = sgn * mu;
    HodgeDiamond right = blank_diamond(G, 3);
    right.at(0, 0) = one;
    right.at(3, 3) = one;
    right.at(1, 1) = mu;
    right.at(2, 2) = mu;
    for (int p = 0; p <= 3; ++p) right.at(p, 3 - p) = sgn;
    b.expectedDiamond = std::move(left);
    b.expectedMirrorDiamond = std::move(right);
    b.expectedQuotient = quotient_from_grid(
        3, {{1, 0, 0, 1}, {0, 1, 5, 0}, {0, 5, 1, 0}, {1, 0, 0, 1}});
    b.expectedMirrorQuotient = quotient_from_grid(
        3, {{1, 0, 0, 1}, {0, 5, 1, 0}, {0, 1, 5, 0}, {1, 0, 0, 1}});
    return b;
}

}  // namespace equivar
