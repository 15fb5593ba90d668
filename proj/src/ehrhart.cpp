#include "equivar/ehrhart.hpp"

#include <algorithm>
#include <set>

namespace equivar {

ActedPolytope acted(const LatticePolytope& P, const FiniteGroup& g) {
    std::set<IntVec> verts(P.vertices.begin(), P.vertices.end());
    for (const GroupElement& e : g.elements)
        for (const IntVec& v : P.vertices)
            if (!verts.count(apply_affine(e, v)))
                fail(ErrorKind::NotSymmetry, "group does not preserve the polytope");
    return ActedPolytope{P, &g, g.elements};
}

ActedPolytope face_restriction(const FaceAction& fa) {
    return ActedPolytope{fa.facePolytope, fa.isotropy.group.get(), fa.restricted};
}

ActedPolytope sub_action(const ActedPolytope& ap, const Subgroup& sub) {
    ActedPolytope r{ap.P, sub.group.get(), {}};
    for (int m : sub.members) r.maps.push_back(ap.maps[m]);
    return r;
}

std::vector<std::vector<int>> acted_face_permutations(const ActedPolytope& ap) {
    const LatticePolytope& P = ap.P;
    std::map<IntVec, int> vertexIndex;
    for (size_t i = 0; i < P.vertices.size(); ++i) vertexIndex[P.vertices[i]] = static_cast<int>(i);
    std::map<std::vector<int>, int> byVertexSet;
    for (const Face& f : P.faces) byVertexSet[f.vertexSet] = f.id;

    std::vector<std::vector<int>> perms(ap.maps.size(), std::vector<int>(P.faces.size(), -1));
    for (size_t e = 0; e < ap.maps.size(); ++e) {
        std::vector<int> vperm(P.vertices.size(), -1);
        for (size_t v = 0; v < P.vertices.size(); ++v) {
            auto it = vertexIndex.find(apply_affine(ap.maps[e], P.vertices[v]));
            if (it == vertexIndex.end())
                fail(ErrorKind::NotSymmetry, "action map does not permute the polytope vertices");
            vperm[v] = it->second;
        }
        for (const Face& f : P.faces) {
            std::vector<int> img;
            img.reserve(f.vertexSet.size());
            for (int v : f.vertexSet) img.push_back(vperm[v]);
            std::sort(img.begin(), img.end());
            auto it = byVertexSet.find(img);
            if (it == byVertexSet.end()) fail(ErrorKind::InvariantViolation, "face image is not a face");
            perms[e][f.id] = it->second;
        }
    }
    return perms;
}

FaceAction face_isotropy(const ActedPolytope& ap, int faceId) {
    const LatticePolytope& P = ap.P;
    const Face& f = P.face(faceId);
    if (f.dim < 0) fail(ErrorKind::Schema, "empty face has no isotropy action");
    FaceAction fa;
    fa.faceId = faceId;

    std::map<IntVec, int> vertexIndex;
    for (size_t i = 0; i < P.vertices.size(); ++i) vertexIndex[P.vertices[i]] = static_cast<int>(i);
    std::vector<int> members;
    for (size_t e = 0; e < ap.maps.size(); ++e) {
        std::vector<int> img;
        bool ok = true;
        for (int v : f.vertexSet) {
            auto it = vertexIndex.find(apply_affine(ap.maps[e], P.vertices[v]));
            if (it == vertexIndex.end()) {
                ok = false;
                break;
            }
            img.push_back(it->second);
        }
        if (!ok) continue;
        std::sort(img.begin(), img.end());
        if (img == f.vertexSet) members.push_back(static_cast<int>(e));
    }
    fa.isotropy = make_subgroup(*ap.group, members);

    auto [basis, anchor] = face_lattice_frame(P, faceId);
    fa.basis = basis;
    fa.anchor = anchor;
    if (basis.cols != std::max(f.dim, 0))
        fail(ErrorKind::InvariantViolation, "face basis rank mismatch");

    std::vector<IntVec> faceVerts;
    for (int v : f.vertexSet) {
        IntVec diff = P.vertices[v];
        for (size_t j = 0; j < diff.size(); ++j) diff[j] -= anchor[j];
        faceVerts.push_back(solve_integer(basis, diff, ErrorKind::InvariantViolation,
                                          "face vertex in face coordinates"));
    }
    fa.facePolytope = build_polytope(faceVerts);

    for (int m : fa.isotropy.members)
        fa.restricted.push_back(restrict_element_to_face(P, faceId, ap.maps[m]));

    IntVec detVals(fa.isotropy.group->num_classes());
    for (int c = 0; c < fa.isotropy.group->num_classes(); ++c) {
        Int dt = det(fa.restricted[fa.isotropy.group->classReps[c]].linear);
        if (dt != 1 && dt != -1)
            fail(ErrorKind::InvariantViolation, "restricted determinant is not +-1");
        detVals[c] = dt;
    }
    fa.detRestricted = ClassFunction(fa.isotropy.group.get(), std::move(detVals));
    return fa;
}

FaceAction face_isotropy(const FiniteGroup& g, const LatticePolytope& P, int faceId) {
    return face_isotropy(acted(P, g), faceId);
}

namespace {

bool fixed_at_height(const GroupElement& g, const IntVec& x, Int m) {
    for (size_t i = 0; i < x.size(); ++i) {
        Int v = m * g.translation[i];
        for (size_t j = 0; j < x.size(); ++j) v += g.linear.at(static_cast<int>(i), static_cast<int>(j)) * x[j];
        if (v != x[i]) return false;
    }
    return true;
}

}  // namespace

ClassFunction ehrhart_character(const ActedPolytope& ap, Int m, Region region) {
    if (region == Region::Interior && m < 1) fail(ErrorKind::Schema, "interior counts need m >= 1");
    std::vector<IntVec> pts = lattice_points(ap.P, m, region);
    IntVec vals(ap.group->num_classes(), 0);
    for (int c = 0; c < ap.group->num_classes(); ++c) {
        const GroupElement& g = ap.maps[ap.group->classReps[c]];
        for (const IntVec& x : pts)
            if (fixed_at_height(g, x, m)) ++vals[c];
    }
    return ClassFunction(ap.group, std::move(vals));
}

CharacterSeries ehrhart_series(const ActedPolytope& ap, int order, Region region) {
    CharacterSeries s;
    s.group = ap.group;
    for (int m = 0; m <= order; ++m) {
        if (region == Region::Interior && m == 0)
            s.coefficients.push_back(ClassFunction::zero(*ap.group));
        else
            s.coefficients.push_back(ehrhart_character(ap, m, region));
    }
    if (region == Region::All && !(s.coefficients[0] == ClassFunction::trivial(*ap.group)))
        fail(ErrorKind::InvariantViolation, "degree-0 Ehrhart character is not trivial");
    return s;
}

ClassFunction action_exterior_character(const ActedPolytope& ap, int k) {
    IntVec vals(ap.group->num_classes());
    for (int c = 0; c < ap.group->num_classes(); ++c)
        vals[c] = principal_minor_sum(ap.maps[ap.group->classReps[c]].linear, k);
    return ClassFunction(ap.group, std::move(vals));
}

ClassFunction action_det_character(const ActedPolytope& ap) {
    return action_exterior_character(ap, ap.P.dim);
}

PhiPolynomial compute_phi(const ActedPolytope& ap, int buffer) {
    if (buffer < 1) fail(ErrorKind::Schema, "truncation buffer must be >= 1");
    int d = ap.P.dim;
    int T = d + buffer;
    int nc = ap.group->num_classes();

    // fixed-point counts per dilate, all and interior, per class
    std::vector<IntVec> all(nc, IntVec(T + 1, 0)), inter(nc, IntVec(T + 1, 0));
    for (int m = 0; m <= T; ++m) {
        auto pts = lattice_points_flagged(ap.P, m);
        for (int c = 0; c < nc; ++c) {
            const GroupElement& g = ap.maps[ap.group->classReps[c]];
            for (const auto& [x, isInterior] : pts)
                if (fixed_at_height(g, x, m)) {
                    ++all[c][m];
                    if (isInterior) ++inter[c][m];
                }
        }
    }

    PhiPolynomial phi;
    phi.group = ap.group;
    std::vector<IntVec> numer(nc);
    phi.isPolynomial = true;
    for (int c = 0; c < nc; ++c) {
        const IntMat& A = ap.maps[ap.group->classReps[c]].linear;
        IntVec denom = poly_mul(IntVec{1, -1}, char_like_poly(A), T);
        numer[c] = poly_mul(all[c], denom, T);
        for (int i = d + 1; i <= T; ++i)
            if (numer[c][i] != 0) phi.isPolynomial = false;
    }
    for (int i = 0; i <= d; ++i) {
        IntVec vals(nc);
        for (int c = 0; c < nc; ++c) vals[c] = numer[c][i];
        phi.coeffs.push_back(ClassFunction(ap.group, std::move(vals)));
    }

    phi.phi0Trivial = phi.coeffs[0] == ClassFunction::trivial(*ap.group);
    if (!phi.phi0Trivial)
        fail(ErrorKind::InvariantViolation, "phi_0 is not the trivial character");

    if (phi.isPolynomial) {
        // interior-series identity: sum chi*_{mP} t^m = t^{d+1} phi[1/t] / ((1-t) det(I - rho t))
        phi.reciprocityVerified = true;
        for (int c = 0; c < nc; ++c) {
            const IntMat& A = ap.maps[ap.group->classReps[c]].linear;
            IntVec denom = poly_mul(IntVec{1, -1}, char_like_poly(A), T);
            IntVec n(static_cast<size_t>(d) + 2, 0);
            for (int i = 0; i <= d; ++i) n[d + 1 - i] = numer[c][i];
            IntVec rhs = poly_mul(n, series_inverse(denom, T), T);
            for (int m = 1; m <= T; ++m)
                if (rhs[m] != inter[c][m]) phi.reciprocityVerified = false;
        }
        IntVec chiStar(nc);
        for (int c = 0; c < nc; ++c) chiStar[c] = inter[c][1];
        phi.topEqualsInterior = phi.coeffs[d] == ClassFunction(ap.group, std::move(chiStar));
        phi.isPalindromic = true;
        for (int i = 0; i <= d; ++i)
            if (!(phi.coeffs[i] == phi.coeffs[d - i])) phi.isPalindromic = false;
    }

    phi.boundsOk = true;
    int idClass = ap.group->classOf[0];
    for (const ClassFunction& cf : phi.coeffs)
        for (Int v : cf.values())
            if (std::abs(v) > cf.at_class(idClass)) phi.boundsOk = false;

    ClassFunction trivial = ClassFunction::trivial(*ap.group);
    ClassFunction detChar = action_det_character(ap);
    for (int i = 0; i <= d; ++i) {
        for (const auto& [name, lambda] :
             {std::pair<const char*, const ClassFunction*>{"trivial", &trivial}, {"det", &detChar}}) {
            EffectivenessEntry e;
            e.lambda = name;
            e.coeff = i;
            e.value = phi.coeffs[i].inner(*lambda);
            e.integral = e.value.is_integer();
            e.nonnegative = !(e.value < Rational(0));
            phi.effectivenessEvidence.push_back(e);
        }
    }
    return phi;
}

std::vector<BoxPoint> box_points(const ActedPolytope& ap) {
    const LatticePolytope& P = ap.P;
    if (!P.is_simplex()) fail(ErrorKind::NotSimplex, "box points require a simplex");
    int d = P.dim;
    int n = d + 1;
    IntMat B(n, n);
    for (int c = 0; c < n; ++c) {
        for (int j = 0; j < d; ++j) B.at(j, c) = P.vertices[c][j];
        B.at(d, c) = 1;
    }
    Int dt = det(B);
    if (dt == 0) fail(ErrorKind::InvariantViolation, "degenerate simplex");
    IntMat adj = adjugate(B);
    Int D = std::abs(dt);
    Int sign = dt > 0 ? 1 : -1;

    IntVec lo(n, 0), hi(n, 0);
    for (int j = 0; j < n; ++j)
        for (int c = 0; c < n; ++c) {
            lo[j] += std::min<Int>(0, B.at(j, c));
            hi[j] += std::max<Int>(0, B.at(j, c));
        }

    std::vector<BoxPoint> out;
    IntVec w = lo;
    while (true) {
        IntVec a = mat_apply(adj, w);
        bool ok = true;
        int support = 0;
        for (int i = 0; i < n && ok; ++i) {
            Int ai = sign * a[i];
            if (ai < 0 || ai >= D) ok = false;
            if (ai != 0) ++support;
        }
        if (ok) out.push_back(BoxPoint{w, static_cast<int>(w[d]), support});
        int j = 0;
        while (j < n && w[j] == hi[j]) {
            w[j] = lo[j];
            ++j;
        }
        if (j == n) break;
        ++w[j];
    }
    return out;
}

namespace {

// fixed-point test in M + Z: (x, h) -> (A x + h w, h)
bool box_fixed(const GroupElement& g, const BoxPoint& b) {
    int d = g.linear.rows;
    for (int i = 0; i < d; ++i) {
        Int v = b.point[d] * g.translation[i];
        for (int j = 0; j < d; ++j) v += g.linear.at(i, j) * b.point[j];
        if (v != b.point[i]) return false;
    }
    return true;
}

ClassFunction box_char_filtered(const ActedPolytope& ap, const std::vector<BoxPoint>& pts) {
    IntVec vals(ap.group->num_classes(), 0);
    for (int c = 0; c < ap.group->num_classes(); ++c) {
        const GroupElement& g = ap.maps[ap.group->classReps[c]];
        for (const BoxPoint& b : pts)
            if (box_fixed(g, b)) ++vals[c];
    }
    return ClassFunction(ap.group, std::move(vals));
}

}  // namespace

ClassFunction box_character(const ActedPolytope& ap, int k, bool open) {
    if (k < 0 || k > ap.P.dim + 1) fail(ErrorKind::Schema, "box height out of range");
    std::vector<BoxPoint> pts;
    for (const BoxPoint& b : box_points(ap))
        if (b.height == k && (!open || b.supportSize == ap.P.dim + 1)) pts.push_back(b);
    return box_char_filtered(ap, pts);
}

ClassFunction face_box_character(const ActedPolytope& ap, int r, int k) {
    std::vector<BoxPoint> pts;
    for (const BoxPoint& b : box_points(ap))
        if (b.height == k && b.supportSize == r + 1) pts.push_back(b);
    return box_char_filtered(ap, pts);
}

ClassFunction stratum_character(const ActedPolytope& ap, int k) {
    std::vector<IntVec> pts = stratum_points(ap.P, 1, k);
    IntVec vals(ap.group->num_classes(), 0);
    for (int c = 0; c < ap.group->num_classes(); ++c) {
        const GroupElement& g = ap.maps[ap.group->classReps[c]];
        for (const IntVec& x : pts)
            if (fixed_at_height(g, x, 1)) ++vals[c];
    }
    return ClassFunction(ap.group, std::move(vals));
}

}  // namespace equivar
