#include "equivar/hodge.hpp"

#include <algorithm>
#include <memory>

namespace equivar {

namespace {

int parity_sign(int k) { return k % 2 == 0 ? 1 : -1; }

}  // namespace

ClassFunction EHDPolynomial::coeff(int p, int q) const {
    auto it = terms_.find({p, q});
    if (it != terms_.end()) return it->second;
    return ClassFunction::zero(*group_);
}

void EHDPolynomial::add_term(int p, int q, const ClassFunction& cf) {
    auto it = terms_.find({p, q});
    if (it == terms_.end()) {
        if (!cf.is_zero()) terms_.emplace(std::make_pair(p, q), cf);
        return;
    }
    it->second = it->second + cf;
    if (it->second.is_zero()) terms_.erase(it);
}

EHDPolynomial EHDPolynomial::operator+(const EHDPolynomial& o) const {
    EHDPolynomial r = *this;
    for (const auto& [pq, cf] : o.terms_) r.add_term(pq.first, pq.second, cf);
    return r;
}

EHDPolynomial EHDPolynomial::operator-(const EHDPolynomial& o) const {
    EHDPolynomial r = *this;
    for (const auto& [pq, cf] : o.terms_) r.add_term(pq.first, pq.second, cf.scaled(-1));
    return r;
}

EHDPolynomial EHDPolynomial::operator*(const EHDPolynomial& o) const {
    EHDPolynomial r(group_);
    for (const auto& [pq1, cf1] : terms_)
        for (const auto& [pq2, cf2] : o.terms_)
            r.add_term(pq1.first + pq2.first, pq1.second + pq2.second, cf1 * cf2);
    return r;
}

bool EHDPolynomial::operator==(const EHDPolynomial& o) const {
    return group_ == o.group_ && terms_ == o.terms_;
}

EHDPolynomial EHDPolynomial::swapped_uv() const {
    EHDPolynomial r(group_);
    for (const auto& [pq, cf] : terms_) r.add_term(pq.second, pq.first, cf);
    return r;
}

EHDPolynomial EHDPolynomial::dual_transform(int n) const {
    EHDPolynomial r(group_);
    for (const auto& [pq, cf] : terms_) r.add_term(n - pq.first, n - pq.second, cf);
    return r;
}

ClassFunction EHDPolynomial::row_sum(int p) const {
    ClassFunction s = ClassFunction::zero(*group_);
    for (const auto& [pq, cf] : terms_)
        if (pq.first == p) s = s + cf;
    return s;
}

EHDPolynomial induce_ehd(const Subgroup& sub, const EHDPolynomial& e) {
    EHDPolynomial r(sub.parent);
    for (const auto& [pq, cf] : e.terms()) r.add_term(pq.first, pq.second, induce(sub, cf));
    return r;
}

EHDPolynomial torus_E(const FiniteGroup& g, const std::vector<IntMat>& matPerClass, int r) {
    EHDPolynomial e(&g);
    for (int k = 0; k <= r; ++k)
        e.add_term(k, k, exterior_character_of(g, matPerClass, r - k).scaled(parity_sign(r + k)));
    return e;
}

namespace {

std::vector<IntMat> restricted_mats_per_class(const FaceAction& fa) {
    std::vector<IntMat> mats;
    for (int c = 0; c < fa.isotropy.group->num_classes(); ++c)
        mats.push_back(fa.restricted[fa.isotropy.group->classReps[c]].linear);
    return mats;
}

// Orbit representatives (minimal face id) of the action on nonempty faces,
// optionally filtered by dimension.
std::vector<int> face_orbit_reps(const std::vector<std::vector<int>>& perms,
                                 const LatticePolytope& P, int dimFilter = -2) {
    std::vector<char> seen(P.faces.size(), 0);
    std::vector<int> reps;
    for (const Face& f : P.faces) {
        if (f.dim < 0 || seen[f.id]) continue;
        if (dimFilter != -2 && f.dim != dimFilter) continue;  // orbits preserve dim
        std::vector<int> stack{f.id};
        seen[f.id] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& pm : perms)
                if (!seen[pm[x]]) {
                    seen[pm[x]] = 1;
                    stack.push_back(pm[x]);
                }
        }
        reps.push_back(f.id);
    }
    return reps;
}

}  // namespace

EHDPolynomial toric_E(const ActedPolytope& ap) {
    auto perms = acted_face_permutations(ap);
    EHDPolynomial total(ap.group);
    for (int rep : face_orbit_reps(perms, ap.P)) {
        FaceAction fa = face_isotropy(ap, rep);
        EHDPolynomial orbitTorus =
            torus_E(*fa.isotropy.group, restricted_mats_per_class(fa), ap.P.face(rep).dim);
        total = total + induce_ehd(fa.isotropy, orbitTorus);
    }
    return total;
}

namespace {

IntMat dual_matrix(const IntMat& a) { return mat_transpose(unimodular_inverse(a)); }

}  // namespace

EHDPolynomial toric_E_face_fan(const ActedPolytope& ap) {
    const LatticePolytope& P = ap.P;
    int d = P.dim;
    for (const GroupElement& g : ap.maps)
        for (Int t : g.translation)
            if (t != 0) fail(ErrorKind::InvariantViolation, "face fan requires a linear action");

    std::vector<IntMat> dualMats;
    for (int c = 0; c < ap.group->num_classes(); ++c)
        dualMats.push_back(dual_matrix(ap.maps[ap.group->classReps[c]].linear));
    EHDPolynomial total = torus_E(*ap.group, dualMats, d);

    auto perms = acted_face_permutations(ap);
    for (int rep : face_orbit_reps(perms, ap.P)) {
        const Face& f = P.face(rep);
        if (f.dim == d) continue;  // only cones over proper faces
        FaceAction fa = face_isotropy(ap, rep);
        // lattice orthogonal to the cone over Q inside the dual lattice
        IntMat vertRows(static_cast<int>(f.vertexSet.size()), d);
        for (size_t r = 0; r < f.vertexSet.size(); ++r)
            for (int j = 0; j < d; ++j) vertRows.at(static_cast<int>(r), j) = P.vertices[f.vertexSet[r]][j];
        IntMat K = integer_kernel(vertRows);
        if (K.cols != d - 1 - f.dim)
            fail(ErrorKind::InvariantViolation, "face-fan orbit lattice has unexpected rank");
        std::vector<IntMat> mats;
        for (int c = 0; c < fa.isotropy.group->num_classes(); ++c) {
            int parentElem = fa.isotropy.members[fa.isotropy.group->classReps[c]];
            IntMat image = mat_mul(dual_matrix(ap.maps[parentElem].linear), K);
            IntMat m(K.cols, K.cols);
            for (int col = 0; col < K.cols; ++col) {
                IntVec v(static_cast<size_t>(K.rows));
                for (int j = 0; j < K.rows; ++j) v[j] = image.at(j, col);
                IntVec x = solve_integer(K, v, ErrorKind::InvariantViolation,
                                         "dual action on orbit lattice");
                for (int j = 0; j < K.cols; ++j) m.at(j, col) = x[j];
            }
            mats.push_back(m);
        }
        total = total + induce_ehd(fa.isotropy, torus_E(*fa.isotropy.group, mats, K.cols));
    }
    return total;
}

std::vector<ClassFunction> chi_y_rows(const ActedPolytope& ap, const PhiPolynomial& phi) {
    int d = ap.P.dim;
    ClassFunction detRho = action_det_character(ap);
    std::vector<ClassFunction> rows;
    for (int p = 0; p <= d - 1; ++p) {
        ClassFunction wedge = action_exterior_character(ap, d - 1 - p).scaled(parity_sign(d - 1 - p));
        ClassFunction prim = (detRho * phi.coeffs[p + 1]).scaled(parity_sign(d - 1));
        rows.push_back(wedge + prim);
    }
    return rows;
}

namespace {

// Per inner face orbit of a fixed outer face: dim Q' and the vectors
// Ind_{G_{Q'}}^{H} [ det(rho_{Q'}) phi_{Q',j} ], j = 0..dim Q', living on the
// supplied context group H.
struct InnerData {
    int dim = 0;
    std::vector<ClassFunction> indTerms;
};

std::vector<InnerData> inner_face_data(const ActedPolytope& ctx, int outerFaceId,
                                       const PhiPolynomial* topPhi) {
    const LatticePolytope& P = ctx.P;
    const Face& outer = P.face(outerFaceId);
    auto perms = acted_face_permutations(ctx);
    std::vector<InnerData> out;
    std::vector<char> seen(P.faces.size(), 0);
    for (const Face& f : P.faces) {
        if (f.dim < 1 || seen[f.id]) continue;
        if (!std::includes(outer.vertexSet.begin(), outer.vertexSet.end(), f.vertexSet.begin(),
                           f.vertexSet.end()))
            continue;
        std::vector<int> stack{f.id};
        seen[f.id] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& pm : perms)
                if (!seen[pm[x]]) {
                    seen[pm[x]] = 1;
                    stack.push_back(pm[x]);
                }
        }
        InnerData data;
        data.dim = f.dim;
        if (topPhi != nullptr && f.id == P.topFace) {
            ClassFunction detRho = action_det_character(ctx);
            for (int j = 0; j <= f.dim; ++j) data.indTerms.push_back(detRho * topPhi->coeffs[j]);
        } else {
            FaceAction fa2 = face_isotropy(ctx, f.id);
            PhiPolynomial phi2 = compute_phi(face_restriction(fa2));
            if (!phi2.isPolynomial)
                fail(ErrorKind::PhiNotPolynomial, "face phi series is not a polynomial");
            for (int j = 0; j <= f.dim; ++j)
                data.indTerms.push_back(induce(fa2.isotropy, fa2.detRestricted * phi2.coeffs[j]));
        }
        out.push_back(std::move(data));
    }
    return out;
}

}  // namespace

EHDPolynomial hypersurface_E(const ActedPolytope& ap, const PhiPolynomial& phi) {
    const LatticePolytope& P = ap.P;
    int d = P.dim;
    EHDPolynomial E(ap.group);
    if (d == 0) return E;  // hypersurface of a point torus is empty
    if (!classify(P).isSimple)
        fail(ErrorKind::NotSimple, "off-diagonal Hodge-Deligne entries require a simple polytope");
    if (!phi.isPolynomial) fail(ErrorKind::PhiNotPolynomial, "phi series is not a polynomial");

    ClassFunction detRho = action_det_character(ap);
    std::vector<ClassFunction> rows = chi_y_rows(ap, phi);

    // Gysin zone: e^{p,p} above the middle
    for (int p = 0; p <= d - 1; ++p)
        if (2 * p > d - 1)
            E.add_term(p, p, action_exterior_character(ap, d - 1 - p).scaled(parity_sign(d - 1 - p)));

    // off-diagonal entries from the double face-orbit sum
    if (d >= 2) {
        auto perms = acted_face_permutations(ap);
        struct Outer {
            bool isTop = false;
            FaceAction fa;
            std::vector<InnerData> inners;
        };
        std::map<int, std::unique_ptr<Outer>> cache;
        auto outer_data = [&](int rep) -> Outer& {
            auto it = cache.find(rep);
            if (it != cache.end()) return *it->second;
            auto o = std::make_unique<Outer>();
            if (rep == P.topFace) {
                o->isTop = true;
                o->inners = inner_face_data(ap, rep, &phi);
            } else {
                o->fa = face_isotropy(ap, rep);
                ActedPolytope sub = sub_action(ap, o->fa.isotropy);
                o->inners = inner_face_data(sub, rep, nullptr);
            }
            return *cache.emplace(rep, std::move(o)).first->second;
        };

        for (int p = 1; p <= d - 1; ++p)
            for (int q = 0; q < p && p + q <= d - 1; ++q) {
                ClassFunction acc = ClassFunction::zero(*ap.group);
                for (int rep : face_orbit_reps(perms, P, p + q + 1)) {
                    Outer& o = outer_data(rep);
                    const FiniteGroup* H = o.isTop ? ap.group : o.fa.isotropy.group.get();
                    ClassFunction innerSum = ClassFunction::zero(*H);
                    for (const InnerData& in : o.inners)
                        if (p + 1 <= in.dim)
                            innerSum = innerSum + in.indTerms[p + 1].scaled(parity_sign(in.dim));
                    if (o.isTop)
                        acc = acc + detRho * innerSum;
                    else
                        acc = acc + induce(o.fa.isotropy, o.fa.detRestricted * innerSum);
                }
                ClassFunction epq = (detRho * acc).scaled(parity_sign(d + p + q));
                E.add_term(p, q, epq);
                E.add_term(q, p, epq);
            }
    }

    // remaining diagonal entries from the chi_y row totals
    for (int p = 0; p <= d - 1; ++p) {
        if (2 * p > d - 1) continue;
        ClassFunction diag = rows[p];
        for (int q = 0; q <= d - 1; ++q)
            if (q != p) diag = diag - E.coeff(p, q);
        E.add_term(p, p, diag);
    }

    // cross-checks: row totals, u<->v symmetry, lattice-point corner formulas
    for (int p = 0; p <= d - 1; ++p)
        if (!(E.row_sum(p) == rows[p]))
            fail(ErrorKind::InvariantViolation, "row sums disagree with the chi_y characteristic");
    if (!(E == E.swapped_uv()))
        fail(ErrorKind::InvariantViolation, "Hodge-Deligne polynomial is not u<->v symmetric");

    int sgn = parity_sign(d - 1);
    for (int p = 1; p <= d - 1; ++p) {
        ClassFunction expected = (detRho * stratum_character(ap, p + 1)).scaled(sgn);
        if (!(E.coeff(p, 0) == expected))
            fail(ErrorKind::InvariantViolation, "e^{p,0} disagrees with the face-stratum formula");
    }
    {
        ClassFunction inner = stratum_character(ap, 1) + stratum_character(ap, 0) -
                              ClassFunction::trivial(*ap.group);
        if (!(E.coeff(0, 0) == (detRho * inner).scaled(sgn)))
            fail(ErrorKind::InvariantViolation, "e^{0,0} disagrees with the skeleton formula");
    }
    if (P.is_simplex()) {
        for (int p = 1; p <= d - 1; ++p)
            for (int q = 0; q < p && p + q <= d - 1; ++q) {
                ClassFunction expected =
                    (detRho * face_box_character(ap, p + q + 1, p + 1)).scaled(sgn);
                if (!(E.coeff(p, q) == expected))
                    fail(ErrorKind::InvariantViolation,
                         "off-diagonal entry disagrees with the simplex box formula");
            }
    }
    return E;
}

EHDPolynomial hypersurface_E(const ActedPolytope& ap) {
    if (ap.P.dim == 0) return EHDPolynomial(ap.group);
    PhiPolynomial phi = compute_phi(ap);
    return hypersurface_E(ap, phi);
}

std::vector<ClassFunction> primitive_hodge(const ActedPolytope& ap, const PhiPolynomial& phi) {
    const LatticePolytope& P = ap.P;
    int d = P.dim;
    if (d < 1) fail(ErrorKind::Schema, "primitive cohomology needs dim >= 1");
    if (!classify(P).isSimple) fail(ErrorKind::NotSimple, "primitive cohomology requires a simple polytope");
    if (!phi.isPolynomial) fail(ErrorKind::PhiNotPolynomial, "phi series is not a polynomial");

    std::vector<InnerData> faceData = inner_face_data(ap, P.topFace, &phi);
    std::vector<ClassFunction> result(static_cast<size_t>(d), ClassFunction::zero(*ap.group));
    int hi = d / 2;  // smallest p with p >= (d-1)/2
    for (int p = d - 1; p >= hi; --p) {
        ClassFunction s = ClassFunction::zero(*ap.group);
        for (const InnerData& in : faceData)
            if (p + 1 <= in.dim) s = s + in.indTerms[p + 1].scaled(parity_sign(d - in.dim));
        result[p] = s;
    }
    for (int p = 0; p < hi; ++p) result[p] = result[d - 1 - p];

    if (P.is_simplex()) {
        ClassFunction detRho = action_det_character(ap);
        for (int p = 0; p <= d - 1; ++p)
            if (!(result[p] == detRho * box_character(ap, p + 1, /*open=*/true)))
                fail(ErrorKind::InvariantViolation,
                     "face-orbit and box-point primitive cohomology disagree");
    }
    return result;
}

std::vector<ClassFunction> primitive_hodge(const ActedPolytope& ap) {
    PhiPolynomial phi = compute_phi(ap);
    return primitive_hodge(ap, phi);
}

HodgeDiamond hodge_diamond(const ActedPolytope& ap) {
    const LatticePolytope& P = ap.P;
    int d = P.dim;
    if (d < 1) fail(ErrorKind::Schema, "hypersurface diamonds need dim >= 1");
    if (!classify(P).isSimple) fail(ErrorKind::NotSimple, "diamond assembly requires a simple polytope");
    PhiPolynomial phi = compute_phi(ap);
    if (!phi.isPolynomial) fail(ErrorKind::PhiNotPolynomial, "phi series is not a polynomial");

    std::vector<ClassFunction> prim = primitive_hodge(ap, phi);
    EHDPolynomial Y = toric_E(ap);
    std::vector<ClassFunction> yDiag;
    for (int p = 0; p <= d; ++p) yDiag.push_back(Y.coeff(p, p));
    for (int p = 0; p <= d; ++p)
        if (!(yDiag[p] == yDiag[d - p]))
            fail(ErrorKind::InvariantViolation, "toric diagonal is not Poincare symmetric");

    HodgeDiamond D;
    D.group = ap.group;
    D.dim = d - 1;
    D.entries.assign(static_cast<size_t>(d) * d, ClassFunction::zero(*ap.group));
    for (int p = 0; p <= d - 1; ++p)
        for (int q = 0; q <= d - 1; ++q) {
            if (p == q) {
                if (2 * p < d - 1)
                    D.at(p, q) = yDiag[p];
                else if (2 * p > d - 1)
                    D.at(p, q) = yDiag[p + 1];
                else
                    D.at(p, q) = yDiag[p] + prim[p];
            } else if (p + q == d - 1) {
                D.at(p, q) = prim[p];
            }
        }

    ClassFunction detRho = action_det_character(ap);
    ClassFunction chiStar = ehrhart_character(ap, 1, Region::Interior);
    for (int p = 0; p <= d - 1; ++p)
        for (int q = 0; q <= d - 1; ++q) {
            if (!(D.at(p, q) == D.at(q, p)))
                fail(ErrorKind::InvariantViolation, "diamond breaks conjugation symmetry");
            if (!(D.at(p, q) == D.at(d - 1 - p, d - 1 - q)))
                fail(ErrorKind::InvariantViolation, "diamond breaks Poincare duality");
        }
    if (d >= 2) {
        if (!(D.at(d - 1, 0) == detRho * chiStar))
            fail(ErrorKind::InvariantViolation, "geometric-genus corner disagrees with det(rho) chi*_P");
    } else {
        if (!(D.at(0, 0) == ClassFunction::trivial(*ap.group) + detRho * chiStar))
            fail(ErrorKind::InvariantViolation, "point-hypersurface diamond mismatch");
    }
    ClassFunction trivial = ClassFunction::trivial(*ap.group);
    int idClass = ap.group->classOf[0];
    for (int p = 0; p <= d - 1; ++p)
        for (int q = 0; q <= d - 1; ++q) {
            const ClassFunction& h = D.at(p, q);
            Rational m1 = h.inner(trivial), m2 = h.inner(detRho);
            if (!m1.is_integer() || m1 < Rational(0) || !m2.is_integer() || m2 < Rational(0))
                fail(ErrorKind::InvariantViolation, "diamond entry is not an effective character");
            for (Int v : h.values())
                if (std::abs(v) > h.at_class(idClass))
                    fail(ErrorKind::InvariantViolation, "diamond entry violates the dimension bound");
        }

    // E-polynomial consistency: diamond vs face stratification
    EHDPolynomial EX(ap.group);
    for (int p = 0; p <= d - 1; ++p)
        for (int q = 0; q <= d - 1; ++q) EX.add_term(p, q, D.at(p, q).scaled(parity_sign(p + q)));
    if (!(EX == EX.dual_transform(d - 1)))
        fail(ErrorKind::InvariantViolation, "compact E-polynomial functional equation fails");

    EHDPolynomial strat(ap.group);
    auto perms = acted_face_permutations(ap);
    for (int rep : face_orbit_reps(perms, P)) {
        const Face& f = P.face(rep);
        if (f.dim == 0) continue;  // stratum hypersurface is empty
        if (rep == P.topFace) {
            strat = strat + hypersurface_E(ap, phi);
        } else {
            FaceAction fa = face_isotropy(ap, rep);
            ActedPolytope sub = face_restriction(fa);
            strat = strat + induce_ehd(fa.isotropy, hypersurface_E(sub));
        }
    }
    if (!(EX == strat))
        fail(ErrorKind::InvariantViolation, "stratified additivity fails for the compact E-polynomial");
    return D;
}

QuotientDiamond quotient_diamond(const HodgeDiamond& diamond, const Subgroup& sub) {
    if (sub.parent != diamond.group)
        fail(ErrorKind::InvariantViolation, "subgroup does not live in the diamond's group");
    int n = diamond.dim;
    Int h = static_cast<Int>(sub.members.size());
    QuotientDiamond q;
    q.dim = n;
    q.entries.assign(static_cast<size_t>(n + 1) * (n + 1), 0);
    for (int p = 0; p <= n; ++p)
        for (int r = 0; r <= n; ++r) {
            Int sum = 0;
            for (int m : sub.members) sum = checked_add(sum, diamond.at(p, r).at_element(m));
            if (sum % h != 0) fail(ErrorKind::NonIntegralMultiplicity, "quotient dimension is not integral");
            Int v = sum / h;
            if (v < 0) fail(ErrorKind::NegativeMultiplicity, "quotient dimension is negative");
            q.entries[static_cast<size_t>(p) * (n + 1) + r] = v;
        }
    return q;
}

std::map<int, Int> mobius_fixed_faces(const ActedPolytope& ap, int elementIdx) {
    const LatticePolytope& P = ap.P;
    if (!classify(P).isSimple)
        fail(ErrorKind::NotSimple, "the Mobius closed form requires a simple polytope");
    auto perms = acted_face_permutations(ap);
    const std::vector<int>& fp = perms[elementIdx];
    std::vector<int> fixed;
    for (const Face& f : P.faces)
        if (f.dim >= 0 && fp[f.id] == f.id) fixed.push_back(f.id);
    std::sort(fixed.begin(), fixed.end(),
              [&](int a, int b) { return P.face(a).dim > P.face(b).dim; });

    std::map<int, Int> mu;
    for (int id : fixed) {
        if (id == P.topFace) {
            mu[id] = 1;
            continue;
        }
        Int s = 0;
        const std::vector<int>& vs = P.face(id).vertexSet;
        for (int zid : fixed) {
            if (zid == id || mu.find(zid) == mu.end()) continue;
            const std::vector<int>& zvs = P.face(zid).vertexSet;
            if (std::includes(zvs.begin(), zvs.end(), vs.begin(), vs.end())) s += mu[zid];
        }
        mu[id] = -s;
    }

    const GroupElement& g = ap.maps[elementIdx];
    Int dRho = det(g.linear);
    for (int id : fixed) {
        Int dQ = det(restrict_element_to_face(P, id, g).linear);
        Int closed = parity_sign(P.dim - P.face(id).dim) * dRho * dQ;
        if (closed != mu[id])
            fail(ErrorKind::InvariantViolation, "Mobius recursion and closed form disagree");
    }
    return mu;
}

}  // namespace equivar
