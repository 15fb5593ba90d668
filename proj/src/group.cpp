#include "equivar/group.hpp"

#include <algorithm>
#include <deque>

namespace equivar {

GroupElement GroupElement::identity(int d) {
    return {IntMat::identity(d), IntVec(static_cast<size_t>(d), 0)};
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
    GroupElement r;
    r.linear = mat_mul(a.linear, b.linear);
    r.translation = mat_apply(a.linear, b.translation);
    for (size_t i = 0; i < r.translation.size(); ++i)
        r.translation[i] = checked_add(r.translation[i], a.translation[i]);
    return r;
}

GroupElement inverse_element(const GroupElement& a) {
    GroupElement r;
    r.linear = unimodular_inverse(a.linear);
    r.translation = mat_apply(r.linear, a.translation);
    for (Int& t : r.translation) t = -t;
    return r;
}

IntVec apply_affine(const GroupElement& g, const IntVec& x) {
    IntVec r = mat_apply(g.linear, x);
    for (size_t i = 0; i < r.size(); ++i) r[i] = checked_add(r[i], g.translation[i]);
    return r;
}

IntVec apply_at_height(const GroupElement& g, const IntVec& x, Int height) {
    IntVec r = mat_apply(g.linear, x);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = checked_add(r[i], checked_mul(height, g.translation[i]));
    return r;
}

namespace {

IntVec flatten(const GroupElement& e) {
    IntVec key = e.linear.a;
    key.insert(key.end(), e.translation.begin(), e.translation.end());
    return key;
}

// Permutation of P's vertices induced by g, or empty if g does not map the
// vertex set onto itself.
std::vector<int> vertex_permutation(const LatticePolytope& P, const GroupElement& g) {
    std::map<IntVec, int> lookup;
    for (size_t i = 0; i < P.vertices.size(); ++i) lookup[P.vertices[i]] = static_cast<int>(i);
    std::vector<int> perm(P.vertices.size(), -1);
    for (size_t i = 0; i < P.vertices.size(); ++i) {
        auto it = lookup.find(apply_affine(g, P.vertices[i]));
        if (it == lookup.end()) return {};
        perm[i] = it->second;
    }
    std::vector<int> seen(perm.size(), 0);
    for (int p : perm)
        if (++seen[p] > 1) return {};
    return perm;
}

// class structure, inverses, index map; vertexPerm must already be set
void finalize_structure(FiniteGroup& g) {
    int n = g.order();
    g.indexMap.clear();
    for (int i = 0; i < n; ++i) g.indexMap[flatten(g.elements[i])] = i;
    int d = g.elements[0].linear.rows;
    if (g.index_of(GroupElement::identity(d)) != 0)
        fail(ErrorKind::InvariantViolation, "element 0 is not the identity");

    g.inverseOf.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        g.inverseOf[i] = g.index_of(inverse_element(g.elements[i]));
        if (g.inverseOf[i] < 0) fail(ErrorKind::InvariantViolation, "group not closed under inverse");
    }

    g.classOf.assign(n, -1);
    g.classes.clear();
    g.classReps.clear();
    for (int i = 0; i < n; ++i) {
        if (g.classOf[i] >= 0) continue;
        int c = static_cast<int>(g.classes.size());
        std::vector<int> members;
        for (int x = 0; x < n; ++x) {
            int conj = g.mul(g.mul(x, i), g.inverseOf[x]);
            if (g.classOf[conj] < 0) {
                g.classOf[conj] = c;
                members.push_back(conj);
            }
        }
        std::sort(members.begin(), members.end());
        g.classes.push_back(std::move(members));
        g.classReps.push_back(g.classes.back().front());
    }
    g.inverseClassOf.assign(g.num_classes(), -1);
    for (int c = 0; c < g.num_classes(); ++c)
        g.inverseClassOf[c] = g.classOf[g.inverseOf[g.classReps[c]]];
}

void finalize_group(FiniteGroup& g, const LatticePolytope& P) {
    int n = g.order();
    g.vertexPerm.assign(n, {});
    for (int i = 0; i < n; ++i) {
        g.vertexPerm[i] = vertex_permutation(P, g.elements[i]);
        if (g.vertexPerm[i].empty())
            fail(ErrorKind::NotSymmetry, "group element does not permute the polytope vertices");
    }
    finalize_structure(g);
}

}  // namespace

int FiniteGroup::mul(int i, int j) const {
    int r = index_of(compose(elements[i], elements[j]));
    if (r < 0) fail(ErrorKind::InvariantViolation, "group not closed under composition");
    return r;
}

int FiniteGroup::index_of(const GroupElement& e) const {
    auto it = indexMap.find(flatten(e));
    return it == indexMap.end() ? -1 : it->second;
}

FiniteGroup generate_group(const std::vector<GroupElement>& generators, const LatticePolytope& P,
                           int cap) {
    int d = P.dim;
    for (const GroupElement& g : generators) {
        if (g.linear.rows != d || g.linear.cols != d ||
            static_cast<int>(g.translation.size()) != d)
            fail(ErrorKind::Schema, "generator dimension mismatch");
        Int dt = det(g.linear);
        if (dt != 1 && dt != -1) fail(ErrorKind::Schema, "generator matrix is not unimodular");
        if (vertex_permutation(P, g).empty())
            fail(ErrorKind::NotSymmetry, "generator does not permute the polytope vertices");
    }

    FiniteGroup g;
    g.elements.push_back(GroupElement::identity(d));
    std::map<IntVec, int> seen;
    seen[flatten(g.elements[0])] = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (const GroupElement& gen : generators) {
            GroupElement prod = compose(gen, g.elements[i]);
            IntVec key = flatten(prod);
            if (seen.count(key)) continue;
            if (static_cast<int>(g.elements.size()) >= cap)
                fail(ErrorKind::GroupTooLarge, "group closure exceeded the element cap");
            seen[key] = static_cast<int>(g.elements.size());
            g.elements.push_back(prod);
            queue.push_back(static_cast<int>(g.elements.size()) - 1);
        }
    }
    finalize_group(g, P);
    return g;
}

FiniteGroup group_from_elements(std::vector<GroupElement> elems, const LatticePolytope& P) {
    FiniteGroup g;
    g.elements = std::move(elems);
    finalize_group(g, P);
    return g;
}

FiniteGroup trivial_group(const LatticePolytope& P) {
    return group_from_elements({GroupElement::identity(P.dim)}, P);
}

GroupElement element_from_vertex_permutation(const LatticePolytope& P,
                                             const std::vector<int>& perm) {
    int d = P.dim;
    int n = static_cast<int>(P.vertices.size());
    if (static_cast<int>(perm.size()) != n) fail(ErrorKind::Schema, "permutation size mismatch");
    // pick an affine basis among the vertices
    std::vector<int> basis{0};
    for (int i = 1; i < n && static_cast<int>(basis.size()) < d + 1; ++i) {
        IntMat diffs(static_cast<int>(basis.size()), d);
        for (size_t b = 1; b < basis.size(); ++b)
            for (int j = 0; j < d; ++j)
                diffs.at(static_cast<int>(b) - 1, j) = P.vertices[basis[b]][j] - P.vertices[basis[0]][j];
        for (int j = 0; j < d; ++j) diffs.at(static_cast<int>(basis.size()) - 1, j) =
            P.vertices[i][j] - P.vertices[basis[0]][j];
        if (rank(diffs) == static_cast<int>(basis.size())) basis.push_back(i);
    }
    if (static_cast<int>(basis.size()) != d + 1)
        fail(ErrorKind::NotFullDimensional, "vertices do not affinely span");

    // solve A (v_i - v_0) = v_perm(i) - v_perm(0) columnwise
    IntMat src(d, d), dst(d, d);
    for (int c = 0; c < d; ++c)
        for (int j = 0; j < d; ++j) {
            src.at(j, c) = P.vertices[basis[c + 1]][j] - P.vertices[basis[0]][j];
            dst.at(j, c) = P.vertices[perm[basis[c + 1]]][j] - P.vertices[perm[basis[0]]][j];
        }
    Int dt = det(src);
    IntMat adj = adjugate(src);
    IntMat prod = mat_mul(dst, adj);
    GroupElement g;
    g.linear = IntMat(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (prod.at(i, j) % dt != 0)
                fail(ErrorKind::NotSymmetry, "vertex permutation is not an integral affine map");
            g.linear.at(i, j) = prod.at(i, j) / dt;
        }
    g.translation.assign(static_cast<size_t>(d), 0);
    IntVec img = mat_apply(g.linear, P.vertices[basis[0]]);
    for (int j = 0; j < d; ++j) g.translation[j] = P.vertices[perm[basis[0]]][j] - img[j];
    // verify on every vertex
    for (int i = 0; i < n; ++i)
        if (apply_affine(g, P.vertices[i]) != P.vertices[perm[i]])
            fail(ErrorKind::NotSymmetry, "vertex permutation is not realized by an affine map");
    return g;
}

ClassFunction::ClassFunction(const FiniteGroup* g, IntVec values) : group_(g), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != g->num_classes())
        fail(ErrorKind::InvariantViolation, "class function size mismatch");
}

ClassFunction ClassFunction::trivial(const FiniteGroup& g) {
    return ClassFunction(&g, IntVec(static_cast<size_t>(g.num_classes()), 1));
}

ClassFunction ClassFunction::zero(const FiniteGroup& g) {
    return ClassFunction(&g, IntVec(static_cast<size_t>(g.num_classes()), 0));
}

bool ClassFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](Int v) { return v == 0; });
}

namespace {
void require_same_group(const ClassFunction& a, const ClassFunction& b) {
    if (a.group() != b.group())
        fail(ErrorKind::InvariantViolation, "class functions on different groups");
}
}  // namespace

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
    require_same_group(*this, o);
    IntVec v = values_;
    for (size_t i = 0; i < v.size(); ++i) v[i] = checked_add(v[i], o.values_[i]);
    return ClassFunction(group_, std::move(v));
}

ClassFunction ClassFunction::operator-(const ClassFunction& o) const {
    require_same_group(*this, o);
    IntVec v = values_;
    for (size_t i = 0; i < v.size(); ++i) v[i] = checked_add(v[i], -o.values_[i]);
    return ClassFunction(group_, std::move(v));
}

ClassFunction ClassFunction::operator*(const ClassFunction& o) const {
    require_same_group(*this, o);
    IntVec v = values_;
    for (size_t i = 0; i < v.size(); ++i) v[i] = checked_mul(v[i], o.values_[i]);
    return ClassFunction(group_, std::move(v));
}

ClassFunction ClassFunction::scaled(Int k) const {
    IntVec v = values_;
    for (Int& x : v) x = checked_mul(x, k);
    return ClassFunction(group_, std::move(v));
}

bool ClassFunction::operator==(const ClassFunction& o) const {
    return group_ == o.group_ && values_ == o.values_;
}

Rational ClassFunction::inner(const ClassFunction& o) const {
    require_same_group(*this, o);
    Int total = 0;
    for (int c = 0; c < group_->num_classes(); ++c) {
        Int term = checked_mul(values_[c], o.values_[group_->inverseClassOf[c]]);
        total = checked_add(total, checked_mul(term, static_cast<Int>(group_->classes[c].size())));
    }
    return Rational(total, group_->order());
}

Subgroup make_subgroup(const FiniteGroup& parent, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || members[0] != 0) fail(ErrorKind::Schema, "subgroup must contain the identity");
    Subgroup s;
    s.parent = &parent;
    s.members = members;
    s.memberIndex.assign(parent.order(), -1);
    for (size_t i = 0; i < members.size(); ++i) s.memberIndex[members[i]] = static_cast<int>(i);
    for (int a : members)
        for (int b : members)
            if (s.memberIndex[parent.mul(a, b)] < 0)
                fail(ErrorKind::Schema, "subgroup members are not closed under composition");
    if (parent.order() % static_cast<int>(members.size()) != 0)
        fail(ErrorKind::InvariantViolation, "Lagrange violation");
    FiniteGroup sg;
    for (int m : members) {
        sg.elements.push_back(parent.elements[m]);
        sg.vertexPerm.push_back(parent.vertexPerm[m]);
    }
    finalize_structure(sg);
    s.group = std::make_shared<const FiniteGroup>(std::move(sg));
    return s;
}

ClassFunction exterior_character(const FiniteGroup& g, int k) {
    IntVec vals(g.num_classes());
    for (int c = 0; c < g.num_classes(); ++c) vals[c] = principal_minor_sum(g.rep(c).linear, k);
    return ClassFunction(&g, std::move(vals));
}

ClassFunction trace_character(const FiniteGroup& g) { return exterior_character(g, 1); }

ClassFunction det_character(const FiniteGroup& g) {
    return exterior_character(g, g.elements[0].linear.rows);
}

ClassFunction exterior_character_of(const FiniteGroup& g, const std::vector<IntMat>& matPerClass,
                                    int k) {
    IntVec vals(g.num_classes());
    for (int c = 0; c < g.num_classes(); ++c) vals[c] = principal_minor_sum(matPerClass[c], k);
    return ClassFunction(&g, std::move(vals));
}

ClassFunction induce(const Subgroup& sub, const ClassFunction& chi) {
    if (chi.group() != sub.group.get())
        fail(ErrorKind::InvariantViolation, "character is not defined on the subgroup");
    const FiniteGroup& G = *sub.parent;
    Int h = static_cast<Int>(sub.members.size());
    IntVec vals(G.num_classes());
    for (int c = 0; c < G.num_classes(); ++c) {
        int gIdx = G.classReps[c];
        Int sum = 0;
        for (int x = 0; x < G.order(); ++x) {
            int conj = G.mul(G.mul(G.inverseOf[x], gIdx), x);
            int m = sub.memberIndex[conj];
            if (m >= 0) sum = checked_add(sum, chi.at_element(m));
        }
        if (sum % h != 0) fail(ErrorKind::NotInteger, "induced character value is not integral");
        vals[c] = sum / h;
    }
    return ClassFunction(&G, std::move(vals));
}

ClassFunction restrict_to(const ClassFunction& chi, const Subgroup& sub) {
    if (chi.group() != sub.parent)
        fail(ErrorKind::InvariantViolation, "character is not defined on the parent group");
    IntVec vals(sub.group->num_classes());
    for (int c = 0; c < sub.group->num_classes(); ++c)
        vals[c] = chi.at_element(sub.members[sub.group->classReps[c]]);
    return ClassFunction(sub.group.get(), std::move(vals));
}

Int multiplicity(const ClassFunction& chi, const ClassFunction& lambda) {
    for (Int v : lambda.values())
        if (v != 1 && v != -1) fail(ErrorKind::Schema, "multiplicity requires a +-1-valued linear character");
    Rational m = chi.inner(lambda);
    if (!m.is_integer()) fail(ErrorKind::NonIntegralMultiplicity, "non-integral multiplicity");
    if (m.num() < 0) fail(ErrorKind::NegativeMultiplicity, "negative multiplicity");
    return m.num();
}

ClassFunction vertex_character(const FiniteGroup& g) {
    IntVec vals(g.num_classes(), 0);
    for (int c = 0; c < g.num_classes(); ++c) {
        const std::vector<int>& perm = g.vertexPerm[g.classReps[c]];
        for (size_t i = 0; i < perm.size(); ++i)
            if (perm[i] == static_cast<int>(i)) ++vals[c];
    }
    return ClassFunction(&g, std::move(vals));
}

namespace {

// HNF basis of the saturated direction lattice of a face, plus the anchor.
std::pair<IntMat, IntVec> face_frame(const LatticePolytope& P, const Face& f) {
    IntVec anchor = P.vertices[f.vertexSet.front()];
    for (int v : f.vertexSet) anchor = std::min(anchor, P.vertices[v]);
    int d = P.dim;
    IntMat gens(d, static_cast<int>(f.vertexSet.size()));
    for (size_t c = 0; c < f.vertexSet.size(); ++c)
        for (int j = 0; j < d; ++j)
            gens.at(j, static_cast<int>(c)) = P.vertices[f.vertexSet[c]][j] - anchor[j];
    return {saturated_column_basis(gens), anchor};
}

}  // namespace

GroupElement restrict_element_to_face(const LatticePolytope& P, int faceId,
                                      const GroupElement& g) {
    const Face& f = P.face(faceId);
    if (f.dim < 0) fail(ErrorKind::Schema, "cannot restrict to the empty face");
    auto [basis, anchor] = face_frame(P, f);
    int k = basis.cols;
    GroupElement r;
    r.linear = IntMat(k, k);
    IntMat image = mat_mul(g.linear, basis);
    for (int c = 0; c < k; ++c) {
        IntVec col(static_cast<size_t>(basis.rows));
        for (int j = 0; j < basis.rows; ++j) col[j] = image.at(j, c);
        IntVec x = solve_integer(basis, col, ErrorKind::InvariantViolation,
                                 "face restriction of linear part");
        for (int j = 0; j < k; ++j) r.linear.at(j, c) = x[j];
    }
    IntVec shifted = apply_affine(g, anchor);
    for (size_t j = 0; j < shifted.size(); ++j) shifted[j] -= anchor[j];
    r.translation = solve_integer(basis, shifted, ErrorKind::InvariantViolation,
                                  "face restriction of translation");
    return r;
}

std::pair<IntMat, IntVec> face_lattice_frame(const LatticePolytope& P, int faceId) {
    return face_frame(P, P.face(faceId));
}

}  // namespace equivar
