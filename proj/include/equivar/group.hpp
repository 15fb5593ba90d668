#pragma once

#include <map>
#include <memory>
#include <vector>

#include "equivar/numeric.hpp"
#include "equivar/polytope.hpp"

namespace equivar {

/// Affine lattice symmetry x -> A x + w with A in GL_d(Z). Composition
/// matches w(gh) = w(g) + g.w(h); the block matrix [[A,w],[0,1]] acts on
/// M' = M + Z preserving the height projection.
struct GroupElement {
    IntMat linear;
    IntVec translation;

    bool operator==(const GroupElement& o) const = default;

    static GroupElement identity(int d);
};

GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse_element(const GroupElement& a);
IntVec apply_affine(const GroupElement& g, const IntVec& x);
/// Action of g on M + Z at height h: x -> A x + h w.
IntVec apply_at_height(const GroupElement& g, const IntVec& x, Int height);

/// Finite group of affine symmetries of a fixed polytope, stored by full
/// element enumeration with conjugacy-class structure. Element 0 is the
/// identity; class representatives are the minimal-index members.
struct FiniteGroup {
    std::vector<GroupElement> elements;
    std::vector<std::vector<int>> vertexPerm;  // action on the polytope's vertices
    std::vector<int> inverseOf;
    std::vector<int> classOf;
    std::vector<std::vector<int>> classes;  // ascending element indices
    std::vector<int> classReps;
    std::vector<int> inverseClassOf;

    int order() const { return static_cast<int>(elements.size()); }
    int num_classes() const { return static_cast<int>(classes.size()); }
    int mul(int i, int j) const;
    int index_of(const GroupElement& e) const;
    const GroupElement& rep(int classIdx) const { return elements[classReps[classIdx]]; }

    std::map<IntVec, int> indexMap;  // flattened element -> index
};

FiniteGroup generate_group(const std::vector<GroupElement>& generators, const LatticePolytope& P,
                           int cap = 20000);
/// Wraps an already-closed element list (e.g. a recentered or dual action).
FiniteGroup group_from_elements(std::vector<GroupElement> elems, const LatticePolytope& P);
FiniteGroup trivial_group(const LatticePolytope& P);

/// The unique affine map sending vertex i of P to vertex perm[i]; fails if
/// it is not integral. Convenience for building symmetric-group actions.
GroupElement element_from_vertex_permutation(const LatticePolytope& P,
                                             const std::vector<int>& perm);

/// Exact integer class function; the representation-ring carrier for all
/// characters in this project.
class ClassFunction {
public:
    ClassFunction() = default;
    ClassFunction(const FiniteGroup* g, IntVec values);

    static ClassFunction trivial(const FiniteGroup& g);
    static ClassFunction zero(const FiniteGroup& g);

    const FiniteGroup* group() const { return group_; }
    const IntVec& values() const { return values_; }
    Int at_class(int c) const { return values_[c]; }
    Int at_element(int e) const { return values_[group_->classOf[e]]; }
    Int dim() const { return values_[group_->classOf[0]]; }
    bool is_zero() const;

    ClassFunction operator+(const ClassFunction& o) const;
    ClassFunction operator-(const ClassFunction& o) const;
    ClassFunction operator*(const ClassFunction& o) const;  // classwise (tensor)
    ClassFunction scaled(Int k) const;
    bool operator==(const ClassFunction& o) const;
    bool operator!=(const ClassFunction& o) const { return !(*this == o); }

    /// <chi, psi> = (1/|G|) sum_g chi(g) psi(g^{-1}), exact.
    Rational inner(const ClassFunction& o) const;

private:
    const FiniteGroup* group_ = nullptr;
    IntVec values_;
};

/// Subgroup given by parent element indices; carries its own group structure
/// (same elements, vertex permutations inherited) so class functions on it
/// are first-class values. The standalone group is held behind a shared_ptr
/// so its address survives copies and moves of the Subgroup.
struct Subgroup {
    const FiniteGroup* parent = nullptr;
    std::vector<int> members;  // sorted, contains 0
    std::shared_ptr<const FiniteGroup> group;
    std::vector<int> memberIndex;  // parent element -> member position or -1
};

Subgroup make_subgroup(const FiniteGroup& parent, std::vector<int> members);

/// Character of the k-th exterior power of the defining lattice action,
/// read off principal minors. k = d gives det(rho).
ClassFunction exterior_character(const FiniteGroup& g, int k);
ClassFunction trace_character(const FiniteGroup& g);
ClassFunction det_character(const FiniteGroup& g);

// Same, evaluated on explicitly supplied matrices per conjugacy class
// (restricted or dual actions).
ClassFunction exterior_character_of(const FiniteGroup& g, const std::vector<IntMat>& matPerClass,
                                    int k);

/// Induced character: (Ind chi)(g) = (1/|H|) sum_{x : x^-1 g x in H} chi(x^-1 g x).
ClassFunction induce(const Subgroup& sub, const ClassFunction& chi);
ClassFunction restrict_to(const ClassFunction& chi, const Subgroup& sub);

/// Multiplicity of a linear (+-1-valued) character in an effective character.
Int multiplicity(const ClassFunction& chi, const ClassFunction& lambda);

/// Permutation character of the group acting on its polytope's vertex set.
ClassFunction vertex_character(const FiniteGroup& g);

/// Restriction of one P-preserving affine map to a face Q it fixes,
/// expressed in the HNF basis of the face lattice anchored at the
/// lexicographically smallest vertex of Q.
GroupElement restrict_element_to_face(const LatticePolytope& P, int faceId,
                                      const GroupElement& g);

/// The (basis, anchor) frame used by restrict_element_to_face.
std::pair<IntMat, IntVec> face_lattice_frame(const LatticePolytope& P, int faceId);

/// Isotropy subgroup of a face with its restricted action.
struct FaceAction {
    int faceId = -1;
    Subgroup isotropy;
    LatticePolytope facePolytope;           // in face coordinates
    std::vector<GroupElement> restricted;   // per isotropy member
    ClassFunction detRestricted;            // on isotropy.group, values +-1
    IntMat basis;                           // ambient-dim x face-dim lattice basis
    IntVec anchor;
};

}  // namespace equivar
