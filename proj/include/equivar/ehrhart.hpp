#pragma once

#include <string>
#include <vector>

#include "equivar/group.hpp"
#include "equivar/polytope.hpp"

namespace equivar {

/// A polytope together with a group and the affine action of each group
/// element on the polytope's ambient lattice. For a polytope carrying its
/// own symmetry group the maps are the group elements themselves; for a
/// face it is the restricted action in face coordinates.
struct ActedPolytope {
    LatticePolytope P;
    const FiniteGroup* group = nullptr;
    std::vector<GroupElement> maps;  // aligned with group->elements
};

ActedPolytope acted(const LatticePolytope& P, const FiniteGroup& g);
/// The face polytope with the isotropy action; the FaceAction must outlive
/// the returned value (it owns the isotropy group).
ActedPolytope face_restriction(const FaceAction& fa);
/// Same polytope, acted on by a subgroup; the Subgroup must outlive the result.
ActedPolytope sub_action(const ActedPolytope& ap, const Subgroup& sub);

/// [elem][faceId] -> image face id under the action's affine maps.
std::vector<std::vector<int>> acted_face_permutations(const ActedPolytope& ap);

/// Isotropy subgroup of a face, its polytope in face coordinates, and the
/// restricted affine action of each member.
FaceAction face_isotropy(const ActedPolytope& ap, int faceId);
FaceAction face_isotropy(const FiniteGroup& g, const LatticePolytope& P, int faceId);

/// Truncated power series with ClassFunction coefficients.
struct CharacterSeries {
    const FiniteGroup* group = nullptr;
    std::vector<ClassFunction> coefficients;  // index = degree
};

/// Permutation character of the dilate mP (affine fixed-point condition
/// A x + m w = x), or of its interior.
ClassFunction ehrhart_character(const ActedPolytope& ap, Int m, Region region);

CharacterSeries ehrhart_series(const ActedPolytope& ap, int order, Region region);

struct EffectivenessEntry {
    std::string lambda;  // "trivial" or "det"
    int coeff = 0;
    bool integral = false;
    bool nonnegative = false;
    Rational value;
};

/// phi[t] with its diagnostics. Coefficients 0..d; polynomiality is
/// evidence from a truncation buffer, reported rather than assumed.
struct PhiPolynomial {
    const FiniteGroup* group = nullptr;
    std::vector<ClassFunction> coeffs;
    bool isPolynomial = false;
    bool isPalindromic = false;
    bool phi0Trivial = false;
    bool topEqualsInterior = false;   // phi_d == chi*_P
    bool reciprocityVerified = false; // interior-series identity to truncation
    bool boundsOk = false;            // |phi_i(g)| <= phi_i(1)
    std::vector<EffectivenessEntry> effectivenessEvidence;
};

/// Divides the Ehrhart character series by (1-t) det(I - rho t) per class
/// and certifies the numerator against d + buffer truncation.
PhiPolynomial compute_phi(const ActedPolytope& ap, int buffer = 5);

/// Lattice point of the (half-open or open) parallelepiped spanned by the
/// lifted simplex vertices (v_i, 1) in M + Z.
struct BoxPoint {
    IntVec point;  // in M + Z, last coordinate = height
    int height = 0;
    int supportSize = 0;  // number of nonzero barycentric coordinates
};

/// All half-open box points of a simplex (coefficients in [0,1)). Open box
/// points are exactly those with full support.
std::vector<BoxPoint> box_points(const ActedPolytope& ap);

/// Permutation character of the height-k box points: BOX (open = false,
/// coefficients in [0,1)) or Pi (open = true, coefficients in (0,1)).
ClassFunction box_character(const ActedPolytope& ap, int k, bool open);

/// Permutation character of Pi(r)_k: open box points of all r-dimensional
/// faces at height k, viewed inside M + Z.
ClassFunction face_box_character(const ActedPolytope& ap, int r, int k);

/// Permutation character of the lattice points of P lying in the relative
/// interior of a k-dimensional face (the strata Phi_k, at dilate 1).
ClassFunction stratum_character(const ActedPolytope& ap, int k);

/// Character of the det of the acting matrices (the maps' linear parts).
ClassFunction action_det_character(const ActedPolytope& ap);
ClassFunction action_exterior_character(const ActedPolytope& ap, int k);

}  // namespace equivar
