#pragma once

#include <optional>
#include <vector>

#include "equivar/numeric.hpp"

namespace equivar {

/// Facet inequality <normal, x> >= offset with primitive integer normal.
struct HalfSpace {
    IntVec normal;
    Int offset = 0;

    bool operator==(const HalfSpace& o) const = default;
};

/// Face of a polytope, identified by its vertex set. The empty face has
/// dim -1; the polytope itself is the unique face of dim d.
struct Face {
    int id = -1;
    int dim = -1;
    std::vector<int> vertexSet;         // sorted vertex indices
    std::vector<int> containingFacets;  // sorted facet indices
};

/// Full-dimensional lattice polytope with derived facet and face data.
/// Immutable after build_polytope; face ids are deterministic
/// (sorted by (dim, vertexSet)).
struct LatticePolytope {
    int dim = 0;
    std::vector<IntVec> vertices;  // lex-sorted, extreme points only
    std::vector<HalfSpace> facets;
    std::vector<Face> faces;
    int topFace = -1;
    int emptyFace = -1;

    const Face& face(int id) const { return faces[id]; }
    std::vector<int> faces_of_dim(int k) const;
    bool is_simplex() const { return static_cast<int>(vertices.size()) == dim + 1; }
    /// id of the face whose containingFacets set is exactly `facetSet`.
    int face_by_facet_set(const std::vector<int>& facetSet) const;
};

struct BuildOptions {
    bool stripRedundant = false;  // silently drop non-extreme input points
    int maxVertices = 30;
};

/// Builds the polytope from >= d+1 points affinely spanning Z^d.
/// Facets come from an exhaustive hyperplane scan over d-subsets.
LatticePolytope build_polytope(const std::vector<IntVec>& points, BuildOptions opts = {});

LatticePolytope translate(const LatticePolytope& p, const IntVec& shift);

enum class Region { All, Interior };

/// Lattice points of the m-th dilate (m >= 0), ordered lexicographically.
std::vector<IntVec> lattice_points(const LatticePolytope& p, Int m, Region region);

/// Lattice points of mP paired with an interior flag, in one scan.
std::vector<std::pair<IntVec, bool>> lattice_points_flagged(const LatticePolytope& p, Int m);

/// Points of mP lying in the relative interior of the m-dilate of some
/// k-dimensional face. The strata partition lattice_points(p, m, All).
std::vector<IntVec> stratum_points(const LatticePolytope& p, Int m, int k);

struct Classification {
    bool isSimple = false;
    bool isSimplex = false;
    bool reflexive = false;
    IntVec recenterShift;                       // valid when reflexive
    std::optional<LatticePolytope> recentered;  // centered copy when reflexive
};

Classification classify(const LatticePolytope& p);

/// Polar dual of a reflexive polytope centered at the origin: the convex
/// hull of the primitive facet normals, in the dual lattice.
LatticePolytope polar_dual(const LatticePolytope& p);

/// True when the primitive facet normals at every vertex form a lattice
/// basis (the normal-fan toric variety is smooth).
bool is_smooth(const LatticePolytope& p);

}  // namespace equivar
