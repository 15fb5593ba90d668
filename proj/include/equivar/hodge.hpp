#pragma once

#include <map>
#include <utility>
#include <vector>

#include "equivar/ehrhart.hpp"

namespace equivar {

/// Bivariate (u,v)-polynomial with ClassFunction coefficients; zero terms
/// are not stored.
class EHDPolynomial {
public:
    EHDPolynomial() = default;
    explicit EHDPolynomial(const FiniteGroup* g) : group_(g) {}

    const FiniteGroup* group() const { return group_; }
    const std::map<std::pair<int, int>, ClassFunction>& terms() const { return terms_; }
    ClassFunction coeff(int p, int q) const;
    void add_term(int p, int q, const ClassFunction& cf);

    EHDPolynomial operator+(const EHDPolynomial& o) const;
    EHDPolynomial operator-(const EHDPolynomial& o) const;
    EHDPolynomial operator*(const EHDPolynomial& o) const;
    bool operator==(const EHDPolynomial& o) const;

    EHDPolynomial swapped_uv() const;
    /// (uv)^n E(1/u, 1/v): the Poincare functional-equation transform.
    EHDPolynomial dual_transform(int n) const;
    ClassFunction row_sum(int p) const;  // sum over q of e^{p,q}

private:
    const FiniteGroup* group_ = nullptr;
    std::map<std::pair<int, int>, ClassFunction> terms_;
};

EHDPolynomial induce_ehd(const Subgroup& sub, const EHDPolynomial& e);

/// E_G of a rank-r torus with the given action:
/// sum_k (-1)^{r+k} wedge^{r-k}(rho) (uv)^k.
EHDPolynomial torus_E(const FiniteGroup& g, const std::vector<IntMat>& matPerClass, int r);

/// E_G of the projective toric variety of the normal fan of P: orbit tori
/// indexed by nonempty faces, induced from their isotropy groups.
EHDPolynomial toric_E(const ActedPolytope& ap);

/// E_G of the toric variety of the face fan of a centered reflexive P with
/// a linear action (cones over proper faces plus the origin cone).
EHDPolynomial toric_E_face_fan(const ActedPolytope& ap);

/// Row totals sum_q e^{p,q}(X deg) for p = 0..d-1:
/// (-1)^{d-1-p} wedge^{d-1-p} rho + (-1)^{d-1} det(rho) phi_{p+1}.
std::vector<ClassFunction> chi_y_rows(const ActedPolytope& ap, const PhiPolynomial& phi);

/// Full equivariant Hodge-Deligne polynomial of a non-degenerate invariant
/// hypersurface in the torus, for simple P.
EHDPolynomial hypersurface_E(const ActedPolytope& ap);
EHDPolynomial hypersurface_E(const ActedPolytope& ap, const PhiPolynomial& phi);

/// Primitive middle cohomology characters H^{p,d-1-p}_prim, p = 0..d-1.
std::vector<ClassFunction> primitive_hodge(const ActedPolytope& ap);
std::vector<ClassFunction> primitive_hodge(const ActedPolytope& ap, const PhiPolynomial& phi);

/// Hodge characters of the compactified hypersurface X in the normal-fan
/// toric variety of a simple polytope.
struct HodgeDiamond {
    const FiniteGroup* group = nullptr;
    int dim = 0;  // complex dimension d-1
    std::vector<ClassFunction> entries;  // (d) x (d) grid, row-major in (p,q)

    const ClassFunction& at(int p, int q) const { return entries[p * (dim + 1) + q]; }
    ClassFunction& at(int p, int q) { return entries[p * (dim + 1) + q]; }
};

HodgeDiamond hodge_diamond(const ActedPolytope& ap);

/// dim H^{p,q} of the quotient by a subgroup: multiplicity of the trivial
/// character in each restricted entry.
struct QuotientDiamond {
    int dim = 0;
    std::vector<Int> entries;

    Int at(int p, int q) const { return entries[p * (dim + 1) + q]; }
};

QuotientDiamond quotient_diamond(const HodgeDiamond& diamond, const Subgroup& sub);

/// Mobius function mu(Q, P) on the poset of nonempty g-fixed faces, computed
/// both recursively and via the closed form
/// (-1)^{d-dim Q} det(rho(g)) det(rho_Q(g)); the two must agree.
std::map<int, Int> mobius_fixed_faces(const ActedPolytope& ap, int elementIdx);

}  // namespace equivar
