#pragma once

#include <optional>
#include <string>

#include "equivar/hodge.hpp"

namespace equivar {

/// A centered reflexive polytope with its polar dual and the dual
/// (inverse-transpose) group action. Element i of dualGroup corresponds to
/// element i of group; the class structures coincide index-by-index.
struct MirrorPair {
    LatticePolytope polytope;  // in M, centered
    LatticePolytope dual;      // in N
    std::shared_ptr<const FiniteGroup> group;
    std::shared_ptr<const FiniteGroup> dualGroup;
};

MirrorPair mirror_pair(const LatticePolytope& P, const FiniteGroup& g);

/// The mirror prediction: entry(p,q) = det(rho) * source(d-1-p, q).
/// Applying it twice returns the source.
HodgeDiamond predicted_mirror_diamond(const HodgeDiamond& source, const ClassFunction& detChar);

enum class CellStatus { Verified, PredictedOnly };

struct MirrorReport {
    bool primalSimple = false, dualSimple = false;
    bool primalSmooth = false, dualSmooth = false;
    bool fullChecked = false;      // every cell compared
    bool relationHolds = false;    // all compared cells agree
    std::optional<HodgeDiamond> primal;
    std::optional<HodgeDiamond> dualDiamond;
    std::optional<HodgeDiamond> predictedDual;  // from the primal side
    std::vector<std::vector<CellStatus>> cells; // (p,q) grid when predictedDual exists
    std::vector<std::string> notes;
};

/// Checks the mirror relation where it is resolution-independent: every cell
/// when both polytopes are smooth (or d <= 2), otherwise the boundary rows
/// p = 0 / q = 0; remaining cells are reported as predictions.
MirrorReport smooth_pair_check(const MirrorPair& pair);

/// Prepared worked examples, bundled with their expected outputs.
struct ScenarioBundle {
    std::string name;
    LatticePolytope P;
    std::shared_ptr<const FiniteGroup> group;
    int fermatDim = 0;
    Int fermatDegree = 0;
    // fermat: expected primitive-cohomology traces, [p][class]
    std::vector<std::vector<Int>> expectedPrimitiveTraces;
    // quintic-mirror: the pair plus both expected diamonds and both
    // expected quotient diamonds by det(rho)^{-1}(1)
    std::optional<MirrorPair> pair;
    std::optional<HodgeDiamond> expectedDiamond;
    std::optional<HodgeDiamond> expectedMirrorDiamond;
    std::optional<QuotientDiamond> expectedQuotient;
    std::optional<QuotientDiamond> expectedMirrorQuotient;
};

ScenarioBundle scenario_fermat(int d, Int m);
ScenarioBundle scenario_quintic_mirror();

/// Trace of g with cycle type lambda on H^{p,d-1-p}_prim of the degree-m
/// Fermat hypersurface: (-1)^{d+1-r} #{0 < a_i < m, sum lambda_i a_i = (p+1) m}.
Int fermat_expected_trace(int d, Int m, const std::vector<Int>& cycleType, int p);

/// Cycle type (descending) of the vertex permutation of a group element.
std::vector<Int> cycle_type(const FiniteGroup& g, int elementIdx);

}  // namespace equivar
