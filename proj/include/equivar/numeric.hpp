#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace equivar {

using Int = long long;
using IntVec = std::vector<Int>;

// Error kinds map onto CLI exit codes: input errors -> 2, scope errors -> 3,
// internal invariant violations -> 1.
enum class ErrorKind {
    Schema,
    NotSymmetry,
    NotFullDimensional,
    TooLarge,
    GroupTooLarge,
    RedundantVertex,
    UnknownScenario,
    NotSimple,
    NotSimplex,
    NotReflexive,
    PhiNotPolynomial,
    DualNotInvariant,
    NotInteger,
    NonIntegralMultiplicity,
    NegativeMultiplicity,
    InvariantViolation,
    Overflow,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const;

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& msg);

Int checked_mul(Int a, Int b);
Int checked_add(Int a, Int b);

/// Exact rational on 64-bit components, always stored normalized with den > 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Int n) : num_(n), den_(1) {}
    Rational(Int n, Int d);

    Int num() const { return num_; }
    Int den() const { return den_; }
    bool is_integer() const { return den_ == 1; }

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;

    std::string str() const;

private:
    Int num_, den_;
};

/// Dense row-major integer matrix. Degenerate 0xN and Nx0 shapes are legal
/// (they appear as 0-dimensional face lattices).
struct IntMat {
    int rows = 0, cols = 0;
    IntVec a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    Int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    bool operator==(const IntMat& o) const = default;

    static IntMat identity(int n);
};

IntMat mat_mul(const IntMat& x, const IntMat& y);
IntVec mat_apply(const IntMat& m, const IntVec& v);
IntMat mat_transpose(const IntMat& m);

Int det(const IntMat& m);                 // Bareiss, exact
IntMat adjugate(const IntMat& m);         // m * adj = det * I
int rank(const IntMat& m);

/// Inverse of a unimodular integer matrix (|det| = 1); throws otherwise.
IntMat unimodular_inverse(const IntMat& m);

/// Sum of principal k x k minors, i.e. the k-th elementary symmetric
/// function of the eigenvalues.
Int principal_minor_sum(const IntMat& m, int k);

/// Coefficients of det(I - t*m), degree = m.rows, constant term 1.
IntVec char_like_poly(const IntMat& m);

/// Basis (as matrix columns) of {x : m x = 0} over Z, saturated.
IntMat integer_kernel(const IntMat& m);

/// Basis (as matrix columns) of the saturation of the column span of m,
/// i.e. of span_Q(columns) intersected with Z^rows. Deterministic (HNF form).
IntMat saturated_column_basis(const IntMat& m);

/// Solve m x = v exactly; requires a unique rational solution that is integral.
IntVec solve_integer(const IntMat& m, const IntVec& v, ErrorKind onFailure,
                     const std::string& what);

// Truncated integer power-series helpers (index = degree).
IntVec poly_mul(const IntVec& p, const IntVec& q, int truncate);
IntVec series_inverse(const IntVec& p, int truncate);  // requires p[0] == 1

}  // namespace equivar
