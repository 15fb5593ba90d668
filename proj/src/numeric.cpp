#include "equivar/numeric.hpp"

#include <algorithm>
#include <cstdlib>

namespace equivar {

int Error::exit_code() const {
    switch (kind_) {
        case ErrorKind::Schema:
        case ErrorKind::NotSymmetry:
        case ErrorKind::NotFullDimensional:
        case ErrorKind::TooLarge:
        case ErrorKind::GroupTooLarge:
        case ErrorKind::RedundantVertex:
        case ErrorKind::UnknownScenario:
            return 2;
        case ErrorKind::NotSimple:
        case ErrorKind::NotSimplex:
        case ErrorKind::NotReflexive:
        case ErrorKind::PhiNotPolynomial:
            return 3;
        default:
            return 1;
    }
}

void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

Int checked_mul(Int a, Int b) {
    __int128 r = static_cast<__int128>(a) * b;
    if (r > INT64_MAX || r < INT64_MIN) fail(ErrorKind::Overflow, "integer overflow in multiply");
    return static_cast<Int>(r);
}

Int checked_add(Int a, Int b) {
    __int128 r = static_cast<__int128>(a) + b;
    if (r > INT64_MAX || r < INT64_MIN) fail(ErrorKind::Overflow, "integer overflow in add");
    return static_cast<Int>(r);
}

Rational::Rational(Int n, Int d) {
    if (d == 0) fail(ErrorKind::InvariantViolation, "rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    Int g = std::gcd(std::abs(n), d);
    if (g == 0) g = 1;
    num_ = n / g;
    den_ = d / g;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                    checked_mul(den_, o.den_));
}

Rational Rational::operator-(const Rational& o) const {
    return *this + Rational(-o.num_, o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num_ == 0) fail(ErrorKind::InvariantViolation, "rational division by zero");
    return Rational(checked_mul(num_, o.den_), checked_mul(den_, o.num_));
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
}

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat mat_mul(const IntMat& x, const IntMat& y) {
    if (x.cols != y.rows) fail(ErrorKind::InvariantViolation, "matrix shape mismatch");
    IntMat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            Int v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j)
                r.at(i, j) = checked_add(r.at(i, j), checked_mul(v, y.at(k, j)));
        }
    return r;
}

IntVec mat_apply(const IntMat& m, const IntVec& v) {
    if (m.cols != static_cast<int>(v.size()))
        fail(ErrorKind::InvariantViolation, "matrix/vector shape mismatch");
    IntVec r(m.rows, 0);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            r[i] = checked_add(r[i], checked_mul(m.at(i, j), v[j]));
    return r;
}

IntMat mat_transpose(const IntMat& m) {
    IntMat r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

namespace {

// Bareiss fraction-free elimination; returns (rank, det-if-square).
// Divisions are exact by construction.
std::pair<int, Int> bareiss(IntMat m) {
    int n = m.rows, c = m.cols;
    Int prev = 1;
    int sign = 1;
    int row = 0;
    for (int col = 0; col < c && row < n; ++col) {
        int pivot = -1;
        for (int i = row; i < n; ++i)
            if (m.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != row) {
            for (int j = 0; j < c; ++j) std::swap(m.at(pivot, j), m.at(row, j));
            sign = -sign;
        }
        for (int i = row + 1; i < n; ++i) {
            for (int j = col + 1; j < c; ++j) {
                __int128 t = static_cast<__int128>(m.at(row, col)) * m.at(i, j) -
                             static_cast<__int128>(m.at(i, col)) * m.at(row, j);
                __int128 q = t / prev;
                if (q > INT64_MAX || q < INT64_MIN)
                    fail(ErrorKind::Overflow, "overflow in elimination");
                m.at(i, j) = static_cast<Int>(q);
            }
            m.at(i, col) = 0;
        }
        prev = m.at(row, col);
        ++row;
    }
    Int d = 0;
    if (n == c) d = (row == n) ? sign * prev : 0;
    if (n == 0 && c == 0) d = 1;  // empty determinant
    return {row, d};
}

}  // namespace

Int det(const IntMat& m) {
    if (m.rows != m.cols) fail(ErrorKind::InvariantViolation, "determinant of non-square matrix");
    if (m.rows == 0) return 1;
    return bareiss(m).second;
}

int rank(const IntMat& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    return bareiss(m).first;
}

IntMat adjugate(const IntMat& m) {
    int n = m.rows;
    if (n != m.cols) fail(ErrorKind::InvariantViolation, "adjugate of non-square matrix");
    IntMat adj(n, n);
    if (n == 0) return adj;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMat minor(n - 1, n - 1);
            for (int r = 0, mr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, mc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(mr, mc++) = m.at(r, c);
                }
                ++mr;
            }
            Int cof = det(minor);
            adj.at(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

IntMat unimodular_inverse(const IntMat& m) {
    Int d = det(m);
    if (d != 1 && d != -1) fail(ErrorKind::Schema, "matrix is not unimodular");
    IntMat adj = adjugate(m);
    if (d == -1)
        for (Int& v : adj.a) v = -v;
    return adj;
}

Int principal_minor_sum(const IntMat& m, int k) {
    int n = m.rows;
    if (k < 0 || k > n) return 0;
    if (k == 0) return 1;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    Int total = 0;
    while (true) {
        IntMat sub(k, k);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c) sub.at(r, c) = m.at(idx[r], idx[c]);
        total = checked_add(total, det(sub));
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    return total;
}

IntVec char_like_poly(const IntMat& m) {
    // det(I - t m) via Laplace expansion over polynomials; n <= 6 in practice.
    int n = m.rows;
    // entries of I - t m are linear polynomials (c0, c1)
    struct Lin {
        Int c0, c1;
    };
    std::vector<Lin> entries(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) entries[static_cast<size_t>(i) * n + j] = {i == j ? 1 : 0, -m.at(i, j)};

    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    IntVec acc(n + 1, 0);

    // recursive expansion along rows
    auto rec = [&](auto&& self, int row, std::vector<int>& avail, IntVec cur, int sign) -> void {
        if (row == n) {
            for (int i = 0; i <= n; ++i)
                acc[i] = checked_add(acc[i], sign > 0 ? cur[i] : -cur[i]);
            return;
        }
        for (size_t k = 0; k < avail.size(); ++k) {
            int col = avail[k];
            const Lin& e = entries[static_cast<size_t>(row) * n + col];
            if (e.c0 == 0 && e.c1 == 0) continue;
            IntVec next(n + 1, 0);
            for (int i = 0; i <= n; ++i) {
                if (cur[i] == 0) continue;
                next[i] = checked_add(next[i], checked_mul(cur[i], e.c0));
                if (i + 1 <= n) next[i + 1] = checked_add(next[i + 1], checked_mul(cur[i], e.c1));
            }
            std::vector<int> rest;
            rest.reserve(avail.size() - 1);
            for (size_t j = 0; j < avail.size(); ++j)
                if (j != k) rest.push_back(avail[j]);
            self(self, row + 1, rest, std::move(next), (k % 2 == 0) ? sign : -sign);
        }
    };
    IntVec one(n + 1, 0);
    one[0] = 1;
    rec(rec, 0, cols, one, 1);
    return acc;
}

namespace {

// Smith-style reduction tracking the right transform only:
// returns (work = m * V in reduced column-echelon shape, V unimodular).
// Used for kernels and saturations of small matrices.
struct ColReduction {
    IntMat work;
    IntMat v;
};

ColReduction column_reduce(const IntMat& m) {
    ColReduction r{m, IntMat::identity(m.cols)};
    IntMat& w = r.work;
    IntMat& v = r.v;
    int row = 0, colStart = 0;
    while (row < w.rows && colStart < w.cols) {
        // find pivot column with smallest nonzero |entry| in this row
        int pivot = -1;
        for (int c = colStart; c < w.cols; ++c) {
            if (w.at(row, c) == 0) continue;
            if (pivot < 0 || std::abs(w.at(row, c)) < std::abs(w.at(row, pivot))) pivot = c;
        }
        if (pivot < 0) {
            ++row;
            continue;
        }
        bool reduced = false;
        while (!reduced) {
            reduced = true;
            for (int c = colStart; c < w.cols; ++c) {
                if (c == pivot || w.at(row, c) == 0) continue;
                Int q = w.at(row, c) / w.at(row, pivot);
                for (int i = 0; i < w.rows; ++i)
                    w.at(i, c) = checked_add(w.at(i, c), -checked_mul(q, w.at(i, pivot)));
                for (int i = 0; i < v.rows; ++i)
                    v.at(i, c) = checked_add(v.at(i, c), -checked_mul(q, v.at(i, pivot)));
                if (w.at(row, c) != 0) {
                    if (std::abs(w.at(row, c)) < std::abs(w.at(row, pivot))) pivot = c;
                    reduced = false;
                }
            }
        }
        if (pivot != colStart) {
            for (int i = 0; i < w.rows; ++i) std::swap(w.at(i, pivot), w.at(i, colStart));
            for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, pivot), v.at(i, colStart));
        }
        ++colStart;
        ++row;
    }
    return r;
}

}  // namespace

IntMat integer_kernel(const IntMat& m) {
    ColReduction r = column_reduce(m);
    // kernel columns are the reduced columns that became zero
    std::vector<int> zeros;
    for (int c = 0; c < r.work.cols; ++c) {
        bool allZero = true;
        for (int i = 0; i < r.work.rows; ++i)
            if (r.work.at(i, c) != 0) {
                allZero = false;
                break;
            }
        if (allZero) zeros.push_back(c);
    }
    IntMat ker(m.cols, static_cast<int>(zeros.size()));
    for (size_t j = 0; j < zeros.size(); ++j)
        for (int i = 0; i < m.cols; ++i) ker.at(i, static_cast<int>(j)) = r.v.at(i, zeros[j]);
    return ker;
}

IntMat saturated_column_basis(const IntMat& m) {
    // Saturation of a column span L: vectors orthogonal to everything
    // orthogonal to L. Two kernel computations keep it exact and saturated.
    IntMat orth = integer_kernel(mat_transpose(m));           // columns n with n^T m = 0
    IntMat sat = integer_kernel(mat_transpose(orth));         // columns spanning sat(L)
    // unimodular column ops: same lattice, echelon shape for reproducibility
    IntMat out = column_reduce(sat).work;
    for (int c = 0; c < out.cols; ++c)
        for (int i = 0; i < out.rows; ++i) {
            if (out.at(i, c) == 0) continue;
            if (out.at(i, c) < 0)
                for (int r2 = 0; r2 < out.rows; ++r2) out.at(r2, c) = -out.at(r2, c);
            break;
        }
    return out;
}

IntVec solve_integer(const IntMat& m, const IntVec& v, ErrorKind onFailure,
                     const std::string& what) {
    // Unique-solution path for square systems; for rectangular (tall) systems
    // solve on a row-selected invertible square block and verify the rest.
    if (m.rows < m.cols) fail(ErrorKind::InvariantViolation, "underdetermined solve: " + what);
    // select m.cols independent rows
    std::vector<int> sel;
    for (int i = 0; i < m.rows && static_cast<int>(sel.size()) < m.cols; ++i) {
        IntMat trial(static_cast<int>(sel.size()) + 1, m.cols);
        for (size_t s = 0; s < sel.size(); ++s)
            for (int j = 0; j < m.cols; ++j) trial.at(static_cast<int>(s), j) = m.at(sel[s], j);
        for (int j = 0; j < m.cols; ++j) trial.at(static_cast<int>(sel.size()), j) = m.at(i, j);
        if (rank(trial) == trial.rows) sel.push_back(i);
    }
    if (static_cast<int>(sel.size()) != m.cols) fail(onFailure, "singular system: " + what);
    IntMat sq(m.cols, m.cols);
    IntVec rhs(m.cols);
    for (int i = 0; i < m.cols; ++i) {
        for (int j = 0; j < m.cols; ++j) sq.at(i, j) = m.at(sel[i], j);
        rhs[i] = v[sel[i]];
    }
    Int d = det(sq);
    IntMat adj = adjugate(sq);
    IntVec x = mat_apply(adj, rhs);
    for (Int& xi : x) {
        if (xi % d != 0) fail(onFailure, "non-integral solution: " + what);
        xi /= d;
    }
    IntVec check = mat_apply(m, x);
    if (check != v) fail(onFailure, "inconsistent system: " + what);
    return x;
}

IntVec poly_mul(const IntVec& p, const IntVec& q, int truncate) {
    IntVec r(truncate + 1, 0);
    for (size_t i = 0; i < p.size() && static_cast<int>(i) <= truncate; ++i) {
        if (p[i] == 0) continue;
        for (size_t j = 0; j < q.size() && static_cast<int>(i + j) <= truncate; ++j)
            r[i + j] = checked_add(r[i + j], checked_mul(p[i], q[j]));
    }
    return r;
}

IntVec series_inverse(const IntVec& p, int truncate) {
    if (p.empty() || p[0] != 1)
        fail(ErrorKind::InvariantViolation, "series inverse needs unit constant term");
    IntVec inv(truncate + 1, 0);
    inv[0] = 1;
    for (int n = 1; n <= truncate; ++n) {
        Int s = 0;
        for (int k = 1; k <= n && k < static_cast<int>(p.size()); ++k)
            s = checked_add(s, checked_mul(p[k], inv[n - k]));
        inv[n] = -s;
    }
    return inv;
}

}  // namespace equivar
