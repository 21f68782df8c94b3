// Strict positivity of a rational kernel by Fourier-Motzkin elimination.
//
// The kernel of the equality system is parametrized as x = K y; x > 0 is
// scaled to x >= 1 (the system is homogeneous) and the inequalities K_i.y >= 1
// are eliminated one variable at a time.  Each derived inequality remembers
// the nonnegative combination of the original rows that produced it, which
// becomes the infeasibility certificate.

#include "cyldec/enumeration.hpp"

#include "cyldec/error.hpp"

#include <algorithm>
#include <set>

namespace cyldec {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& M, int ncols) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < ncols && r < static_cast<int>(M.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(M.size()); ++i)
            if (M[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(M[r], M[piv]);
        Rational inv = 1 / M[r][c];
        for (auto& v : M[r])
            v *= inv;
        for (int i = 0; i < static_cast<int>(M.size()); ++i)
            if (i != r && M[i][c] != 0) {
                Rational f = M[i][c];
                for (std::size_t j = 0; j < M[i].size(); ++j)
                    M[i][j] -= f * M[r][j];
            }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Columns of the returned matrix span {x : A x = 0}; result is n x k.
Matrix kernel_basis(const std::vector<LinearForm>& A, int n) {
    Matrix M(A.begin(), A.end());
    auto pivots = rref(M, n);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots)
        is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    Matrix K(n, std::vector<Rational>(free_cols.size(), Rational(0)));
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        K[free_cols[j]][j] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            K[pivots[r]][j] = -M[r][free_cols[j]];
    }
    return K;
}

// Some w with A^T w = rhs (rhs must lie in the row space).
std::vector<Rational> solve_transpose(const std::vector<LinearForm>& A, int n, const std::vector<Rational>& rhs) {
    int m = static_cast<int>(A.size());
    Matrix M(n, std::vector<Rational>(m + 1, Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j)
            M[i][j] = A[j][i];
        M[i][m] = rhs[i];
    }
    auto pivots = rref(M, m);
    std::vector<Rational> w(m, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        w[pivots[r]] = M[r][m];
    return w;
}

struct Ineq {
    std::vector<Rational> a; // coefficients on y
    Rational b;              // a.y >= b
    std::vector<Rational> mult; // combination of the original rows K_i.y >= 1

    bool operator<(const Ineq& o) const {
        if (a != o.a)
            return a < o.a;
        return b < o.b;
    }
};

void normalize(Ineq& q) {
    Rational scale(0);
    for (const auto& v : q.a)
        if (v != 0) {
            scale = v < 0 ? -v : v;
            break;
        }
    if (scale == 0)
        return;
    for (auto& v : q.a)
        v /= scale;
    q.b /= scale;
    for (auto& v : q.mult)
        v /= scale;
}

Integer lcm_int(const Integer& a, const Integer& b) { return a / boost::multiprecision::gcd(a, b) * b; }

} // namespace

FeasibilityWitness strict_positive_kernel(const std::vector<LinearForm>& equalities, int n) {
    for (const auto& row : equalities)
        if (static_cast<int>(row.size()) != n)
            throw Error(ErrorCode::DimensionMismatch, "linear form length");
    Matrix K = kernel_basis(equalities, n);
    int k = K.empty() ? 0 : static_cast<int>(K[0].size());

    std::vector<std::vector<Ineq>> stages;
    std::vector<Ineq> cur;
    for (int i = 0; i < n; ++i) {
        Ineq q;
        q.a = K[i];
        q.b = 1;
        q.mult.assign(n, Rational(0));
        q.mult[i] = 1;
        cur.push_back(q);
    }
    stages.push_back(cur);
    for (int v = k - 1; v >= 0; --v) {
        std::vector<Ineq> next, pos, neg;
        for (auto& q : cur) {
            int s = q.a[v].sign();
            if (s == 0)
                next.push_back(q);
            else
                (s > 0 ? pos : neg).push_back(q);
        }
        for (const auto& p : pos)
            for (const auto& m : neg) {
                Rational cp = p.a[v], cn = -m.a[v];
                Ineq q;
                q.a.resize(k);
                for (int j = 0; j < k; ++j)
                    q.a[j] = cn * p.a[j] + cp * m.a[j];
                q.b = cn * p.b + cp * m.b;
                q.mult.resize(n);
                for (int j = 0; j < n; ++j)
                    q.mult[j] = cn * p.mult[j] + cp * m.mult[j];
                next.push_back(q);
            }
        for (auto& q : next)
            normalize(q);
        // drop duplicates, keeping the first (deterministic) representative
        std::set<std::pair<std::vector<Rational>, Rational>> seen;
        std::vector<Ineq> dedup;
        for (auto& q : next)
            if (seen.insert({q.a, q.b}).second)
                dedup.push_back(q);
        cur = std::move(dedup);
        stages.push_back(cur);
    }

    FeasibilityWitness out;
    for (const auto& q : cur) {
        // every coefficient is zero now: 0 >= b
        if (q.b > 0) {
            out.status = FeasibilityStatus::Infeasible;
            out.combination = q.mult;
            out.multipliers = solve_transpose(equalities, n, q.mult);
            return out;
        }
    }

    // back substitution, variable 0 first
    std::vector<Rational> y(k, Rational(0));
    for (int v = 0; v < k; ++v) {
        const auto& sys = stages[k - v - 1];
        bool has_lo = false, has_hi = false;
        Rational lo, hi;
        for (const auto& q : sys) {
            bool later = false;
            for (int j = v + 1; j < k; ++j)
                if (q.a[j] != 0)
                    later = true;
            if (later || q.a[v] == 0)
                continue;
            Rational rhs = q.b;
            for (int j = 0; j < v; ++j)
                rhs -= q.a[j] * y[j];
            Rational bound = rhs / q.a[v];
            if (q.a[v] > 0) {
                if (!has_lo || bound > lo)
                    lo = bound;
                has_lo = true;
            } else {
                if (!has_hi || bound < hi)
                    hi = bound;
                has_hi = true;
            }
        }
        Rational val(0);
        if (has_lo) {
            Rational c(floor_of(lo));
            if (c < lo)
                c += 1;
            val = (!has_hi || c <= hi) ? c : lo;
        } else if (has_hi)
            val = Rational(floor_of(hi));
        y[v] = val;
    }
    std::vector<Rational> x(n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j)
            x[i] += K[i][j] * y[j];
    // scale to coprime integers
    Integer l(1), g(0);
    for (const auto& v : x)
        l = lcm_int(l, boost::multiprecision::denominator(v));
    for (auto& v : x) {
        v *= l;
        g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(v));
    }
    if (g > 1)
        for (auto& v : x)
            v /= g;
    out.status = FeasibilityStatus::Feasible;
    out.lengths = x;
    if (!verify_witness(equalities, n, out))
        throw Error(ErrorCode::Internal, "Fourier-Motzkin produced an invalid witness");
    return out;
}

bool verify_witness(const std::vector<LinearForm>& A, int n, const FeasibilityWitness& w) {
    if (w.status == FeasibilityStatus::Feasible) {
        if (static_cast<int>(w.lengths.size()) != n)
            return false;
        for (const auto& v : w.lengths)
            if (v <= 0)
                return false;
        for (const auto& row : A) {
            Rational s(0);
            for (int i = 0; i < n; ++i)
                s += row[i] * w.lengths[i];
            if (s != 0)
                return false;
        }
        return true;
    }
    if (w.status == FeasibilityStatus::Infeasible) {
        if (w.multipliers.size() != A.size())
            return false;
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            Rational s(0);
            for (std::size_t j = 0; j < A.size(); ++j)
                s += w.multipliers[j] * A[j][i];
            if (s < 0)
                return false;
            if (s > 0)
                nonzero = true;
        }
        return nonzero;
    }
    return false;
}

} // namespace cyldec
