#include "rankprob/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rankprob::linalg {

Matrix Matrix::identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.size(); ++i)
        m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_)
        s += v * v;
    return std::sqrt(s);
}

double Matrix::one_norm() const {
    double best = 0.0;
    for (int j = 0; j < n_; ++j) {
        double s = 0.0;
        for (int i = 0; i < n_; ++i)
            s += std::fabs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

double Matrix::max_abs() const {
    double best = 0.0;
    for (double v : a_)
        best = std::max(best, std::fabs(v));
    return best;
}

bool Matrix::all_finite() const {
    for (double v : a_)
        if (!std::isfinite(v))
            return false;
    return true;
}

Matrix Matrix::transposed() const {
    Matrix t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (rhs.n_ != n_)
        throw DimensionError("Matrix multiply: size mismatch");
    Matrix out(n_);
    for (int i = 0; i < n_; ++i) {
        const double* ai = row(i);
        double* oi = out.row(i);
        for (int k = 0; k < n_; ++k) {
            const double aik = ai[k];
            if (aik == 0.0)
                continue;
            const double* bk = rhs.row(k);
            for (int j = 0; j < n_; ++j)
                oi[j] += aik * bk[j];
        }
    }
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rhs.n_ != n_)
        throw DimensionError("Matrix subtract: size mismatch");
    Matrix out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i)
        out.a_[i] -= rhs.a_[i];
    return out;
}

std::vector<double> Matrix::operator*(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw DimensionError("Matrix-vector multiply: size mismatch");
    std::vector<double> y(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
        const double* ai = row(i);
        double s = 0.0;
        for (int j = 0; j < n_; ++j)
            s += ai[j] * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

Matrix sample_gaussian_matrix(int n, rng::RngState& rng) {
    if (n < 1)
        throw std::invalid_argument("sample_gaussian_matrix: n must be >= 1");
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        double* r = m.row(i);
        for (int j = 0; j < n; ++j)
            r[j] = rng.next_normal();
    }
    return m;
}

// ---------------------------------------------------------------------------
// LU

LuFactorization::LuFactorization(Matrix a) : LuFactorization(std::move(a), false) {}

LuFactorization LuFactorization::with_clamped_pivots(Matrix a) {
    return LuFactorization(std::move(a), true);
}

LuFactorization::LuFactorization(Matrix a, bool clamp_tiny_pivots) : lu_(std::move(a)) {
    norm1_ = lu_.one_norm();
    factorize(clamp_tiny_pivots);
    condition_ = clamp_tiny_pivots ? std::numeric_limits<double>::infinity()
                                   : norm1_ * estimate_inverse_norm1();
}

void LuFactorization::factorize(bool clamp_tiny_pivots) {
    const int n = lu_.size();
    pivots_.assign(static_cast<std::size_t>(n), 0);
    const double scale = lu_.max_abs();
    const double tiny =
        std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(n, 1)) * scale;
    const double clamped =
        std::numeric_limits<double>::epsilon() * (scale > 0.0 ? scale : 1.0);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(lu_(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::fabs(lu_(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        pivots_[static_cast<std::size_t>(k)] = p;
        if (p != k)
            std::swap_ranges(lu_.row(k), lu_.row(k) + n, lu_.row(p));
        double pivot = lu_(k, k);
        if (std::fabs(pivot) <= tiny) {
            if (!clamp_tiny_pivots)
                throw SingularMatrixError("LU: pivot below relative threshold at column " +
                                          std::to_string(k));
            pivot = (pivot >= 0.0 ? clamped : -clamped);
            lu_(k, k) = pivot;
        }
        const double inv = 1.0 / pivot;
        for (int i = k + 1; i < n; ++i) {
            const double m = lu_(i, k) * inv;
            lu_(i, k) = m;
            if (m == 0.0)
                continue;
            const double* rk = lu_.row(k);
            double* ri = lu_.row(i);
            for (int j = k + 1; j < n; ++j)
                ri[j] -= m * rk[j];
        }
    }
}

std::vector<double> LuFactorization::solve(std::vector<double> b) const {
    const int n = lu_.size();
    if (static_cast<int>(b.size()) != n)
        throw DimensionError("LU solve: rhs size mismatch");
    for (int k = 0; k < n; ++k)
        std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(pivots_[static_cast<std::size_t>(k)])]);
    for (int k = 0; k < n; ++k) {
        const double bk = b[static_cast<std::size_t>(k)];
        if (bk == 0.0)
            continue;
        for (int i = k + 1; i < n; ++i)
            b[static_cast<std::size_t>(i)] -= lu_(i, k) * bk;
    }
    for (int k = n - 1; k >= 0; --k) {
        double s = b[static_cast<std::size_t>(k)];
        const double* rk = lu_.row(k);
        for (int j = k + 1; j < n; ++j)
            s -= rk[j] * b[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(k)] = s / rk[k];
    }
    return b;
}

Matrix LuFactorization::solve(Matrix b) const {
    const int n = lu_.size();
    if (b.size() != n)
        throw DimensionError("LU solve: rhs size mismatch");
    for (int k = 0; k < n; ++k) {
        const int p = pivots_[static_cast<std::size_t>(k)];
        if (p != k)
            std::swap_ranges(b.row(k), b.row(k) + n, b.row(p));
    }
    // forward substitution with unit lower factor, whole-row updates
    for (int k = 0; k < n; ++k) {
        const double* bk = b.row(k);
        for (int i = k + 1; i < n; ++i) {
            const double m = lu_(i, k);
            if (m == 0.0)
                continue;
            double* bi = b.row(i);
            for (int j = 0; j < n; ++j)
                bi[j] -= m * bk[j];
        }
    }
    // back substitution
    for (int k = n - 1; k >= 0; --k) {
        double* bk = b.row(k);
        const double inv = 1.0 / lu_(k, k);
        for (int j = 0; j < n; ++j)
            bk[j] *= inv;
        for (int i = 0; i < k; ++i) {
            const double m = lu_(i, k);
            if (m == 0.0)
                continue;
            double* bi = b.row(i);
            for (int j = 0; j < n; ++j)
                bi[j] -= m * bk[j];
        }
    }
    return b;
}

std::vector<double> LuFactorization::solve_transposed(std::vector<double> b) const {
    const int n = lu_.size();
    if (static_cast<int>(b.size()) != n)
        throw DimensionError("LU solve_transposed: rhs size mismatch");
    // A^T = U^T L^T P, so solve U^T w = b, then L^T y = w, then undo pivots.
    for (int k = 0; k < n; ++k) {
        double s = b[static_cast<std::size_t>(k)];
        for (int i = 0; i < k; ++i)
            s -= lu_(i, k) * b[static_cast<std::size_t>(i)];
        b[static_cast<std::size_t>(k)] = s / lu_(k, k);
    }
    for (int k = n - 1; k >= 0; --k) {
        double s = b[static_cast<std::size_t>(k)];
        for (int i = k + 1; i < n; ++i)
            s -= lu_(i, k) * b[static_cast<std::size_t>(i)];
        b[static_cast<std::size_t>(k)] = s;
    }
    for (int k = n - 1; k >= 0; --k)
        std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(pivots_[static_cast<std::size_t>(k)])]);
    return b;
}

double LuFactorization::estimate_inverse_norm1() const {
    const int n = lu_.size();
    if (n == 0)
        return 0.0;
    std::vector<double> x(static_cast<std::size_t>(n), 1.0 / n);
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        std::vector<double> y = solve(x);
        est = 0.0;
        for (double v : y)
            est += std::fabs(v);
        std::vector<double> xi(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            xi[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] >= 0.0 ? 1.0 : -1.0;
        std::vector<double> z = solve_transposed(xi);
        int j = 0;
        double zmax = 0.0;
        double ztx = 0.0;
        for (int i = 0; i < n; ++i) {
            const double av = std::fabs(z[static_cast<std::size_t>(i)]);
            ztx += z[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
            if (av > zmax) {
                zmax = av;
                j = i;
            }
        }
        if (iter > 0 && zmax <= ztx)
            break;
        x.assign(static_cast<std::size_t>(n), 0.0);
        x[static_cast<std::size_t>(j)] = 1.0;
    }
    return est;
}

LinearSolve solve_linear(const Matrix& a, const Matrix& b) {
    if (a.size() != b.size())
        throw DimensionError("solve_linear: dimension mismatch");
    LuFactorization f(a);
    return LinearSolve{f.solve(b), f.condition_estimate()};
}

// ---------------------------------------------------------------------------
// Real Schur

namespace {

/// Scaling-only balancing (diagonal similarity); returns d with
/// balanced = D^-1 A D, so eigenvectors transform as v_orig = d .* v.
std::vector<double> balance_in_place(Matrix& a) {
    const int n = a.size();
    std::vector<double> d(static_cast<std::size_t>(n), 1.0);
    if (n < 2)
        return d;
    constexpr double radix = 2.0;
    constexpr double sq = radix * radix;
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                c += std::fabs(a(j, i));
                r += std::fabs(a(i, j));
            }
            if (c == 0.0 || r == 0.0)
                continue;
            double f = 1.0;
            const double s = c + r;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= sq;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sq;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                d[static_cast<std::size_t>(i)] *= f;
                const double inv = 1.0 / f;
                for (int j = 0; j < n; ++j)
                    a(i, j) *= inv;
                for (int j = 0; j < n; ++j)
                    a(j, i) *= f;
            }
        }
    }
    return d;
}

/// Householder reduction to upper Hessenberg; optionally accumulates the
/// orthogonal factor so a = q h q^T.
void hessenberg_in_place(Matrix& a, Matrix* q) {
    const int n = a.size();
    if (q)
        *q = Matrix::identity(n);
    if (n <= 2)
        return;
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    std::vector<double> work(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k + 2 < n; ++k) {
        double sigma = 0.0;
        for (int i = k + 2; i < n; ++i)
            sigma += a(i, k) * a(i, k);
        if (sigma == 0.0)
            continue;
        const double alpha = a(k + 1, k);
        const double mu = std::sqrt(alpha * alpha + sigma);
        const double v0 = (alpha <= 0.0) ? alpha - mu : -sigma / (alpha + mu);
        const double beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
        v[static_cast<std::size_t>(k + 1)] = 1.0;
        for (int i = k + 2; i < n; ++i)
            v[static_cast<std::size_t>(i)] = a(i, k) / v0;

        // left: A[k+1:, k:] -= beta v (v^T A[k+1:, k:])
        std::fill(work.begin() + k, work.end(), 0.0);
        for (int i = k + 1; i < n; ++i) {
            const double vi = v[static_cast<std::size_t>(i)];
            const double* ri = a.row(i);
            for (int j = k; j < n; ++j)
                work[static_cast<std::size_t>(j)] += vi * ri[j];
        }
        for (int i = k + 1; i < n; ++i) {
            const double bvi = beta * v[static_cast<std::size_t>(i)];
            double* ri = a.row(i);
            for (int j = k; j < n; ++j)
                ri[j] -= bvi * work[static_cast<std::size_t>(j)];
        }
        // right: A[:, k+1:] -= beta (A[:, k+1:] v) v^T
        for (int i = 0; i < n; ++i) {
            double* ri = a.row(i);
            double tau = 0.0;
            for (int j = k + 1; j < n; ++j)
                tau += ri[j] * v[static_cast<std::size_t>(j)];
            tau *= beta;
            for (int j = k + 1; j < n; ++j)
                ri[j] -= tau * v[static_cast<std::size_t>(j)];
        }
        if (q) {
            for (int i = 0; i < n; ++i) {
                double* ri = q->row(i);
                double tau = 0.0;
                for (int j = k + 1; j < n; ++j)
                    tau += ri[j] * v[static_cast<std::size_t>(j)];
                tau *= beta;
                for (int j = k + 1; j < n; ++j)
                    ri[j] -= tau * v[static_cast<std::size_t>(j)];
            }
        }
        for (int i = k + 2; i < n; ++i)
            a(i, k) = 0.0;
    }
}

struct Householder3 {
    double w1 = 0.0, w2 = 0.0; // reflector (1, w1, w2)
    double beta = 0.0;
};

/// Reflector sending (x, y, z) to a multiple of e1; scale-invariant.
Householder3 make_householder(double x, double y, double z, int len) {
    Householder3 h;
    const double scale = std::fabs(x) + std::fabs(y) + std::fabs(z);
    if (scale == 0.0)
        return h;
    x /= scale;
    y /= scale;
    z /= scale;
    const double sigma = y * y + z * z;
    if (sigma == 0.0)
        return h;
    const double mu = std::sqrt(x * x + sigma);
    const double v0 = (x <= 0.0) ? x - mu : -sigma / (x + mu);
    h.beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
    h.w1 = y / v0;
    h.w2 = (len == 3) ? z / v0 : 0.0;
    return h;
}

inline void apply_left(Matrix& a, const Householder3& h, int k, int len, int jlo, int jhi) {
    if (h.beta == 0.0)
        return;
    double* r0 = a.row(k);
    double* r1 = a.row(k + 1);
    double* r2 = (len == 3) ? a.row(k + 2) : nullptr;
    for (int j = jlo; j <= jhi; ++j) {
        double tau = r0[j] + h.w1 * r1[j];
        if (r2)
            tau += h.w2 * r2[j];
        tau *= h.beta;
        r0[j] -= tau;
        r1[j] -= tau * h.w1;
        if (r2)
            r2[j] -= tau * h.w2;
    }
}

inline void apply_right(Matrix& a, const Householder3& h, int k, int len, int ilo, int ihi) {
    if (h.beta == 0.0)
        return;
    for (int i = ilo; i <= ihi; ++i) {
        double* ri = a.row(i);
        double tau = ri[k] + h.w1 * ri[k + 1];
        if (len == 3)
            tau += h.w2 * ri[k + 2];
        tau *= h.beta;
        ri[k] -= tau;
        ri[k + 1] -= tau * h.w1;
        if (len == 3)
            ri[k + 2] -= tau * h.w2;
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix.  With z the full
/// similarity is maintained (and accumulated into z); without it updates are
/// windowed to the active block, which preserves the eigenvalues of every
/// diagonal block but not the matrix as a whole.
int francis_qr(Matrix& h, Matrix* z) {
    const int n = h.size();
    const double eps = std::numeric_limits<double>::epsilon();
    const int cap = 40 * std::max(n, 1);
    double hnorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - 1); j < n; ++j)
            hnorm += std::fabs(h(i, j));
    if (hnorm == 0.0)
        hnorm = 1.0;

    int sweeps = 0;
    int m = n - 1;
    int stall = 0;
    while (m >= 1) {
        // deflation scan: find the top of the active unreduced block
        int l = m;
        while (l > 0) {
            double s = std::fabs(h(l - 1, l - 1)) + std::fabs(h(l, l));
            if (s == 0.0)
                s = hnorm;
            if (std::fabs(h(l, l - 1)) <= eps * s) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == m) {
            --m;
            stall = 0;
            continue;
        }
        if (l == m - 1) {
            m -= 2;
            stall = 0;
            continue;
        }
        if (sweeps >= cap)
            throw NoConvergenceError("real_schur: QR iteration cap of 40n sweeps exceeded");

        ++stall;
        double s_shift, p_shift;
        if (stall % 10 == 0) {
            // exceptional ad-hoc shift to break rare limit cycles
            const double s = std::fabs(h(m, m - 1)) + std::fabs(h(m - 1, m - 2));
            const double h11 = 0.75 * s + h(m, m);
            s_shift = 2.0 * h11;
            p_shift = h11 * h11 + 0.4375 * s * s;
        } else {
            s_shift = h(m - 1, m - 1) + h(m, m);
            p_shift = h(m - 1, m - 1) * h(m, m) - h(m - 1, m) * h(m, m - 1);
        }

        double x = h(l, l) * h(l, l) + h(l, l + 1) * h(l + 1, l) - s_shift * h(l, l) + p_shift;
        double y = h(l + 1, l) * (h(l, l) + h(l + 1, l + 1) - s_shift);
        double w = (l + 2 <= m) ? h(l + 1, l) * h(l + 2, l + 1) : 0.0;

        for (int k = l; k <= m - 1; ++k) {
            const int len = (k < m - 1) ? 3 : 2;
            const Householder3 hh = make_householder(x, y, w, len);
            const int jlo = z ? std::max(0, k - 1) : std::max(l, k - 1);
            const int jhi = z ? n - 1 : m;
            apply_left(h, hh, k, len, jlo, jhi);
            const int ilo = z ? 0 : l;
            const int ihi = std::min(k + len, m);
            apply_right(h, hh, k, len, ilo, ihi);
            if (z)
                apply_right(*z, hh, k, len, 0, n - 1);
            if (k > l) {
                h(k + 1, k - 1) = 0.0;
                if (len == 3)
                    h(k + 2, k - 1) = 0.0;
            }
            if (k < m - 1) {
                x = h(k + 1, k);
                y = h(k + 2, k);
                w = (k + 3 <= m) ? h(k + 3, k) : 0.0;
            }
        }
        ++sweeps;
    }
    return sweeps;
}

} // namespace

SchurDecomposition real_schur(Matrix a, bool want_vectors) {
    if (a.size() < 1)
        throw std::invalid_argument("real_schur: empty matrix");
    if (!a.all_finite())
        throw std::invalid_argument("real_schur: non-finite entries");
    SchurDecomposition out;
    out.balance = balance_in_place(a);
    Matrix q;
    hessenberg_in_place(a, want_vectors ? &q : nullptr);
    out.sweeps = francis_qr(a, want_vectors ? &q : nullptr);
    out.t = std::move(a);
    if (want_vectors)
        out.z = std::move(q);
    return out;
}

EigenClassification classify_quasi_triangular(const Matrix& t, double tol, int sweeps) {
    const int n = t.size();
    EigenClassification out;
    out.iterations_used = sweeps;
    int i = 0;
    while (i < n) {
        const bool pair = (i + 1 < n) && t(i + 1, i) != 0.0;
        if (!pair) {
            ++out.real_count;
            out.real_eigenvalues.push_back(t(i, i));
            ++i;
            continue;
        }
        const double a = t(i, i), b = t(i, i + 1);
        const double c = t(i + 1, i), d = t(i + 1, i + 1);
        const double disc = 0.25 * (a - d) * (a - d) + b * c;
        const double s2 = a * a + b * b + c * c + d * d;
        const double margin = (s2 > 0.0) ? std::fabs(disc) / s2 : 0.0;
        out.min_block_margin = std::min(out.min_block_margin, margin);
        if (disc > tol * s2) {
            const double mid = 0.5 * (a + d);
            const double root = std::sqrt(disc);
            out.real_count += 2;
            out.real_eigenvalues.push_back(mid - root);
            out.real_eigenvalues.push_back(mid + root);
        } else if (disc < -tol * s2) {
            ++out.complex_pair_count;
        } else {
            ++out.ambiguous_blocks;
            ++out.complex_pair_count;
        }
        i += 2;
    }
    return out;
}

EigenClassification real_schur_eigen(const Matrix& g, double tol) {
    if (tol <= 0.0)
        throw std::invalid_argument("real_schur_eigen: tol must be positive");
    SchurDecomposition sd = real_schur(g, false);
    return classify_quasi_triangular(sd.t, tol, sd.sweeps);
}

EigenClassification real_generalized_eigencount(const Matrix& t1, const Matrix& t2, double tol) {
    if (t1.size() != t2.size())
        throw DimensionError("real_generalized_eigencount: slice dimensions differ");
    // Prefer the quotient t1^-1 t2; fall back to the reciprocal spectrum.
    for (int attempt = 0; attempt < 2; ++attempt) {
        const Matrix& lhs = (attempt == 0) ? t1 : t2;
        const Matrix& rhs = (attempt == 0) ? t2 : t1;
        try {
            LuFactorization f(lhs);
            if (f.condition_estimate() > kIllConditionedThreshold)
                continue;
            return real_schur_eigen(f.solve(rhs), tol);
        } catch (const SingularMatrixError&) {
            continue;
        }
    }
    throw DegeneratePencilError("real_generalized_eigencount: both slices ill-conditioned");
}

std::vector<double> inverse_iteration_eigenvector(const Matrix& a, double lambda,
                                                  std::vector<double> seed) {
    const int n = a.size();
    if (static_cast<int>(seed.size()) != n)
        throw DimensionError("inverse_iteration_eigenvector: seed size mismatch");
    const double scale = std::max(a.max_abs(), std::fabs(lambda));

    auto normalize = [&](std::vector<double>& v) {
        double norm = 0.0;
        int imax = 0;
        double vmax = 0.0;
        for (int i = 0; i < n; ++i) {
            norm += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
            if (std::fabs(v[static_cast<std::size_t>(i)]) > vmax) {
                vmax = std::fabs(v[static_cast<std::size_t>(i)]);
                imax = i;
            }
        }
        norm = std::sqrt(norm);
        if (norm == 0.0)
            return false;
        const double sign = v[static_cast<std::size_t>(imax)] >= 0.0 ? 1.0 : -1.0;
        for (double& x : v)
            x *= sign / norm;
        return true;
    };

    normalize(seed);
    auto finite = [](const std::vector<double>& v) {
        for (double t : v)
            if (!std::isfinite(t))
                return false;
        return true;
    };
    double shift = lambda;
    for (int attempt = 0; attempt < 4; ++attempt) {
        Matrix b = a;
        for (int i = 0; i < n; ++i)
            b(i, i) -= shift;
        // tiny pivots are clamped: a shift dead on the eigenvalue is the
        // intended operating point, the solve just blows up along the
        // eigendirection and normalization recovers it
        LuFactorization f = LuFactorization::with_clamped_pivots(std::move(b));
        std::vector<double> x = f.solve(seed);
        if (finite(x) && normalize(x)) {
            // one refinement sweep
            std::vector<double> y = f.solve(x);
            if (finite(y) && normalize(y))
                return y;
            return x;
        }
        // overflowed: back the shift off the eigenvalue and retry
        const double bump =
            std::max(scale, 1.0) * std::numeric_limits<double>::epsilon() *
            std::pow(100.0, attempt + 1);
        shift = lambda + bump;
    }
    throw NoConvergenceError("inverse_iteration_eigenvector: shifted solves kept failing");
}

} // namespace rankprob::linalg
