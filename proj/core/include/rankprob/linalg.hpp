#pragma once

#include <limits>
#include <vector>

#include "rankprob/errors.hpp"
#include "rankprob/rng.hpp"

namespace rankprob::linalg {

/// Dense square matrix of doubles, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<double>& d);

    int size() const { return n_; }

    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    double* row(int i) { return a_.data() + static_cast<std::size_t>(i) * n_; }
    const double* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * n_; }

    double frobenius_norm() const;
    /// Max absolute column sum.
    double one_norm() const;
    double max_abs() const;
    bool all_finite() const;

    Matrix transposed() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    std::vector<double> operator*(const std::vector<double>& x) const;

    bool operator==(const Matrix&) const = default;

private:
    int n_ = 0;
    std::vector<double> a_;
};

/// n^2 independent standard normals, deterministic in the generator state.
Matrix sample_gaussian_matrix(int n, rng::RngState& rng);

/// Partially pivoted LU factorization with a Hager/Higham 1-norm condition
/// estimate.  Throws SingularMatrixError when a pivot falls below a relative
/// threshold of the matrix scale.
class LuFactorization {
public:
    explicit LuFactorization(Matrix a);

    /// Variant for inverse iteration: a pivot below the threshold is
    /// replaced by a signed eps-scale value instead of throwing, so shifts
    /// sitting exactly on an eigenvalue still factorize.
    static LuFactorization with_clamped_pivots(Matrix a);

    int size() const { return lu_.size(); }

    std::vector<double> solve(std::vector<double> b) const;
    Matrix solve(Matrix b) const;
    std::vector<double> solve_transposed(std::vector<double> b) const;

    /// ||A||_1 * estimate(||A^-1||_1); infinity for clamped factorizations.
    double condition_estimate() const { return condition_; }

private:
    LuFactorization(Matrix a, bool clamp_tiny_pivots);
    void factorize(bool clamp_tiny_pivots);
    double estimate_inverse_norm1() const;

    Matrix lu_;
    std::vector<int> pivots_;
    double norm1_ = 0.0;
    double condition_ = 0.0;
};

/// Solves a X = b, reporting the condition estimate of a.
struct LinearSolve {
    Matrix x;
    double condition_estimate = 0.0;
};
LinearSolve solve_linear(const Matrix& a, const Matrix& b);

/// Spectral split of a real matrix: k real eigenvalues plus conjugate pairs.
struct EigenClassification {
    int real_count = 0;
    int complex_pair_count = 0;
    std::vector<double> real_eigenvalues;
    /// min over 2x2 Schur blocks of |discriminant| / ||block||_F^2; infinity
    /// when the form is fully triangular.  Small values mean the real/complex
    /// call was close.
    double min_block_margin = std::numeric_limits<double>::infinity();
    int iterations_used = 0;
    /// Blocks whose discriminant fell inside the +-tol dead band.  They are
    /// counted as complex pairs to keep real_count + 2*pairs == n, and the
    /// caller must treat the whole result as untrusted for tallying.
    int ambiguous_blocks = 0;
};

struct SchurDecomposition {
    Matrix t;                    ///< quasi-upper-triangular factor
    Matrix z;                    ///< orthogonal factor (only if requested)
    std::vector<double> balance; ///< diagonal similarity scales d
    int sweeps = 0;
};

/// Balancing + Householder Hessenberg + Francis double-shift QR.  With
/// want_vectors the full Schur relation diag(d)^-1 a diag(d) = z t z^T is
/// maintained; without it only the eigenvalue content of the diagonal blocks
/// is kept, which is cheaper.
SchurDecomposition real_schur(Matrix a, bool want_vectors);

EigenClassification classify_quasi_triangular(const Matrix& t, double tol, int sweeps);

/// Classifies the spectrum of g; tol is the dimensionless dead-band width
/// for the 2x2 block discriminant test.
EigenClassification real_schur_eigen(const Matrix& g, double tol);

/// Condition estimate above which a slice is considered unusable for
/// forming the quotient matrix.
inline constexpr double kIllConditionedThreshold = 1e12;

/// Counts real solutions of det(t1 - lambda t2) = 0 through the spectrum of
/// t1^-1 t2, switching to t2^-1 t1 when t1 is ill-conditioned (lambda and
/// 1/lambda are real together, and a zero eigenvalue is real).  The returned
/// real_eigenvalues are those of whichever quotient matrix was formed.
EigenClassification real_generalized_eigencount(const Matrix& t1, const Matrix& t2, double tol);

/// Inverse iteration on (a - lambda I) from the given seed direction, with
/// one refinement sweep; returns a unit 2-norm eigenvector with a
/// deterministic sign convention.
std::vector<double> inverse_iteration_eigenvector(const Matrix& a, double lambda,
                                                  std::vector<double> seed);

} // namespace rankprob::linalg
