#pragma once

#include <array>
#include <string>
#include <vector>

#include "rankprob/linalg.hpp"

namespace rankprob::tensor {

/// An n x n x 2 array stored as its two frontal slices.
struct Tensor3 {
    int n = 0;
    linalg::Matrix slice1;
    linalg::Matrix slice2;
};

/// Reads the text format ("n <N>", slice 1 rows, blank line, slice 2 rows)
/// or, when the first non-space byte is '{', the structured object with
/// fields {n, slice1, slice2}.  Layout is never guessed.
Tensor3 load_tensor(const std::string& path);

/// Writes the text format with 17 significant digits; a path ending in
/// ".json" selects the structured object instead.
void save_tensor(const Tensor3& t, const std::string& path);

/// Rank-r list of outer-product factors: sum_i u_i (x) v_i (x) w_i.
struct CPFactors {
    int r = 0;
    std::vector<std::vector<double>> u;
    std::vector<std::vector<double>> v;
    std::vector<std::array<double, 2>> w;
};

enum class Verdict { RankN, RankNPlus1, Degenerate };

const char* verdict_name(Verdict v);

struct RankVerdict {
    Verdict verdict = Verdict::Degenerate;
    int real_count = 0;
    /// Confidence diagnostic: for RankN the normalized minimum eigenvalue
    /// gap (zero for repeated spectra such as the (I, I) tensor); otherwise
    /// the normalized distance of the closest 2x2 block to the real/complex
    /// boundary.
    double margin = 0.0;
};

/// RankN iff the pencil has n real eigenvalues; Degenerate when the pencil
/// itself is degenerate or any block is ambiguous at tol.  User data is
/// never resampled.
RankVerdict classify_rank(const Tensor3& t, double tol = 1e-10);

struct Decomposition {
    CPFactors factors;
    /// 1-norm condition estimate of the eigenvector matrix; reconstruction
    /// accuracy degrades with it.
    double eigenvector_condition = 0.0;
    double min_eigenvalue_gap = 0.0;
};

/// Explicit rank-n decomposition from the real eigenpairs of the pencil
/// t1 x = lambda t2 x.  Requires a RankN verdict and a simple spectrum.
Decomposition decompose_rank_n(const Tensor3& t, double tol = 1e-10);

Tensor3 reconstruct(const CPFactors& f, int n);

/// Frobenius norm of the reconstruction defect over the norm of t, both
/// slices stacked.
double relative_error(const CPFactors& f, const Tensor3& t);

} // namespace rankprob::tensor
