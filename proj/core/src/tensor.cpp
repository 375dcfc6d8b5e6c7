#include "rankprob/tensor.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace rankprob::tensor {

using linalg::Matrix;

namespace {

std::string format_entry(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool is_blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

Matrix parse_slice_rows(std::istream& in, int n, const char* which) {
    Matrix m(n);
    std::string line;
    int row = 0;
    while (row < n) {
        if (!std::getline(in, line))
            throw DimensionError(std::string("tensor file: ") + which + " is missing rows");
        if (is_blank(line)) {
            if (row == 0)
                continue; // tolerate blank padding before the slice
            throw DimensionError(std::string("tensor file: ") + which + " truncated at row " +
                                 std::to_string(row));
        }
        std::istringstream ls(line);
        for (int j = 0; j < n; ++j) {
            double v;
            if (!(ls >> v))
                throw ParseError(std::string("tensor file: bad entry in ") + which + " row " +
                                 std::to_string(row));
            m(row, j) = v;
        }
        std::string extra;
        if (ls >> extra)
            throw ParseError(std::string("tensor file: trailing tokens in ") + which + " row " +
                             std::to_string(row));
        ++row;
    }
    return m;
}

Tensor3 load_text(std::istream& in) {
    std::string line;
    do {
        if (!std::getline(in, line))
            throw ParseError("tensor file: empty input");
    } while (is_blank(line));

    std::istringstream header(line);
    std::string tag;
    int n = 0;
    if (!(header >> tag >> n) || tag != "n" || n < 1)
        throw ParseError("tensor file: first line must be \"n <N>\"");

    Tensor3 t;
    t.n = n;
    t.slice1 = parse_slice_rows(in, n, "slice 1");
    t.slice2 = parse_slice_rows(in, n, "slice 2");
    return t;
}

Matrix matrix_from_json(const nlohmann::json& rows, int n, const char* which) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw DimensionError(std::string("tensor object: ") + which + " must have " +
                             std::to_string(n) + " rows");
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw DimensionError(std::string("tensor object: ") + which + " row " +
                                 std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j) {
            const auto& cell = row[static_cast<std::size_t>(j)];
            if (!cell.is_number())
                throw ParseError(std::string("tensor object: non-numeric entry in ") + which);
            m(i, j) = cell.get<double>();
        }
    }
    return m;
}

Tensor3 load_structured(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("tensor object: ") + e.what());
    }
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw ParseError("tensor object: missing integer field n");
    const int n = j["n"].get<int>();
    if (n < 1)
        throw ParseError("tensor object: n must be >= 1");
    if (!j.contains("slice1"))
        throw DimensionError("tensor object: missing slice1");
    if (!j.contains("slice2"))
        throw DimensionError("tensor object: missing slice2");
    Tensor3 t;
    t.n = n;
    t.slice1 = matrix_from_json(j["slice1"], n, "slice1");
    t.slice2 = matrix_from_json(j["slice2"], n, "slice2");
    return t;
}

} // namespace

Tensor3 load_tensor(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("tensor file: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    auto first = std::find_if_not(text.begin(), text.end(),
                                  [](unsigned char c) { return std::isspace(c); });
    Tensor3 t;
    if (first != text.end() && *first == '{') {
        t = load_structured(text);
    } else {
        std::istringstream stream(text);
        t = load_text(stream);
    }
    if (!t.slice1.all_finite() || !t.slice2.all_finite())
        throw ParseError("tensor file: non-finite entries");
    return t;
}

void save_tensor(const Tensor3& t, const std::string& path) {
    if (t.slice1.size() != t.n || t.slice2.size() != t.n)
        throw DimensionError("save_tensor: slice dimensions disagree with n");
    std::ofstream out(path);
    if (!out)
        throw ParseError("save_tensor: cannot open " + path);

    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        nlohmann::json j;
        j["n"] = t.n;
        auto rows = [&](const Matrix& m) {
            nlohmann::json arr = nlohmann::json::array();
            for (int i = 0; i < t.n; ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (int jx = 0; jx < t.n; ++jx)
                    row.push_back(m(i, jx));
                arr.push_back(row);
            }
            return arr;
        };
        j["slice1"] = rows(t.slice1);
        j["slice2"] = rows(t.slice2);
        out << j.dump(2) << "\n";
        return;
    }

    out << "n " << t.n << "\n";
    auto write_slice = [&](const Matrix& m) {
        for (int i = 0; i < t.n; ++i) {
            for (int j = 0; j < t.n; ++j) {
                if (j)
                    out << " ";
                out << format_entry(m(i, j));
            }
            out << "\n";
        }
    };
    write_slice(t.slice1);
    out << "\n";
    write_slice(t.slice2);
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::RankN: return "RankN";
    case Verdict::RankNPlus1: return "RankNPlus1";
    case Verdict::Degenerate: return "Degenerate";
    }
    return "unknown";
}

namespace {

/// Normalized minimum gap of a real spectrum; infinity for a single value.
double spectrum_gap_margin(std::vector<double> eigenvalues) {
    if (eigenvalues.size() < 2)
        return std::numeric_limits<double>::infinity();
    std::sort(eigenvalues.begin(), eigenvalues.end());
    double scale = 0.0;
    for (double v : eigenvalues)
        scale = std::max(scale, std::fabs(v));
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < eigenvalues.size(); ++i)
        gap = std::min(gap, eigenvalues[i] - eigenvalues[i - 1]);
    if (scale == 0.0)
        return 0.0;
    return gap / scale;
}

} // namespace

RankVerdict classify_rank(const Tensor3& t, double tol) {
    if (t.slice1.size() != t.n || t.slice2.size() != t.n)
        throw DimensionError("classify_rank: slice dimensions disagree with n");
    linalg::EigenClassification ec;
    try {
        ec = linalg::real_generalized_eigencount(t.slice1, t.slice2, tol);
    } catch (const DegeneratePencilError&) {
        return RankVerdict{Verdict::Degenerate, 0, 0.0};
    } catch (const NoConvergenceError&) {
        return RankVerdict{Verdict::Degenerate, 0, 0.0};
    }
    if (ec.ambiguous_blocks > 0)
        return RankVerdict{Verdict::Degenerate, ec.real_count, ec.min_block_margin};
    if (ec.real_count == t.n) {
        const double margin =
            std::min(ec.min_block_margin, spectrum_gap_margin(ec.real_eigenvalues));
        return RankVerdict{Verdict::RankN, ec.real_count, margin};
    }
    return RankVerdict{Verdict::RankNPlus1, ec.real_count, ec.min_block_margin};
}

Decomposition decompose_rank_n(const Tensor3& t, double tol) {
    const int n = t.n;
    RankVerdict verdict = classify_rank(t, tol);
    if (verdict.verdict != Verdict::RankN)
        throw NotRankNError(std::string("decompose_rank_n: verdict is ") +
                            verdict_name(verdict.verdict));

    // Eigenpairs of t1 x = lambda t2 x come from M = t2^-1 t1 with w = (lambda, 1);
    // the fallback M = t1^-1 t2 yields mu = 1/lambda and w = (1, mu).  Both
    // orientations are tried so that whichever quotient the classifier
    // accepted is also available here, keeping the verdicts consistent.
    Matrix m;
    linalg::SchurDecomposition sd;
    linalg::EigenClassification ec;
    bool via_slice2 = false;
    bool have_quotient = false;
    for (int attempt = 0; attempt < 2 && !have_quotient; ++attempt) {
        const bool use_slice2 = (attempt == 0);
        const Matrix& lhs = use_slice2 ? t.slice2 : t.slice1;
        const Matrix& rhs = use_slice2 ? t.slice1 : t.slice2;
        try {
            linalg::LuFactorization f(lhs);
            if (f.condition_estimate() > linalg::kIllConditionedThreshold)
                continue;
            Matrix candidate = f.solve(rhs);
            linalg::SchurDecomposition cand_sd = linalg::real_schur(candidate, true);
            linalg::EigenClassification cand_ec =
                linalg::classify_quasi_triangular(cand_sd.t, tol, cand_sd.sweeps);
            if (cand_ec.ambiguous_blocks > 0 || cand_ec.real_count != n)
                continue;
            m = std::move(candidate);
            sd = std::move(cand_sd);
            ec = std::move(cand_ec);
            via_slice2 = use_slice2;
            have_quotient = true;
        } catch (const SingularMatrixError&) {
        } catch (const NoConvergenceError&) {
        }
    }
    if (!have_quotient)
        throw NotRankNError("decompose_rank_n: no quotient orientation has a fully real spectrum at tol");

    // eigenvalue at each diagonal position, with its Schur column as seed
    std::vector<std::pair<double, int>> eigens;
    eigens.reserve(static_cast<std::size_t>(n));
    int i = 0;
    while (i < n) {
        const bool pair = (i + 1 < n) && sd.t(i + 1, i) != 0.0;
        if (!pair) {
            eigens.emplace_back(sd.t(i, i), i);
            ++i;
            continue;
        }
        const double a = sd.t(i, i), b = sd.t(i, i + 1);
        const double c = sd.t(i + 1, i), d = sd.t(i + 1, i + 1);
        const double mid = 0.5 * (a + d);
        const double root = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
        eigens.emplace_back(mid - root, i);
        eigens.emplace_back(mid + root, i + 1);
        i += 2;
    }

    std::vector<double> values;
    values.reserve(eigens.size());
    for (const auto& [lambda, col] : eigens)
        values.push_back(lambda);
    const double gap = spectrum_gap_margin(values);
    if (n > 1 && gap <= tol)
        throw RepeatedEigenvaluesError("decompose_rank_n: eigenvalues closer than tol");

    // inverse iteration from balanced Schur seeds
    Matrix x(n);
    for (int idx = 0; idx < n; ++idx) {
        const auto& [lambda, col] = eigens[static_cast<std::size_t>(idx)];
        std::vector<double> seed(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            seed[static_cast<std::size_t>(k)] = sd.balance[static_cast<std::size_t>(k)] * sd.z(k, col);
        std::vector<double> vec = linalg::inverse_iteration_eigenvector(m, lambda, std::move(seed));
        for (int k = 0; k < n; ++k)
            x(k, idx) = vec[static_cast<std::size_t>(k)];
    }

    linalg::LuFactorization fx(x);
    Matrix xinv = fx.solve(Matrix::identity(n));

    const Matrix& left = via_slice2 ? t.slice2 : t.slice1;
    Decomposition out;
    out.eigenvector_condition = fx.condition_estimate();
    out.min_eigenvalue_gap = gap;
    out.factors.r = n;
    out.factors.u.reserve(static_cast<std::size_t>(n));
    out.factors.v.reserve(static_cast<std::size_t>(n));
    out.factors.w.reserve(static_cast<std::size_t>(n));
    for (int idx = 0; idx < n; ++idx) {
        std::vector<double> xi(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            xi[static_cast<std::size_t>(k)] = x(k, idx);
        out.factors.u.push_back(left * xi);
        std::vector<double> vi(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            vi[static_cast<std::size_t>(k)] = xinv(idx, k);
        out.factors.v.push_back(std::move(vi));
        const double lambda = eigens[static_cast<std::size_t>(idx)].first;
        if (via_slice2)
            out.factors.w.push_back({lambda, 1.0});
        else
            out.factors.w.push_back({1.0, lambda});
    }
    return out;
}

Tensor3 reconstruct(const CPFactors& f, int n) {
    if (n < 0)
        throw DimensionError("reconstruct: negative dimension");
    if (static_cast<int>(f.u.size()) != f.r || static_cast<int>(f.v.size()) != f.r ||
        static_cast<int>(f.w.size()) != f.r)
        throw DimensionError("reconstruct: factor list lengths disagree with r");
    Tensor3 t;
    t.n = n;
    t.slice1 = Matrix(n);
    t.slice2 = Matrix(n);
    for (int i = 0; i < f.r; ++i) {
        const auto& u = f.u[static_cast<std::size_t>(i)];
        const auto& v = f.v[static_cast<std::size_t>(i)];
        if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
            throw DimensionError("reconstruct: factor vector length disagrees with n");
        const double w1 = f.w[static_cast<std::size_t>(i)][0];
        const double w2 = f.w[static_cast<std::size_t>(i)][1];
        for (int a = 0; a < n; ++a) {
            const double ua = u[static_cast<std::size_t>(a)];
            for (int b = 0; b < n; ++b) {
                const double outer = ua * v[static_cast<std::size_t>(b)];
                t.slice1(a, b) += w1 * outer;
                t.slice2(a, b) += w2 * outer;
            }
        }
    }
    return t;
}

double relative_error(const CPFactors& f, const Tensor3& t) {
    Tensor3 rec = reconstruct(f, t.n);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < t.n; ++i) {
        for (int j = 0; j < t.n; ++j) {
            const double d1 = rec.slice1(i, j) - t.slice1(i, j);
            const double d2 = rec.slice2(i, j) - t.slice2(i, j);
            num += d1 * d1 + d2 * d2;
            den += t.slice1(i, j) * t.slice1(i, j) + t.slice2(i, j) * t.slice2(i, j);
        }
    }
    if (den == 0.0)
        return std::sqrt(num);
    return std::sqrt(num / den);
}

} // namespace rankprob::tensor
