#pragma once

// Test fixture: random tensors of exact rank n by construction.
// T2 and X are Gaussian (invertible almost surely), lambda has i.i.d.
// normal entries, and T1 = T2 * X * diag(lambda) * X^-1, so the pencil
// T1 x = lambda T2 x has the planted real simple spectrum.  Every entry is
// continuously distributed, and the classifier is expected to certify RankN.

#include <cmath>
#include <vector>

#include "rankprob/linalg.hpp"
#include "rankprob/rng.hpp"
#include "rankprob/tensor.hpp"

namespace rankprob::testing {

inline tensor::Tensor3 planted_rank_n_tensor(int n, std::uint64_t seed, std::uint64_t stream) {
    using linalg::Matrix;
    for (std::uint64_t bump = 0;; ++bump) {
        rng::RngState r(seed, stream * 1024 + bump);
        Matrix t2 = linalg::sample_gaussian_matrix(n, r);
        Matrix x = linalg::sample_gaussian_matrix(n, r);
        std::vector<double> lambda(static_cast<std::size_t>(n));
        for (auto& v : lambda)
            v = r.next_normal();

        // keep the planted spectrum comfortably simple
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j)
                if (std::fabs(lambda[static_cast<std::size_t>(i)] - lambda[static_cast<std::size_t>(j)]) < 1e-4)
                    ok = false;
        if (!ok)
            continue;

        try {
            linalg::LuFactorization fx(x.transposed());
            if (fx.condition_estimate() > 1e6)
                continue;
            linalg::LuFactorization f2(t2);
            if (f2.condition_estimate() > 1e6)
                continue;
            // X diag(lambda) X^-1 = solve(X^T, (X diag(lambda))^T)^T
            Matrix c = x;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    c(i, j) *= lambda[static_cast<std::size_t>(j)];
            Matrix spectral = fx.solve(c.transposed()).transposed();
            tensor::Tensor3 t;
            t.n = n;
            t.slice2 = t2;
            t.slice1 = t2 * spectral;
            return t;
        } catch (const SingularMatrixError&) {
            continue;
        }
    }
}

} // namespace rankprob::testing
