// Copyright 2026 The qre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-only reference computations. None of these call into the library's
// channel, trace or entropy code; they exist to check it.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qre/core/state.hpp"

namespace oracle {

using qre::Complex;
using qre::Matrix;
using qre::Vector;

/// -sum p log2 p straight from the definition.
inline double entropy_of(const std::vector<double>& p) {
    double s = 0;
    for (double v : p) {
        if (v > 1e-14) {
            s -= v * std::log2(v);
        }
    }
    return s;
}

inline double binary_entropy(double p) { return entropy_of({p, 1 - p}); }

/// Entropy via a general (non-Hermitian) eigensolver.
inline double entropy(const Matrix& rho) {
    Eigen::ComplexEigenSolver<Matrix> es(rho);
    std::vector<double> p;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        p.push_back(es.eigenvalues()(i).real());
    }
    return entropy_of(p);
}

/// Partial trace by explicit index summation. `keep_mask[q]` marks kept qubit q
/// (q = 0 is the leftmost, most significant qubit).
inline Matrix partial_trace(const Matrix& rho, const std::vector<bool>& keep_mask) {
    int n = static_cast<int>(keep_mask.size());
    int kept = 0;
    for (bool k : keep_mask) kept += k;
    int dk = 1 << kept;
    Matrix out = Matrix::Zero(dk, dk);
    int d = 1 << n;
    auto split = [&](int idx, int& kidx, int& tidx) {
        kidx = 0;
        tidx = 0;
        for (int q = 0; q < n; ++q) {
            int bit = (idx >> (n - 1 - q)) & 1;
            if (keep_mask[q]) kidx = (kidx << 1) | bit;
            else tidx = (tidx << 1) | bit;
        }
    };
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            int kr, tr, kc, tc;
            split(r, kr, tr);
            split(c, kc, tc);
            if (tr == tc) out(kr, kc) += rho(r, c);
        }
    }
    return out;
}

/// Irreality by rotating qubit `q` into the measurement basis and zeroing the
/// off-diagonal blocks of that qubit, instead of summing projectors.
inline double irreality_block_zeroing(const Matrix& rho, int n, int q, const Matrix& basis) {
    // basis columns are the eigenvectors; U^dagger maps them to |0>, |1>
    Matrix u_local = basis.adjoint();
    Matrix u = Matrix::Ones(1, 1);
    for (int k = 0; k < n; ++k) {
        Matrix f = k == q ? u_local : Matrix(Matrix::Identity(2, 2));
        Matrix next(u.rows() * 2, u.cols() * 2);
        for (int i = 0; i < u.rows(); ++i)
            for (int j = 0; j < u.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = u(i, j) * f;
        u = next;
    }
    Matrix rotated = u * rho * u.adjoint();
    int d = 1 << n;
    int bit = n - 1 - q;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            if (((r >> bit) & 1) != ((c >> bit) & 1)) rotated(r, c) = 0;
    return entropy(rotated) - entropy(rho);
}

inline Vector random_ket(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vector v(static_cast<Eigen::Index>(dim));
    for (auto& x : v) x = Complex(g(rng), g(rng));
    return v / v.norm();
}

/// Ginibre-distributed mixed state of random rank (1..dim).
inline Matrix random_density(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::uniform_int_distribution<std::size_t> rank_dist(1, dim);
    auto rank = static_cast<Eigen::Index>(rank_dist(rng));
    Matrix a(static_cast<Eigen::Index>(dim), rank);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = Complex(g(rng), g(rng));
    Matrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return (rho + rho.adjoint()) / 2.0;
}

/// Haar-random 2x2 unitary (QR of a Ginibre matrix with phase fix).
inline Matrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    auto d = static_cast<Eigen::Index>(dim);
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
    return q;
}

}  // namespace oracle
