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

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qre/core/register.hpp"
#include "qre/core/state.hpp"

namespace qre {

namespace detail {

inline std::vector<std::size_t> bits_of(const QubitRegister& reg, std::span<const std::string> labels) {
    std::vector<std::size_t> bits;
    for (const auto& l : labels) {
        std::size_t b = reg.bit(l);
        if (std::find(bits.begin(), bits.end(), b) != bits.end()) {
            throw LabelError("label '" + l + "' listed twice");
        }
        bits.push_back(b);
    }
    return bits;
}

// Packs the listed bits of `full` into an index, first listed bit most significant.
inline std::size_t gather(std::size_t full, const std::vector<std::size_t>& bits) {
    std::size_t out = 0;
    for (std::size_t b : bits) {
        out = (out << 1) | ((full >> b) & 1u);
    }
    return out;
}

inline std::size_t clear(std::size_t full, const std::vector<std::size_t>& bits) {
    for (std::size_t b : bits) {
        full &= ~(std::size_t{1} << b);
    }
    return full;
}

}  // namespace detail

inline PureState tensor(const PureState& a, const PureState& b) {
    return PureState(concat(a.reg(), b.reg()), kron(a.amplitudes(), b.amplitudes()));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(concat(a.reg(), b.reg()), kron(a.matrix(), b.matrix()));
}

/// Lifts `op`, acting on `labels` (first label most significant), to the whole register.
inline Matrix embed(const Matrix& op, const QubitRegister& reg, std::span<const std::string> labels) {
    auto bits = detail::bits_of(reg, labels);
    auto sub_dim = static_cast<Eigen::Index>(std::size_t{1} << bits.size());
    if (op.rows() != sub_dim || op.cols() != sub_dim) {
        throw ShapeError("operator dimension does not match the number of target qubits");
    }
    auto d = static_cast<Eigen::Index>(reg.dim());
    Matrix full = Matrix::Zero(d, d);
    for (std::size_t r = 0; r < reg.dim(); ++r) {
        std::size_t r_rest = detail::clear(r, bits);
        std::size_t r_sub = detail::gather(r, bits);
        for (std::size_t c = 0; c < reg.dim(); ++c) {
            if (detail::clear(c, bits) != r_rest) {
                continue;
            }
            full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                op(static_cast<Eigen::Index>(r_sub), static_cast<Eigen::Index>(detail::gather(c, bits)));
        }
    }
    return full;
}

inline Matrix embed(const Matrix& op, const QubitRegister& reg, std::initializer_list<std::string> labels) {
    std::vector<std::string> v(labels);
    return embed(op, reg, std::span<const std::string>(v));
}

inline PureState apply_unitary(const PureState& psi, const Matrix& u, std::span<const std::string> labels) {
    return PureState(psi.reg(), embed(u, psi.reg(), labels) * psi.amplitudes());
}

inline PureState apply_unitary(const PureState& psi, const Matrix& u, std::initializer_list<std::string> labels) {
    std::vector<std::string> v(labels);
    return apply_unitary(psi, u, std::span<const std::string>(v));
}

inline DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, std::span<const std::string> labels) {
    Matrix full = embed(u, rho.reg(), labels);
    return DensityMatrix(rho.reg(), hermitize(full * rho.matrix() * full.adjoint()));
}

inline DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, std::initializer_list<std::string> labels) {
    std::vector<std::string> v(labels);
    return apply_unitary(rho, u, std::span<const std::string>(v));
}

/// Reduced state on `keep`; the result keeps the original register order.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep) {
    if (keep.empty()) {
        throw DomainError("partial trace needs a nonempty set of kept labels");
    }
    const auto& reg = rho.reg();
    QubitRegister kept = reg.subset(keep);
    if (kept.size() != keep.size()) {
        for (const auto& l : keep) {
            reg.position(l);
        }
        throw LabelError("kept labels contain duplicates");
    }
    detail::BitSplit split(reg, keep);
    auto kd = static_cast<Eigen::Index>(kept.dim());
    Matrix out = Matrix::Zero(kd, kd);
    const Matrix& m = rho.matrix();
    std::size_t rest_dim = std::size_t{1} << split.rest_count();
    for (std::size_t i = 0; i < kept.dim(); ++i) {
        for (std::size_t j = 0; j < kept.dim(); ++j) {
            Complex acc = 0;
            for (std::size_t t = 0; t < rest_dim; ++t) {
                acc += m(static_cast<Eigen::Index>(split.compose(i, t)), static_cast<Eigen::Index>(split.compose(j, t)));
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return DensityMatrix(std::move(kept), hermitize(out));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::string> keep) {
    std::vector<std::string> v(keep);
    return partial_trace(rho, std::span<const std::string>(v));
}

/// Nonselective measurement of X: sum_i (M_i x 1) rho (M_i x 1).
inline DensityMatrix dephasing_map(const DensityMatrix& rho, const ObservableSpec& x) {
    const std::string& target = x.subsystem();
    if (!rho.reg().contains(target)) {
        throw LabelError("observable acts on '" + target + "', which is not in the register");
    }
    std::vector<std::string> on{target};
    auto d = static_cast<Eigen::Index>(rho.dim());
    Matrix out = Matrix::Zero(d, d);
    for (const auto& m : x.projectors()) {
        Matrix full = embed(m, rho.reg(), on);
        out += full * rho.matrix() * full;
    }
    return DensityMatrix(rho.reg(), hermitize(out));
}

template <typename State>
struct Selection {
    State state;
    double probability;
};

/// Conditions `psi` on the rank-1 outcome |phi><phi| of the qubits in `outcome.reg()`.
///
/// Returns the normalized state of the remaining qubits and the outcome probability.
inline Selection<PureState> post_select(const PureState& psi, const PureState& outcome,
                                        double min_probability = tol::kZeroProbability) {
    const auto& reg = psi.reg();
    const auto& on = outcome.reg().labels();
    if (on.size() >= reg.size()) {
        throw DomainError("post-selection must leave at least one qubit");
    }
    auto bits = detail::bits_of(reg, on);
    QubitRegister rest = reg.without(on);
    detail::BitSplit split(reg, std::span<const std::string>(rest.labels()));

    Vector out = Vector::Zero(static_cast<Eigen::Index>(rest.dim()));
    const Vector& phi = outcome.amplitudes();
    for (std::size_t full = 0; full < reg.dim(); ++full) {
        auto k = static_cast<Eigen::Index>(detail::gather(full, bits));
        out(static_cast<Eigen::Index>(split.selected_index(full))) +=
            std::conj(phi(k)) * psi.amplitudes()(static_cast<Eigen::Index>(full));
    }
    double p = out.squaredNorm();
    if (p < min_probability) {
        throw ZeroProbabilityError("post-selection outcome has probability " + std::to_string(p));
    }
    return {PureState(std::move(rest), out / std::sqrt(p)), p};
}

inline Selection<DensityMatrix> post_select(const DensityMatrix& rho, const PureState& outcome,
                                            double min_probability = tol::kZeroProbability) {
    const auto& reg = rho.reg();
    const auto& on = outcome.reg().labels();
    if (on.size() >= reg.size()) {
        throw DomainError("post-selection must leave at least one qubit");
    }
    auto bits = detail::bits_of(reg, on);
    QubitRegister rest = reg.without(on);
    detail::BitSplit split(reg, std::span<const std::string>(rest.labels()));

    // K = <phi| x 1 as a (rest_dim x dim) matrix
    auto rd = static_cast<Eigen::Index>(rest.dim());
    Matrix k = Matrix::Zero(rd, static_cast<Eigen::Index>(reg.dim()));
    const Vector& phi = outcome.amplitudes();
    for (std::size_t full = 0; full < reg.dim(); ++full) {
        k(static_cast<Eigen::Index>(split.selected_index(full)), static_cast<Eigen::Index>(full)) =
            std::conj(phi(static_cast<Eigen::Index>(detail::gather(full, bits))));
    }
    Matrix out = k * rho.matrix() * k.adjoint();
    double p = out.trace().real();
    if (p < min_probability) {
        throw ZeroProbabilityError("post-selection outcome has probability " + std::to_string(p));
    }
    return {DensityMatrix(std::move(rest), hermitize(out / p)), p};
}

/// Probability of the rank-1 outcome without conditioning; never throws on zero.
inline double outcome_probability(const DensityMatrix& rho, const PureState& outcome) {
    std::vector<std::string> on = outcome.reg().labels();
    Matrix p = embed(outcome.projector(), rho.reg(), std::span<const std::string>(on));
    return (p * rho.matrix()).trace().real();
}

inline double purity(const DensityMatrix& rho) { return (rho.matrix() * rho.matrix()).trace().real(); }

namespace detail {

inline Matrix psd_sqrt(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw ShapeError("fidelity between states of dimension " + std::to_string(rho.dim()) + " and " +
                         std::to_string(sigma.dim()));
    }
    if (!(rho.reg() == sigma.reg())) {
        throw LabelError("fidelity between states on different registers");
    }
    Matrix s = detail::psd_sqrt(rho.matrix());
    Eigen::VectorXd ev = hermitian_eigenvalues(s * sigma.matrix() * s).cwiseMax(0.0).cwiseSqrt();
    double f = ev.sum();
    return std::clamp(f * f, 0.0, 1.0);
}

}  // namespace qre
