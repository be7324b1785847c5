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

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qre/core/ops.hpp"
#include "qre/core/state.hpp"

namespace qre {

/// Shannon entropy in bits of a probability vector; 0 log 0 = 0.
inline double shannon_entropy(const Eigen::VectorXd& p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) >= tol::kEntropyCutoff) {
            s -= p(i) * std::log2(p(i));
        }
    }
    return s;
}

/// H(p) = -p log2 p - (1 - p) log2 (1 - p).
inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) {
        throw DomainError("binary entropy argument outside [0, 1]");
    }
    Eigen::VectorXd v(2);
    v << p, 1.0 - p;
    return shannon_entropy(v);
}

/// von Neumann entropy in bits.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::VectorXd ev = hermitian_eigenvalues(rho.matrix());
    if (ev.minCoeff() < -tol::kNegativeEigenvalue) {
        throw InvalidStateError("entropy of a non-positive matrix");
    }
    return std::max(0.0, shannon_entropy(ev));
}

struct IrrealityReport {
    double irreality;
    /// Relative entropy of coherence of the measured qubit's reduced state.
    double coherence;
    /// irreality - coherence.
    double discord;
    ObservableSpec observable;
};

/// S(Phi_X(rho)) - S(rho) alone, without the decomposition.
inline double irreality_value(const DensityMatrix& rho, const ObservableSpec& x) {
    return std::max(0.0, von_neumann_entropy(dephasing_map(rho, x)) - von_neumann_entropy(rho));
}

/// Irreality of X split into local coherence and measurement discord.
inline IrrealityReport irreality(const DensityMatrix& rho, const ObservableSpec& x) {
    double total = irreality_value(rho, x);
    double coh = total;
    if (rho.reg().size() > 1) {
        std::vector<std::string> keep{x.subsystem()};
        coh = irreality_value(partial_trace(rho, std::span<const std::string>(keep)), x);
    }
    return {total, coh, total - coh, x};
}

namespace detail {

inline void check_partition(const QubitRegister& reg, std::span<const std::string> a, std::span<const std::string> b) {
    if (a.empty() || b.empty()) {
        throw LabelError("both sides of a partition must be nonempty");
    }
    if (a.size() + b.size() != reg.size()) {
        throw LabelError("partition does not cover the register exactly");
    }
    for (const auto& l : a) {
        reg.position(l);
        if (std::find(b.begin(), b.end(), l) != b.end()) {
            throw LabelError("label '" + l + "' on both sides of the partition");
        }
    }
    for (const auto& l : b) {
        reg.position(l);
    }
    if (reg.subset(a).size() != a.size() || reg.subset(b).size() != b.size()) {
        throw LabelError("partition lists a label twice");
    }
}

}  // namespace detail

/// S(rho_A) + S(rho_B) - S(rho).
inline double mutual_information(const DensityMatrix& rho, std::span<const std::string> side_a,
                                 std::span<const std::string> side_b) {
    detail::check_partition(rho.reg(), side_a, side_b);
    double v = von_neumann_entropy(partial_trace(rho, side_a)) + von_neumann_entropy(partial_trace(rho, side_b)) -
               von_neumann_entropy(rho);
    return std::max(0.0, v);
}

inline double mutual_information(const DensityMatrix& rho, const std::vector<std::string>& side_a,
                                 const std::vector<std::string>& side_b) {
    return mutual_information(rho, std::span<const std::string>(side_a), std::span<const std::string>(side_b));
}

/// Entropy of entanglement S(Tr_B |psi><psi|).
inline double entanglement_entropy(const PureState& psi, std::span<const std::string> side_a,
                                   std::span<const std::string> side_b) {
    DensityMatrix rho(psi);
    detail::check_partition(rho.reg(), side_a, side_b);
    return von_neumann_entropy(partial_trace(rho, side_a));
}

inline double entanglement_entropy(const PureState& psi, const std::vector<std::string>& side_a,
                                   const std::vector<std::string>& side_b) {
    return entanglement_entropy(psi, std::span<const std::string>(side_a), std::span<const std::string>(side_b));
}

/// Density-matrix overload; the state must be pure to within 1e-8.
inline double entanglement_entropy(const DensityMatrix& rho, const std::vector<std::string>& side_a,
                                   const std::vector<std::string>& side_b) {
    double p = purity(rho);
    if (p < 1.0 - tol::kPurity) {
        throw PurityError("entanglement entropy needs a pure state (purity " + std::to_string(p) + ")");
    }
    detail::check_partition(rho.reg(), side_a, side_b);
    return von_neumann_entropy(partial_trace(rho, std::span<const std::string>(side_a)));
}

/// Lower bound on J_X + J_X' for complementary X, X' measured on `subsystem`.
///
/// Taken as the mutual information between `subsystem` and the rest of the
/// register. Swap the body to try another reading of the bound.
inline double complementarity_bound(const DensityMatrix& rho, const std::string& subsystem) {
    if (rho.reg().size() < 2) {
        rho.reg().position(subsystem);
        return 0.0;
    }
    std::vector<std::string> a{subsystem};
    std::vector<std::string> b = rho.reg().without(std::span<const std::string>(a)).labels();
    if (b.size() + 1 != rho.reg().size()) {
        throw LabelError("unknown qubit label '" + subsystem + "'");
    }
    return mutual_information(rho, a, b);
}

struct ComplementarityResult {
    double lhs;
    double rhs;
    bool holds;
};

inline ComplementarityResult complementarity_check(const DensityMatrix& rho, const ObservableSpec& x,
                                                   const ObservableSpec& x_prime) {
    if (x.subsystem() != x_prime.subsystem()) {
        throw LabelError("complementary observables act on '" + x.subsystem() + "' and '" + x_prime.subsystem() + "'");
    }
    double lhs = irreality_value(rho, x) + irreality_value(rho, x_prime);
    double rhs = complementarity_bound(rho, x.subsystem());
    return {lhs, rhs, lhs >= rhs - 1e-9};
}

/// Partial transpose over the qubits in `side`.
inline Matrix partial_transpose(const DensityMatrix& rho, std::span<const std::string> side) {
    const auto& reg = rho.reg();
    auto bits = detail::bits_of(reg, side);
    std::size_t mask = 0;
    for (auto b : bits) {
        mask |= std::size_t{1} << b;
    }
    auto d = static_cast<Eigen::Index>(reg.dim());
    Matrix out(d, d);
    for (std::size_t r = 0; r < reg.dim(); ++r) {
        for (std::size_t c = 0; c < reg.dim(); ++c) {
            std::size_t r2 = (r & ~mask) | (c & mask);
            std::size_t c2 = (c & ~mask) | (r & mask);
            out(static_cast<Eigen::Index>(r2), static_cast<Eigen::Index>(c2)) =
                rho.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

/// Positive-partial-transpose test; equivalent to separability for two qubits.
inline bool is_ppt(const DensityMatrix& rho, const std::vector<std::string>& side, double tolerance = 1e-10) {
    return hermitian_eigenvalues(partial_transpose(rho, std::span<const std::string>(side))).minCoeff() >= -tolerance;
}

}  // namespace qre
