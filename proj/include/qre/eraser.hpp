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
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qre/core/ops.hpp"
#include "qre/core/state.hpp"
#include "qre/measures.hpp"

namespace qre::eraser {

/// Alice's polarization projection: onto a sigma_z eigenstate (Cz) or a sigma_x eigenstate (Cx).
enum class AliceConfig { Cz, Cx };

/// Outcome sign of a projection. For Cz, plus is |0> and minus is |1>; for Cx and
/// for Bob, plus is |+> and minus is |->.
enum class Branch { plus, minus };

enum class Stage { Psi0, Psi1, Psi2 };

enum class Target { path_b, d1, d2 };

inline std::string_view to_string(AliceConfig c) { return c == AliceConfig::Cz ? "Cz" : "Cx"; }
inline std::string_view to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }
inline std::string_view to_string(Target t) {
    switch (t) {
        case Target::path_b: return "b";
        case Target::d1: return "d1";
        case Target::d2: return "d2";
    }
    return "?";
}
inline std::string label_of(Target t) { return std::string(to_string(t)); }

/// HWP settings in front of each beam displacer. BD_k sits in path k - 1 of b and
/// leaves the photon in delta_k |0>_B + gamma_k |1>_B before writing onto d_k.
struct BeamDisplacerSettings {
    double gamma1 = 0.0;
    double delta1 = 1.0;
    double gamma2 = 1.0;
    double delta2 = 0.0;
};

struct ProtocolConfig {
    double theta = std::numbers::pi / 2;
    AliceConfig alice_config = AliceConfig::Cx;
    Branch alice_branch = Branch::plus;
    Branch bob_branch = Branch::plus;
    BeamDisplacerSettings bd_settings{};

    double c() const { return std::cos(theta / 2); }
    double s() const { return std::sin(theta / 2); }

    void validate() const {
        if (!std::isfinite(theta) || theta < -1e-12 || theta > std::numbers::pi + 1e-12) {
            throw ConfigError("theta must lie in [0, pi]");
        }
        const auto& bd = bd_settings;
        if (std::abs(bd.delta1 * bd.delta1 + bd.gamma1 * bd.gamma1 - 1.0) > 1e-10 ||
            std::abs(bd.delta2 * bd.delta2 + bd.gamma2 * bd.gamma2 - 1.0) > 1e-10) {
            throw ConfigError("beam displacer amplitudes must satisfy |delta_k|^2 + |gamma_k|^2 = 1");
        }
    }
};

/// Register order of the six-qubit protocol state.
inline QubitRegister protocol_register() { return QubitRegister{"A", "B", "a", "b", "d1", "d2"}; }

/// Qubits left at Bob's site after the projections.
inline QubitRegister bob_register() { return QubitRegister{"b", "d1", "d2"}; }

/// (c|00> + s|11>)_AB |00>_ab |11>_d1d2.
inline PureState build_psi0(const ProtocolConfig& cfg) {
    cfg.validate();
    Vector pair = Vector::Zero(4);
    pair(0) = cfg.c();
    pair(3) = cfg.s();
    PureState source(QubitRegister{"A", "B"}, pair);
    return tensor(tensor(source, PureState::basis(QubitRegister{"a", "b"}, "00")),
                  PureState::basis(QubitRegister{"d1", "d2"}, "11"));
}

/// Sagnac PBS: horizontal polarization takes path |0>_b, vertical takes |1>_b.
/// Reflection phases are dropped, so this is a CNOT from B onto b.
inline PureState evolve_to_psi1(const PureState& psi0) {
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    return apply_unitary(psi0, cnot, {"B", "b"});
}

/// Unitary on (B, b, d1, d2) for both beam displacers.
///
/// In path b = 0, HWP_1 rotates B from |0> to delta1|0> + gamma1|1> and BD_1
/// deviates horizontal light, flipping d1 when B = 0. In path b = 1, HWP_2
/// rotates B from |1> to delta2|0> + gamma2|1> and BD_2 deviates vertical light,
/// flipping d2 when B = 1. |1>_dk is the undeviated mode.
inline Matrix beam_displacer_unitary(const BeamDisplacerSettings& bd) {
    Matrix hwp1(2, 2);
    hwp1 << bd.delta1, -bd.gamma1, bd.gamma1, bd.delta1;
    Matrix hwp2(2, 2);
    hwp2 << bd.gamma2, bd.delta2, -bd.delta2, bd.gamma2;

    // basis (B, b, d1, d2), B most significant
    Matrix u = Matrix::Zero(16, 16);
    for (int b_path = 0; b_path < 2; ++b_path) {
        const Matrix& hwp = b_path == 0 ? hwp1 : hwp2;
        int deviated_pol = b_path == 0 ? 0 : 1;
        int d_bit = b_path == 0 ? 1 : 0;  // bit of d1 / d2 within (d1, d2)
        for (int b_in = 0; b_in < 2; ++b_in) {
            for (int dd = 0; dd < 4; ++dd) {
                int col = (b_in << 3) | (b_path << 2) | dd;
                for (int b_out = 0; b_out < 2; ++b_out) {
                    Complex amp = hwp(b_out, b_in);
                    int dd_out = b_out == deviated_pol ? dd ^ (1 << d_bit) : dd;
                    int row = (b_out << 3) | (b_path << 2) | dd_out;
                    u(row, col) += amp;
                }
            }
        }
    }
    return u;
}

inline PureState apply_beam_displacers(const PureState& psi1, const ProtocolConfig& cfg) {
    cfg.validate();
    return apply_unitary(psi1, beam_displacer_unitary(cfg.bd_settings), {"B", "b", "d1", "d2"});
}

inline PureState build_stage(Stage stage, const ProtocolConfig& cfg) {
    PureState psi = build_psi0(cfg);
    if (stage == Stage::Psi0) {
        return psi;
    }
    psi = evolve_to_psi1(psi);
    if (stage == Stage::Psi1) {
        return psi;
    }
    return apply_beam_displacers(psi, cfg);
}

/// Alice's joint projection ket on (A, a).
inline PureState alice_outcome(AliceConfig config, Branch branch) {
    Vector pol;
    if (config == AliceConfig::Cz) {
        pol = branch == Branch::plus ? kets::zero() : kets::one();
    } else {
        pol = branch == Branch::plus ? kets::plus() : kets::minus();
    }
    return PureState(QubitRegister{"A", "a"}, kron(pol, kets::zero()));
}

inline PureState bob_outcome(Branch branch) {
    return PureState(QubitRegister{"B"}, branch == Branch::plus ? kets::plus() : kets::minus());
}

struct BobState {
    PureState ket;
    DensityMatrix omega;
    /// Joint probability of Alice's and Bob's projections.
    double probability;
};

/// Projects Alice's (A, a) and Bob's polarization B, leaving (b, d1, d2).
inline BobState alice_and_bob_project(Stage stage, const ProtocolConfig& cfg) {
    if (stage == Stage::Psi0) {
        throw DomainError("projections are defined for stages Psi1 and Psi2");
    }
    PureState psi = build_stage(stage, cfg);
    auto alice = post_select(psi, alice_outcome(cfg.alice_config, cfg.alice_branch));
    auto bob = post_select(alice.state, bob_outcome(cfg.bob_branch));
    return {bob.state, DensityMatrix(bob.state), alice.probability * bob.probability};
}

/// Joint selection probability; zero for impossible branches instead of an error.
inline double selection_probability(Stage stage, const ProtocolConfig& cfg) {
    PureState psi = build_stage(stage, cfg);
    PureState joint = tensor(alice_outcome(cfg.alice_config, cfg.alice_branch), bob_outcome(cfg.bob_branch));
    return outcome_probability(DensityMatrix(psi), joint);
}

struct SweepRecord {
    double theta;
    int stage;
    AliceConfig config;
    Target target;
    double irreality_analytic;
    double coherence;
    double discord;
    double selection_probability;
    std::optional<double> irreality_tomo_mean;
    std::optional<double> irreality_tomo_std;
};

inline Stage stage_from_index(int stage) {
    if (stage == 1) {
        return Stage::Psi1;
    }
    if (stage == 2) {
        return Stage::Psi2;
    }
    throw DomainError("sweep stage must be 1 or 2");
}

/// Irreality of `target` on Bob's post-selected state for every theta in `theta_grid`.
///
/// Only theta and the stage vary; all other settings come from `cfg_template`.
inline std::vector<SweepRecord> irreality_curve(const ProtocolConfig& cfg_template, int stage, Target target,
                                                const std::vector<double>& theta_grid) {
    if (theta_grid.empty()) {
        throw DomainError("theta grid is empty");
    }
    Stage st = stage_from_index(stage);
    ObservableSpec x = ObservableSpec::sigma_z(label_of(target));
    std::vector<SweepRecord> out;
    out.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        ProtocolConfig cfg = cfg_template;
        cfg.theta = theta;
        cfg.validate();
        auto bob = alice_and_bob_project(st, cfg);
        auto rep = irreality(bob.omega, x);
        out.push_back({theta, stage, cfg.alice_config, target, rep.irreality, rep.coherence, rep.discord,
                       bob.probability, std::nullopt, std::nullopt});
    }
    return out;
}

/// n points spaced uniformly on [lo, hi], endpoints included.
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
    if (n == 0) {
        throw DomainError("grid needs at least one point");
    }
    if (n == 1) {
        return {lo};
    }
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return g;
}

/// 41 points on [0, pi/2].
inline std::vector<double> default_theta_grid() { return uniform_grid(0.0, std::numbers::pi / 2, 41); }

}  // namespace qre::eraser
