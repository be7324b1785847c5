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
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "qre/core/ops.hpp"
#include "qre/core/state.hpp"
#include "qre/measures.hpp"

namespace qre::mzi {

struct MziConfig {
    double phi = 0.0;
    /// Second beam splitter present.
    bool closed = true;
    /// Which-path markers d1, d2 present.
    bool extended = false;
    /// Replace the state after the first beam splitter by its fully dephased version.
    bool decohere_after_first_bs = false;
};

/// s0: input. s1: after the first BS (and, when extended, the marker
/// interaction). s2: after mirrors and phase shifter. s3: after the second BS.
enum class Stage { s0, s1, s2, s3 };

inline const std::string kQ = "Q";

inline Matrix beam_splitter() {
    const Complex i{0, 1};
    Matrix u(2, 2);
    u << 1, i, i, 1;
    return u / std::sqrt(2.0);
}

/// Mirrors swap the arms and add a phase i each; the phase shifter then puts e^{i phi} on arm |1>.
inline Matrix mirrors_and_phase(double phi) {
    const Complex i{0, 1};
    Matrix m(2, 2);
    m << 0, i, i, 0;
    Matrix ps(2, 2);
    ps << 1, 0, 0, std::exp(i * phi);
    return ps * m;
}

/// Q = 0 deviates d1, Q = 1 deviates d2; both markers start undeviated in |1>.
inline Matrix marker_interaction() {
    Matrix u = Matrix::Zero(8, 8);
    for (int q = 0; q < 2; ++q) {
        for (int dd = 0; dd < 4; ++dd) {
            int flipped = q == 0 ? dd ^ 0b10 : dd ^ 0b01;
            u((q << 2) | flipped, (q << 2) | dd) = 1.0;
        }
    }
    return u;
}

inline QubitRegister mzi_register(const MziConfig& cfg) {
    return cfg.extended ? QubitRegister{kQ, "d1", "d2"} : QubitRegister{kQ};
}

inline void validate(const MziConfig& cfg, Stage stage) {
    if (!std::isfinite(cfg.phi)) {
        throw ConfigError("phase must be finite");
    }
    if (stage == Stage::s3 && !cfg.closed) {
        throw ConfigError("stage s3 needs the second beam splitter (closed interferometer)");
    }
}

/// State at `stage`. Decohered configurations give mixed states.
inline DensityMatrix mzi_state(const MziConfig& cfg, Stage stage) {
    validate(cfg, stage);
    std::vector<std::string> q{kQ};
    DensityMatrix rho(PureState::basis(QubitRegister{kQ}, "0"));
    if (cfg.extended) {
        rho = tensor(rho, DensityMatrix(PureState::basis(QubitRegister{"d1", "d2"}, "11")));
    }
    if (stage == Stage::s0) {
        return rho;
    }
    rho = apply_unitary(rho, beam_splitter(), q);
    if (cfg.decohere_after_first_bs) {
        rho = dephasing_map(rho, ObservableSpec::sigma_z(kQ));
    }
    if (cfg.extended) {
        rho = apply_unitary(rho, marker_interaction(), {kQ, "d1", "d2"});
    }
    if (stage == Stage::s1) {
        return rho;
    }
    rho = apply_unitary(rho, mirrors_and_phase(cfg.phi), q);
    if (stage == Stage::s2) {
        return rho;
    }
    return apply_unitary(rho, beam_splitter(), q);
}

/// Ket at `stage`; only defined without decoherence.
inline PureState mzi_ket(const MziConfig& cfg, Stage stage) {
    validate(cfg, stage);
    if (cfg.decohere_after_first_bs) {
        throw ConfigError("decohered interferometer has no state vector");
    }
    std::vector<std::string> q{kQ};
    PureState psi = PureState::basis(QubitRegister{kQ}, "0");
    if (cfg.extended) {
        psi = tensor(psi, PureState::basis(QubitRegister{"d1", "d2"}, "11"));
    }
    if (stage == Stage::s0) {
        return psi;
    }
    psi = apply_unitary(psi, beam_splitter(), q);
    if (cfg.extended) {
        psi = apply_unitary(psi, marker_interaction(), {kQ, "d1", "d2"});
    }
    if (stage == Stage::s1) {
        return psi;
    }
    psi = apply_unitary(psi, mirrors_and_phase(cfg.phi), q);
    if (stage == Stage::s2) {
        return psi;
    }
    return apply_unitary(psi, beam_splitter(), q);
}

/// Stage seen by the detectors: s3 when closed, s2 when open.
inline Stage detection_stage(const MziConfig& cfg) { return cfg.closed ? Stage::s3 : Stage::s2; }

struct DetectorProbabilities {
    double phi;
    double p0;
    double p1;
};

/// Click probabilities of D0 and D1; markers, when present, are traced out.
inline std::vector<DetectorProbabilities> detector_probabilities(const MziConfig& cfg, const std::vector<double>& phi_grid) {
    if (phi_grid.empty()) {
        throw DomainError("phase grid is empty");
    }
    std::vector<DetectorProbabilities> out;
    out.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        MziConfig c = cfg;
        c.phi = phi;
        DensityMatrix rho = mzi_state(c, detection_stage(c));
        if (c.extended) {
            rho = partial_trace(rho, {kQ});
        }
        double p0 = std::clamp(rho.matrix()(0, 0).real(), 0.0, 1.0);
        out.push_back({phi, p0, 1.0 - p0});
    }
    return out;
}

inline constexpr std::size_t kVisibilityGridPoints = 256;

/// `points` phases uniform on [0, 2 pi).
inline std::vector<double> phase_grid(std::size_t points = kVisibilityGridPoints) {
    if (points == 0) {
        throw DomainError("phase grid needs at least one point");
    }
    std::vector<double> g(points);
    for (std::size_t k = 0; k < points; ++k) {
        g[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points);
    }
    return g;
}

/// (max p0 - min p0) / (max p0 + min p0) over a uniform phase grid.
inline double visibility(const MziConfig& cfg, std::size_t points = kVisibilityGridPoints) {
    if (points < 64) {
        throw DomainError("visibility needs at least 64 phase points");
    }
    auto probs = detector_probabilities(cfg, phase_grid(points));
    auto [lo, hi] = std::minmax_element(probs.begin(), probs.end(),
                                        [](const auto& a, const auto& b) { return a.p0 < b.p0; });
    double denom = hi->p0 + lo->p0;
    if (denom < 1e-15) {
        throw DomainError("visibility undefined: detector never clicks");
    }
    return (hi->p0 - lo->p0) / denom;
}

struct ExtendedReport {
    DensityMatrix postselected_state;
    double postselection_probability;
    /// Entropy of entanglement d1 | d2. Pure outputs use S(rho_d1); separable
    /// mixtures report 0; entangled mixtures are left empty.
    std::optional<double> entanglement_entropy;
    bool separable;
    /// Total correlation I(d1 : d2) of the post-selected markers.
    double mutual_information;
    double irreality_sigma_z_at_s1;
};

/// Post-selects the detector outcome `q_outcome` and characterizes the markers.
inline ExtendedReport extended_output_analysis(const MziConfig& cfg, int q_outcome = 0) {
    if (!cfg.extended) {
        throw ConfigError("extended analysis needs the which-path markers");
    }
    if (q_outcome != 0 && q_outcome != 1) {
        throw DomainError("detector outcome must be 0 or 1");
    }
    DensityMatrix out = mzi_state(cfg, detection_stage(cfg));
    auto sel = post_select(out, PureState::basis(QubitRegister{kQ}, q_outcome == 0 ? "0" : "1"));
    const DensityMatrix& markers = sel.state;

    std::vector<std::string> d1{"d1"}, d2{"d2"};
    bool sep = is_ppt(markers, d1);
    std::optional<double> ent;
    if (purity(markers) > 1.0 - tol::kPurity) {
        ent = von_neumann_entropy(partial_trace(markers, {"d1"}));
    } else if (sep) {
        ent = 0.0;
    }

    MziConfig plain = cfg;
    plain.extended = false;
    double irr = irreality_value(mzi_state(plain, Stage::s1), ObservableSpec::sigma_z(kQ));
    return {markers, sel.probability, ent, sep, qre::mutual_information(markers, d1, d2), irr};
}

}  // namespace qre::mzi
