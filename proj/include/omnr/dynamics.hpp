// Copyright 2026 The omnr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "omnr/params.hpp"

namespace omnr {

using Matrix8c = Eigen::Matrix<cdouble, 8, 8>;
using InputMap = Eigen::Matrix<cdouble, 8, Eigen::Dynamic>;

/// Position of each fluctuation operator in the state vector
///   V = (da_R, da_L, db_1, db_2, da_R^+, da_L^+, db_1^+, db_2^+).
/// In the supermode basis db_1/db_2 are replaced by db_+/db_-.
namespace idx {
inline constexpr int kAR = 0;
inline constexpr int kAL = 1;
inline constexpr int kB1 = 2;  ///< b_1 (bare) or b_+ (supermode)
inline constexpr int kB2 = 3;  ///< b_2 (bare) or b_- (supermode)
inline constexpr int kARd = 4;
inline constexpr int kALd = 5;
inline constexpr int kB1d = 6;
inline constexpr int kB2d = 7;
inline constexpr int kBright = kB1;
inline constexpr int kDark = kB2;
/// Index of the conjugate partner of row i.
constexpr int partner(int i) { return i < 4 ? i + 4 : i - 4; }
}  // namespace idx

enum class Basis { Bare, Supermode };

std::string_view to_string(Basis b);

enum class ChannelId {
    OptInR,
    OptVacR,
    OptInL,
    OptVacL,
    MechCommon,
    MechPrivate1,
    MechPrivate2,
    SupBrightPrivate,
    SupDarkPrivate,
};

std::string_view to_string(ChannelId id);

/// One white-noise input. The noise operator xi enters rows 0..3 of the
/// state equation and xi^+ the conjugate rows 4..7 with conjugate weight.
struct NoiseChannel {
    ChannelId id;
    double rate = 0.0;        ///< decay rate associated with the channel
    double occupation = 0.0;  ///< <xi^+ xi>; N_th for thermal channels
    bool is_signal_port = false;
};

/// Linearised dynamics dV/dt = -M V + L xi.
struct DriftSystem {
    Basis basis = Basis::Bare;
    Matrix8c m = Matrix8c::Zero();
    /// Column c holds the amplitudes of channel c in every row.
    InputMap input_map;
    std::vector<NoiseChannel> channels;

    /// Column of `id` in input_map, or -1.
    int channel_index(ChannelId id) const;
};

/// Coefficient matrix and noise map in the bare (b_1, b_2) basis. Without
/// the second resonator the b_2 block is kept as an inert, decoupled mode
/// with decay gamma_in driven only by its private reservoir.
DriftSystem build_bare(const PhysicalConfig& cfg);

/// Coefficient matrix and noise map in the bright/dark basis
/// b_+- = (b_1 +- b_2)/sqrt(2), with the direct J_m coupling in
/// rotating-wave form. Throws PreconditionError for one-resonator configs.
DriftSystem build_supermode(const PhysicalConfig& cfg);

DriftSystem build(const PhysicalConfig& cfg, Basis basis);

/// Swaps the mode block with the conjugate block: (Sigma X Sigma).
Matrix8c swap_conjugate_blocks(const Matrix8c& x);

struct StabilityReport {
    std::vector<cdouble> eigenvalues;  ///< sorted by (Re, Im) ascending
    double min_real_part = 0.0;
    double tolerance = 0.0;
    bool stable = false;
};

/// Full eigenspectrum of M. Stable iff every Re(lambda) exceeds
/// 1e-12 * max|lambda|. Throws EigenSolverError if the solver fails.
StabilityReport check_stability(const DriftSystem& sys);

}  // namespace omnr
