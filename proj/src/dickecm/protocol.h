// Copyright 2026 The dickecm Authors
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

#ifndef DICKECM_PROTOCOL_H
#define DICKECM_PROTOCOL_H

#include <string>
#include <vector>

#include "dickecm/collision.h"
#include "dickecm/density.h"
#include "dickecm/subspace.h"

namespace dickecm {

enum class ScheduleVariant {
    /// Per shuttle: visit r_k, mix register r, visit s_k, mix register s, for k = 1..l_r.
    Interleaved,
    /// Same collisions, with every shuttle event of a step moved ahead of the intra events.
    Factored,
};

/// What one counted "round" of the trace is.
enum class RoundUnit {
    /// A single shuttle's visit sequence. A full cycle over all shuttles is m passes.
    Pass,
    /// All m shuttle passes.
    Round,
};

const char *schedule_variant_name(ScheduleVariant v);
const char *round_unit_name(RoundUnit u);
ScheduleVariant parse_schedule_variant(const std::string &text);
RoundUnit parse_round_unit(const std::string &text);

/// Qubit layout and collision sequence for a target |D_n^(m)>.
///
/// Shuttles occupy qubits 0..m-1, register r the next l_r = ceil((n-m)/2) qubits and register s
/// the remaining l_s = n - m - l_r.
struct ProtocolSpec {
    int num_qubits = 0;
    int num_excitations = 0;
    int register_r = 0;
    int register_s = 0;
    ScheduleVariant variant = ScheduleVariant::Interleaved;
    RoundUnit round_unit = RoundUnit::Pass;

    static ProtocolSpec make(
        int n, int m, ScheduleVariant variant = ScheduleVariant::Interleaved, RoundUnit unit = RoundUnit::Pass);
    void validate() const;

    int shuttle_qubit(int j) const {
        return j;
    }
    int r_qubit(int k) const {
        return num_excitations + k;
    }
    int s_qubit(int k) const {
        return num_excitations + register_r + k;
    }
    /// Number of counted steps per full cycle of all shuttles.
    int steps_per_cycle() const {
        return round_unit == RoundUnit::Pass ? num_excitations : 1;
    }
    std::string describe() const;
};

enum class EventKind {
    Shuttle,
    Intra,
};

struct CollisionEvent {
    int qubit_a;
    int qubit_b;
    EventKind kind;
    bool operator==(const CollisionEvent &) const = default;
};

struct Schedule {
    std::vector<CollisionEvent> events;
};

/// Events of one full round (all shuttles), in execution order.
Schedule round_schedule(const ProtocolSpec &spec);

/// Events of each counted step. One entry per shuttle for RoundUnit::Pass, otherwise a single
/// entry equal to round_schedule.
std::vector<Schedule> step_schedules(const ProtocolSpec &spec);

/// Shuttles excited, registers in the ground state.
PureState initial_state(const ProtocolSpec &spec);
PureState initial_state(const ProtocolSpec &spec, BasisPtr basis);

/// Step schedules with their index tables precomputed over the m-excitation basis.
class CollisionEngine {
   public:
    struct CompiledEvent {
        CollisionEvent event;
        PairAction action;
    };

    explicit CollisionEngine(const ProtocolSpec &spec);

    const ProtocolSpec &spec() const {
        return spec_;
    }
    const BasisPtr &basis() const {
        return basis_;
    }
    size_t num_steps_per_cycle() const {
        return steps_.size();
    }
    const std::vector<CompiledEvent> &step(size_t step_index) const {
        return steps_[step_index % steps_.size()];
    }

    /// Applies counted step `step_index` (zero-based, taken modulo the cycle length).
    void apply_step(std::span<Complex> amplitudes, size_t step_index, double gamma_in, double gamma_sh) const;
    /// Applies one full round of all shuttles.
    void apply_round(std::span<Complex> amplitudes, double gamma_in, double gamma_sh) const;

   private:
    ProtocolSpec spec_;
    BasisPtr basis_;
    std::vector<std::vector<CompiledEvent>> steps_;
};

/// One full round; shuttle events use gamma_sh and intra events gamma_in. Throws DomainError
/// when the state's basis does not match the spec.
void apply_round(PureState &state, const ProtocolSpec &spec, double gamma_in, double gamma_sh);

/// Uniform target amplitude 1/sqrt(C(n, m)). Throws DomainError unless 0 < m < n.
double target_amplitude(int n, int m);

/// |<D|psi>|^2.
double fidelity_phase(const PureState &state);
/// (sum_x |psi_x|)^2 / C(n, m): overlap after absorbing every relative phase.
double fidelity_magnitude(const PureState &state);

/// <D|rho|D>.
double fidelity_phase(const DensityState &rho);
/// sum_{x,y} |rho_xy| / C(n, m) over the m-sector; an upper bound on any diagonal-phase-rotated
/// fidelity. Equals fidelity_magnitude for pure states.
double fidelity_magnitude(const DensityState &rho);

enum class FidelityKind {
    Magnitude,
    Phase,
    /// Phase fidelity after optimal local Rz alignment.
    Aligned,
};

const char *fidelity_kind_name(FidelityKind k);
FidelityKind parse_fidelity_kind(const std::string &text);

struct FidelityTrace {
    /// values[r - 1] is the fidelity after r counted steps.
    std::vector<double> values;
    /// Per-step standard errors, empty for exact engines.
    std::vector<double> standard_errors;
    int best_round = 0;
    double best_value = 0;

    /// Fills best_round/best_value; ties go to the smallest round. Throws NumericalError on NaN.
    void finalize();
};

/// Runs `rounds` counted steps and records the requested fidelity after each.
FidelityTrace run_trace(
    const ProtocolSpec &spec, double gamma_in, double gamma_sh, int rounds, FidelityKind kind = FidelityKind::Phase);

struct BestFidelity {
    double value = 0;
    int round = 0;
};

/// max over 0 < r <= rounds of the fidelity, earliest round on ties.
///
/// For Magnitude and Phase this is exactly the argbest of run_trace and stops early once
/// 1 - F < 1e-12. For Aligned, alignment runs only on the `align_candidates` steps with the
/// largest magnitude fidelity (an upper bound on the aligned value), in decreasing order, and
/// stops once the bound drops below the best aligned value found.
BestFidelity best_fidelity_over_rounds(
    const CollisionEngine &engine, double gamma_in, double gamma_sh, int rounds, FidelityKind kind,
    int align_candidates = 8);

}  // namespace dickecm

#endif
