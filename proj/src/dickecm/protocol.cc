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

#include "dickecm/protocol.h"

#include <algorithm>
#include <cmath>

#include "dickecm/errors.h"
#include "dickecm/phase_align.h"

namespace dickecm {

const char *schedule_variant_name(ScheduleVariant v) {
    return v == ScheduleVariant::Interleaved ? "interleaved" : "factored";
}

const char *round_unit_name(RoundUnit u) {
    return u == RoundUnit::Pass ? "pass" : "round";
}

ScheduleVariant parse_schedule_variant(const std::string &text) {
    if (text == "interleaved") {
        return ScheduleVariant::Interleaved;
    }
    if (text == "factored" || text == "shuttle-then-intra") {
        return ScheduleVariant::Factored;
    }
    throw ConfigError("unknown schedule variant '" + text + "' (expected interleaved|factored)");
}

RoundUnit parse_round_unit(const std::string &text) {
    if (text == "pass") {
        return RoundUnit::Pass;
    }
    if (text == "round") {
        return RoundUnit::Round;
    }
    throw ConfigError("unknown round unit '" + text + "' (expected pass|round)");
}

ProtocolSpec ProtocolSpec::make(int n, int m, ScheduleVariant variant, RoundUnit unit) {
    ProtocolSpec spec;
    spec.num_qubits = n;
    spec.num_excitations = m;
    spec.register_r = (n - m + 1) / 2;
    spec.register_s = n - m - spec.register_r;
    spec.variant = variant;
    spec.round_unit = unit;
    spec.validate();
    return spec;
}

void ProtocolSpec::validate() const {
    if (num_qubits < 2 || num_qubits > kMaxQubits) {
        throw DomainError("target needs 2 <= n <= " + std::to_string(kMaxQubits) + ", got n=" + std::to_string(num_qubits));
    }
    if (num_excitations < 1 || num_excitations >= num_qubits) {
        throw DomainError(
            "target needs 1 <= m < n, got n=" + std::to_string(num_qubits) + " m=" + std::to_string(num_excitations));
    }
    if (register_r + register_s + num_excitations != num_qubits || register_r < register_s || register_s < 0) {
        throw DomainError("register split must satisfy l_r + l_s = n - m with l_r >= l_s >= 0");
    }
}

std::string ProtocolSpec::describe() const {
    return "D_" + std::to_string(num_qubits) + "^(" + std::to_string(num_excitations) + ") l_r=" +
           std::to_string(register_r) + " l_s=" + std::to_string(register_s) + " " + schedule_variant_name(variant) +
           "/" + round_unit_name(round_unit);
}

namespace {

std::vector<CollisionEvent> pass_events(const ProtocolSpec &spec, int shuttle) {
    std::vector<CollisionEvent> events;
    int a = spec.shuttle_qubit(shuttle);
    for (int k = 0; k < spec.register_r; k++) {
        events.push_back({a, spec.r_qubit(k), EventKind::Shuttle});
        for (int i = 0; i + 1 < spec.register_r; i++) {
            events.push_back({spec.r_qubit(i), spec.r_qubit(i + 1), EventKind::Intra});
        }
        if (k < spec.register_s) {
            events.push_back({a, spec.s_qubit(k), EventKind::Shuttle});
            for (int i = 0; i + 1 < spec.register_s; i++) {
                events.push_back({spec.s_qubit(i), spec.s_qubit(i + 1), EventKind::Intra});
            }
        }
    }
    return events;
}

void shuttles_first(std::vector<CollisionEvent> &events) {
    std::stable_partition(events.begin(), events.end(), [](const CollisionEvent &e) {
        return e.kind == EventKind::Shuttle;
    });
}

}  // namespace

Schedule round_schedule(const ProtocolSpec &spec) {
    spec.validate();
    Schedule s;
    for (int j = 0; j < spec.num_excitations; j++) {
        auto p = pass_events(spec, j);
        s.events.insert(s.events.end(), p.begin(), p.end());
    }
    if (spec.variant == ScheduleVariant::Factored) {
        shuttles_first(s.events);
    }
    return s;
}

std::vector<Schedule> step_schedules(const ProtocolSpec &spec) {
    if (spec.round_unit == RoundUnit::Round) {
        return {round_schedule(spec)};
    }
    spec.validate();
    std::vector<Schedule> steps;
    for (int j = 0; j < spec.num_excitations; j++) {
        Schedule s{pass_events(spec, j)};
        if (spec.variant == ScheduleVariant::Factored) {
            shuttles_first(s.events);
        }
        steps.push_back(std::move(s));
    }
    return steps;
}

PureState initial_state(const ProtocolSpec &spec) {
    spec.validate();
    return initial_state(spec, make_basis(spec.num_qubits, spec.num_excitations));
}

PureState initial_state(const ProtocolSpec &spec, BasisPtr basis) {
    uint32_t shuttles = (uint32_t{1} << spec.num_excitations) - 1;
    return PureState::basis_state(std::move(basis), shuttles);
}

CollisionEngine::CollisionEngine(const ProtocolSpec &spec)
    : spec_(spec), basis_(make_basis(spec.num_qubits, spec.num_excitations)) {
    spec_.validate();
    for (const auto &schedule : step_schedules(spec_)) {
        std::vector<CompiledEvent> compiled;
        for (const auto &e : schedule.events) {
            compiled.push_back({e, make_pair_action(*basis_, e.qubit_a, e.qubit_b)});
        }
        steps_.push_back(std::move(compiled));
    }
}

void CollisionEngine::apply_step(std::span<Complex> amplitudes, size_t step_index, double gamma_in, double gamma_sh)
    const {
    CollisionAngle sh{gamma_sh};
    CollisionAngle in{gamma_in};
    for (const auto &ce : step(step_index)) {
        apply_pair_action(amplitudes, ce.action, ce.event.kind == EventKind::Shuttle ? sh : in);
    }
}

void CollisionEngine::apply_round(std::span<Complex> amplitudes, double gamma_in, double gamma_sh) const {
    for (size_t k = 0; k < steps_.size(); k++) {
        apply_step(amplitudes, k, gamma_in, gamma_sh);
    }
}

void apply_round(PureState &state, const ProtocolSpec &spec, double gamma_in, double gamma_sh) {
    if (state.num_qubits() != spec.num_qubits || state.num_excitations() != spec.num_excitations) {
        throw DomainError("state basis does not match protocol " + spec.describe());
    }
    auto sched = round_schedule(spec);
    for (const auto &e : sched.events) {
        apply_partial_swap(state, e.qubit_a, e.qubit_b, CollisionAngle{e.kind == EventKind::Shuttle ? gamma_sh : gamma_in});
    }
}

double target_amplitude(int n, int m) {
    if (m <= 0 || m >= n) {
        throw DomainError("Dicke target needs 0 < m < n");
    }
    return 1.0 / std::sqrt(static_cast<double>(binomial(n, m)));
}

double fidelity_phase(const PureState &state) {
    Complex s = 0;
    for (const auto &a : state.amplitudes) {
        s += a;
    }
    return std::norm(s) / static_cast<double>(state.amplitudes.size());
}

double fidelity_magnitude(const PureState &state) {
    double s = 0;
    for (const auto &a : state.amplitudes) {
        s += std::abs(a);
    }
    return s * s / static_cast<double>(state.amplitudes.size());
}

namespace {

template <typename Fn>
void for_each_sector_entry(const DensityState &rho, Fn &&fn) {
    int m = rho.num_excitations();
    switch (rho.representation()) {
        case DensityRepresentation::SubspaceBlock:
        case DensityRepresentation::SectorBlocks: {
            const auto &b = rho.block(rho.representation() == DensityRepresentation::SubspaceBlock ? 0 : m);
            const Complex *p = b.data();
            for (Eigen::Index k = 0; k < b.size(); k++) {
                fn(p[k]);
            }
            break;
        }
        case DensityRepresentation::FullSpace: {
            auto basis = make_basis(rho.num_qubits(), m);
            const auto &masks = basis->masks();
            const auto &full = rho.block(0);
            for (uint32_t c : masks) {
                for (uint32_t r : masks) {
                    fn(full(r, c));
                }
            }
            break;
        }
    }
}

}  // namespace

double fidelity_phase(const DensityState &rho) {
    Complex s = 0;
    for_each_sector_entry(rho, [&](const Complex &v) {
        s += v;
    });
    return s.real() / static_cast<double>(binomial(rho.num_qubits(), rho.num_excitations()));
}

double fidelity_magnitude(const DensityState &rho) {
    double s = 0;
    for_each_sector_entry(rho, [&](const Complex &v) {
        s += std::abs(v);
    });
    return s / static_cast<double>(binomial(rho.num_qubits(), rho.num_excitations()));
}

const char *fidelity_kind_name(FidelityKind k) {
    switch (k) {
        case FidelityKind::Magnitude:
            return "magnitude";
        case FidelityKind::Phase:
            return "phase";
        case FidelityKind::Aligned:
            return "aligned";
    }
    return "?";
}

FidelityKind parse_fidelity_kind(const std::string &text) {
    if (text == "magnitude") {
        return FidelityKind::Magnitude;
    }
    if (text == "phase") {
        return FidelityKind::Phase;
    }
    if (text == "aligned") {
        return FidelityKind::Aligned;
    }
    throw ConfigError("unknown fidelity kind '" + text + "' (expected magnitude|phase|aligned)");
}

void FidelityTrace::finalize() {
    best_round = 0;
    best_value = -1;
    for (size_t r = 0; r < values.size(); r++) {
        if (std::isnan(values[r])) {
            throw NumericalError("fidelity is NaN at round " + std::to_string(r + 1));
        }
        if (values[r] > best_value) {
            best_value = values[r];
            best_round = static_cast<int>(r) + 1;
        }
    }
}

namespace {

double evaluate_pure(const PureState &state, FidelityKind kind) {
    switch (kind) {
        case FidelityKind::Magnitude:
            return fidelity_magnitude(state);
        case FidelityKind::Phase:
            return fidelity_phase(state);
        case FidelityKind::Aligned:
            return align_phases(state).fidelity;
    }
    return 0;
}

}  // namespace

FidelityTrace run_trace(const ProtocolSpec &spec, double gamma_in, double gamma_sh, int rounds, FidelityKind kind) {
    if (rounds < 1) {
        throw DomainError("trace needs at least one round");
    }
    CollisionEngine engine(spec);
    PureState state = initial_state(spec, engine.basis());
    FidelityTrace trace;
    trace.values.reserve(rounds);
    for (int r = 0; r < rounds; r++) {
        engine.apply_step(state.amplitudes, r, gamma_in, gamma_sh);
        trace.values.push_back(evaluate_pure(state, kind));
    }
    trace.finalize();
    return trace;
}

BestFidelity best_fidelity_over_rounds(
    const CollisionEngine &engine, double gamma_in, double gamma_sh, int rounds, FidelityKind kind,
    int align_candidates) {
    if (rounds < 1) {
        throw DomainError("trace needs at least one round");
    }
    PureState state = initial_state(engine.spec(), engine.basis());
    BestFidelity best{-1, 0};

    if (kind != FidelityKind::Aligned) {
        for (int r = 0; r < rounds; r++) {
            engine.apply_step(state.amplitudes, r, gamma_in, gamma_sh);
            double f = kind == FidelityKind::Magnitude ? fidelity_magnitude(state) : fidelity_phase(state);
            if (std::isnan(f)) {
                throw NumericalError("fidelity is NaN at round " + std::to_string(r + 1));
            }
            if (f > best.value) {
                best = {f, r + 1};
                if (1 - f < 1e-12) {
                    break;
                }
            }
        }
        return best;
    }

    struct Candidate {
        double bound;
        int round;
        std::vector<Complex> amplitudes;
    };
    std::vector<Candidate> top;
    size_t k_max = static_cast<size_t>(std::max(1, align_candidates));
    for (int r = 0; r < rounds; r++) {
        engine.apply_step(state.amplitudes, r, gamma_in, gamma_sh);
        double bound = fidelity_magnitude(state);
        if (std::isnan(bound)) {
            throw NumericalError("fidelity is NaN at round " + std::to_string(r + 1));
        }
        if (top.size() < k_max) {
            top.push_back({bound, r + 1, state.amplitudes});
            continue;
        }
        auto worst = std::min_element(top.begin(), top.end(), [](const Candidate &a, const Candidate &b) {
            return a.bound < b.bound || (a.bound == b.bound && a.round > b.round);
        });
        if (bound > worst->bound) {
            worst->bound = bound;
            worst->round = r + 1;
            worst->amplitudes = state.amplitudes;
        }
    }
    std::sort(top.begin(), top.end(), [](const Candidate &a, const Candidate &b) {
        return a.bound > b.bound || (a.bound == b.bound && a.round < b.round);
    });
    for (auto &c : top) {
        if (c.bound < best.value) {
            break;
        }
        double f = align_phases(PureState(engine.basis(), std::move(c.amplitudes))).fidelity;
        if (f > best.value || (f == best.value && c.round < best.round)) {
            best = {f, c.round};
        }
    }
    return best;
}

}  // namespace dickecm
