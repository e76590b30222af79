#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "brw/model.hpp"
#include "brw/rng.hpp"

namespace brw {

enum class PType { Plus, Minus };

inline PType flip(PType t) { return t == PType::Plus ? PType::Minus : PType::Plus; }

/// Path breakpoint: from `time` the particle sits at `pos` and moves with
/// slope +1 (Plus) or -1 (Minus).
struct PathPoint {
    double time;
    double pos;
    PType type;
};

struct ParticleRecord {
    int64_t id = 0;
    std::optional<int64_t> parent;
    bool is_second_child = false;
    PType ptype_at_birth = PType::Plus;
    double birth_time = 0;
    std::optional<double> death_time;  // empty: alive at the horizon (or unsimulated)
    std::vector<PathPoint> path;       // breakpoints; last entry is death/horizon state
    double lineage_max_at_birth = 0;
    double lineage_min_at_birth = 0;
    // uniform mark drawn at this particle's split (if it split); drives the
    // nested beta-coupling
    std::optional<double> split_mark;
    bool simulated = true;  // false when the particle budget ran out first
};

struct EventLog {
    std::vector<ParticleRecord> particles;
    double horizon = 0;
    bool truncated_by_budget = false;
};

struct SimControls {
    double horizon = 20.0;
    int64_t budget = 1000000;  // particles per replicate
    // Safe barrier (used only when beta <= beta_c): a lineage reaching this
    // height is released and its possible future contributions enter the
    // bracket as closed-form expectation bounds. 0 = choose automatically.
    bool release_barrier = false;
    double barrier_position = 0.0;
    bool prune_resolved = false;  // drop lineages that can no longer contribute
    bool stop_on_first_minus_at_zero = false;  // dichotomy runs
};

/// Exact event-driven simulation of the particle system: each particle waits
/// Exp(q_type + beta), then flips with probability q_type/(q_type+beta) or
/// splits into two copies. Deterministic given (seed, replicate).
EventLog simulate_tree(const ModelParams& p, PType root_type, double horizon,
                       int64_t budget, uint64_t seed, uint64_t replicate = 0);

struct LevelCounts {
    std::vector<double> phis;
    std::vector<int64_t> n_plus;
    std::vector<int64_t> n_minus;
    std::vector<uint8_t> censored_plus;
    std::vector<uint8_t> censored_minus;
    // expectation bounds on missed contributions (finite only for
    // beta <= beta_c, +inf otherwise when lineages are cut alive)
    std::vector<double> pending_plus;
    std::vector<double> pending_minus;
    double horizon_time = 0;
};

/// Wiener-Hopferized level-crossing counts over a grid of levels >= 0:
/// a particle is counted at plus-level phi iff its lineage running max
/// upcrosses phi during its own lifetime while moving right; minus-counts
/// mirror with running minima at -phi.
LevelCounts level_counts(const ModelParams& p, const EventLog& log,
                         const std::vector<double>& phis);

struct WindingCounts {
    std::vector<int64_t> w_plus;   // w_plus[n]  = particles with 2n-th alternation in their lifetime
    std::vector<int64_t> w_minus;  // w_minus[n] = particles with (2n+1)-th alternation
    bool censored = false;
};

/// Lineage sign-alternation counts around level 0 (root must be Plus);
/// W+(0) counts the root alone.
WindingCounts winding_counts(const EventLog& log, int max_n = 3);

// ---------------------------------------------------------------------------
// Streaming replicate engine: runs one replicate without storing the tree,
// accumulating level counts, winding stage counts and pending-mass bounds.
// Identical event sequence (per particle id) to simulate_tree.
// ---------------------------------------------------------------------------

struct ReplicateAccumulator {
    std::vector<double> phis;  // sorted ascending, all >= 0
    int max_stage = -1;        // track winding stages 1..max_stage (-1: off)

    std::vector<int64_t> n_plus, n_minus;
    std::vector<double> pending_plus, pending_minus;
    std::vector<uint8_t> censored_plus, censored_minus;
    std::vector<int64_t> stage_count;    // index by stage, [0..max_stage]
    std::vector<double> stage_pending;
    bool stage_censored = false;
    int64_t particles = 0;
    bool budget_hit = false;
    bool aborted_on_first_minus = false;

    void reset();
};

void run_replicate(const ModelParams& p, PType root_type, const SimControls& ctl,
                   uint64_t seed, uint64_t replicate, ReplicateAccumulator& acc);

}  // namespace brw
