#pragma once

#include "gcnsim/rowmap.hpp"
#include "gcnsim/simconfig.hpp"
#include "gcnsim/trace.hpp"
#include "gcnsim/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace gcnsim::autotune {

// ---------------------------------------------------------------------------
// PE status monitor

struct PesmSelection {
    std::vector<int32_t> underloaded;   // earliest finishers, separated troughs
    std::vector<int32_t> overloaded;    // latest finishers, separated crests
};

// finish_cycles: per-PE cycle of last issued multiply within the round,
// relative to round start (0 if the PE never issued). Selections are at
// least min_separation PEs apart so tuples sit on distinct crests/troughs.
// PEs in `excluded` (e.g. mid-protocol Super-PEs) are skipped.
PesmSelection pesm_observe(const std::vector<int64_t>& finish_cycles, int tuples_per_round,
                           int min_separation,
                           const std::unordered_set<int32_t>& excluded = {});

// ---------------------------------------------------------------------------
// Utilization gap tracker / switch fraction lookup

struct SwitchTuple {
    int32_t over_pe = -1;
    int32_t under_pe = -1;
    int64_t fraction_rows = 0;   // N_ij, rows currently switched over -> under
    int64_t g1 = 0;              // first-round gap of this tuple, the normalizer
    int update_age = 0;          // j, rounds since created
    int64_t created_round = 0;
};

struct UgtState {
    int g_bits = 3;
    int64_t threshold = 1;   // G1 >> g_bits, >= 1
    int64_t q_counter = 0;
};

// Hardware-style approximation of gi/g1 * (R/2): count gi in units of
// (g1 >> g_bits), then look up round(q * R / 2^{g+1}) clamped to [0, R].
int64_t ugt_quantize(int64_t g1, int64_t gi_abs, int g_bits);
int64_t tfsfl_lookup(int64_t q, int64_t rows_per_pe, int g_bits);

// Eq. 5 / Eq. 6. For j=0 pass no prior and gi = g1. For j>0 the signed gi
// reflects which side of the tuple is now slower (negative: the switch
// overshot and rows flow back).
int64_t compute_switch_fraction(int64_t g1, int64_t gi_signed, int64_t rows_per_pe,
                                int g_bits, std::optional<int64_t> prior_n);

// ---------------------------------------------------------------------------
// Workload distribution controller edits

// Swaps `n_rows` of over_pe's densest rows against the same count of
// under_pe's sparsest rows (clamped to what either side holds).
// Returns rows actually moved in each direction.
int64_t apply_remote_switch(RowMap& map, int32_t over_pe, int32_t under_pe, int64_t n_rows,
                            const std::vector<int64_t>& row_jobs);

// Contiguous source-column ranges with near-equal nnz for an evil row.
std::vector<int64_t> split_evil_row_bounds(const std::vector<int64_t>& sorted_cols,
                                           int64_t n_cols, int parts);

// ---------------------------------------------------------------------------
// Per-engine autotuner (one per matrix block)

struct RoundStats {
    int64_t round = 0;
    std::vector<int64_t> finish;      // relative last-busy cycle per PE
    std::vector<int64_t> busy;        // busy cycles per PE this round
    const std::vector<int64_t>* row_jobs = nullptr;   // jobs per row this round
    double utilization = 0.0;
};

struct RoundOutcome {
    int64_t overhead_cycles = 0;
    std::vector<DecisionRecord> decisions;
};

class Autotuner {
public:
    Autotuner(const SimConfig& sim, const AutotunerConfig& cfg, FeatureToggles toggles,
              int64_t n_rows, int64_t n_cols);

    // Phase-2 tuning at a round barrier; edits the rowmap in place.
    RoundOutcome on_round_end(RowMap& map, const RoundStats& stats);

    bool frozen() const { return frozen_; }
    int64_t frozen_round() const { return frozen_round_; }

    // Rows whose main-diagonal operations the feeder bypasses next round.
    const std::vector<uint8_t>& diag_skip_rows() const { return diag_skip_rows_; }

    // PEs that must not participate in remote switching this round.
    const std::unordered_set<int32_t>& reserved_pes() const { return reserved_; }

private:
    struct EvilProtocol {
        int phase = 0;            // 1: swapped (profiling next round), 2: remap applied
        int32_t flagged_pe = -1;
        int32_t super_pe = -1;
        std::vector<int64_t> flagged_rows;   // rows moved to the super for profiling
        std::vector<int64_t> super_rows;     // super's own rows parked on the flagged PE
    };

    int32_t super_pe_of_group(int group) const;
    std::vector<int32_t> labor_pes_of_group(int group) const;
    int group_of_pe(int32_t pe) const;
    int group_count() const;

    void step_evil_protocols(RowMap& map, const RoundStats& stats,
                             std::vector<DecisionRecord>& log);
    void maybe_trigger_evil(RowMap& map, const RoundStats& stats,
                            std::vector<DecisionRecord>& log);
    void run_switching(RowMap& map, const RoundStats& stats,
                       std::vector<DecisionRecord>& log, int64_t& overhead);
    void update_diag_skip(const RowMap& map, const PesmSelection& sel);

    SimConfig sim_;
    AutotunerConfig cfg_;
    FeatureToggles toggles_;
    int64_t n_rows_ = 0;
    int64_t n_cols_ = 0;
    int64_t rows_per_pe_ = 1;

    std::vector<SwitchTuple> tracked_;
    std::unordered_map<int, EvilProtocol> protocols_;   // by PE group
    std::unordered_set<int32_t> reserved_;
    std::vector<uint8_t> diag_skip_rows_;
    std::vector<double> util_history_;
    bool frozen_ = false;
    int64_t frozen_round_ = -1;
};

}   // namespace gcnsim::autotune
