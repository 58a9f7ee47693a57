#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gcnsim {

// One structured autotuner decision, logged per round.
struct DecisionRecord {
    int64_t round = 0;
    std::string kind;        // switch_new | switch_update | evil_trigger | evil_profile |
                             // evil_remap | evil_defer | diag_skip | freeze
    int32_t pe_a = -1;       // over / flagged PE
    int32_t pe_b = -1;       // under / super PE
    int64_t rows_moved = 0;
    int64_t row = -1;        // evil row id
    int64_t gap = 0;         // measured cycle gap
};

struct RoundRecord {
    std::vector<int64_t> per_pe_busy;
    std::vector<int64_t> per_pe_idle;
    int64_t round_makespan = 0;
    int64_t tuning_overhead = 0;
    std::vector<DecisionRecord> decisions;
};

// Per-PE busy/idle cycle counts per round; the primary experimental output.
struct UtilizationTrace {
    std::string kernel_id;
    int64_t n_pe = 0;
    std::vector<RoundRecord> rounds;

    // whole-kernel counters
    int64_t total_cycles = 0;        // makespan: first injection to completion
    int64_t total_multiplies = 0;
    int64_t ideal_cycles = 0;        // ceil(multiplies / n_pe)
    int64_t feed_stall_cycles = 0;
    int64_t jobs_injected = 0;
    int64_t jobs_delivered = 0;
    int64_t jobs_diverted = 0;       // executed off-owner by smoothing
    int64_t max_divert_distance = 0;
    int64_t skipped_diagonals = 0;
    int64_t rowmap_version = 0;
    int64_t converged_round = -1;    // -1: never froze
    int64_t off_chip_bytes = 0;      // operand traffic charged to this kernel

    int64_t busy_total() const {
        int64_t s = 0;
        for (const RoundRecord& r : rounds)
            for (int64_t b : r.per_pe_busy) s += b;
        return s;
    }
};

}   // namespace gcnsim
