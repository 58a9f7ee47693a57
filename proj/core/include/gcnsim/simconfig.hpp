#pragma once

#include "gcnsim/types.hpp"

#include <cstdint>
#include <string>

namespace gcnsim {

enum class Precision { f32, f64, int_exact };

enum class DesignVariant { baseline, design_a, design_b, design_c, design_d };

std::string to_string(DesignVariant v);
DesignVariant variant_from_string(const std::string& s);

// Microarchitectural parameters of one SpMM engine.
struct SimConfig {
    int64_t n_pe = 1024;            // power of two (omega network)
    int mac_latency_T = 5;          // MAC pipeline depth in cycles
    int tq_per_pe = 4;              // TDQ-1 lanes per PE
    int tq_depth = 16;              // entries per task queue
    int omega_router_buf = 4;       // entries per router input
    int hop_radius_k = 1;           // smoothing neighborhood, {1,2,3}
    int64_t feed_width = 0;         // TDQ-2 injections/cycle, 0 = n_pe
    int64_t tdq1_feed_cap = 0;      // TDQ-1 scanned elements/cycle, 0 = tq_per_pe * n_pe
    double sparsity_threshold = 0.75;   // below: TDQ-1, above: TDQ-2
    Precision precision = Precision::f64;
    uint64_t seed = 0;

    void validate() const;
};

// Knobs of the workload autotuner.
struct AutotunerConfig {
    int tuples_per_round = 4;
    int tracked_rounds_window = 2;
    double evil_trigger_ratio = 4.0;    // over-PE busy > ratio x median busy
    int labor_pes_per_super = 4;
    int pes_per_super_group = 128;
    bool freeze_after_converged = true;
    int ugt_g_bits = 3;                 // granularity of the gap division approximation
    int sorter_capacity = 8;            // evil rows one Super-PE can track per epoch
    int overhead_cycles_per_tuple = 8;  // sequential between-round cost
    double evil_row_share = 1.0;        // row is evil if nnz > share x (nnz / n_pe)
    double converge_epsilon_points = 1.0;
    int converge_patience = 3;

    void validate() const;
};

// Which rebalancing techniques are active. Derived from a design variant or
// set individually.
struct FeatureToggles {
    bool smoothing = false;
    bool switching = false;
    bool remapping = false;
    bool diagonal_skip = false;
};

// The five design points evaluated in the experiments. clustered shifts
// the smoothing radius up by one hop for extremely clustered inputs.
FeatureToggles toggles_for_variant(DesignVariant v);
int hop_radius_for_variant(DesignVariant v, bool clustered);

inline bool is_power_of_two(int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

}   // namespace gcnsim
