#include "gcnsim/simconfig.hpp"

namespace gcnsim {

std::string to_string(DesignVariant v) {
    switch (v) {
        case DesignVariant::baseline: return "baseline";
        case DesignVariant::design_a: return "A";
        case DesignVariant::design_b: return "B";
        case DesignVariant::design_c: return "C";
        case DesignVariant::design_d: return "D";
    }
    return "?";
}

DesignVariant variant_from_string(const std::string& s) {
    if (s == "baseline") return DesignVariant::baseline;
    if (s == "A" || s == "a") return DesignVariant::design_a;
    if (s == "B" || s == "b") return DesignVariant::design_b;
    if (s == "C" || s == "c") return DesignVariant::design_c;
    if (s == "D" || s == "d") return DesignVariant::design_d;
    throw std::runtime_error("unknown design variant: " + s);
}

void SimConfig::validate() const {
    require(is_power_of_two(n_pe), "sim.n_pe: must be a power of two, got " +
                                       std::to_string(n_pe));
    require(mac_latency_T >= 1, "sim.mac_latency_T: must be >= 1");
    require(tq_per_pe >= 1, "sim.tq_per_pe: must be >= 1");
    require(tq_depth >= 1, "sim.tq_depth: must be >= 1");
    require(omega_router_buf >= 1, "sim.omega_router_buf: must be >= 1");
    require(hop_radius_k >= 1 && hop_radius_k <= 3, "sim.hop_radius_k: must be in {1,2,3}");
    require(feed_width >= 0, "sim.feed_width: must be >= 0");
    require(sparsity_threshold > 0.0 && sparsity_threshold < 1.0,
            "sim.sparsity_threshold: must be in (0,1)");
}

void AutotunerConfig::validate() const {
    require(tuples_per_round >= 1, "autotune.tuples_per_round: must be >= 1");
    require(tracked_rounds_window >= 1, "autotune.tracked_rounds_window: must be >= 1");
    require(labor_pes_per_super >= 2, "autotune.labor_pes_per_super: must be >= 2");
    require(pes_per_super_group >= 2, "autotune.pes_per_super_group: must be >= 2");
    require(ugt_g_bits >= 1 && ugt_g_bits <= 12, "autotune.ugt_g_bits: must be in [1,12]");
    require(sorter_capacity >= 1, "autotune.sorter_capacity: must be >= 1");
    require(evil_trigger_ratio > 1.0, "autotune.evil_trigger_ratio: must be > 1");
    require(overhead_cycles_per_tuple >= 0, "autotune.overhead_cycles_per_tuple: must be >= 0");
    require(converge_patience >= 1, "autotune.converge_patience: must be >= 1");
}

FeatureToggles toggles_for_variant(DesignVariant v) {
    FeatureToggles t;
    switch (v) {
        case DesignVariant::baseline: break;
        case DesignVariant::design_a:
        case DesignVariant::design_b:
            t.smoothing = true;
            break;
        case DesignVariant::design_c:
        case DesignVariant::design_d:
            t.smoothing = true;
            t.switching = true;
            t.remapping = true;
            t.diagonal_skip = true;
            break;
    }
    return t;
}

int hop_radius_for_variant(DesignVariant v, bool clustered) {
    int base = 0;
    switch (v) {
        case DesignVariant::baseline: base = 1; break;   // unused, smoothing off
        case DesignVariant::design_a:
        case DesignVariant::design_c: base = 1; break;
        case DesignVariant::design_b:
        case DesignVariant::design_d: base = 2; break;
    }
    if (clustered && v != DesignVariant::baseline) base += 1;
    return std::min(base, 3);
}

}   // namespace gcnsim
