#include "gcnsim/autotune.hpp"

#include <algorithm>
#include <cmath>

namespace gcnsim::autotune {

PesmSelection pesm_observe(const std::vector<int64_t>& finish_cycles, int tuples_per_round,
                           int min_separation,
                           const std::unordered_set<int32_t>& excluded) {
    const int32_t n = static_cast<int32_t>(finish_cycles.size());
    std::vector<int32_t> order(static_cast<size_t>(n));
    for (int32_t i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
        return finish_cycles[static_cast<size_t>(a)] != finish_cycles[static_cast<size_t>(b)]
                   ? finish_cycles[static_cast<size_t>(a)] < finish_cycles[static_cast<size_t>(b)]
                   : a < b;
    });

    const int sep = std::max(min_separation, 1);
    auto pick = [&](bool from_back) {
        std::vector<int32_t> out;
        for (int32_t idx = 0; idx < n && static_cast<int>(out.size()) < tuples_per_round;
             ++idx) {
            int32_t pe = order[static_cast<size_t>(from_back ? n - 1 - idx : idx)];
            if (excluded.count(pe)) continue;
            bool near = false;
            for (int32_t sel : out)
                if (std::abs(sel - pe) < sep) near = true;
            if (!near) out.push_back(pe);
        }
        return out;
    };

    PesmSelection sel;
    sel.underloaded = pick(false);
    sel.overloaded = pick(true);
    // a PE cannot sit on a crest and a trough at once
    std::vector<int32_t> filtered;
    for (int32_t pe : sel.overloaded) {
        bool dup = false;
        for (int32_t u : sel.underloaded)
            if (u == pe) dup = true;
        if (!dup) filtered.push_back(pe);
    }
    sel.overloaded = std::move(filtered);
    return sel;
}

int64_t ugt_quantize(int64_t g1, int64_t gi_abs, int g_bits) {
    require(g1 > 0, "ugt: g1 must be positive");
    const int64_t threshold = std::max<int64_t>(g1 >> g_bits, 1);
    int64_t q = gi_abs / threshold;
    const int64_t q_max = int64_t{1} << (g_bits + 1);
    return std::min(q, q_max);
}

int64_t tfsfl_lookup(int64_t q, int64_t rows_per_pe, int g_bits) {
    const double scale = static_cast<double>(int64_t{1} << (g_bits + 1));
    int64_t n = static_cast<int64_t>(
        std::llround(static_cast<double>(q) * static_cast<double>(rows_per_pe) / scale));
    return std::clamp<int64_t>(n, 0, rows_per_pe);
}

int64_t compute_switch_fraction(int64_t g1, int64_t gi_signed, int64_t rows_per_pe,
                                int g_bits, std::optional<int64_t> prior_n) {
    const int64_t q = ugt_quantize(g1, std::abs(gi_signed), g_bits);
    const int64_t step = tfsfl_lookup(q, rows_per_pe, g_bits);
    if (!prior_n) return step;
    const int64_t n = *prior_n + (gi_signed < 0 ? -step : step);
    return std::clamp<int64_t>(n, 0, rows_per_pe);
}

int64_t apply_remote_switch(RowMap& map, int32_t over_pe, int32_t under_pe, int64_t n_rows,
                            const std::vector<int64_t>& row_jobs) {
    if (n_rows <= 0 || over_pe == under_pe) return 0;
    std::vector<int64_t> over_rows, under_rows;
    for (int64_t r = 0; r < map.n_rows(); ++r) {
        if (map.is_evil(r)) continue;
        if (map.owner[static_cast<size_t>(r)] == over_pe) over_rows.push_back(r);
        else if (map.owner[static_cast<size_t>(r)] == under_pe) under_rows.push_back(r);
    }
    auto by_jobs_desc = [&](int64_t a, int64_t b) {
        return row_jobs[static_cast<size_t>(a)] != row_jobs[static_cast<size_t>(b)]
                   ? row_jobs[static_cast<size_t>(a)] > row_jobs[static_cast<size_t>(b)]
                   : a < b;
    };
    std::sort(over_rows.begin(), over_rows.end(), by_jobs_desc);
    std::sort(under_rows.begin(), under_rows.end(), by_jobs_desc);

    // N densest rows leave the overloaded PE; N sparsest flow back.
    const int64_t give = std::min<int64_t>(n_rows, static_cast<int64_t>(over_rows.size()));
    const int64_t take = std::min<int64_t>(n_rows, static_cast<int64_t>(under_rows.size()));
    for (int64_t i = 0; i < give; ++i)
        map.owner[static_cast<size_t>(over_rows[static_cast<size_t>(i)])] = under_pe;
    for (int64_t i = 0; i < take; ++i)
        map.owner[static_cast<size_t>(
            under_rows[static_cast<size_t>(under_rows.size()) - 1 - static_cast<size_t>(i)])] =
            over_pe;
    if (give > 0 || take > 0) ++map.version;
    return give;
}

std::vector<int64_t> split_evil_row_bounds(const std::vector<int64_t>& sorted_cols,
                                           int64_t n_cols, int parts) {
    require(parts >= 1, "split_evil_row_bounds: parts must be >= 1");
    std::vector<int64_t> bounds(static_cast<size_t>(parts) + 1, 0);
    bounds.back() = n_cols;
    const int64_t nnz = static_cast<int64_t>(sorted_cols.size());
    for (int p = 1; p < parts; ++p) {
        int64_t cut = (nnz * p) / parts;   // nonzeros [cut of part p-1, ...) go to part p
        int64_t b = cut == 0 ? 0 : sorted_cols[static_cast<size_t>(cut - 1)] + 1;
        bounds[static_cast<size_t>(p)] = std::clamp<int64_t>(
            b, bounds[static_cast<size_t>(p - 1)], n_cols);
    }
    return bounds;
}

// ---------------------------------------------------------------------------

Autotuner::Autotuner(const SimConfig& sim, const AutotunerConfig& cfg, FeatureToggles toggles,
                     int64_t n_rows, int64_t n_cols)
    : sim_(sim), cfg_(cfg), toggles_(toggles), n_rows_(n_rows), n_cols_(n_cols) {
    rows_per_pe_ = std::max<int64_t>((n_rows + sim.n_pe - 1) / sim.n_pe, 1);
    diag_skip_rows_.assign(static_cast<size_t>(n_rows), 0);
}

int Autotuner::group_count() const {
    const int per = std::min<int64_t>(cfg_.pes_per_super_group, sim_.n_pe);
    return static_cast<int>((sim_.n_pe + per - 1) / per);
}

int Autotuner::group_of_pe(int32_t pe) const {
    const int per = static_cast<int>(std::min<int64_t>(cfg_.pes_per_super_group, sim_.n_pe));
    return pe / per;
}

int32_t Autotuner::super_pe_of_group(int group) const {
    const int per = static_cast<int>(std::min<int64_t>(cfg_.pes_per_super_group, sim_.n_pe));
    return static_cast<int32_t>(group * per);
}

std::vector<int32_t> Autotuner::labor_pes_of_group(int group) const {
    const int per = static_cast<int>(std::min<int64_t>(cfg_.pes_per_super_group, sim_.n_pe));
    const int32_t start = static_cast<int32_t>(group * per);
    const int32_t end = static_cast<int32_t>(
        std::min<int64_t>(static_cast<int64_t>(start) + per, sim_.n_pe));
    std::vector<int32_t> labors;
    for (int32_t pe = start + 1; pe < end &&
                                 static_cast<int>(labors.size()) < cfg_.labor_pes_per_super;
         ++pe)
        labors.push_back(pe);
    if (labors.empty()) labors.push_back(start);   // degenerate single-PE group
    return labors;
}

RoundOutcome Autotuner::on_round_end(RowMap& map, const RoundStats& stats) {
    RoundOutcome out;
    if (frozen_) return out;

    util_history_.push_back(stats.utilization);
    if (cfg_.freeze_after_converged &&
        static_cast<int>(util_history_.size()) > cfg_.converge_patience &&
        protocols_.empty()) {
        bool flat = true;
        for (int i = 0; i < cfg_.converge_patience; ++i) {
            size_t k = util_history_.size() - 1 - static_cast<size_t>(i);
            double delta = std::abs(util_history_[k] - util_history_[k - 1]) * 100.0;
            if (delta >= cfg_.converge_epsilon_points) flat = false;
        }
        if (flat) {
            frozen_ = true;
            frozen_round_ = stats.round;
            DecisionRecord d;
            d.round = stats.round;
            d.kind = "freeze";
            out.decisions.push_back(d);
            return out;
        }
    }

    step_evil_protocols(map, stats, out.decisions);
    if (toggles_.remapping) maybe_trigger_evil(map, stats, out.decisions);
    if (toggles_.switching) run_switching(map, stats, out.decisions, out.overhead_cycles);
    return out;
}

void Autotuner::step_evil_protocols(RowMap& map, const RoundStats& stats,
                                    std::vector<DecisionRecord>& log) {
    std::vector<int> done;
    for (auto& [group, proto] : protocols_) {
        if (proto.phase != 1) continue;
        // The profiling round just finished: pick evil rows among the
        // flagged PE's rows, revert the temporary swap, install splits.
        const std::vector<int64_t>& jobs = *stats.row_jobs;
        int64_t total_jobs = 0;
        for (int64_t b : stats.busy) total_jobs += b;
        const double fair = static_cast<double>(total_jobs) / static_cast<double>(sim_.n_pe);

        std::vector<int64_t> candidates;
        for (int64_t r : proto.flagged_rows)
            if (static_cast<double>(jobs[static_cast<size_t>(r)]) >
                cfg_.evil_row_share * std::max(fair, 1.0))
                candidates.push_back(r);
        std::sort(candidates.begin(), candidates.end(), [&](int64_t a, int64_t b) {
            return jobs[static_cast<size_t>(a)] != jobs[static_cast<size_t>(b)]
                       ? jobs[static_cast<size_t>(a)] > jobs[static_cast<size_t>(b)]
                       : a < b;
        });

        // revert the temporary swap
        for (int64_t r : proto.flagged_rows)
            map.owner[static_cast<size_t>(r)] = proto.flagged_pe;
        for (int64_t r : proto.super_rows)
            map.owner[static_cast<size_t>(r)] = proto.super_pe;
        ++map.version;

        const int capacity = cfg_.sorter_capacity;
        std::vector<int32_t> labors = labor_pes_of_group(group);
        for (size_t i = 0; i < candidates.size(); ++i) {
            int64_t row = candidates[i];
            DecisionRecord d;
            d.round = stats.round;
            d.pe_a = proto.flagged_pe;
            d.pe_b = proto.super_pe;
            d.row = row;
            if (static_cast<int>(i) >= capacity) {
                d.kind = "evil_defer";   // sorter out of slots; next epoch retries
                log.push_back(d);
                continue;
            }
            EvilSplit split;
            split.super_pe = proto.super_pe;
            split.labor_pes = labors;
            std::vector<int64_t> cols = row_cols_ ? row_cols_(row) : std::vector<int64_t>{};
            split.col_bounds =
                split_evil_row_bounds(cols, n_cols_, static_cast<int>(labors.size()));
            map.evil_rows[row] = std::move(split);
            ++map.version;
            d.kind = "evil_remap";
            d.rows_moved = jobs[static_cast<size_t>(row)];
            log.push_back(d);
        }
        done.push_back(group);
    }
    for (int g : done) {
        reserved_.erase(protocols_[g].flagged_pe);
        reserved_.erase(protocols_[g].super_pe);
        protocols_.erase(g);
    }
}

void Autotuner::maybe_trigger_evil(RowMap& map, const RoundStats& stats,
                                   std::vector<DecisionRecord>& log) {
    std::vector<int64_t> sorted_busy = stats.busy;
    std::sort(sorted_busy.begin(), sorted_busy.end());
    const int64_t median = sorted_busy[sorted_busy.size() / 2];
    const double threshold = cfg_.evil_trigger_ratio * std::max<double>(
                                                            static_cast<double>(median), 1.0);

    const int per = static_cast<int>(std::min<int64_t>(cfg_.pes_per_super_group, sim_.n_pe));
    for (int g = 0; g < group_count(); ++g) {
        if (protocols_.count(g)) continue;
        const int32_t start = static_cast<int32_t>(g * per);
        const int32_t end =
            static_cast<int32_t>(std::min<int64_t>(static_cast<int64_t>(start) + per, sim_.n_pe));
        if (end - start < 2) continue;   // no labor PEs available
        int32_t worst = start;
        for (int32_t pe = start; pe < end; ++pe)
            if (stats.busy[static_cast<size_t>(pe)] > stats.busy[static_cast<size_t>(worst)])
                worst = pe;
        if (static_cast<double>(stats.busy[static_cast<size_t>(worst)]) <= threshold) continue;

        EvilProtocol proto;
        proto.phase = 1;
        proto.flagged_pe = worst;
        proto.super_pe = super_pe_of_group(g);
        for (int64_t r = 0; r < map.n_rows(); ++r) {
            if (map.is_evil(r)) continue;
            if (map.owner[static_cast<size_t>(r)] == worst) proto.flagged_rows.push_back(r);
            else if (map.owner[static_cast<size_t>(r)] == proto.super_pe)
                proto.super_rows.push_back(r);
        }
        if (proto.flagged_pe != proto.super_pe) {
            // temporary workload switch so the Super-PE can profile
            for (int64_t r : proto.flagged_rows)
                map.owner[static_cast<size_t>(r)] = proto.super_pe;
            for (int64_t r : proto.super_rows)
                map.owner[static_cast<size_t>(r)] = proto.flagged_pe;
            ++map.version;
        } else {
            proto.super_rows.clear();
        }
        reserved_.insert(proto.flagged_pe);
        reserved_.insert(proto.super_pe);

        DecisionRecord d;
        d.round = stats.round;
        d.kind = "evil_trigger";
        d.pe_a = worst;
        d.pe_b = proto.super_pe;
        d.gap = stats.busy[static_cast<size_t>(worst)] - median;
        log.push_back(d);
        protocols_[g] = std::move(proto);
    }
}

void Autotuner::run_switching(RowMap& map, const RoundStats& stats,
                              std::vector<DecisionRecord>& log, int64_t& overhead) {
    const std::vector<int64_t>& row_jobs = *stats.row_jobs;

    // feedback updates for tracked tuples (Eq. 6)
    std::vector<SwitchTuple> still_tracked;
    for (SwitchTuple t : tracked_) {
        if (reserved_.count(t.over_pe) || reserved_.count(t.under_pe)) continue;
        const int64_t gi = stats.finish[static_cast<size_t>(t.over_pe)] -
                           stats.finish[static_cast<size_t>(t.under_pe)];
        const int64_t n_new =
            compute_switch_fraction(t.g1, gi, rows_per_pe_, cfg_.ugt_g_bits, t.fraction_rows);
        const int64_t delta = n_new - t.fraction_rows;
        if (delta > 0)
            apply_remote_switch(map, t.over_pe, t.under_pe, delta, row_jobs);
        else if (delta < 0)
            apply_remote_switch(map, t.under_pe, t.over_pe, -delta, row_jobs);
        t.fraction_rows = n_new;
        t.update_age += 1;
        overhead += cfg_.overhead_cycles_per_tuple;

        DecisionRecord d;
        d.round = stats.round;
        d.kind = "switch_update";
        d.pe_a = t.over_pe;
        d.pe_b = t.under_pe;
        d.rows_moved = delta;
        d.gap = gi;
        log.push_back(d);
        if (t.update_age < cfg_.tracked_rounds_window) still_tracked.push_back(t);
    }
    tracked_ = std::move(still_tracked);

    std::unordered_set<int32_t> excluded = reserved_;
    for (const SwitchTuple& t : tracked_) {
        excluded.insert(t.over_pe);
        excluded.insert(t.under_pe);
    }
    PesmSelection sel = pesm_observe(stats.finish, cfg_.tuples_per_round,
                                     2 * sim_.hop_radius_k, excluded);
    if (toggles_.diagonal_skip) update_diag_skip(map, sel);

    const size_t pairs = std::min(sel.underloaded.size(), sel.overloaded.size());
    for (size_t i = 0; i < pairs; ++i) {
        const int32_t over = sel.overloaded[i];
        const int32_t under = sel.underloaded[i];
        const int64_t g1 = stats.finish[static_cast<size_t>(over)] -
                           stats.finish[static_cast<size_t>(under)];
        if (g1 <= 0) continue;   // gap 0: tuple dissolves
        const int64_t n0 =
            compute_switch_fraction(g1, g1, rows_per_pe_, cfg_.ugt_g_bits, std::nullopt);
        const int64_t moved = apply_remote_switch(map, over, under, n0, row_jobs);
        if (moved == 0 && n0 > 0) continue;   // overloaded side held no movable rows
        SwitchTuple t;
        t.over_pe = over;
        t.under_pe = under;
        t.fraction_rows = n0;
        t.g1 = g1;
        t.created_round = stats.round;
        tracked_.push_back(t);
        overhead += cfg_.overhead_cycles_per_tuple;

        DecisionRecord d;
        d.round = stats.round;
        d.kind = "switch_new";
        d.pe_a = over;
        d.pe_b = under;
        d.rows_moved = n0;
        d.gap = g1;
        log.push_back(d);
    }
}

void Autotuner::update_diag_skip(const RowMap& map, const PesmSelection& sel) {
    std::fill(diag_skip_rows_.begin(), diag_skip_rows_.end(), 0);
    std::unordered_set<int32_t> over(sel.overloaded.begin(), sel.overloaded.end());
    if (over.empty()) return;
    for (int64_t r = 0; r < map.n_rows(); ++r) {
        if (map.is_evil(r)) continue;
        if (over.count(map.owner[static_cast<size_t>(r)]))
            diag_skip_rows_[static_cast<size_t>(r)] = 1;
    }
}

}   // namespace gcnsim::autotune
