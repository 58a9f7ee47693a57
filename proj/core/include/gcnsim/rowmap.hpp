#pragma once

#include "gcnsim/types.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace gcnsim {

// An evil row is split into contiguous source-column ranges, one per
// Labor-PE; partials reduce through the Super-PE's adder tree.
struct EvilSplit {
    int32_t super_pe = -1;
    std::vector<int32_t> labor_pes;
    std::vector<int64_t> col_bounds;   // size labor_pes.size()+1, ascending, covers all columns
};

// Mutable row -> PE assignment; the object all three rebalancing
// techniques edit.
struct RowMap {
    std::vector<int32_t> owner;                     // row -> PE id
    std::unordered_map<int64_t, EvilSplit> evil_rows;
    int64_t version = 0;

    int64_t n_rows() const { return static_cast<int64_t>(owner.size()); }

    // Direct static block mapping: consecutive rows per PE.
    static RowMap make_static(int64_t n_rows, int64_t n_pe);

    bool is_evil(int64_t row) const { return evil_rows.count(row) != 0; }

    // Executing PE for a job of `row` whose source column is `s_col`.
    int32_t route(int64_t row, int64_t s_col) const;

    // Rows currently owned by each PE (evil rows excluded; they are owned
    // by their split).
    std::vector<std::vector<int64_t>> rows_by_pe(int64_t n_pe) const;

    // Throws unless every row is owned exactly once, counting an evil row's
    // split as a set of disjoint ranges covering all source columns.
    void check_partition(int64_t n_pe, int64_t n_cols) const;
};

}   // namespace gcnsim
