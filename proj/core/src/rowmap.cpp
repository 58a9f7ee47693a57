#include "gcnsim/rowmap.hpp"

#include <algorithm>

namespace gcnsim {

RowMap RowMap::make_static(int64_t n_rows, int64_t n_pe) {
    require(n_pe >= 1, "rowmap: n_pe must be >= 1");
    RowMap m;
    m.owner.resize(static_cast<size_t>(n_rows));
    const int64_t rows_per_pe = (n_rows + n_pe - 1) / std::max<int64_t>(n_pe, 1);
    for (int64_t r = 0; r < n_rows; ++r)
        m.owner[static_cast<size_t>(r)] =
            static_cast<int32_t>(std::min(r / std::max<int64_t>(rows_per_pe, 1), n_pe - 1));
    return m;
}

int32_t RowMap::route(int64_t row, int64_t s_col) const {
    auto it = evil_rows.find(row);
    if (it == evil_rows.end()) return owner[static_cast<size_t>(row)];
    const EvilSplit& split = it->second;
    // col_bounds is tiny (labor count + 1); linear scan
    for (size_t i = 0; i + 1 < split.col_bounds.size(); ++i)
        if (s_col >= split.col_bounds[i] && s_col < split.col_bounds[i + 1])
            return split.labor_pes[i];
    return split.labor_pes.back();
}

std::vector<std::vector<int64_t>> RowMap::rows_by_pe(int64_t n_pe) const {
    std::vector<std::vector<int64_t>> out(static_cast<size_t>(n_pe));
    for (int64_t r = 0; r < n_rows(); ++r) {
        if (is_evil(r)) continue;
        out[static_cast<size_t>(owner[static_cast<size_t>(r)])].push_back(r);
    }
    return out;
}

void RowMap::check_partition(int64_t n_pe, int64_t n_cols) const {
    for (int64_t r = 0; r < n_rows(); ++r) {
        int32_t pe = owner[static_cast<size_t>(r)];
        require(pe >= 0 && pe < n_pe, "rowmap: owner out of range at row " + std::to_string(r));
    }
    for (const auto& [row, split] : evil_rows) {
        require(row >= 0 && row < n_rows(), "rowmap: evil row out of range");
        require(!split.labor_pes.empty(), "rowmap: evil split with no labor PEs");
        require(split.col_bounds.size() == split.labor_pes.size() + 1,
                "rowmap: evil split bounds size mismatch");
        require(split.col_bounds.front() == 0 && split.col_bounds.back() == n_cols,
                "rowmap: evil split does not cover all source columns");
        for (size_t i = 0; i + 1 < split.col_bounds.size(); ++i)
            require(split.col_bounds[i] <= split.col_bounds[i + 1],
                    "rowmap: evil split bounds not ascending");
        for (int32_t pe : split.labor_pes)
            require(pe >= 0 && pe < n_pe, "rowmap: labor PE out of range");
        require(split.super_pe >= 0 && split.super_pe < n_pe,
                "rowmap: super PE out of range");
    }
}

}   // namespace gcnsim
