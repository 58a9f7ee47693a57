#include "gcnsim/types.hpp"

#include <algorithm>
#include <cmath>

namespace gcnsim {

void SparseMatrixCSC::validate() const {
    require(n_rows >= 0 && n_cols >= 0, "CSC: negative dimensions");
    require(static_cast<int64_t>(col_ptr.size()) == n_cols + 1, "CSC: col_ptr size mismatch");
    require(col_ptr.empty() || col_ptr.front() == 0, "CSC: col_ptr[0] != 0");
    require(col_ptr.empty() || col_ptr.back() == nnz(), "CSC: col_ptr[n_cols] != nnz");
    require(row_idx.size() == values.size(), "CSC: row_idx/values size mismatch");
    for (int64_t c = 0; c < n_cols; ++c) {
        require(col_ptr[c] <= col_ptr[c + 1], "CSC: col_ptr not non-decreasing");
        for (int64_t p = col_ptr[c]; p < col_ptr[c + 1]; ++p) {
            require(row_idx[p] >= 0 && row_idx[p] < n_rows, "CSC: row index out of range");
            if (p > col_ptr[c])
                require(row_idx[p - 1] < row_idx[p], "CSC: rows not strictly increasing in column");
            require(values[p] != 0.0, "CSC: explicit zero stored");
        }
    }
}

SparseMatrixCSC SparseMatrixCSC::from_triplets(int64_t n_rows, int64_t n_cols,
                                               std::vector<Triplet> t) {
    for (const Triplet& e : t) {
        require(e.row >= 0 && e.row < n_rows && e.col >= 0 && e.col < n_cols,
                "from_triplets: entry (" + std::to_string(e.row) + "," +
                    std::to_string(e.col) + ") out of bounds");
    }
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });

    SparseMatrixCSC m;
    m.n_rows = n_rows;
    m.n_cols = n_cols;
    m.col_ptr.assign(static_cast<size_t>(n_cols) + 1, 0);
    m.row_idx.reserve(t.size());
    m.values.reserve(t.size());

    size_t i = 0;
    for (int64_t c = 0; c < n_cols; ++c) {
        while (i < t.size() && t[i].col == c) {
            double v = t[i].value;
            int64_t r = t[i].row;
            ++i;
            while (i < t.size() && t[i].col == c && t[i].row == r) {
                v += t[i].value;   // duplicates summed
                ++i;
            }
            if (v != 0.0) {
                m.row_idx.push_back(static_cast<int32_t>(r));
                m.values.push_back(v);
            }
        }
        m.col_ptr[static_cast<size_t>(c) + 1] = static_cast<int64_t>(m.row_idx.size());
    }
    return m;
}

std::vector<Triplet> SparseMatrixCSC::to_triplets() const {
    std::vector<Triplet> out;
    out.reserve(static_cast<size_t>(nnz()));
    for (int64_t c = 0; c < n_cols; ++c)
        for (int64_t p = col_ptr[c]; p < col_ptr[c + 1]; ++p)
            out.push_back({row_idx[p], c, values[p]});
    return out;
}

std::vector<int64_t> SparseMatrixCSC::row_nnz() const {
    std::vector<int64_t> counts(static_cast<size_t>(n_rows), 0);
    for (int32_t r : row_idx) ++counts[static_cast<size_t>(r)];
    return counts;
}

double SparseMatrixCSC::at(int64_t r, int64_t c) const {
    for (int64_t p = col_ptr[c]; p < col_ptr[c + 1]; ++p)
        if (row_idx[p] == r) return values[p];
    return 0.0;
}

int64_t DenseMatrix::nnz() const {
    int64_t n = 0;
    for (double v : data)
        if (v != 0.0) ++n;
    return n;
}

FeatureMatrix FeatureMatrix::from_sparse(SparseMatrixCSC m) {
    FeatureMatrix f;
    f.is_sparse = true;
    f.sparse = std::move(m);
    return f;
}

FeatureMatrix FeatureMatrix::from_dense(DenseMatrix m) {
    FeatureMatrix f;
    f.is_sparse = false;
    f.dense = std::move(m);
    return f;
}

DenseMatrix FeatureMatrix::to_dense() const {
    if (!is_sparse) return dense;
    DenseMatrix d(sparse.n_rows, sparse.n_cols);
    for (int64_t c = 0; c < sparse.n_cols; ++c)
        for (int64_t p = sparse.col_ptr[c]; p < sparse.col_ptr[c + 1]; ++p)
            d.at(sparse.row_idx[p], c) = sparse.values[p];
    return d;
}

SparseMatrixCSC FeatureMatrix::to_sparse() const {
    if (is_sparse) return sparse;
    std::vector<Triplet> t;
    for (int64_t r = 0; r < dense.n_rows; ++r)
        for (int64_t c = 0; c < dense.n_cols; ++c)
            if (dense.at(r, c) != 0.0) t.push_back({r, c, dense.at(r, c)});
    return SparseMatrixCSC::from_triplets(dense.n_rows, dense.n_cols, std::move(t));
}

void GraphDataset::validate() const {
    adjacency.validate();
    require(adjacency.n_rows == adjacency.n_cols, "dataset: adjacency not square");
    require(features.n_rows() == adjacency.n_rows,
            "dataset: features.n_rows != adjacency.n_rows");
}

void PowerLawSpec::validate() const {
    require(n_nodes > 0, "powerlaw: n_nodes must be positive");
    require(exponent_beta > 0.0, "powerlaw: exponent_beta must be > 0");
    require(target_avg_degree >= 1.0, "powerlaw: target_avg_degree must be >= 1");
    require(target_avg_degree < static_cast<double>(n_nodes),
            "powerlaw: target_avg_degree >= n_nodes is infeasible");
}

}   // namespace gcnsim
