#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcnsim {

struct Triplet {
    int64_t row = 0;
    int64_t col = 0;
    double value = 0.0;
};

// Compressed-sparse-column matrix. Within each column row indices are
// strictly increasing; no explicit zeros are stored.
struct SparseMatrixCSC {
    int64_t n_rows = 0;
    int64_t n_cols = 0;
    std::vector<int64_t> col_ptr;   // size n_cols + 1
    std::vector<int32_t> row_idx;   // size nnz
    std::vector<double> values;     // size nnz

    int64_t nnz() const { return static_cast<int64_t>(row_idx.size()); }

    void validate() const;

    // Builds a CSC from unordered triplets. Duplicates are summed
    // (Matrix Market convention); entries that sum to zero are dropped.
    static SparseMatrixCSC from_triplets(int64_t n_rows, int64_t n_cols,
                                         std::vector<Triplet> triplets);

    std::vector<Triplet> to_triplets() const;

    std::vector<int64_t> row_nnz() const;

    double at(int64_t r, int64_t c) const;
};

struct DenseMatrix {
    int64_t n_rows = 0;
    int64_t n_cols = 0;
    std::vector<double> data;   // row-major, length n_rows * n_cols

    DenseMatrix() = default;
    DenseMatrix(int64_t rows, int64_t cols, double fill = 0.0)
        : n_rows(rows), n_cols(cols), data(static_cast<size_t>(rows * cols), fill) {}

    double& at(int64_t r, int64_t c) { return data[static_cast<size_t>(r * n_cols + c)]; }
    double at(int64_t r, int64_t c) const { return data[static_cast<size_t>(r * n_cols + c)]; }

    int64_t nnz() const;
};

// Features of layer 1 may be sparse (citation graphs) or dense (Reddit).
struct FeatureMatrix {
    bool is_sparse = true;
    SparseMatrixCSC sparse;
    DenseMatrix dense;

    int64_t n_rows() const { return is_sparse ? sparse.n_rows : dense.n_rows; }
    int64_t n_cols() const { return is_sparse ? sparse.n_cols : dense.n_cols; }
    int64_t nnz() const { return is_sparse ? sparse.nnz() : dense.nnz(); }

    static FeatureMatrix from_sparse(SparseMatrixCSC m);
    static FeatureMatrix from_dense(DenseMatrix m);

    DenseMatrix to_dense() const;
    SparseMatrixCSC to_sparse() const;
};

struct GraphDataset {
    SparseMatrixCSC adjacency;   // raw A, square
    FeatureMatrix features;      // X of layer 1
    std::string name;

    void validate() const;
};

struct PowerLawSpec {
    int64_t n_nodes = 0;
    double exponent_beta = 0.0;     // > 0
    double target_avg_degree = 0.0; // >= 1
    uint64_t seed = 0;

    void validate() const;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

}   // namespace gcnsim
