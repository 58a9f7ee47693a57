#pragma once

#include "gcnsim/types.hpp"

#include <cstdint>
#include <vector>

namespace gcnsim::gcnref {

enum class Activation { relu, none };

struct LayerSpec {
    int64_t in_dim = 0;
    int64_t out_dim = 0;
    int64_t adjacency_hops = 1;   // 1 for A(XW), 2 for A(A(XW))
    Activation activation = Activation::relu;
};

struct GcnModel {
    std::vector<LayerSpec> layers;
    std::vector<DenseMatrix> weights;   // one per layer, in_dim x out_dim

    void validate(int64_t feature_dim) const;
};

enum class ExecOrder { xw_first, ax_first };

struct OpCount {
    ExecOrder order = ExecOrder::xw_first;
    std::vector<int64_t> mac_ops_per_layer;
    int64_t total = 0;
};

// Seeded uniform(-0.5, 0.5) weights; the integer variant draws from
// {-2,...,2} excluding 0-heavy rows for exact-arithmetic runs.
std::vector<DenseMatrix> random_weights(const std::vector<LayerSpec>& layers,
                                        uint64_t seed, bool integer_valued = false);

// Functional evaluation of X^{l+1} = act(A^hops (X^l W^l)) in double
// precision with a fixed accumulation order (inner dimension ascending).
// Returns the post-activation output of every layer.
std::vector<DenseMatrix> infer_reference(const GcnModel& model, const GraphDataset& dataset);

// A_hat is the normalized adjacency to use (dataset.adjacency is raw A).
std::vector<DenseMatrix> infer_reference(const GcnModel& model, const SparseMatrixCSC& a_hat,
                                         const FeatureMatrix& features);

OpCount count_ops(const GcnModel& model, const GraphDataset& dataset, ExecOrder order);
OpCount count_ops(const GcnModel& model, const SparseMatrixCSC& a_hat,
                  const FeatureMatrix& features, ExecOrder order);

// Density of each layer output after activation.
std::vector<double> measure_intermediate_density(const GcnModel& model,
                                                 const GraphDataset& dataset);

// Dense helpers shared with tests (fixed accumulation order).
DenseMatrix spmm_reference(const SparseMatrixCSC& s, const DenseMatrix& b);
DenseMatrix matmul_reference(const DenseMatrix& a, const DenseMatrix& b);

}   // namespace gcnsim::gcnref
