#include "gcnsim/gcnref.hpp"

#include "gcnsim/matio.hpp"

#include <algorithm>
#include <random>

namespace gcnsim::gcnref {

void GcnModel::validate(int64_t feature_dim) const {
    require(!layers.empty(), "model: no layers");
    require(weights.size() == layers.size(), "model: weights/layers count mismatch");
    int64_t d = feature_dim;
    for (size_t l = 0; l < layers.size(); ++l) {
        const LayerSpec& spec = layers[l];
        require(spec.in_dim > 0 && spec.out_dim > 0, "model: non-positive layer dims");
        require(spec.adjacency_hops >= 1, "model: adjacency_hops must be >= 1");
        require(spec.in_dim == d, "model: layer " + std::to_string(l) +
                                      " in_dim does not chain with previous layer");
        require(weights[l].n_rows == spec.in_dim && weights[l].n_cols == spec.out_dim,
                "model: weight shape mismatch at layer " + std::to_string(l));
        d = spec.out_dim;
    }
}

std::vector<DenseMatrix> random_weights(const std::vector<LayerSpec>& layers, uint64_t seed,
                                        bool integer_valued) {
    std::mt19937_64 rng(seed);
    std::vector<DenseMatrix> out;
    out.reserve(layers.size());
    for (const LayerSpec& l : layers) {
        DenseMatrix w(l.in_dim, l.out_dim);
        if (integer_valued) {
            std::uniform_int_distribution<int> d(-2, 2);
            for (double& x : w.data) x = static_cast<double>(d(rng));
        } else {
            std::uniform_real_distribution<double> d(-0.5, 0.5);
            for (double& x : w.data) x = d(rng);
        }
        out.push_back(std::move(w));
    }
    return out;
}

DenseMatrix spmm_reference(const SparseMatrixCSC& s, const DenseMatrix& b) {
    require(s.n_cols == b.n_rows, "spmm_reference: dimension mismatch");
    DenseMatrix c(s.n_rows, b.n_cols);
    // column-wise product, inner columns ascending, rows ascending within each
    for (int64_t k = 0; k < b.n_cols; ++k)
        for (int64_t j = 0; j < s.n_cols; ++j) {
            double bjk = b.at(j, k);
            if (bjk == 0.0) continue;
            for (int64_t p = s.col_ptr[j]; p < s.col_ptr[j + 1]; ++p)
                c.at(s.row_idx[p], k) += s.values[p] * bjk;
        }
    return c;
}

DenseMatrix matmul_reference(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.n_cols == b.n_rows, "matmul_reference: dimension mismatch");
    DenseMatrix c(a.n_rows, b.n_cols);
    for (int64_t k = 0; k < b.n_cols; ++k)
        for (int64_t j = 0; j < a.n_cols; ++j)
            for (int64_t i = 0; i < a.n_rows; ++i) {
                double v = a.at(i, j) * b.at(j, k);
                if (v != 0.0) c.at(i, k) += v;
            }
    return c;
}

namespace {

void apply_activation(DenseMatrix& m, Activation act) {
    if (act == Activation::relu)
        for (double& v : m.data) v = std::max(v, 0.0);
}

}   // namespace

std::vector<DenseMatrix> infer_reference(const GcnModel& model, const SparseMatrixCSC& a_hat,
                                         const FeatureMatrix& features) {
    model.validate(features.n_cols());
    require(a_hat.n_rows == a_hat.n_cols, "infer_reference: adjacency not square");
    require(a_hat.n_rows == features.n_rows(), "infer_reference: feature rows mismatch");

    std::vector<DenseMatrix> outputs;
    outputs.reserve(model.layers.size());

    FeatureMatrix x = features;
    for (size_t l = 0; l < model.layers.size(); ++l) {
        const LayerSpec& spec = model.layers[l];
        DenseMatrix xw = x.is_sparse ? spmm_reference(x.sparse, model.weights[l])
                                     : matmul_reference(x.dense, model.weights[l]);
        DenseMatrix y = std::move(xw);
        for (int64_t h = 0; h < spec.adjacency_hops; ++h) y = spmm_reference(a_hat, y);
        apply_activation(y, spec.activation);
        outputs.push_back(y);
        x = FeatureMatrix::from_dense(std::move(y));
    }
    return outputs;
}

std::vector<DenseMatrix> infer_reference(const GcnModel& model, const GraphDataset& dataset) {
    dataset.validate();
    SparseMatrixCSC a_hat = matio::normalize_adjacency(dataset.adjacency);
    return infer_reference(model, a_hat, dataset.features);
}

OpCount count_ops(const GcnModel& model, const SparseMatrixCSC& a_hat,
                  const FeatureMatrix& features, ExecOrder order) {
    model.validate(features.n_cols());
    std::vector<DenseMatrix> outputs = infer_reference(model, a_hat, features);

    OpCount oc;
    oc.order = order;
    int64_t x_nnz = features.nnz();
    int64_t x_rows = features.n_rows();
    const int64_t a_nnz = a_hat.nnz();
    for (size_t l = 0; l < model.layers.size(); ++l) {
        const LayerSpec& spec = model.layers[l];
        int64_t ops = 0;
        if (order == ExecOrder::xw_first) {
            // XW on the sparse operand, then one SpMM per adjacency hop
            ops = x_nnz * spec.out_dim + spec.adjacency_hops * a_nnz * spec.out_dim;
        } else {
            // (AX) treated as producing a dense n x in_dim matrix
            ops = spec.adjacency_hops * a_nnz * spec.in_dim +
                  x_rows * spec.in_dim * spec.out_dim;
        }
        oc.mac_ops_per_layer.push_back(ops);
        oc.total += ops;
        x_nnz = outputs[l].nnz();
        x_rows = outputs[l].n_rows;
    }
    return oc;
}

OpCount count_ops(const GcnModel& model, const GraphDataset& dataset, ExecOrder order) {
    dataset.validate();
    SparseMatrixCSC a_hat = matio::normalize_adjacency(dataset.adjacency);
    return count_ops(model, a_hat, dataset.features, order);
}

std::vector<double> measure_intermediate_density(const GcnModel& model,
                                                 const GraphDataset& dataset) {
    std::vector<DenseMatrix> outputs = infer_reference(model, dataset);
    std::vector<double> out;
    out.reserve(outputs.size());
    for (const DenseMatrix& m : outputs)
        out.push_back(static_cast<double>(m.nnz()) /
                      (static_cast<double>(m.n_rows) * static_cast<double>(m.n_cols)));
    return out;
}

}   // namespace gcnsim::gcnref
