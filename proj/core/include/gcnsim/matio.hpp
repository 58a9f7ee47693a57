#pragma once

#include "gcnsim/types.hpp"

#include <iosfwd>
#include <string>

namespace gcnsim::matio {

// Matrix Market coordinate format. Accepts real, integer and pattern fields,
// general and symmetric symmetry. Duplicate entries are summed.
SparseMatrixCSC load_matrix_market(const std::string& path);
SparseMatrixCSC read_matrix_market(std::istream& in);

void save_matrix_market(const std::string& path, const SparseMatrixCSC& m);
void write_matrix_market(std::ostream& out, const SparseMatrixCSC& m);

// Matrix Market dense array format (column-major per the spec of the format).
DenseMatrix load_dense_matrix_market(const std::string& path);
DenseMatrix read_dense_matrix_market(std::istream& in);

// Whitespace-separated `src dst [weight]` lines; '#' and '%' start comments.
// n_hint forces the dimension when the file does not mention every node.
SparseMatrixCSC load_edge_list(const std::string& path, bool one_indexed,
                               int64_t n_hint = 0);
SparseMatrixCSC read_edge_list(std::istream& in, bool one_indexed, int64_t n_hint = 0);

// A_hat = D^{-1/2} (A+I) D^{-1/2} with D_ii the row sum of (A+I).
// Always computed in double precision.
SparseMatrixCSC normalize_adjacency(const SparseMatrixCSC& a);

// Chung-Lu expected-degree graph over a truncated power-law weight sequence.
// Symmetric 0/1 matrix, no self loops; deterministic for a fixed seed.
// Average degree is rescaled to land within 10% of the target.
SparseMatrixCSC gen_powerlaw(const PowerLawSpec& spec);

double density(const SparseMatrixCSC& m);

}   // namespace gcnsim::matio
