// Dense batch kernels over lists of matrices / basis columns. Each kernel has
// one per-element core; the parallel path distributes independent elements
// across OpenMP threads and reduces in a fixed order, so serial and parallel
// results are bitwise identical.
#pragma once

#include "polar/base.hpp"

namespace polar::kernels {

// out[i] = g_inv * x[i] * g
void conjugate_all(const Mat& g_inv, const Mat& g, const std::vector<Mat>& x,
                   std::vector<Mat>& out, Exec exec = default_exec());

// Coefficient matrix basis^T * vecs (columns are flattened matrices/vectors).
Mat coeffs(const Mat& basis, const Mat& vecs, Exec exec = default_exec());

// vecs - basis * (basis^T * vecs): residual after projection onto the span of
// the orthonormal columns of basis.
Mat residual_after_projection(const Mat& basis, const Mat& vecs,
                              Exec exec = default_exec());

// max_{i<j, k} dist([[X_i,X_j],X_k], span) / ||[[X_i,X_j],X_k]||
// over the orthonormal triple grid of nu (columns, flattened n x n matrices).
double lie_triple_residual(const Mat& nu_basis, int n,
                           Exec exec = default_exec());

// max_{i<j} ||[X_i, X_j]||_F over orthonormal columns (flatness of a span).
double max_pair_bracket_norm(const Mat& basis, int n,
                             Exec exec = default_exec());

// All pairwise brackets [X_i, X_j], i<j, as flattened columns.
Mat bracket_pairs(const Mat& basis, int n, Exec exec = default_exec());

// max |<a_i, b_j>| over columns of two matrices (orthogonality residual of
// two orthonormal families).
double max_abs_cross_inner(const Mat& a, const Mat& b,
                           Exec exec = default_exec());

// Relative residual of [X_i, X_j] against the span for sampled (or all)
// pairs; max over sampled pairs. max_pairs <= 0 means all pairs.
double closure_residual(const Mat& basis, int n, int max_pairs, uint64_t seed,
                        Exec exec = default_exec());

// Matrix of the linear map c -> [z, sum_i c_i B_i] (columns = [z, B_i]).
Mat ad_action_matrix(const Mat& z, const Mat& basis, int n,
                     Exec exec = default_exec());

// Gram-type PSD operator sum_X L_X^T L_X on the symmetric (or antisymmetric)
// part of End(R^d), where L_X(T) = [X, T]. Kernel = commutant part.
Mat commutant_operator(const std::vector<Mat>& rho, bool symmetric_part,
                       Exec exec = default_exec());

// Same PSD construction for the intertwiner system L_X(T) = A_X T - T B_X
// with T of shape (dim A carrier) x (dim B carrier).
Mat intertwiner_operator(const std::vector<Mat>& rho_a,
                         const std::vector<Mat>& rho_b,
                         Exec exec = default_exec());

// Orthonormal bases of the symmetric / antisymmetric parts of End(R^d) in
// flattened row-major coordinates (used with commutant_operator).
Mat sym_basis(int d);
Mat antisym_basis(int d);

}  // namespace polar::kernels
