#pragma once

#include "qrep/patterns.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace qrep {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
using DenseMatrix = Eigen::MatrixXcd;

/// "I_{k,k-1}".
std::string so_generator_name(int k);
/// "T_{n}".
std::string iso_generator_name(int n);

/// Generator matrices over an ordered list of patterns. Entry (t, s) is the coefficient of basis
/// vector t in the image of basis vector s.
struct GeneratorSet {
    std::vector<GTPattern> patterns;
    std::vector<std::string> names;
    std::vector<SparseMatrix> mats;
    /// Columns on which truncation does not disturb relations; all true for finite-dimensional sets.
    std::vector<bool> interior;

    std::size_t dim() const { return patterns.size(); }
    bool truncated() const;
    const SparseMatrix& get(std::string_view name) const;
    bool has(std::string_view name) const;
};

/// Accumulates coefficients for one generator and assembles the sparse matrix.
class MatrixBuilder {
public:
    explicit MatrixBuilder(std::size_t dim) : dim_(dim) {}
    void add(std::size_t target, std::size_t source, cplx value);
    SparseMatrix build() const;

private:
    std::size_t dim_;
    std::vector<Eigen::Triplet<cplx>> triplets_;
};

} // namespace qrep
