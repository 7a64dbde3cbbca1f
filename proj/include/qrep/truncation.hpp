#pragma once

#include "qrep/rep_so.hpp"

#include <functional>
#include <vector>

namespace qrep {

/// Interior depth used when none is requested.
inline constexpr int kDefaultDepth = 3;

/// Basis of a truncated infinite-dimensional representation: all U'_q(so_n) components allowed by
/// the branching rule with m_{1,n} at most the cutoff, concatenated in branch order.
struct TruncatedBasis {
    int n = 0;
    Kind kind = Kind::classical;
    std::vector<HalfInt> m;
    HalfInt cutoff;
    std::vector<HighestWeight> components;
    /// Component c occupies positions [offsets[c], offsets[c+1]).
    std::vector<std::size_t> offsets;
    std::vector<GTPattern> patterns;
    std::vector<std::size_t> component_of;
    PatternIndex index;

    std::size_t dim() const { return patterns.size(); }
};

/// Checks that m labels a U'_q(so_{n-1}) representation of the given kind (empty for n = 2).
void validate_labels(int n, const std::vector<HalfInt>& m, Kind kind);

/// Smallest admissible m_{1,n} (its absolute value when n = 2 in the classical case).
HalfInt truncation_base(int n, const std::vector<HalfInt>& m, Kind kind);

/// Weights m_n interlacing with (infinity, m) and m_{1,n} <= cutoff, in ascending lexicographic
/// order. For classical n = 2 the single label is bounded by |m_{1,2}| <= cutoff.
std::vector<HighestWeight> branch(int n, const std::vector<HalfInt>& m, Kind kind, HalfInt cutoff);

/// Builds the truncated basis; requires cutoff >= truncation_base + 3.
TruncatedBasis build_truncated_basis(int n, const std::vector<HalfInt>& m, Kind kind, HalfInt cutoff);

/// True for vectors whose component can be raised `depth` times in slot 1 within the cutoff.
std::vector<bool> interior_residual_mask(const TruncatedBasis& basis, int depth);

/// Multipliers that turn the shared coefficient skeleton into a concrete top generator.
struct TopCoupling {
    /// Factor on the raising term of slot j (0-based) with current l = l_{j+1,n}.
    std::function<cplx(std::size_t, HalfInt)> raise;
    /// Factor on the lowering term, including its sign.
    std::function<cplx(std::size_t, HalfInt)> lower;
    /// Odd n: factor on C (classical) or Chat (nonclassical), signs included.
    cplx diagonal = 0.0;
    /// Even nonclassical n: factor on D / (q^{1/2} - q^{-1/2}) at m_{k,2k} = 1/2, signs included.
    cplx half_term = 0.0;
};

/// Top generator shifting row n between components; transitions leaving the truncation are dropped.
SparseMatrix build_top_generator(const TruncatedBasis& basis, const TopCoupling& coupling, const QParam& q);

/// I-generators of all components, named and masked; the caller appends the top generator.
GeneratorSet build_truncated_so_part(const TruncatedBasis& basis, const std::vector<int>& eps, const QParam& q,
                                     int depth);

} // namespace qrep
