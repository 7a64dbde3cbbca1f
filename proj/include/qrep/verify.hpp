#pragma once

#include "qrep/generators.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qrep {

using Residuals = std::map<std::string, double>;

/// Relations among the I-generators: the two cubic relations for each consecutive pair and
/// commutation of generators two or more steps apart. Each value is
/// ||(LHS - RHS) P|| / (1 + ||RHS P||) with P selecting the masked columns (all when empty).
Residuals so_relation_residual(const GeneratorSet& gs, const QParam& q, const std::vector<bool>& mask = {});

/// Relations involving T_{n}; for n = 2 also the q-commutator relations with T_1.
Residuals iso_relation_residual(const GeneratorSet& gs, const QParam& q, const std::vector<bool>& mask = {});

double max_residual(const Residuals& r);

/// Largest dimension accepted by the commutant, intertwiner and spectrum routines.
inline constexpr std::size_t kMaxDenseDim = 2000;
inline constexpr double kRankTolerance = 1e-8;

/// Dimension of a solution space together with the singular-value gap that decided it.
/// Singular values are relative to the largest one of their stage, or to 1 if that is smaller.
struct HomResult {
    std::size_t dim = 0;
    double largest_zero = 0.0;
    double smallest_nonzero = 1.0;
};

/// {X : X G = G X for every generator}.
HomResult commutant(const GeneratorSet& gs, double rank_tol = kRankTolerance);
std::size_t commutant_dim(const GeneratorSet& gs);

/// {X : X A_g = B_g X for every generator g}. With a mask on the columns of A the relation for
/// the last generator is only imposed on masked columns.
HomResult intertwiner(const GeneratorSet& a, const GeneratorSet& b, const std::vector<bool>& mask = {},
                      double rank_tol = kRankTolerance);
std::size_t intertwiner_dim(const GeneratorSet& a, const GeneratorSet& b);

/// Eigenvalues with multiplicity, sorted by real then imaginary part.
std::vector<cplx> spectrum(const DenseMatrix& m);
std::vector<cplx> spectrum(const SparseMatrix& m);

struct Tolerances {
    double residual = 1e-9;
    double rank = kRankTolerance;
};

struct VerificationReport {
    Residuals residuals;
    std::optional<HomResult> commutant;
    std::optional<HomResult> intertwiner;
    std::optional<std::size_t> expected_commutant;
    std::optional<std::size_t> expected_intertwiner;
    std::map<std::string, std::vector<cplx>> spectra;
    Tolerances tol;
    int depth = 0;
    /// Truncated models only give evidence for statements about the full representation.
    bool evidence_only = false;
    bool pass = false;

    /// Sets pass from the residuals and any expectations.
    void finalize();
};

/// Residuals of all applicable relations, with pass/fail filled in.
VerificationReport verify_relations(const GeneratorSet& gs, const QParam& q, const Tolerances& tol = {},
                                    int depth = 0);

} // namespace qrep
