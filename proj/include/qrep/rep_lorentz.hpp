#pragma once

#include "qrep/truncation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qrep {

/// Complex parameter c, remembering an exact half-integer value when it has one.
struct CParam {
    cplx value;
    std::optional<HalfInt> exact;

    static CParam from_half_int(HalfInt h);
    /// Detects exact half-integers among real inputs.
    static CParam from_complex(cplx z);
    std::string str() const;
};

/// Readings of the square-root factors of the top generator for nonclassical odd n.
enum class LorentzVariant { consistent, literal, uniform };

const char* to_string(LorentzVariant v);
LorentzVariant parse_variant(const std::string& name);

/// Truncated principal-series representation of U'_q(so_{n,1}). `eps[k-2]` holds the sign for
/// k = 2..n+1.
struct LorentzRepSpec {
    int n = 2;
    Kind family = Kind::classical;
    CParam c;
    std::vector<HalfInt> m;
    std::vector<int> eps;
    QParam q;
    HalfInt cutoff;
    LorentzVariant variant = LorentzVariant::consistent;
    int depth = kDefaultDepth;
};

/// Radicands whose real part is negative and whose imaginary part is nonzero but below this
/// threshold sit on the branch cut and are rejected.
inline constexpr double kBranchTolerance = 1e-12;

/// Principal square root with the branch-cut guard.
cplx principal_sqrt(cplx z);

/// Generators I_{2,1}, ..., I_{n+1,n}; interior mask at spec.depth.
GeneratorSet build_lorentz(const LorentzRepSpec& spec);

struct IrreducibilityVerdict {
    bool irreducible = true;
    std::optional<HalfInt> witness;
    std::string reason;
};

IrreducibilityVerdict irreducible_classical(const CParam& c, const std::vector<HalfInt>& m, int n);
IrreducibilityVerdict irreducible_nonclassical(const CParam& c, const std::vector<HalfInt>& m, int n);

/// Vanishing couplings of the top generator between adjacent components of a truncated build.
struct CouplingCut {
    HighestWeight from;
    std::size_t slot = 0;
    bool raising_vanishes = false;
    bool lowering_vanishes = false;
    /// Norm of the part of the top generator leaving the candidate invariant side.
    double leak = 0.0;
    bool invariant = false;
};

struct ProbeResult {
    bool reducible = false;
    std::vector<CouplingCut> cuts;
};

/// Searches the truncated model for exactly vanishing couplings and confirms the invariant
/// coordinate subspace they cut out on interior vectors.
ProbeResult probe_reducibility(const LorentzRepSpec& spec);

struct VariantSelection {
    LorentzVariant chosen = LorentzVariant::consistent;
    bool any_pass = false;
    std::vector<std::pair<LorentzVariant, double>> residuals;
};

/// Builds every variant and picks the first (consistent, literal, uniform) whose worst interior
/// relation residual is within tol. Only nonclassical odd n depends on the variant.
VariantSelection select_variant(const LorentzRepSpec& spec, double tol);

bool variant_matters(const LorentzRepSpec& spec);

} // namespace qrep
