#pragma once

#include "qrep/generators.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace qrep {

enum class SoFamily { classical, nonclassical, tprime, onedim };

const char* to_string(SoFamily family);

/// One finite-dimensional representation. `eps[k-2]` holds the sign for index k = 2..n.
struct SoRepSpec {
    HighestWeight weight;
    QParam q;
    SoFamily family = SoFamily::classical;
    std::vector<int> eps;
};

/// How the I-generators are formed from the coefficients.
struct SoStyle {
    /// Denominators q^l - q^-l and [.]_+, diagonal eps_{2p} Chat (otherwise q^l + q^-l, [.], i C).
    bool plus = false;
    /// Adds the eps_{2p+1} D term at m_{p,2p} = 1/2.
    bool half_term = false;
    std::vector<int> eps;
};

using PatternLookup = std::function<std::optional<std::size_t>(const GTPattern&)>;

/// Matrix of I_{g,g-1} over `patterns`; targets not found by `lookup` are dropped.
SparseMatrix build_so_generator(const std::vector<GTPattern>& patterns, const PatternLookup& lookup, int g,
                                const SoStyle& style, const QParam& q);

GeneratorSet build_classical(const SoRepSpec& spec);
GeneratorSet build_nonclassical(const SoRepSpec& spec);
/// Reducible representation on the signed half-integral lattice; only eps_{2p} entries are read.
GeneratorSet build_tprime(const SoRepSpec& spec);
/// Weight (1/2, ..., 1/2) of the nonclassical family.
GeneratorSet build_onedim(int n, const std::vector<int>& eps, const QParam& q);
/// Dispatches on spec.family.
GeneratorSet build_so(const SoRepSpec& spec);

/// Restricts a T' generator set to the joint eigenspace with the given signs, one per
/// p = 1..floor((n-1)/2), in the basis |xi> - sign_p |xi'> indexed by the patterns whose
/// entries m_{p,2p} are all positive.
GeneratorSet split_tprime(const GeneratorSet& gs, const std::vector<int>& signs);

/// Checks eps has n-1 entries equal to +-1.
void check_signs(const std::vector<int>& eps, std::size_t expected, const char* what);

} // namespace qrep
