#pragma once

#include "qrep/truncation.hpp"

namespace qrep {

/// Truncated representation of U_q(iso_n). `eps[k-2]` holds the sign for k = 2..n+1.
struct IsoRepSpec {
    int n = 2;
    Kind family = Kind::classical;
    cplx lambda = 1.0;
    std::vector<HalfInt> m;
    std::vector<int> eps;
    QParam q;
    HalfInt cutoff;
    int depth = kDefaultDepth;
};

/// Generators I_{2,1}, ..., I_{n,n-1}, T_{n}; interior mask at spec.depth.
GeneratorSet build_iso(const IsoRepSpec& spec);

} // namespace qrep
