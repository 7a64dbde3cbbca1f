#include "qrep/rep_iso.hpp"

namespace qrep {

GeneratorSet build_iso(const IsoRepSpec& spec)
{
    if (spec.lambda == cplx(0.0))
        throw Error("lambda must be nonzero");
    if (spec.family == Kind::nonclassical)
        check_signs(spec.eps, static_cast<std::size_t>(spec.n), "eps");
    else if (!spec.eps.empty())
        throw Error("classical family takes no eps");

    const TruncatedBasis basis = build_truncated_basis(spec.n, spec.m, spec.family, spec.cutoff);
    GeneratorSet gs = build_truncated_so_part(basis, spec.eps, spec.q, spec.depth);

    const cplx lambda = spec.lambda;
    const cplx i(0.0, 1.0);
    TopCoupling coupling;
    coupling.raise = [lambda](std::size_t, HalfInt) { return lambda; };
    coupling.lower = [lambda](std::size_t, HalfInt) { return lambda; };
    if (spec.family == Kind::classical) {
        coupling.diagonal = lambda;
    } else {
        const double eps_top = spec.eps.back();
        coupling.diagonal = i * eps_top * lambda;
        coupling.half_term = i * lambda * eps_top;
    }
    gs.names.push_back(iso_generator_name(spec.n));
    gs.mats.push_back(build_top_generator(basis, coupling, spec.q));
    return gs;
}

} // namespace qrep
