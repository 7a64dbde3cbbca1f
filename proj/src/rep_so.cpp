#include "qrep/rep_so.hpp"

#include "qrep/coefficients.hpp"

#include <cmath>

namespace qrep {

const char* to_string(SoFamily family)
{
    switch (family) {
    case SoFamily::classical:
        return "classical";
    case SoFamily::nonclassical:
        return "nonclassical";
    case SoFamily::tprime:
        return "tprime";
    case SoFamily::onedim:
        return "onedim";
    }
    return "?";
}

void check_signs(const std::vector<int>& eps, std::size_t expected, const char* what)
{
    if (eps.size() != expected)
        throw Error(std::string(what) + " must have " + std::to_string(expected) + " entries");
    for (int e : eps) {
        if (e != 1 && e != -1)
            throw Error(std::string(what) + " entries must be +1 or -1");
    }
}

namespace {

std::vector<HalfInt> l_row(const GTPattern& p, int k)
{
    return k >= 2 ? l_coords(p, k) : std::vector<HalfInt>{};
}

std::optional<std::size_t> shifted(const GTPattern& p, int k, std::size_t slot, int direction,
                                   const PatternLookup& lookup)
{
    GTPattern t = p;
    t.set(k, static_cast<int>(slot), p.at(k, static_cast<int>(slot)) + direction);
    return lookup(t);
}

std::vector<HalfInt> lowered(std::vector<HalfInt> l, std::size_t slot)
{
    l[slot] -= HalfInt(1);
    return l;
}

} // namespace

SparseMatrix build_so_generator(const std::vector<GTPattern>& patterns, const PatternLookup& lookup, int g,
                                const SoStyle& style, const QParam& q)
{
    MatrixBuilder out(patterns.size());
    const double half_denominator = q_power(HalfInt::half(), q) - q_power(-HalfInt::half(), q);
    const int k = g - 1;
    for (std::size_t s = 0; s < patterns.size(); ++s) {
        const GTPattern& p = patterns[s];
        const auto up = l_row(p, g);
        const auto cur = l_row(p, k);
        const auto low = l_row(p, k - 1);
        if (g % 2 == 1) {
            for (std::size_t j = 0; j < cur.size(); ++j) {
                const double ql = q_power(cur[j], q);
                const double den = style.plus ? ql - 1.0 / ql : ql + 1.0 / ql;
                if (auto t = shifted(p, k, j, +1, lookup))
                    out.add(*t, s, coefficient(CoeffKind::A, up, cur, low, j, q) / den);
                if (auto t = shifted(p, k, j, -1, lookup))
                    out.add(*t, s, -coefficient(CoeffKind::A, up, lowered(cur, j), low, j, q) / den);
            }
            if (style.half_term && p.row(k).back() == HalfInt::half()) {
                const double d = coefficient(CoeffKind::D, up, cur, low, 0, q);
                out.add(s, s, style.eps.at(static_cast<std::size_t>(g - 2)) * d / half_denominator);
            }
        } else {
            for (std::size_t j = 0; j < cur.size(); ++j) {
                const HalfInt l = cur[j];
                const double b2 = q_bracket(l + l - 1, q);
                if (auto t = shifted(p, k, j, +1, lookup)) {
                    const double den = b2 * (style.plus ? q_bracket_plus(l, q) : q_bracket(l, q));
                    out.add(*t, s, coefficient(CoeffKind::B, up, cur, low, j, q) / den);
                }
                if (auto t = shifted(p, k, j, -1, lookup)) {
                    const double den = b2 * (style.plus ? q_bracket_plus(l - 1, q) : q_bracket(l - 1, q));
                    out.add(*t, s, -coefficient(CoeffKind::B, up, lowered(cur, j), low, j, q) / den);
                }
            }
            if (style.plus) {
                const double c = coefficient(CoeffKind::Chat, up, cur, low, 0, q);
                out.add(s, s, style.eps.at(static_cast<std::size_t>(g - 2)) * c);
            } else {
                out.add(s, s, cplx(0.0, coefficient(CoeffKind::C, up, cur, low, 0, q)));
            }
        }
    }
    return out.build();
}

namespace {

GeneratorSet assemble(const Basis& basis, const SoStyle& style, const QParam& q)
{
    GeneratorSet gs;
    gs.patterns = basis.patterns();
    gs.interior.assign(basis.dim(), true);
    const PatternLookup lookup = [&basis](const GTPattern& p) { return basis.find(p); };
    for (int g = 2; g <= basis.weight().n; ++g) {
        gs.names.push_back(so_generator_name(g));
        gs.mats.push_back(build_so_generator(gs.patterns, lookup, g, style, q));
    }
    return gs;
}

void require_kind(const SoRepSpec& spec, Kind kind)
{
    if (spec.weight.kind != kind)
        throw Error(std::string("weight kind must be ") + to_string(kind));
    if (spec.weight.n < 2)
        throw Error("n must be at least 2");
}

} // namespace

GeneratorSet build_classical(const SoRepSpec& spec)
{
    require_kind(spec, Kind::classical);
    if (!spec.eps.empty())
        throw Error("classical family takes no eps");
    return assemble(enumerate_basis(spec.weight), SoStyle{}, spec.q);
}

GeneratorSet build_nonclassical(const SoRepSpec& spec)
{
    require_kind(spec, Kind::nonclassical);
    check_signs(spec.eps, static_cast<std::size_t>(spec.weight.n - 1), "eps");
    const SoStyle style{true, true, spec.eps};
    return assemble(enumerate_basis(spec.weight), style, spec.q);
}

GeneratorSet build_tprime(const SoRepSpec& spec)
{
    require_kind(spec, Kind::classical);
    for (HalfInt v : spec.weight.entries) {
        if (!v.is_half_odd())
            throw Error("tprime weight must be half-integral");
    }
    check_signs(spec.eps, static_cast<std::size_t>(spec.weight.n - 1), "eps");
    const SoStyle style{true, false, spec.eps};
    return assemble(enumerate_basis(spec.weight), style, spec.q);
}

GeneratorSet build_onedim(int n, const std::vector<int>& eps, const QParam& q)
{
    HighestWeight w{n, Kind::nonclassical, std::vector<HalfInt>(static_cast<std::size_t>(row_length(n)), HalfInt::half())};
    return build_nonclassical(SoRepSpec{w, q, SoFamily::nonclassical, eps});
}

GeneratorSet build_so(const SoRepSpec& spec)
{
    switch (spec.family) {
    case SoFamily::classical:
        return build_classical(spec);
    case SoFamily::nonclassical:
        return build_nonclassical(spec);
    case SoFamily::tprime:
        return build_tprime(spec);
    case SoFamily::onedim:
        for (HalfInt v : spec.weight.entries) {
            if (v != HalfInt::half())
                throw Error("onedim weight must be (1/2, ..., 1/2)");
        }
        return build_onedim(spec.weight.n, spec.eps, spec.q);
    }
    throw Error("unknown so family");
}

GeneratorSet split_tprime(const GeneratorSet& gs, const std::vector<int>& signs)
{
    if (gs.patterns.empty())
        throw Error("empty generator set");
    const int n = gs.patterns.front().n();
    const auto count = static_cast<std::size_t>((n - 1) / 2);
    check_signs(signs, count, "split signs");

    PatternIndex index;
    for (std::size_t i = 0; i < gs.dim(); ++i)
        index.add(gs.patterns[i], i);

    struct Vec {
        std::size_t rep;
        std::vector<std::pair<std::size_t, double>> terms;
    };
    std::vector<Vec> vecs;
    for (std::size_t i = 0; i < gs.dim(); ++i)
        vecs.push_back({i, {{i, 1.0}}});
    for (std::size_t p = 1; p <= count; ++p) {
        const int row = static_cast<int>(2 * p);
        const int slot = static_cast<int>(p) - 1;
        std::vector<Vec> next;
        for (const Vec& v : vecs) {
            if (gs.patterns[v.rep].at(row, slot) <= HalfInt(0))
                continue;
            Vec w = v;
            for (const auto& [idx, cf] : v.terms) {
                GTPattern flipped = gs.patterns[idx];
                flipped.set(row, slot, -flipped.at(row, slot));
                const auto j = index.find(flipped);
                if (!j)
                    throw Error("splitting failed: partner pattern missing");
                w.terms.emplace_back(*j, -signs[p - 1] * cf);
            }
            next.push_back(std::move(w));
        }
        vecs = std::move(next);
    }

    const auto d = static_cast<Eigen::Index>(gs.dim());
    const auto r = static_cast<Eigen::Index>(vecs.size());
    std::vector<Eigen::Triplet<cplx>> vt, pinv;
    for (Eigen::Index c = 0; c < r; ++c) {
        double norm2 = 0.0;
        for (const auto& [idx, cf] : vecs[static_cast<std::size_t>(c)].terms)
            norm2 += cf * cf;
        for (const auto& [idx, cf] : vecs[static_cast<std::size_t>(c)].terms) {
            vt.emplace_back(static_cast<int>(idx), static_cast<int>(c), cf);
            pinv.emplace_back(static_cast<int>(c), static_cast<int>(idx), cf / norm2);
        }
    }
    SparseMatrix v(d, r), vplus(r, d);
    v.setFromTriplets(vt.begin(), vt.end());
    vplus.setFromTriplets(pinv.begin(), pinv.end());

    GeneratorSet out;
    for (const Vec& vec : vecs)
        out.patterns.push_back(gs.patterns[vec.rep]);
    out.interior.assign(vecs.size(), true);
    out.names = gs.names;
    for (const SparseMatrix& g : gs.mats) {
        SparseMatrix gv = g * v;
        SparseMatrix block = vplus * gv;
        block.prune(cplx(0.0), 0.0);
        const SparseMatrix check = gv - v * block;
        if (check.norm() > 1e-8)
            throw Error("splitting failed");
        block.makeCompressed();
        out.mats.push_back(std::move(block));
    }
    return out;
}

} // namespace qrep
