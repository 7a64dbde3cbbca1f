#include "qrep/rep_lorentz.hpp"

#include "qrep/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>

namespace qrep {

CParam CParam::from_half_int(HalfInt h)
{
    return CParam{cplx(h.to_double(), 0.0), h};
}

CParam CParam::from_complex(cplx z)
{
    const double twice = 2.0 * z.real();
    if (z.imag() == 0.0 && std::abs(twice) < 1e6 && std::floor(twice) == twice)
        return from_half_int(HalfInt::from_twice(static_cast<int>(twice)));
    return CParam{z, std::nullopt};
}

std::string CParam::str() const
{
    if (exact)
        return exact->str();
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", value.real(), value.imag());
    return buf;
}

const char* to_string(LorentzVariant v)
{
    switch (v) {
    case LorentzVariant::consistent:
        return "consistent";
    case LorentzVariant::literal:
        return "literal";
    case LorentzVariant::uniform:
        return "uniform";
    }
    return "?";
}

LorentzVariant parse_variant(const std::string& name)
{
    if (name == "consistent")
        return LorentzVariant::consistent;
    if (name == "literal")
        return LorentzVariant::literal;
    if (name == "uniform")
        return LorentzVariant::uniform;
    throw Error("unknown variant \"" + name + "\"");
}

cplx principal_sqrt(cplx z)
{
    if (z.imag() == 0.0)
        z = cplx(z.real(), 0.0);
    else if (z.real() < 0.0 && std::abs(z.imag()) < kBranchTolerance)
        throw Error("ill-conditioned branch");
    return std::sqrt(z);
}

namespace {

void check_spec(const LorentzRepSpec& spec)
{
    if (spec.family == Kind::nonclassical)
        check_signs(spec.eps, static_cast<std::size_t>(spec.n), "eps");
    else if (!spec.eps.empty())
        throw Error("classical family takes no eps");
}

TopCoupling lorentz_coupling(const LorentzRepSpec& spec)
{
    const cplx c = spec.c.value;
    const QParam q = spec.q;
    auto br = [q](cplx z) { return q_bracket(z, q); };
    auto factor = [br, c](double a, double b) { return principal_sqrt(br(c + a) * br(c + b)); };
    const bool nc = spec.family == Kind::nonclassical;
    const double eps_top = nc ? spec.eps.back() : 1.0;

    TopCoupling t;
    if (spec.n % 2 == 0) {
        t.raise = [factor](std::size_t, HalfInt l) { return factor(l.to_double(), -l.to_double() - 1.0); };
        t.lower = [factor](std::size_t, HalfInt l) { return -factor(l.to_double() - 1.0, -l.to_double()); };
        if (nc)
            t.half_term = br(c - 0.5) * eps_top;
        return t;
    }
    if (!nc) {
        t.raise = [factor](std::size_t, HalfInt l) { return factor(l.to_double(), -l.to_double()); };
        t.lower = [factor](std::size_t, HalfInt l) { return -factor(l.to_double() - 1.0, -l.to_double() + 1.0); };
        t.diagonal = cplx(0.0, 1.0) * br(c);
        return t;
    }
    t.diagonal = eps_top * q_bracket_plus(c, q);
    switch (spec.variant) {
    case LorentzVariant::consistent:
        t.raise = [factor](std::size_t, HalfInt l) { return factor(l.to_double(), -l.to_double()); };
        t.lower = [factor](std::size_t, HalfInt l) { return -factor(l.to_double() - 1.0, -l.to_double() + 1.0); };
        break;
    case LorentzVariant::uniform:
        t.raise = [factor](std::size_t, HalfInt l) { return factor(l.to_double(), -l.to_double()); };
        t.lower = [factor](std::size_t, HalfInt l) { return -factor(l.to_double() + 1.0, -l.to_double() + 1.0); };
        break;
    case LorentzVariant::literal: {
        // l_{j,2k} for j >= 2; the slot j = 1 entry of row 2k is the parameter c itself.
        const auto up = l_coords(spec.m, spec.n + 1, 2);
        auto partner = [up, c](std::size_t j) { return j == 0 ? c.real() : up[j - 1].to_double(); };
        t.raise = [factor, partner](std::size_t j, HalfInt l) {
            return j == 0 ? cplx(0.0) : factor(l.to_double(), -partner(j));
        };
        t.lower = [factor, partner](std::size_t j, HalfInt l) {
            return j == 0 ? cplx(0.0) : -factor(l.to_double() + 1.0, -partner(j) + 1.0);
        };
        break;
    }
    }
    return t;
}

GeneratorSet build_on(const TruncatedBasis& basis, const LorentzRepSpec& spec)
{
    GeneratorSet gs = build_truncated_so_part(basis, spec.eps, spec.q, spec.depth);
    gs.names.push_back(so_generator_name(spec.n + 1));
    gs.mats.push_back(build_top_generator(basis, lorentz_coupling(spec), spec.q));
    return gs;
}

} // namespace

GeneratorSet build_lorentz(const LorentzRepSpec& spec)
{
    check_spec(spec);
    return build_on(build_truncated_basis(spec.n, spec.m, spec.family, spec.cutoff), spec);
}

namespace {

IrreducibilityVerdict verdict(bool irreducible, std::string reason, std::optional<HalfInt> witness = std::nullopt)
{
    return IrreducibilityVerdict{irreducible, witness, std::move(reason)};
}

// Coincidence clauses shared by both families once c is known to be a half-integer of the right kind.
IrreducibilityVerdict coincidences(HalfInt c, const std::vector<HalfInt>& m, int n, bool signed_bound)
{
    const auto l = l_coords(m, n + 1, 2);
    if (n % 2 == 0) {
        for (HalfInt v : l) {
            if (c == v)
                return verdict(true, "c coincides with an l-coordinate", v);
            if (HalfInt(1) - c == v)
                return verdict(true, "1-c coincides with an l-coordinate", v);
        }
        return verdict(false, "no clause applies");
    }
    for (HalfInt v : l) {
        if (abs(c) == v)
            return verdict(true, "|c| coincides with an l-coordinate", v);
    }
    const HalfInt last = l.back();
    const HalfInt bound = signed_bound ? abs(last) : last;
    if (abs(c) < bound)
        return verdict(true, "|c| below the last l-coordinate", last);
    return verdict(false, "no clause applies");
}

} // namespace

IrreducibilityVerdict irreducible_classical(const CParam& c, const std::vector<HalfInt>& m, int n)
{
    validate_labels(n, m, Kind::classical);
    if (c.value.imag() != 0.0)
        return verdict(true, "c is not real");
    const bool integral = m.empty() || m.front().is_integral();
    if (!c.exact || c.exact->is_integral() != integral)
        return verdict(true, integral ? "c is not an integer" : "c is not a half-odd integer");
    return coincidences(*c.exact, m, n, true);
}

IrreducibilityVerdict irreducible_nonclassical(const CParam& c, const std::vector<HalfInt>& m, int n)
{
    validate_labels(n, m, Kind::nonclassical);
    if (c.value.imag() != 0.0)
        return verdict(true, "c is not real");
    if (!c.exact || c.exact->is_integral())
        return verdict(true, "c is not a half-odd integer");
    return coincidences(*c.exact, m, n, false);
}

ProbeResult probe_reducibility(const LorentzRepSpec& spec)
{
    check_spec(spec);
    const TruncatedBasis basis = build_truncated_basis(spec.n, spec.m, spec.family, spec.cutoff);
    const GeneratorSet gs = build_on(basis, spec);
    const SparseMatrix& top = gs.mats.back();

    std::map<std::pair<std::size_t, std::size_t>, double> block_norm2;
    for (Eigen::Index col = 0; col < top.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(top, col); it; ++it) {
            const auto key = std::make_pair(basis.component_of[static_cast<std::size_t>(it.row())],
                                            basis.component_of[static_cast<std::size_t>(col)]);
            block_norm2[key] += std::norm(it.value());
        }
    }
    std::map<std::vector<HalfInt>, std::size_t> by_entries;
    for (std::size_t c = 0; c < basis.components.size(); ++c)
        by_entries[basis.components[c].entries] = c;
    auto norm_of = [&](std::size_t target, std::size_t source) {
        const auto it = block_norm2.find({target, source});
        return it == block_norm2.end() ? 0.0 : std::sqrt(it->second);
    };
    // Norm of the top generator leaving side `inside` from its interior vectors.
    auto leak = [&](const std::function<bool(const HighestWeight&)>& inside) {
        double sum = 0.0;
        for (Eigen::Index col = 0; col < top.outerSize(); ++col) {
            const auto s = static_cast<std::size_t>(col);
            if (!gs.interior[s] || !inside(basis.components[basis.component_of[s]]))
                continue;
            for (SparseMatrix::InnerIterator it(top, col); it; ++it) {
                if (!inside(basis.components[basis.component_of[static_cast<std::size_t>(it.row())]]))
                    sum += std::norm(it.value());
            }
        }
        return std::sqrt(sum);
    };

    constexpr double kZeroCoupling = 1e-12;
    constexpr double kLeakTolerance = 1e-9;
    ProbeResult result;
    for (std::size_t a = 0; a < basis.components.size(); ++a) {
        const HighestWeight& from = basis.components[a];
        for (std::size_t j = 0; j < from.entries.size(); ++j) {
            auto entries = from.entries;
            entries[j] += HalfInt(1);
            const auto it = by_entries.find(entries);
            if (it == by_entries.end())
                continue;
            const std::size_t b = it->second;
            CouplingCut cut;
            cut.from = from;
            cut.slot = j;
            cut.raising_vanishes = norm_of(b, a) <= kZeroCoupling;
            cut.lowering_vanishes = norm_of(a, b) <= kZeroCoupling;
            if (!cut.raising_vanishes && !cut.lowering_vanishes)
                continue;
            const HalfInt level = from.entries[j];
            cut.leak = std::numeric_limits<double>::infinity();
            if (cut.raising_vanishes)
                cut.leak = std::min(cut.leak, leak([&](const HighestWeight& w) { return w.entries[j] <= level; }));
            if (cut.lowering_vanishes)
                cut.leak = std::min(cut.leak, leak([&](const HighestWeight& w) { return w.entries[j] > level; }));
            cut.invariant = cut.leak <= kLeakTolerance;
            result.reducible = result.reducible || cut.invariant;
            result.cuts.push_back(std::move(cut));
        }
    }
    return result;
}

bool variant_matters(const LorentzRepSpec& spec)
{
    return spec.family == Kind::nonclassical && spec.n % 2 == 1;
}

VariantSelection select_variant(const LorentzRepSpec& spec, double tol)
{
    VariantSelection sel;
    const std::vector<LorentzVariant> order = variant_matters(spec)
        ? std::vector<LorentzVariant>{LorentzVariant::consistent, LorentzVariant::literal, LorentzVariant::uniform}
        : std::vector<LorentzVariant>{spec.variant};
    for (LorentzVariant v : order) {
        LorentzRepSpec s = spec;
        s.variant = v;
        const GeneratorSet gs = build_lorentz(s);
        const double r = max_residual(so_relation_residual(gs, spec.q, gs.interior));
        sel.residuals.emplace_back(v, r);
        if (!sel.any_pass && r <= tol) {
            sel.any_pass = true;
            sel.chosen = v;
        }
    }
    if (!sel.any_pass)
        sel.chosen = order.front();
    return sel;
}

} // namespace qrep
