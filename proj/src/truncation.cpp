#include "qrep/truncation.hpp"

#include "qrep/coefficients.hpp"

#include <algorithm>

namespace qrep {

namespace {

bool lattice_integral(const std::vector<HalfInt>& m, Kind kind)
{
    if (!m.empty())
        return m.front().is_integral();
    return kind == Kind::classical;
}

void cartesian(const std::vector<std::pair<HalfInt, HalfInt>>& bounds, std::vector<HalfInt>& current,
               const std::function<void(const std::vector<HalfInt>&)>& visit)
{
    const std::size_t j = current.size();
    if (j == bounds.size()) {
        visit(current);
        return;
    }
    for (HalfInt v = bounds[j].first; v <= bounds[j].second; v += HalfInt(1)) {
        current.push_back(v);
        cartesian(bounds, current, visit);
        current.pop_back();
    }
}

} // namespace

void validate_labels(int n, const std::vector<HalfInt>& m, Kind kind)
{
    if (n < 2)
        throw Error("n must be at least 2");
    const auto expected = static_cast<std::size_t>(row_length(n + 1) - 1);
    if (m.size() != expected)
        throw Error("m must have " + std::to_string(expected) + " entries");
    if (n >= 3 && !validate_weight(HighestWeight{n - 1, kind, m}))
        throw Error("invalid labels m");
}

HalfInt truncation_base(int n, const std::vector<HalfInt>& m, Kind kind)
{
    validate_labels(n, m, kind);
    if (kind == Kind::nonclassical)
        return m.empty() ? HalfInt::half() : m.front();
    return m.empty() ? HalfInt(0) : abs(m.front());
}

std::vector<HighestWeight> branch(int n, const std::vector<HalfInt>& m, Kind kind, HalfInt cutoff)
{
    validate_labels(n, m, kind);
    if (cutoff.is_integral() != lattice_integral(m, kind))
        throw Error("cutoff parity does not match the labels");
    std::vector<HalfInt> upper{cutoff + HalfInt(1000)};
    upper.insert(upper.end(), m.begin(), m.end());
    auto bounds = lower_row_bounds(upper, n + 1, kind);
    bounds[0].second = std::min(bounds[0].second, cutoff);
    if (kind == Kind::classical && n == 2)
        bounds[0].first = std::max(bounds[0].first, -cutoff);
    std::vector<HighestWeight> out;
    std::vector<HalfInt> current;
    cartesian(bounds, current, [&](const std::vector<HalfInt>& row) {
        HighestWeight w{n, kind, row};
        if (validate_weight(w))
            out.push_back(std::move(w));
    });
    return out;
}

TruncatedBasis build_truncated_basis(int n, const std::vector<HalfInt>& m, Kind kind, HalfInt cutoff)
{
    if (cutoff < truncation_base(n, m, kind) + 3)
        throw Error("cutoff too small");
    TruncatedBasis tb;
    tb.n = n;
    tb.kind = kind;
    tb.m = m;
    tb.cutoff = cutoff;
    tb.components = branch(n, m, kind, cutoff);
    tb.offsets.push_back(0);
    for (std::size_t c = 0; c < tb.components.size(); ++c) {
        const Basis b = enumerate_basis(tb.components[c]);
        for (const GTPattern& p : b.patterns()) {
            tb.index.add(p, tb.patterns.size());
            tb.patterns.push_back(p);
            tb.component_of.push_back(c);
        }
        tb.offsets.push_back(tb.patterns.size());
    }
    return tb;
}

std::vector<bool> interior_residual_mask(const TruncatedBasis& basis, int depth)
{
    if (depth < 0)
        throw Error("depth must be nonnegative");
    std::vector<bool> mask(basis.dim());
    const bool two_sided = basis.kind == Kind::classical && basis.n == 2;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        HalfInt top = basis.patterns[i].at(basis.n, 0);
        if (two_sided)
            top = abs(top);
        mask[i] = top + depth <= basis.cutoff;
    }
    return mask;
}

SparseMatrix build_top_generator(const TruncatedBasis& basis, const TopCoupling& coupling, const QParam& q)
{
    const int n = basis.n;
    const bool plus = basis.kind == Kind::nonclassical;
    const auto up = l_coords(basis.m, n + 1, 2);
    const double half_denominator = q_power(HalfInt::half(), q) - q_power(-HalfInt::half(), q);
    MatrixBuilder out(basis.dim());
    for (std::size_t s = 0; s < basis.dim(); ++s) {
        const GTPattern& p = basis.patterns[s];
        const auto cur = l_coords(p, n);
        const auto low = n >= 3 ? l_coords(p, n - 1) : std::vector<HalfInt>{};
        auto target = [&](std::size_t j, int direction) {
            GTPattern t = p;
            t.set(n, static_cast<int>(j), p.at(n, static_cast<int>(j)) + direction);
            return basis.index.find(t);
        };
        auto lowered = [&](std::size_t j) {
            auto l = cur;
            l[j] -= HalfInt(1);
            return l;
        };
        if (n % 2 == 0) {
            for (std::size_t j = 0; j < cur.size(); ++j) {
                const HalfInt l = cur[j];
                const double ql = q_power(l, q);
                const double den = plus ? ql - 1.0 / ql : ql + 1.0 / ql;
                if (auto t = target(j, +1))
                    out.add(*t, s, coupling.raise(j, l) * coefficient(CoeffKind::A, up, cur, low, j, q) / den);
                if (auto t = target(j, -1))
                    out.add(*t, s, coupling.lower(j, l) * coefficient(CoeffKind::A, up, lowered(j), low, j, q) / den);
            }
            if (plus && p.row(n).back() == HalfInt::half()) {
                const double d = coefficient(CoeffKind::D, up, cur, low, 0, q);
                out.add(s, s, coupling.half_term * d / half_denominator);
            }
        } else {
            for (std::size_t j = 0; j < cur.size(); ++j) {
                const HalfInt l = cur[j];
                const double b2 = q_bracket(l + l - 1, q);
                if (auto t = target(j, +1)) {
                    const double den = b2 * (plus ? q_bracket_plus(l, q) : q_bracket(l, q));
                    out.add(*t, s, coupling.raise(j, l) * coefficient(CoeffKind::B, up, cur, low, j, q) / den);
                }
                if (auto t = target(j, -1)) {
                    const double den = b2 * (plus ? q_bracket_plus(l - 1, q) : q_bracket(l - 1, q));
                    out.add(*t, s, coupling.lower(j, l) * coefficient(CoeffKind::B, up, lowered(j), low, j, q) / den);
                }
            }
            const double c = coefficient(plus ? CoeffKind::Chat : CoeffKind::C, up, cur, low, 0, q);
            out.add(s, s, coupling.diagonal * c);
        }
    }
    return out.build();
}

GeneratorSet build_truncated_so_part(const TruncatedBasis& basis, const std::vector<int>& eps, const QParam& q,
                                     int depth)
{
    SoStyle style;
    if (basis.kind == Kind::nonclassical)
        style = SoStyle{true, true, eps};
    GeneratorSet gs;
    gs.patterns = basis.patterns;
    gs.interior = interior_residual_mask(basis, depth);
    const PatternLookup lookup = [&basis](const GTPattern& p) { return basis.index.find(p); };
    for (int g = 2; g <= basis.n; ++g) {
        gs.names.push_back(so_generator_name(g));
        gs.mats.push_back(build_so_generator(gs.patterns, lookup, g, style, q));
    }
    return gs;
}

} // namespace qrep
