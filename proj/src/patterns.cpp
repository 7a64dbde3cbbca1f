#include "qrep/patterns.hpp"

#include <functional>

namespace qrep {

const char* to_string(Kind kind)
{
    return kind == Kind::classical ? "classical" : "nonclassical";
}

GTPattern::GTPattern(int n, std::vector<HalfInt> flat) : n_(n), flat_(std::move(flat))
{
    std::size_t expected = 0;
    for (int k = 2; k <= n; ++k)
        expected += static_cast<std::size_t>(row_length(k));
    if (n < 2 || flat_.size() != expected)
        throw Error("pattern size does not match n");
}

std::size_t GTPattern::offset(int k) const
{
    std::size_t off = 0;
    for (int r = n_; r > k; --r)
        off += static_cast<std::size_t>(row_length(r));
    return off;
}

std::span<const HalfInt> GTPattern::row(int k) const
{
    if (k < 2 || k > n_)
        return {};
    return std::span<const HalfInt>(flat_).subspan(offset(k), static_cast<std::size_t>(row_length(k)));
}

void GTPattern::set(int k, int slot, HalfInt value)
{
    flat_.at(offset(k) + static_cast<std::size_t>(slot)) = value;
}

std::size_t GTPatternHash::operator()(const GTPattern& p) const
{
    std::size_t h = std::hash<int>{}(p.n());
    for (HalfInt v : p.flat())
        h = h * 1000003u ^ std::hash<int>{}(v.twice());
    return h;
}

std::vector<std::pair<HalfInt, HalfInt>> lower_row_bounds(std::span<const HalfInt> upper, int k, Kind kind)
{
    const auto p = static_cast<std::size_t>(row_length(k));
    const auto len = static_cast<std::size_t>(row_length(k - 1));
    std::vector<std::pair<HalfInt, HalfInt>> bounds(len);
    if (upper.size() != p)
        throw Error("row length mismatch");
    for (std::size_t j = 0; j < len; ++j) {
        if (j + 1 < p)
            bounds[j] = {upper[j + 1], upper[j]};
    }
    if (k % 2 == 1) {
        const HalfInt top = upper[p - 1];
        bounds[p - 1] = {kind == Kind::classical ? -top : HalfInt::half(), top};
    } else if (len > 0) {
        if (kind == Kind::classical)
            bounds[len - 1].first = abs(upper[p - 1]);
    }
    return bounds;
}

bool interlaces(std::span<const HalfInt> upper, std::span<const HalfInt> lower, int k, Kind kind)
{
    if (upper.size() != static_cast<std::size_t>(row_length(k)) ||
        lower.size() != static_cast<std::size_t>(row_length(k - 1)))
        return false;
    const auto bounds = lower_row_bounds(upper, k, kind);
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (lower[j] < bounds[j].first || lower[j] > bounds[j].second)
            return false;
    }
    return true;
}

bool validate_weight(const HighestWeight& w)
{
    if (w.n < 2 || w.entries.size() != static_cast<std::size_t>(row_length(w.n)))
        return false;
    const auto& m = w.entries;
    for (HalfInt v : m) {
        if (w.kind == Kind::nonclassical && !v.is_half_odd())
            return false;
        if (v.is_integral() != m.front().is_integral())
            return false;
    }
    const std::size_t p = m.size();
    const bool signed_last = w.kind == Kind::classical && w.n % 2 == 0;
    for (std::size_t j = 0; j + 1 < p; ++j) {
        const HalfInt next = (signed_last && j + 2 == p) ? abs(m[j + 1]) : m[j + 1];
        if (m[j] < next)
            return false;
    }
    if (w.kind == Kind::nonclassical)
        return m.back() >= HalfInt::half();
    if (w.n % 2 == 1)
        return m.back() >= HalfInt(0);
    return true;
}

bool is_valid_pattern(const GTPattern& p, Kind kind)
{
    const int n = p.n();
    const auto top = p.row(n);
    if (!validate_weight(HighestWeight{n, kind, {top.begin(), top.end()}}))
        return false;
    const bool integral = top.empty() || top.front().is_integral();
    for (HalfInt v : p.flat()) {
        if (v.is_integral() != integral)
            return false;
    }
    for (int k = n; k >= 3; --k) {
        if (!interlaces(p.row(k), p.row(k - 1), k, kind))
            return false;
    }
    return true;
}

HalfInt l_coord(HalfInt m, int k, int j)
{
    const int p = k / 2;
    return k % 2 == 1 ? m + (p - j + 1) : m + (p - j);
}

std::vector<HalfInt> l_coords(std::span<const HalfInt> row, int k, int first_j)
{
    std::vector<HalfInt> out;
    out.reserve(row.size());
    for (std::size_t i = 0; i < row.size(); ++i)
        out.push_back(l_coord(row[i], k, first_j + static_cast<int>(i)));
    return out;
}

std::vector<HalfInt> l_coords(const GTPattern& p, int k)
{
    return l_coords(p.row(k), k);
}

std::optional<GTPattern> shift(const GTPattern& p, int k, int slot, int direction, Kind kind)
{
    if (k < 2 || k >= p.n() || slot < 0 || slot >= row_length(k))
        return std::nullopt;
    GTPattern out = p;
    out.set(k, slot, p.at(k, slot) + direction);
    if (!interlaces(out.row(k + 1), out.row(k), k + 1, kind))
        return std::nullopt;
    if (k >= 3 && !interlaces(out.row(k), out.row(k - 1), k, kind))
        return std::nullopt;
    return out;
}

void PatternIndex::add(const GTPattern& p, std::size_t position)
{
    if (!map_.emplace(p, position).second)
        throw Error("duplicate pattern in basis");
}

std::optional<std::size_t> PatternIndex::find(const GTPattern& p) const
{
    const auto it = map_.find(p);
    if (it == map_.end())
        return std::nullopt;
    return it->second;
}

Basis::Basis(HighestWeight weight, std::vector<GTPattern> patterns)
    : weight_(std::move(weight)), patterns_(std::move(patterns))
{
    for (std::size_t i = 0; i < patterns_.size(); ++i)
        index_.add(patterns_[i], i);
}

namespace {

// Depth-first walk over rows n-1 down to 2; values ascend, so visits come in lexicographic order.
void walk(const HighestWeight& w, const std::function<void(const std::vector<HalfInt>&)>& visit)
{
    std::vector<HalfInt> flat(w.entries);
    std::function<void(int)> fill_row;
    std::function<void(int, std::size_t, const std::vector<std::pair<HalfInt, HalfInt>>&)> fill_entry;

    fill_row = [&](int k) {
        if (k < 2) {
            visit(flat);
            return;
        }
        const auto upper_len = static_cast<std::size_t>(row_length(k + 1));
        const std::span<const HalfInt> upper(flat.data() + flat.size() - upper_len, upper_len);
        fill_entry(k, 0, lower_row_bounds(upper, k + 1, w.kind));
    };
    fill_entry = [&](int k, std::size_t j, const std::vector<std::pair<HalfInt, HalfInt>>& bounds) {
        if (j == bounds.size()) {
            fill_row(k - 1);
            return;
        }
        for (HalfInt v = bounds[j].first; v <= bounds[j].second; v += HalfInt(1)) {
            flat.push_back(v);
            fill_entry(k, j + 1, bounds);
            flat.pop_back();
        }
    };
    fill_row(w.n - 1);
}

} // namespace

Basis enumerate_basis(const HighestWeight& w)
{
    if (!validate_weight(w))
        throw Error("invalid highest weight");
    std::vector<GTPattern> patterns;
    walk(w, [&](const std::vector<HalfInt>& flat) { patterns.emplace_back(w.n, flat); });
    return Basis(w, std::move(patterns));
}

std::size_t dimension(const HighestWeight& w)
{
    if (!validate_weight(w))
        throw Error("invalid highest weight");
    std::size_t count = 0;
    walk(w, [&](const std::vector<HalfInt>&) { ++count; });
    return count;
}

} // namespace qrep
