#pragma once

#include "qrep/scalars.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qrep {

enum class Kind { classical, nonclassical };

const char* to_string(Kind kind);

/// Number of entries in row k of a tableau.
constexpr int row_length(int k) { return k / 2; }

/// Top row m_n of a tableau together with the lattice kind.
struct HighestWeight {
    int n = 0;
    Kind kind = Kind::classical;
    std::vector<HalfInt> entries;

    friend bool operator==(const HighestWeight&, const HighestWeight&) = default;
};

/// Tableau with rows m_n, m_{n-1}, ..., m_2 stored back to back.
class GTPattern {
public:
    GTPattern() = default;
    GTPattern(int n, std::vector<HalfInt> flat);

    int n() const { return n_; }
    const std::vector<HalfInt>& flat() const { return flat_; }

    std::span<const HalfInt> row(int k) const;
    HalfInt at(int k, int slot) const { return row(k)[static_cast<std::size_t>(slot)]; }
    void set(int k, int slot, HalfInt value);

    friend auto operator<=>(const GTPattern&, const GTPattern&) = default;
    friend bool operator==(const GTPattern&, const GTPattern&) = default;

private:
    std::size_t offset(int k) const;

    int n_ = 0;
    std::vector<HalfInt> flat_;
};

struct GTPatternHash {
    std::size_t operator()(const GTPattern& p) const;
};

/// Inclusive [lo, hi] bounds on each entry of row k-1 imposed by row k.
std::vector<std::pair<HalfInt, HalfInt>> lower_row_bounds(std::span<const HalfInt> upper, int k, Kind kind);

/// Betweenness between row k (upper) and row k-1 (lower).
bool interlaces(std::span<const HalfInt> upper, std::span<const HalfInt> lower, int k, Kind kind);

/// Dominance and parity conditions on a top row. Never throws.
bool validate_weight(const HighestWeight& w);

/// Every row pair interlaces and all entries share the parity of the top row.
bool is_valid_pattern(const GTPattern& p, Kind kind);

/// l_{j,k} for 1-based j, row k.
HalfInt l_coord(HalfInt m, int k, int j);

/// l-coordinates of row k of a pattern.
std::vector<HalfInt> l_coords(const GTPattern& p, int k);

/// l-coordinates of a row given as values; first_j is the 1-based index of the first value.
std::vector<HalfInt> l_coords(std::span<const HalfInt> row, int k, int first_j = 1);

/// Replaces m_{slot+1,k} by m_{slot+1,k} + direction. Returns nullopt when the result leaves the
/// lattice. Slots are 0-based. Rows 2..n-1 only.
std::optional<GTPattern> shift(const GTPattern& p, int k, int slot, int direction, Kind kind);

/// Maps patterns to positions.
class PatternIndex {
public:
    void add(const GTPattern& p, std::size_t position);
    std::optional<std::size_t> find(const GTPattern& p) const;

private:
    std::unordered_map<GTPattern, std::size_t, GTPatternHash> map_;
};

/// All tableaux of a highest weight in lexicographic order of their flattened rows.
class Basis {
public:
    Basis(HighestWeight weight, std::vector<GTPattern> patterns);

    const HighestWeight& weight() const { return weight_; }
    const std::vector<GTPattern>& patterns() const { return patterns_; }
    std::size_t dim() const { return patterns_.size(); }
    const GTPattern& operator[](std::size_t i) const { return patterns_[i]; }
    std::optional<std::size_t> find(const GTPattern& p) const { return index_.find(p); }

private:
    HighestWeight weight_;
    std::vector<GTPattern> patterns_;
    PatternIndex index_;
};

/// Throws "invalid highest weight" when validate_weight fails.
Basis enumerate_basis(const HighestWeight& w);

std::size_t dimension(const HighestWeight& w);

} // namespace qrep
