#pragma once

#include "qrep/patterns.hpp"

#include <span>

namespace qrep {

enum class CoeffKind { A, B, C, Chat, D };

/// Tolerance below zero accepted for a radicand before it is reported as negative.
inline constexpr double kRadicandTolerance = 1e-12;

/// Matrix-element coefficient over l-coordinate lists: `upper` (row k+1, possibly partial),
/// `current` (row k) and `lower` (row k-1, empty when absent). `slot` is 0-based and only used
/// by A and B. A factor q-number of exact zero in a numerator makes the coefficient zero.
double coefficient(CoeffKind kind, std::span<const HalfInt> upper, std::span<const HalfInt> current,
                   std::span<const HalfInt> lower, std::size_t slot, const QParam& q);

/// Same coefficient read off a pattern. A and D refer to row k = 2p; B, C and Chat to row k = 2p-1,
/// where k = 1 means the (empty) row below m_2.
double coefficient(CoeffKind kind, const GTPattern& p, int k, std::size_t slot, const QParam& q);

} // namespace qrep
