#include "oracles.hpp"

#include <doctest.h>

using namespace qrep;
using oracle::bracket;
using oracle::d;
using oracle::halves;

namespace {

IsoRepSpec iso(int n, Kind kind, cplx lambda, std::vector<HalfInt> m, double q, HalfInt cutoff,
               std::vector<int> eps = {})
{
    if (kind == Kind::nonclassical && eps.empty())
        eps.assign(static_cast<std::size_t>(n), 1);
    return IsoRepSpec{n, kind, lambda, std::move(m), std::move(eps), QParam(q), cutoff, kDefaultDepth};
}

// Weights of so_n interlacing with (infinity, m), found by a box search.
std::vector<std::vector<HalfInt>> branch_oracle(int n, const std::vector<HalfInt>& m, Kind kind, HalfInt cutoff)
{
    std::vector<HalfInt> upper{cutoff + 1000};
    upper.insert(upper.end(), m.begin(), m.end());
    const bool integral = m.empty() ? kind == Kind::classical : m.front().is_integral();
    const int len = n / 2;
    const int box = cutoff.twice();
    std::vector<std::vector<HalfInt>> out;
    std::vector<int> t(static_cast<std::size_t>(len), -box);
    while (true) {
        std::vector<HalfInt> w;
        for (int v : t)
            w.push_back(HalfInt::from_twice(v));
        const bool parity = oracle::entries_have_parity(w, kind, integral);
        const bool bounded = (kind == Kind::classical && n == 2 ? abs(w[0]) : w[0]) <= cutoff;
        if (parity && bounded && oracle::rows_interlace(upper, w, n + 1, kind))
            out.push_back(w);
        std::size_t pos = 0;
        while (pos < t.size() && ++t[pos] > box)
            t[pos++] = -box;
        if (pos == t.size())
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<HalfInt>> entries_of(const std::vector<HighestWeight>& ws)
{
    std::vector<std::vector<HalfInt>> out;
    for (const auto& w : ws)
        out.push_back(w.entries);
    return out;
}

struct Case {
    int n;
    Kind kind;
    std::vector<HalfInt> m;
};

std::vector<Case> suite()
{
    return {{2, Kind::classical, {}},
            {2, Kind::nonclassical, {}},
            {3, Kind::classical, halves({0})},
            {3, Kind::classical, halves({1})},
            {3, Kind::classical, halves({0.5})},
            {3, Kind::nonclassical, halves({0.5})},
            {3, Kind::nonclassical, halves({1.5})},
            {4, Kind::classical, halves({1})},
            {4, Kind::classical, halves({0.5})},
            {4, Kind::nonclassical, halves({0.5})}};
}

HalfInt cutoff_for(const Case& c, int room)
{
    return truncation_base(c.n, c.m, c.kind) + room;
}

} // namespace

TEST_CASE("branch examples")
{
    const auto cl = branch(3, halves({0}), Kind::classical, HalfInt(3));
    CHECK(entries_of(cl) == std::vector<std::vector<HalfInt>>{halves({0}), halves({1}), halves({2}), halves({3})});
    const auto nc = branch(3, halves({0.5}), Kind::nonclassical, HalfInt::from_twice(5));
    CHECK(entries_of(nc) == std::vector<std::vector<HalfInt>>{halves({0.5}), halves({1.5}), halves({2.5})});
    CHECK_THROWS_AS(branch(3, halves({1}), Kind::nonclassical, HalfInt(4)), Error);
}

TEST_CASE("branch agrees with a box search and is multiplicity-free")
{
    for (const Case& c : suite()) {
        for (int room = 3; room <= 6; ++room) {
            const HalfInt cutoff = cutoff_for(c, room);
            const auto got = entries_of(branch(c.n, c.m, c.kind, cutoff));
            CHECK(got == branch_oracle(c.n, c.m, c.kind, cutoff));
            auto sorted = got;
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        }
    }
}

TEST_CASE("truncated basis requires room for an interior")
{
    CHECK_THROWS_WITH_AS(build_truncated_basis(3, halves({1}), Kind::classical, HalfInt(3)), "cutoff too small", Error);
    CHECK_NOTHROW(build_truncated_basis(3, halves({1}), Kind::classical, HalfInt(4)));
}

TEST_CASE("interior mask examples")
{
    for (const Case& c : suite()) {
        const TruncatedBasis tight = build_truncated_basis(c.n, c.m, c.kind, cutoff_for(c, 3));
        const auto all = interior_residual_mask(tight, 0);
        CHECK(std::count(all.begin(), all.end(), true) == static_cast<long>(tight.dim()));
        const auto mask = interior_residual_mask(tight, 3);
        const HalfInt base = truncation_base(c.n, c.m, c.kind);
        for (std::size_t i = 0; i < tight.dim(); ++i) {
            HalfInt top = tight.patterns[i].at(c.n, 0);
            if (c.kind == Kind::classical && c.n == 2)
                top = abs(top);
            CHECK(mask[i] == (top == base));
        }
    }
}

TEST_CASE("iso_2 top generator entries")
{
    const double q = 1.3;
    const cplx lambda(0.8, -0.3);
    const GeneratorSet gs = build_iso(iso(2, Kind::classical, lambda, {}, q, HalfInt(6)));
    REQUIRE(gs.names == std::vector<std::string>{"I_{2,1}", "T_{2}"});
    const DenseMatrix T = oracle::dense(gs.get("T_{2}"));
    for (std::size_t s = 0; s < gs.dim(); ++s) {
        const double m = d(gs.patterns[s].at(2, 0));
        const auto ss = static_cast<Eigen::Index>(s);
        const cplx expected = lambda / (std::pow(q, m) + std::pow(q, -m));
        if (m < 6)
            CHECK(std::abs(T(ss + 1, ss) - expected) <= 1e-14);
        if (m > -6)
            CHECK(std::abs(T(ss - 1, ss) - expected) <= 1e-14);
        CHECK(T(ss, ss) == cplx(0.0));
    }
}

TEST_CASE("T_3 diagonal of the classical family")
{
    const double q = 1.3;
    const GeneratorSet zero = build_iso(iso(3, Kind::classical, 1.0, halves({0}), q, HalfInt(5)));
    CHECK(oracle::dense(zero.get("T_{3}")).diagonal().cwiseAbs().maxCoeff() == 0.0);

    const cplx lambda(1.5, 0.5);
    const GeneratorSet gs = build_iso(iso(3, Kind::classical, lambda, halves({1}), q, HalfInt(5)));
    const DenseMatrix T = oracle::dense(gs.get("T_{3}"));
    int seen = 0;
    for (std::size_t s = 0; s < gs.dim(); ++s) {
        if (gs.patterns[s].at(3, 0) != HalfInt(1))
            continue;
        ++seen;
        // l_{2,4} = 1, l_{1,3} = 2, l_{1,2} = m_{1,2}
        const double m12 = d(gs.patterns[s].at(2, 0));
        const cplx expected = lambda * bracket(1.0, q) * bracket(m12, q) / (bracket(2.0, q) * bracket(1.0, q));
        const auto ss = static_cast<Eigen::Index>(s);
        CHECK(std::abs(T(ss, ss) - expected) <= 1e-14);
    }
    CHECK(seen == 3);
}

TEST_CASE("zero lambda is rejected")
{
    CHECK_THROWS_AS(build_iso(iso(2, Kind::classical, 0.0, {}, 1.3, HalfInt(6))), Error);
}

TEST_CASE("masked relations hold on the interior")
{
    for (double q : {0.7, 1.3}) {
        for (const Case& c : suite()) {
            const HalfInt cutoff = cutoff_for(c, 8);
            const GeneratorSet gs = build_iso(iso(c.n, c.kind, cplx(0.9, 0.4), c.m, q, cutoff));
            const double sc = oracle::scale(gs);
            CHECK(oracle::so_relation_defect(gs, q, gs.interior) <= 1e-9 * sc);
            CHECK(oracle::iso_relation_defect(gs, q, gs.interior) <= 1e-9 * sc * sc);
            const auto lib = iso_relation_residual(gs, QParam(q), gs.interior);
            CHECK(max_residual(lib) <= 1e-9);
            if (c.n == 2) {
                CHECK(lib.count("iso2_def"));
                CHECK(lib.count("iso2_T1I"));
                CHECK(lib.count("iso2_TT1"));
            }
        }
    }
}

TEST_CASE("truncation damage stays outside the interior")
{
    const double q = 1.3;
    const GeneratorSet gs = build_iso(iso(3, Kind::classical, 1.0, halves({0}), q, HalfInt(6)));
    std::vector<bool> outside(gs.dim());
    for (std::size_t i = 0; i < gs.dim(); ++i)
        outside[i] = !gs.interior[i];
    CHECK(oracle::iso_relation_defect(gs, q, outside) > 1e-3);
}

TEST_CASE("T_n = 0 satisfies the T relations trivially")
{
    GeneratorSet gs = build_iso(iso(3, Kind::classical, 1.0, halves({0}), 1.3, HalfInt(5)));
    gs.mats.back() = SparseMatrix(static_cast<Eigen::Index>(gs.dim()), static_cast<Eigen::Index>(gs.dim()));
    CHECK(max_residual(iso_relation_residual(gs, QParam(1.3))) == 0.0);
}

TEST_CASE("restriction to the I-generators is block diagonal with so_n blocks")
{
    const double q = 1.3;
    for (const Case& c : suite()) {
        if (c.n < 3)
            continue;
        const HalfInt cutoff = cutoff_for(c, 5);
        const std::vector<int> eps = c.kind == Kind::nonclassical ? std::vector<int>{1, -1, 1, -1} : std::vector<int>{};
        const std::vector<int> eps_iso(eps.begin(), eps.begin() + (eps.empty() ? 0 : c.n));
        const GeneratorSet gs = build_iso(iso(c.n, c.kind, 1.0, c.m, q, cutoff, eps_iso));
        const TruncatedBasis tb = build_truncated_basis(c.n, c.m, c.kind, cutoff);
        for (std::size_t k = 0; k < tb.components.size(); ++k) {
            const auto off = static_cast<Eigen::Index>(tb.offsets[k]);
            const auto len = static_cast<Eigen::Index>(tb.offsets[k + 1] - tb.offsets[k]);
            const std::vector<int> eps_so(eps.begin(), eps.begin() + (eps.empty() ? 0 : c.n - 1));
            const SoRepSpec spec{tb.components[k], QParam(q),
                                 c.kind == Kind::classical ? SoFamily::classical : SoFamily::nonclassical, eps_so};
            const GeneratorSet block = build_so(spec);
            REQUIRE(static_cast<Eigen::Index>(block.dim()) == len);
            for (std::size_t g = 0; g + 1 < gs.mats.size(); ++g) {
                const DenseMatrix full = oracle::dense(gs.mats[g]);
                CHECK((full.block(off, off, len, len) - oracle::dense(block.mats[g])).cwiseAbs().maxCoeff() <= 1e-12);
                DenseMatrix rest = full.middleCols(off, len);
                rest.middleRows(off, len).setZero();
                CHECK(rest.cwiseAbs().maxCoeff() == 0.0);
            }
        }
    }
}

TEST_CASE("T_n moves one top-row entry by one")
{
    for (const Case& c : suite()) {
        const GeneratorSet gs = build_iso(iso(c.n, c.kind, 1.0, c.m, 1.3, cutoff_for(c, 5)));
        const SparseMatrix& T = gs.mats.back();
        for (Eigen::Index col = 0; col < T.outerSize(); ++col) {
            for (SparseMatrix::InnerIterator it(T, col); it; ++it) {
                const auto a = gs.patterns[static_cast<std::size_t>(it.row())].row(c.n);
                const auto b = gs.patterns[static_cast<std::size_t>(col)].row(c.n);
                int moved = 0;
                for (std::size_t i = 0; i < a.size(); ++i) {
                    if (a[i] != b[i])
                        moved += abs(a[i] - b[i]) == HalfInt(1) ? 1 : 100;
                }
                CHECK(moved <= 1);
            }
        }
    }
}

TEST_CASE("lambda scales T_n and leaves the I-generators alone")
{
    const cplx t(2.0, -0.5);
    for (const Case& c : suite()) {
        const HalfInt cutoff = cutoff_for(c, 5);
        const cplx lambda(0.7, 0.2);
        const GeneratorSet a = build_iso(iso(c.n, c.kind, lambda, c.m, 1.3, cutoff));
        const GeneratorSet b = build_iso(iso(c.n, c.kind, t * lambda, c.m, 1.3, cutoff));
        for (std::size_t g = 0; g + 1 < a.mats.size(); ++g)
            CHECK(oracle::max_entry_diff(b.mats[g], oracle::dense(a.mats[g])) == 0.0);
        CHECK(oracle::max_entry_diff(b.mats.back(), t * oracle::dense(a.mats.back())) <= 1e-12);
    }
}
