#include "qrep/verify.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qrep {

namespace {

std::vector<std::pair<int, const SparseMatrix*>> so_generators(const GeneratorSet& gs)
{
    std::vector<std::pair<int, const SparseMatrix*>> out;
    for (int k = 2;; ++k) {
        const std::string name = so_generator_name(k);
        if (!gs.has(name))
            break;
        out.emplace_back(k, &gs.get(name));
    }
    for (const SparseMatrix& m : gs.mats) {
        if (m.rows() != static_cast<Eigen::Index>(gs.dim()) || m.cols() != m.rows())
            throw Error("generator dimension mismatch");
    }
    return out;
}

SparseMatrix column_selector(std::size_t dim, const std::vector<bool>& mask)
{
    if (!mask.empty() && mask.size() != dim)
        throw Error("mask dimension mismatch");
    std::vector<Eigen::Triplet<cplx>> t;
    Eigen::Index cols = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        if (mask.empty() || mask[i])
            t.emplace_back(static_cast<int>(i), static_cast<int>(cols++), cplx(1.0));
    }
    SparseMatrix p(static_cast<Eigen::Index>(dim), cols);
    p.setFromTriplets(t.begin(), t.end());
    return p;
}

double relative(const SparseMatrix& lhs_minus_rhs, const SparseMatrix& rhs)
{
    return lhs_minus_rhs.norm() / (1.0 + rhs.norm());
}

// a b b - [2] b a b + b b a applied to the selected columns.
SparseMatrix cubic(const SparseMatrix& a, const SparseMatrix& b, const SparseMatrix& ap, const SparseMatrix& bp,
                   double bracket2)
{
    const SparseMatrix bbp = b * bp;
    const SparseMatrix abp = a * bp;
    const SparseMatrix bap = b * ap;
    return SparseMatrix(a * bbp) - bracket2 * SparseMatrix(b * abp) + SparseMatrix(b * bap);
}

} // namespace

Residuals so_relation_residual(const GeneratorSet& gs, const QParam& q, const std::vector<bool>& mask)
{
    const auto gens = so_generators(gs);
    const SparseMatrix p = column_selector(gs.dim(), mask);
    const double z = q.value() + 1.0 / q.value();
    std::vector<SparseMatrix> proj;
    for (const auto& [k, m] : gens)
        proj.emplace_back(*m * p);
    Residuals out;
    for (std::size_t i = 1; i < gens.size(); ++i) {
        const SparseMatrix& a = *gens[i].second;
        const SparseMatrix& b = *gens[i - 1].second;
        const std::string tag = "[i=" + std::to_string(gens[i].first) + "]";
        const SparseMatrix r1 = cubic(a, b, proj[i], proj[i - 1], z);
        out["rel1" + tag] = relative(r1 + proj[i], -proj[i]);
        const SparseMatrix r2 = cubic(b, a, proj[i - 1], proj[i], z);
        out["rel2" + tag] = relative(r2 + proj[i - 1], -proj[i - 1]);
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 2; j < gens.size(); ++j) {
            const SparseMatrix c = SparseMatrix(*gens[i].second * proj[j]) - SparseMatrix(*gens[j].second * proj[i]);
            out["rel3[i=" + std::to_string(gens[i].first) + ",j=" + std::to_string(gens[j].first) + "]"] =
                c.norm();
        }
    }
    return out;
}

Residuals iso_relation_residual(const GeneratorSet& gs, const QParam& q, const std::vector<bool>& mask)
{
    const auto gens = so_generators(gs);
    if (gens.empty())
        throw Error("no I-generators");
    const int n = gens.back().first;
    const SparseMatrix& t = gs.get(iso_generator_name(n));
    const SparseMatrix& in = *gens.back().second;
    const SparseMatrix p = column_selector(gs.dim(), mask);
    const SparseMatrix tp = t * p;
    const SparseMatrix ip = in * p;
    const double z = q.value() + 1.0 / q.value();
    const SparseMatrix zero(tp.rows(), tp.cols());

    Residuals out;
    out["iso_IIT"] = relative(cubic(t, in, tp, ip, z) + tp, -tp);
    out["iso_TTI"] = relative(cubic(in, t, ip, tp, z), zero);
    for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
        const SparseMatrix c = SparseMatrix(*gens[i].second * tp) - SparseMatrix(t * SparseMatrix(*gens[i].second * p));
        out["iso_comm[k=" + std::to_string(gens[i].first) + "]"] = c.norm();
    }
    if (n == 2) {
        const double s = std::sqrt(q.value());
        const SparseMatrix t1 = s * SparseMatrix(in * t) - (1.0 / s) * SparseMatrix(t * in);
        const SparseMatrix t1p = t1 * p;
        const SparseMatrix def = s * SparseMatrix(in * tp) - (1.0 / s) * SparseMatrix(t * ip) - t1p;
        out["iso2_def"] = relative(def, t1p);
        const SparseMatrix r2 = s * SparseMatrix(t1 * ip) - (1.0 / s) * SparseMatrix(in * t1p) - tp;
        out["iso2_T1I"] = relative(r2, tp);
        const SparseMatrix r3 = s * SparseMatrix(t * t1p) - (1.0 / s) * SparseMatrix(t1 * tp);
        out["iso2_TT1"] = relative(r3, zero);
    }
    return out;
}

double max_residual(const Residuals& r)
{
    double m = 0.0;
    for (const auto& [name, v] : r)
        m = std::max(m, v);
    return m;
}

namespace {

using Mats = std::vector<SparseMatrix>;
using HomBasis = std::vector<DenseMatrix>;

constexpr std::size_t kStackedLimit = 256;

// Tracks the worst singular-value gap over all stages.
struct GapTracker {
    double rank_tol;
    double largest_zero = 0.0;
    double smallest_nonzero = 1.0;

    // Returns the number of singular values that count as zero among `count` unknowns.
    std::size_t classify(const Eigen::VectorXd& sv, std::size_t count)
    {
        const double top = std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
        std::size_t nonzero = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            const double rel = sv(i) / top;
            if (rel > rank_tol) {
                ++nonzero;
                smallest_nonzero = std::min(smallest_nonzero, rel);
            } else {
                largest_zero = std::max(largest_zero, rel);
            }
        }
        return count - nonzero;
    }
};

bool is_diagonal(const SparseMatrix& m)
{
    for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            if (it.row() != col && it.value() != cplx(0.0))
                return false;
        }
    }
    return true;
}

cplx diag_entry(const SparseMatrix& m, Eigen::Index i)
{
    return m.coeff(i, i);
}

// Connected components of the union sparsity graph, ordered by smallest member.
std::vector<std::vector<Eigen::Index>> blocks_of(const Mats& mats, std::size_t count, Eigen::Index dim)
{
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(dim));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Eigen::Index x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::size_t g = 0; g < count; ++g) {
        for (Eigen::Index col = 0; col < mats[g].outerSize(); ++col) {
            for (SparseMatrix::InnerIterator it(mats[g], col); it; ++it) {
                if (it.value() == cplx(0.0))
                    continue;
                const Eigen::Index a = find(it.row());
                const Eigen::Index b = find(col);
                if (a != b)
                    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            }
        }
    }
    std::vector<std::vector<Eigen::Index>> out;
    std::vector<Eigen::Index> slot(static_cast<std::size_t>(dim), -1);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const Eigen::Index r = find(i);
        if (slot[static_cast<std::size_t>(r)] < 0) {
            slot[static_cast<std::size_t>(r)] = static_cast<Eigen::Index>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(i);
    }
    return out;
}

SparseMatrix restrict_to(const SparseMatrix& m, const std::vector<Eigen::Index>& idx)
{
    std::vector<Eigen::Index> where(static_cast<std::size_t>(m.rows()), -1);
    for (std::size_t i = 0; i < idx.size(); ++i)
        where[static_cast<std::size_t>(idx[i])] = static_cast<Eigen::Index>(i);
    std::vector<Eigen::Triplet<cplx>> t;
    for (std::size_t c = 0; c < idx.size(); ++c) {
        for (SparseMatrix::InnerIterator it(m, idx[c]); it; ++it) {
            const Eigen::Index r = where[static_cast<std::size_t>(it.row())];
            if (r >= 0)
                t.emplace_back(static_cast<int>(r), static_cast<int>(c), it.value());
        }
    }
    const auto d = static_cast<Eigen::Index>(idx.size());
    SparseMatrix out(d, d);
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

bool masked(const std::vector<bool>& mask, Eigen::Index col)
{
    return mask.empty() || mask[static_cast<std::size_t>(col)];
}

// Null space of a dense system, as coefficient vectors over the unknowns.
std::vector<Eigen::VectorXcd> null_vectors(const DenseMatrix& system, Eigen::Index unknowns, GapTracker& gaps)
{
    std::vector<Eigen::VectorXcd> out;
    if (system.rows() == 0) {
        for (Eigen::Index i = 0; i < unknowns; ++i)
            out.push_back(Eigen::VectorXcd::Unit(unknowns, i));
        return out;
    }
    Eigen::BDCSVD<DenseMatrix> svd(system, Eigen::ComputeFullV);
    const auto nullity = gaps.classify(svd.singularValues(), static_cast<std::size_t>(unknowns));
    const DenseMatrix& v = svd.matrixV();
    for (std::size_t i = 0; i < nullity; ++i)
        out.push_back(v.col(unknowns - 1 - static_cast<Eigen::Index>(i)));
    std::reverse(out.begin(), out.end());
    return out;
}

// Full Sylvester system for small problems; the mask restricts the last generator only.
HomBasis stacked(const Mats& a, const Mats& b, std::size_t count, const std::vector<bool>& mask, GapTracker& gaps)
{
    const Eigen::Index da = a[0].rows();
    const Eigen::Index db = b[0].rows();
    const Eigen::Index unknowns = da * db;
    Eigen::Index equations = 0;
    for (std::size_t g = 0; g < count; ++g) {
        for (Eigen::Index j = 0; j < da; ++j) {
            if (g + 1 < count || masked(mask, j))
                equations += db;
        }
    }
    DenseMatrix sys = DenseMatrix::Zero(equations, unknowns);
    Eigen::Index r = 0;
    for (std::size_t g = 0; g < count; ++g) {
        const DenseMatrix ag(a[g]);
        const DenseMatrix bg(b[g]);
        for (Eigen::Index j = 0; j < da; ++j) {
            if (g + 1 == count && !masked(mask, j))
                continue;
            for (Eigen::Index i = 0; i < db; ++i, ++r) {
                // (X A)_{ij} = sum_k X_{ik} A_{kj};  (B X)_{ij} = sum_k B_{ik} X_{kj}
                for (Eigen::Index k = 0; k < da; ++k)
                    sys(r, i + k * db) += ag(k, j);
                for (Eigen::Index k = 0; k < db; ++k)
                    sys(r, k + j * db) -= bg(i, k);
            }
        }
    }
    HomBasis out;
    for (const auto& v : null_vectors(sys, unknowns, gaps))
        out.push_back(Eigen::Map<const DenseMatrix>(v.data(), db, da));
    return out;
}

// One diagonal generator on each side: X_{ij} may be nonzero only where b_i matches a_j.
HomBasis diagonal_match(const SparseMatrix& a, const SparseMatrix& b, const std::vector<bool>& mask, GapTracker& gaps)
{
    const Eigen::Index da = a.rows();
    const Eigen::Index db = b.rows();
    double top = 1.0;
    for (Eigen::Index j = 0; j < da; ++j) {
        if (!masked(mask, j))
            continue;
        for (Eigen::Index i = 0; i < db; ++i)
            top = std::max(top, std::abs(diag_entry(a, j) - diag_entry(b, i)));
    }
    HomBasis out;
    for (Eigen::Index j = 0; j < da; ++j) {
        for (Eigen::Index i = 0; i < db; ++i) {
            bool zero = true;
            if (masked(mask, j)) {
                const double rel = std::abs(diag_entry(a, j) - diag_entry(b, i)) / top;
                zero = rel <= gaps.rank_tol;
                if (zero)
                    gaps.largest_zero = std::max(gaps.largest_zero, rel);
                else
                    gaps.smallest_nonzero = std::min(gaps.smallest_nonzero, rel);
            }
            if (zero) {
                DenseMatrix e = DenseMatrix::Zero(db, da);
                e(i, j) = 1.0;
                out.push_back(std::move(e));
            }
        }
    }
    return out;
}

// One general generator on each side, solved through eigenvectors: X = Q Y P^{-1} with Y
// supported on matching eigenvalue pairs.
HomBasis eigen_match(const SparseMatrix& a, const SparseMatrix& b, GapTracker& gaps)
{
    Eigen::ComplexEigenSolver<DenseMatrix> ea{DenseMatrix(a)};
    Eigen::ComplexEigenSolver<DenseMatrix> eb{DenseMatrix(b)};
    if (ea.info() != Eigen::Success || eb.info() != Eigen::Success)
        throw Error("eigenvalue solver did not converge");
    const DenseMatrix pinv = ea.eigenvectors().inverse();
    const auto& la = ea.eigenvalues();
    const auto& lb = eb.eigenvalues();
    double top = 1.0;
    for (Eigen::Index j = 0; j < la.size(); ++j)
        for (Eigen::Index i = 0; i < lb.size(); ++i)
            top = std::max(top, std::abs(la(j) - lb(i)));
    std::vector<DenseMatrix> raw;
    for (Eigen::Index j = 0; j < la.size(); ++j) {
        for (Eigen::Index i = 0; i < lb.size(); ++i) {
            const double rel = std::abs(la(j) - lb(i)) / top;
            if (rel <= gaps.rank_tol) {
                gaps.largest_zero = std::max(gaps.largest_zero, rel);
                raw.push_back(eb.eigenvectors().col(i) * pinv.row(j));
            } else {
                gaps.smallest_nonzero = std::min(gaps.smallest_nonzero, rel);
            }
        }
    }
    if (raw.empty())
        return {};
    const Eigen::Index rows = a.rows() * b.rows();
    DenseMatrix stack(rows, static_cast<Eigen::Index>(raw.size()));
    for (std::size_t c = 0; c < raw.size(); ++c)
        stack.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Eigen::VectorXcd>(raw[c].data(), rows);
    Eigen::HouseholderQR<DenseMatrix> qr(stack);
    const DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(rows, stack.cols());
    HomBasis out;
    for (Eigen::Index c = 0; c < q.cols(); ++c)
        out.push_back(Eigen::Map<const DenseMatrix>(q.col(c).data(), b.rows(), a.rows()));
    return out;
}

// Keeps the combinations of `candidates` that also intertwine the given generator.
HomBasis impose(const HomBasis& candidates, const SparseMatrix& a, const SparseMatrix& b, const std::vector<bool>& mask,
                GapTracker& gaps)
{
    if (candidates.empty())
        return {};
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
        if (masked(mask, j))
            cols.push_back(j);
    }
    const Eigen::Index db = b.rows();
    const auto r = static_cast<Eigen::Index>(candidates.size());
    DenseMatrix sys(db * static_cast<Eigen::Index>(cols.size()), r);
    for (Eigen::Index c = 0; c < r; ++c) {
        const DenseMatrix& x = candidates[static_cast<std::size_t>(c)];
        const DenseMatrix defect = x * a - b * x;
        for (std::size_t k = 0; k < cols.size(); ++k)
            sys.block(static_cast<Eigen::Index>(k) * db, c, db, 1) = defect.col(cols[k]);
    }
    HomBasis out;
    for (const auto& v : null_vectors(sys, r, gaps)) {
        DenseMatrix x = DenseMatrix::Zero(db, a.rows());
        for (Eigen::Index c = 0; c < r; ++c)
            x += v(c) * candidates[static_cast<std::size_t>(c)];
        out.push_back(std::move(x));
    }
    return out;
}

// Hom space for the first `count` generators, recursing along the generator chain.
HomBasis hom(const Mats& a, const Mats& b, std::size_t count, const std::vector<bool>& mask, GapTracker& gaps)
{
    const Eigen::Index da = a[0].rows();
    const Eigen::Index db = b[0].rows();
    if (da == 0 || db == 0)
        return {};
    if (static_cast<std::size_t>(da * db) <= kStackedLimit)
        return stacked(a, b, count, mask, gaps);
    if (count == 1) {
        if (is_diagonal(a[0]) && is_diagonal(b[0]))
            return diagonal_match(a[0], b[0], mask, gaps);
        if (!mask.empty())
            throw Error("masked single-generator problem too large");
        return eigen_match(a[0], b[0], gaps);
    }
    const auto blocks_a = blocks_of(a, count - 1, da);
    const auto blocks_b = blocks_of(b, count - 1, db);
    HomBasis candidates;
    for (const auto& ba : blocks_a) {
        Mats sub_a;
        for (std::size_t g = 0; g + 1 < count; ++g)
            sub_a.push_back(restrict_to(a[g], ba));
        for (const auto& bb : blocks_b) {
            Mats sub_b;
            for (std::size_t g = 0; g + 1 < count; ++g)
                sub_b.push_back(restrict_to(b[g], bb));
            for (const DenseMatrix& x : hom(sub_a, sub_b, count - 1, {}, gaps)) {
                DenseMatrix full = DenseMatrix::Zero(db, da);
                for (std::size_t c = 0; c < ba.size(); ++c)
                    for (std::size_t r = 0; r < bb.size(); ++r)
                        full(bb[r], ba[c]) = x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
                candidates.push_back(std::move(full));
            }
        }
    }
    return impose(candidates, a[count - 1], b[count - 1], mask, gaps);
}

void check_size(const GeneratorSet& gs)
{
    if (gs.dim() > kMaxDenseDim)
        throw Error("too large");
}

HomResult solve(const GeneratorSet& a, const GeneratorSet& b, const std::vector<bool>& mask, double rank_tol)
{
    check_size(a);
    check_size(b);
    if (a.names != b.names)
        throw Error("generator sets have different generators");
    if (!mask.empty() && mask.size() != a.dim())
        throw Error("mask dimension mismatch");
    HomResult result;
    if (a.mats.empty() || a.dim() == 0 || b.dim() == 0) {
        result.dim = a.mats.empty() ? a.dim() * b.dim() : 0;
        return result;
    }
    GapTracker gaps{rank_tol};
    result.dim = hom(a.mats, b.mats, a.mats.size(), mask, gaps).size();
    result.largest_zero = gaps.largest_zero;
    result.smallest_nonzero = gaps.smallest_nonzero;
    return result;
}

} // namespace

HomResult commutant(const GeneratorSet& gs, double rank_tol)
{
    return solve(gs, gs, {}, rank_tol);
}

std::size_t commutant_dim(const GeneratorSet& gs)
{
    return commutant(gs).dim;
}

HomResult intertwiner(const GeneratorSet& a, const GeneratorSet& b, const std::vector<bool>& mask, double rank_tol)
{
    return solve(a, b, mask, rank_tol);
}

std::size_t intertwiner_dim(const GeneratorSet& a, const GeneratorSet& b)
{
    return intertwiner(a, b).dim;
}

std::vector<cplx> spectrum(const DenseMatrix& m)
{
    if (m.rows() != m.cols())
        throw Error("spectrum needs a square matrix");
    if (static_cast<std::size_t>(m.rows()) > kMaxDenseDim)
        throw Error("too large");
    if (m.rows() == 0)
        return {};
    Eigen::ComplexEigenSolver<DenseMatrix> solver(m, false);
    if (solver.info() != Eigen::Success)
        throw Error("eigenvalue solver did not converge");
    std::vector<cplx> out(solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows());
    // Real parts equal up to rounding are treated as ties so conjugate-free spectra sort stably.
    double scale = 1.0;
    for (cplx v : out)
        scale = std::max(scale, std::abs(v));
    const double grid = 1e-9 * scale;
    auto key = [grid](cplx v) { return std::round(v.real() / grid); };
    std::sort(out.begin(), out.end(), [&](cplx x, cplx y) {
        const double kx = key(x), ky = key(y);
        if (kx != ky)
            return kx < ky;
        return x.imag() < y.imag();
    });
    return out;
}

std::vector<cplx> spectrum(const SparseMatrix& m)
{
    return spectrum(DenseMatrix(m));
}

void VerificationReport::finalize()
{
    pass = max_residual(residuals) <= tol.residual;
    if (expected_commutant && (!commutant || commutant->dim != *expected_commutant))
        pass = false;
    if (expected_intertwiner && (!intertwiner || intertwiner->dim != *expected_intertwiner))
        pass = false;
}

VerificationReport verify_relations(const GeneratorSet& gs, const QParam& q, const Tolerances& tol, int depth)
{
    VerificationReport report;
    report.tol = tol;
    report.depth = depth;
    report.evidence_only = gs.truncated();
    const std::vector<bool> mask = gs.truncated() ? gs.interior : std::vector<bool>{};
    report.residuals = so_relation_residual(gs, q, mask);
    const auto gens = so_generators(gs);
    if (!gens.empty() && gs.has(iso_generator_name(gens.back().first))) {
        for (const auto& [name, v] : iso_relation_residual(gs, q, mask))
            report.residuals[name] = v;
    }
    report.finalize();
    return report;
}

} // namespace qrep
