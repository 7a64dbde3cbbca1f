#include "qrep/generators.hpp"

#include <algorithm>

namespace qrep {

std::string so_generator_name(int k)
{
    return "I_{" + std::to_string(k) + "," + std::to_string(k - 1) + "}";
}

std::string iso_generator_name(int n)
{
    return "T_{" + std::to_string(n) + "}";
}

bool GeneratorSet::truncated() const
{
    return std::find(interior.begin(), interior.end(), false) != interior.end();
}

bool GeneratorSet::has(std::string_view name) const
{
    return std::find(names.begin(), names.end(), name) != names.end();
}

const SparseMatrix& GeneratorSet::get(std::string_view name) const
{
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw Error("unknown generator " + std::string(name));
    return mats[static_cast<std::size_t>(it - names.begin())];
}

void MatrixBuilder::add(std::size_t target, std::size_t source, cplx value)
{
    if (value == cplx(0.0))
        return;
    triplets_.emplace_back(static_cast<int>(target), static_cast<int>(source), value);
}

SparseMatrix MatrixBuilder::build() const
{
    const auto d = static_cast<Eigen::Index>(dim_);
    SparseMatrix m(d, d);
    m.setFromTriplets(triplets_.begin(), triplets_.end());
    m.makeCompressed();
    return m;
}

} // namespace qrep
