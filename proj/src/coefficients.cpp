#include "qrep/coefficients.hpp"

#include <cmath>

namespace qrep {

namespace {

// Product ratio of q-numbers that remembers exact zero factors.
class Ratio {
public:
    Ratio(const QParam& q, bool plus) : q_(q), plus_(plus) {}

    void num(HalfInt a) { factor(a, numerator_, numerator_zero_); }
    void den(HalfInt a) { factor(a, denominator_, denominator_zero_); }

    bool numerator_zero() const { return numerator_zero_; }

    double value() const
    {
        if (numerator_zero_)
            return 0.0;
        if (denominator_zero_)
            throw Error("singular coefficient");
        return numerator_ / denominator_;
    }

private:
    void factor(HalfInt a, double& acc, bool& zero)
    {
        if (plus_) {
            acc *= q_bracket_plus(a, q_);
            return;
        }
        if (a.twice() == 0)
            zero = true;
        else
            acc *= q_bracket(a, q_);
    }

    const QParam& q_;
    bool plus_;
    double numerator_ = 1.0;
    double denominator_ = 1.0;
    bool numerator_zero_ = false;
    bool denominator_zero_ = false;
};

double checked_sqrt(double radicand)
{
    if (radicand < -kRadicandTolerance)
        throw Error("radicand negative");
    return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

const HalfInt kHalf = HalfInt::half();

} // namespace

double coefficient(CoeffKind kind, std::span<const HalfInt> upper, std::span<const HalfInt> current,
                   std::span<const HalfInt> lower, std::size_t slot, const QParam& q)
{
    switch (kind) {
    case CoeffKind::A:
    case CoeffKind::B: {
        if (slot >= current.size())
            throw Error("coefficient slot out of range");
        const HalfInt lj = current[slot];
        const int shift = kind == CoeffKind::A ? 1 : 0;
        const int pair = kind == CoeffKind::A ? 1 : -1;
        Ratio r(q, false);
        for (HalfInt u : upper) {
            r.num(u + lj);
            r.num(u - lj - shift);
        }
        for (HalfInt w : lower) {
            r.num(w + lj);
            r.num(w - lj - shift);
        }
        for (std::size_t i = 0; i < current.size(); ++i) {
            if (i == slot)
                continue;
            const HalfInt li = current[i];
            r.den(li + lj);
            r.den(li - lj);
            r.den(li + lj + pair);
            r.den(li - lj - 1);
        }
        return checked_sqrt(r.value());
    }
    case CoeffKind::C:
    case CoeffKind::Chat: {
        Ratio r(q, kind == CoeffKind::Chat);
        for (HalfInt u : upper)
            r.num(u);
        for (HalfInt w : lower)
            r.num(w);
        if (r.numerator_zero())
            return 0.0;
        for (HalfInt l : current) {
            r.den(l);
            r.den(l - 1);
        }
        return r.value();
    }
    case CoeffKind::D: {
        Ratio r(q, false);
        for (HalfInt u : upper)
            r.num(u - kHalf);
        for (HalfInt w : lower)
            r.num(w - kHalf);
        for (std::size_t i = 0; i + 1 < current.size(); ++i) {
            r.den(current[i] + kHalf);
            r.den(current[i] - kHalf);
        }
        return r.value();
    }
    }
    throw Error("unknown coefficient kind");
}

double coefficient(CoeffKind kind, const GTPattern& p, int k, std::size_t slot, const QParam& q)
{
    if (k < 1 || k >= p.n())
        throw Error("coefficient row out of range");
    const auto upper = l_coords(p, k + 1);
    const auto current = k >= 2 ? l_coords(p, k) : std::vector<HalfInt>{};
    const auto lower = k >= 3 ? l_coords(p, k - 1) : std::vector<HalfInt>{};
    return coefficient(kind, upper, current, lower, slot, q);
}

} // namespace qrep
