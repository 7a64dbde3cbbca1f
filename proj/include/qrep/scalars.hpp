#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qrep {

/// Error raised by every module of the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact half-integer. Stores the doubled value, so 3/2 is kept as 3.
class HalfInt {
public:
    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int integral) : twice_(2 * integral) {}

    static constexpr HalfInt from_twice(int twice)
    {
        HalfInt h;
        h.twice_ = twice;
        return h;
    }
    static constexpr HalfInt half() { return from_twice(1); }

    /// Parses "k" or "k/2" (optional sign); anything else throws.
    static HalfInt parse(std::string_view text);

    constexpr int twice() const { return twice_; }
    constexpr bool is_integral() const { return twice_ % 2 == 0; }
    constexpr bool is_half_odd() const { return !is_integral(); }
    constexpr double to_double() const { return 0.5 * twice_; }

    /// "k" for integers, "k/2" otherwise.
    std::string str() const;

    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    constexpr HalfInt& operator+=(HalfInt o)
    {
        twice_ += o.twice_;
        return *this;
    }
    constexpr HalfInt& operator-=(HalfInt o)
    {
        twice_ -= o.twice_;
        return *this;
    }
    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
    friend constexpr HalfInt operator+(HalfInt a, int b) { return a += HalfInt(b); }
    friend constexpr HalfInt operator-(HalfInt a, int b) { return a -= HalfInt(b); }
    friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
    friend constexpr bool operator==(HalfInt, HalfInt) = default;

private:
    int twice_ = 0;
};

constexpr HalfInt abs(HalfInt h) { return h.twice() < 0 ? -h : h; }

/// Deformation parameter q > 0 kept away from the singular point q = 1.
class QParam {
public:
    explicit QParam(double value);
    double value() const { return value_; }
    double log() const { return log_; }

    static constexpr double kMinDistanceFromOne = 1e-6;

private:
    double value_;
    double log_;
};

/// [a] = (q^a - q^-a) / (q - q^-1).
double q_bracket(HalfInt a, const QParam& q);
/// [a]_+ = (q^a + q^-a) / (q - q^-1).
double q_bracket_plus(HalfInt a, const QParam& q);

// Complex-argument versions, used where the Lorentz parameter c enters.
std::complex<double> q_bracket(std::complex<double> a, const QParam& q);
std::complex<double> q_bracket_plus(std::complex<double> a, const QParam& q);

/// q^a for half-integer a.
double q_power(HalfInt a, const QParam& q);

} // namespace qrep
