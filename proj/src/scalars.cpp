#include "qrep/scalars.hpp"

#include <charconv>
#include <cmath>

namespace qrep {

namespace {

constexpr int kMaxBracketArgument = 10000;

int parse_int(std::string_view text, std::string_view whole)
{
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw Error("malformed half-integer \"" + std::string(whole) + "\"");
    return value;
}

void check_range(double a)
{
    if (std::abs(a) > kMaxBracketArgument)
        throw Error("q-number argument out of range");
}

} // namespace

HalfInt HalfInt::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return HalfInt(parse_int(text, text));
    if (text.substr(slash + 1) != "2")
        throw Error("malformed half-integer \"" + std::string(text) + "\"");
    const int numerator = parse_int(text.substr(0, slash), text);
    if (numerator % 2 == 0)
        throw Error("half-integer \"" + std::string(text) + "\" is not in lowest terms");
    return from_twice(numerator);
}

std::string HalfInt::str() const
{
    if (is_integral())
        return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

QParam::QParam(double value) : value_(value), log_(0.0)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw Error("q must be a positive real number");
    if (std::abs(value - 1.0) < kMinDistanceFromOne)
        throw Error("q too close to 1");
    log_ = std::log(value);
}

double q_power(HalfInt a, const QParam& q)
{
    check_range(a.to_double());
    return std::exp(a.to_double() * q.log());
}

double q_bracket(HalfInt a, const QParam& q)
{
    if (a.twice() == 0)
        return 0.0;
    const double x = q_power(a, q);
    return (x - 1.0 / x) / (q.value() - 1.0 / q.value());
}

double q_bracket_plus(HalfInt a, const QParam& q)
{
    const double x = q_power(a, q);
    return (x + 1.0 / x) / (q.value() - 1.0 / q.value());
}

std::complex<double> q_bracket(std::complex<double> a, const QParam& q)
{
    check_range(std::abs(a));
    const double denom = q.value() - 1.0 / q.value();
    if (a.imag() == 0.0) {
        if (a.real() == 0.0)
            return 0.0;
        const double x = std::exp(a.real() * q.log());
        return (x - 1.0 / x) / denom;
    }
    const auto x = std::exp(a * q.log());
    return (x - 1.0 / x) / denom;
}

std::complex<double> q_bracket_plus(std::complex<double> a, const QParam& q)
{
    check_range(std::abs(a));
    const double denom = q.value() - 1.0 / q.value();
    if (a.imag() == 0.0) {
        const double x = std::exp(a.real() * q.log());
        return (x + 1.0 / x) / denom;
    }
    const auto x = std::exp(a * q.log());
    return (x + 1.0 / x) / denom;
}

} // namespace qrep
