#ifndef ODDWHEEL_RATIONAL_HH
#define ODDWHEEL_RATIONAL_HH

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace oddwheel
{
    using BigInt = boost::multiprecision::cpp_int;

    /// Exact fraction, always in lowest terms with a positive denominator.
    class Rational
    {
    private:
        BigInt _num = 0;
        BigInt _den = 1;

        auto normalise() -> void;

    public:
        Rational() = default;
        Rational(long value) : _num(value) {}
        Rational(BigInt value) : _num(std::move(value)) {}
        /// Throws InvalidArgument on a zero denominator.
        Rational(BigInt num, BigInt den);

        /// "p/q" or "p".
        static auto parse(std::string_view text) -> Rational;

        auto numerator() const -> const BigInt & { return _num; }
        auto denominator() const -> const BigInt & { return _den; }
        auto is_zero() const -> bool { return _num == 0; }
        auto sign() const -> int { return _num < 0 ? -1 : (_num > 0 ? 1 : 0); }
        auto reciprocal() const -> Rational;
        auto to_string() const -> std::string;
        /// Rounded half away from zero to the given number of places.
        auto to_decimal(int places) const -> std::string;

        auto operator-() const -> Rational;
        auto operator+=(const Rational & o) -> Rational &;
        auto operator-=(const Rational & o) -> Rational &;
        auto operator*=(const Rational & o) -> Rational &;
        /// Throws InvalidArgument on division by zero.
        auto operator/=(const Rational & o) -> Rational &;

        friend auto operator+(Rational a, const Rational & b) -> Rational { return a += b; }
        friend auto operator-(Rational a, const Rational & b) -> Rational { return a -= b; }
        friend auto operator*(Rational a, const Rational & b) -> Rational { return a *= b; }
        friend auto operator/(Rational a, const Rational & b) -> Rational { return a /= b; }

        friend auto operator==(const Rational & a, const Rational & b) -> bool
        {
            return a._num == b._num && a._den == b._den;
        }
        friend auto operator<=>(const Rational & a, const Rational & b) -> std::strong_ordering;
    };

    auto operator<<(std::ostream & out, const Rational & r) -> std::ostream &;
}

#endif
