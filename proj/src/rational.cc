#include <oddwheel/errors.hh>
#include <oddwheel/rational.hh>

#include <ostream>

namespace oddwheel
{
    Rational::Rational(BigInt num, BigInt den) : _num(std::move(num)), _den(std::move(den))
    {
        if (_den == 0)
            throw InvalidArgument("zero denominator");
        normalise();
    }

    auto Rational::normalise() -> void
    {
        if (_den < 0) {
            _num = -_num;
            _den = -_den;
        }
        if (_num == 0) {
            _den = 1;
            return;
        }
        BigInt g = boost::multiprecision::gcd(_num, _den);
        if (g != 1) {
            _num /= g;
            _den /= g;
        }
    }

    auto Rational::parse(std::string_view text) -> Rational
    {
        auto parse_int = [&](std::string_view s) -> BigInt {
            if (s.empty())
                throw ParseError("empty integer in rational '" + std::string(text) + "'", 0);
            std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (i == s.size())
                throw ParseError("bad integer in rational '" + std::string(text) + "'", 0);
            for (std::size_t j = i; j < s.size(); ++j)
                if (s[j] < '0' || s[j] > '9')
                    throw ParseError("bad digit in rational '" + std::string(text) + "'", j);
            return BigInt(std::string(s));
        };
        auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return Rational(parse_int(text));
        auto den = parse_int(text.substr(slash + 1));
        if (den == 0)
            throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
        return Rational(parse_int(text.substr(0, slash)), den);
    }

    auto Rational::reciprocal() const -> Rational
    {
        return Rational(_den, _num);
    }

    auto Rational::to_string() const -> std::string
    {
        if (_den == 1)
            return _num.str();
        return _num.str() + "/" + _den.str();
    }

    auto Rational::to_decimal(int places) const -> std::string
    {
        if (places < 0)
            throw InvalidArgument("negative decimal precision");
        BigInt scale = 1;
        for (int i = 0; i < places; ++i)
            scale *= 10;
        BigInt a = _num < 0 ? BigInt(-_num) : _num;
        BigInt q = (2 * a * scale + _den) / (2 * _den);
        std::string digits = q.str();
        if (static_cast<int>(digits.size()) <= places)
            digits = std::string(places + 1 - digits.size(), '0') + digits;
        std::string r = (_num < 0 && q != 0) ? "-" : "";
        r += digits.substr(0, digits.size() - places);
        if (places > 0)
            r += "." + digits.substr(digits.size() - places);
        return r;
    }

    auto Rational::operator-() const -> Rational
    {
        Rational r = *this;
        r._num = -r._num;
        return r;
    }

    auto Rational::operator+=(const Rational & o) -> Rational &
    {
        _num = _num * o._den + o._num * _den;
        _den *= o._den;
        normalise();
        return *this;
    }

    auto Rational::operator-=(const Rational & o) -> Rational &
    {
        _num = _num * o._den - o._num * _den;
        _den *= o._den;
        normalise();
        return *this;
    }

    auto Rational::operator*=(const Rational & o) -> Rational &
    {
        _num *= o._num;
        _den *= o._den;
        normalise();
        return *this;
    }

    auto Rational::operator/=(const Rational & o) -> Rational &
    {
        if (o._num == 0)
            throw InvalidArgument("division by zero");
        BigInt n = _num * o._den;
        BigInt d = _den * o._num;
        _num = std::move(n);
        _den = std::move(d);
        normalise();
        return *this;
    }

    auto operator<=>(const Rational & a, const Rational & b) -> std::strong_ordering
    {
        BigInt l = a._num * b._den;
        BigInt r = b._num * a._den;
        if (l < r)
            return std::strong_ordering::less;
        if (l > r)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    auto operator<<(std::ostream & out, const Rational & r) -> std::ostream &
    {
        return out << r.to_string();
    }
}
