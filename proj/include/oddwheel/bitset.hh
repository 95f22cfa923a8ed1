#ifndef ODDWHEEL_BITSET_HH
#define ODDWHEEL_BITSET_HH

#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace oddwheel
{
    using Word = std::uint64_t;
    inline constexpr int bits_per_word = 64;

    inline constexpr auto words_for(int n) -> int
    {
        return (n + bits_per_word - 1) / bits_per_word;
    }

    /// Fixed-width dynamic bitset over vertex indices 0..size-1. Bits beyond
    /// size are always zero.
    class Bitset
    {
    private:
        int _size = 0;
        std::vector<Word> _words;

    public:
        Bitset() = default;
        explicit Bitset(int size) : _size(size), _words(words_for(size), 0) {}

        auto size() const -> int { return _size; }
        auto word_count() const -> int { return static_cast<int>(_words.size()); }
        auto words() -> std::span<Word> { return _words; }
        auto words() const -> std::span<const Word> { return _words; }

        auto set(int i) -> void { _words[i / bits_per_word] |= Word{1} << (i % bits_per_word); }
        auto reset(int i) -> void { _words[i / bits_per_word] &= ~(Word{1} << (i % bits_per_word)); }
        auto test(int i) const -> bool { return (_words[i / bits_per_word] >> (i % bits_per_word)) & 1; }

        auto set_all() -> void
        {
            for (auto & w : _words)
                w = ~Word{0};
            trim();
        }

        auto clear() -> void
        {
            for (auto & w : _words)
                w = 0;
        }

        auto count() const -> int
        {
            int c = 0;
            for (auto w : _words)
                c += std::popcount(w);
            return c;
        }

        auto empty() const -> bool
        {
            for (auto w : _words)
                if (w)
                    return false;
            return true;
        }

        auto first() const -> int
        {
            for (int i = 0; i < word_count(); ++i)
                if (_words[i])
                    return i * bits_per_word + std::countr_zero(_words[i]);
            return -1;
        }

        auto intersects(const Bitset & o) const -> bool
        {
            for (int i = 0; i < word_count(); ++i)
                if (_words[i] & o._words[i])
                    return true;
            return false;
        }

        auto is_subset_of(const Bitset & o) const -> bool
        {
            for (int i = 0; i < word_count(); ++i)
                if (_words[i] & ~o._words[i])
                    return false;
            return true;
        }

        auto operator&=(const Bitset & o) -> Bitset &
        {
            for (int i = 0; i < word_count(); ++i)
                _words[i] &= o._words[i];
            return *this;
        }

        auto operator|=(const Bitset & o) -> Bitset &
        {
            for (int i = 0; i < word_count(); ++i)
                _words[i] |= o._words[i];
            return *this;
        }

        auto subtract(const Bitset & o) -> Bitset &
        {
            for (int i = 0; i < word_count(); ++i)
                _words[i] &= ~o._words[i];
            return *this;
        }

        auto complemented() const -> Bitset
        {
            Bitset r = *this;
            for (auto & w : r._words)
                w = ~w;
            r.trim();
            return r;
        }

        template <typename F>
        auto for_each(F && f) const -> void
        {
            for (int i = 0; i < word_count(); ++i) {
                Word w = _words[i];
                while (w) {
                    int b = std::countr_zero(w);
                    w &= w - 1;
                    f(i * bits_per_word + b);
                }
            }
        }

        auto to_vector() const -> std::vector<int>
        {
            std::vector<int> r;
            r.reserve(count());
            for_each([&](int v) { r.push_back(v); });
            return r;
        }

        friend auto operator==(const Bitset &, const Bitset &) -> bool = default;

        friend auto operator&(Bitset a, const Bitset & b) -> Bitset { return a &= b; }
        friend auto operator|(Bitset a, const Bitset & b) -> Bitset { return a |= b; }

    private:
        auto trim() -> void
        {
            if (_size % bits_per_word && ! _words.empty())
                _words.back() &= (Word{1} << (_size % bits_per_word)) - 1;
        }
    };

    inline auto bitset_of(int size, std::span<const int> members) -> Bitset
    {
        Bitset b(size);
        for (int v : members)
            b.set(v);
        return b;
    }
}

#endif
