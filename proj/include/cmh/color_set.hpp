#pragma once

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace cmh {

// Subset of the palette [1, q]. Width is fixed at 1024 colors so the type
// stays a trivially copyable value; q itself lives in the instance.
class ColorSet {
public:
    static constexpr int max_colors = 1024;

    ColorSet() : words_{} {}

    static ColorSet full(int q) {
        ColorSet s;
        for (int c = 1; c <= q; ++c) s.insert(c);
        return s;
    }

    void insert(int color) { words_[word(color)] |= bit(color); }
    void erase(int color) { words_[word(color)] &= ~bit(color); }
    bool contains(int color) const { return (words_[word(color)] & bit(color)) != 0; }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    int count() const {
        int n = 0;
        for (auto w : words_) n += __builtin_popcountll(w);
        return n;
    }

    // Smallest member, or 0 if empty.
    int smallest() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return int(i * 64 + std::size_t(__builtin_ctzll(words_[i])) + 1);
        return 0;
    }

    ColorSet& operator|=(const ColorSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    ColorSet& operator&=(const ColorSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    ColorSet& operator-=(const ColorSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend ColorSet operator|(ColorSet a, const ColorSet& b) { return a |= b; }
    friend ColorSet operator&(ColorSet a, const ColorSet& b) { return a &= b; }
    friend ColorSet operator-(ColorSet a, const ColorSet& b) { return a -= b; }

    bool subset_of(const ColorSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool operator==(const ColorSet& o) const { return words_ == o.words_; }
    bool operator!=(const ColorSet& o) const { return !(*this == o); }

    std::vector<int> members() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                out.push_back(int(i * 64 + std::size_t(__builtin_ctzll(w)) + 1));
                w &= w - 1;
            }
        }
        return out;
    }

    // "{1,2,5}"; "{}" when empty. Matches the instance file syntax.
    std::string to_string() const {
        std::ostringstream os;
        os << '{';
        bool first = true;
        for (int c : members()) {
            if (!first) os << ',';
            os << c;
            first = false;
        }
        os << '}';
        return os.str();
    }

private:
    static std::size_t word(int color) { return std::size_t(color - 1) / 64; }
    static std::uint64_t bit(int color) { return std::uint64_t(1) << (std::size_t(color - 1) % 64); }

    std::array<std::uint64_t, max_colors / 64> words_;
};

} // namespace cmh
