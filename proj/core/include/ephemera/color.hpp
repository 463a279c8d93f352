#pragma once

/// @file color.hpp
/// @brief Target colors and a compact ordered color set.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>
#include <vector>

namespace ephemera {

/// Target color. Declaration order is the canonical order used everywhere
/// (tree layout, tie-breaks, CSV columns).
enum class Color : std::uint8_t { Red = 0, Green = 1, Yellow = 2, Blue = 3 };

inline constexpr std::size_t kColorCount = 4;
inline constexpr std::array<Color, kColorCount> kAllColors{Color::Red, Color::Green, Color::Yellow,
                                                           Color::Blue};

constexpr std::size_t index_of(Color c) noexcept { return static_cast<std::size_t>(c); }

std::string_view to_string(Color c) noexcept;
std::optional<Color> parse_color(std::string_view name) noexcept;

/// Set of colors stored as a 4-bit mask; iterates in canonical order.
class ColorSet {
public:
    class iterator {
    public:
        using value_type = Color;
        using difference_type = std::ptrdiff_t;

        constexpr iterator() = default;
        constexpr iterator(std::uint8_t bits, std::size_t pos) : bits_(bits), pos_(pos) { skip(); }

        constexpr Color operator*() const { return static_cast<Color>(pos_); }
        constexpr iterator& operator++() {
            ++pos_;
            skip();
            return *this;
        }
        constexpr iterator operator++(int) {
            auto copy = *this;
            ++*this;
            return copy;
        }
        constexpr bool operator==(const iterator&) const = default;

    private:
        constexpr void skip() {
            while (pos_ < kColorCount && (bits_ & (1u << pos_)) == 0) ++pos_;
        }
        std::uint8_t bits_ = 0;
        std::size_t pos_ = kColorCount;
    };

    constexpr ColorSet() = default;
    constexpr ColorSet(std::initializer_list<Color> colors) {
        for (Color c : colors) insert(c);
    }

    static constexpr ColorSet all() { return ColorSet{Color::Red, Color::Green, Color::Yellow, Color::Blue}; }
    static constexpr ColorSet from_bits(std::uint8_t bits) {
        ColorSet s;
        s.bits_ = bits & 0x0F;
        return s;
    }

    constexpr bool contains(Color c) const { return (bits_ & bit(c)) != 0; }
    constexpr void insert(Color c) { bits_ |= bit(c); }
    constexpr void erase(Color c) { bits_ &= static_cast<std::uint8_t>(~bit(c)); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr std::uint8_t bits() const { return bits_; }

    constexpr ColorSet operator|(ColorSet o) const { return from_bits(bits_ | o.bits_); }
    constexpr ColorSet operator&(ColorSet o) const { return from_bits(bits_ & o.bits_); }
    constexpr ColorSet operator-(ColorSet o) const { return from_bits(bits_ & ~o.bits_); }
    constexpr bool operator==(const ColorSet&) const = default;

    constexpr iterator begin() const { return iterator(bits_, 0); }
    constexpr iterator end() const { return iterator(bits_, kColorCount); }

    std::vector<Color> to_vector() const { return {begin(), end()}; }

private:
    static constexpr std::uint8_t bit(Color c) { return static_cast<std::uint8_t>(1u << index_of(c)); }
    std::uint8_t bits_ = 0;
};

}  // namespace ephemera
