#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace smcp {

/// One scalar deck value. Strings must not look like numbers or Fortran
/// booleans, contain '#', or span lines — the on-disk format could not
/// distinguish them on re-parse otherwise.
using Scalar = std::variant<bool, long long, double, std::string>;

struct DeckEntry {
    std::string key;
    Scalar value;
    std::string comment; // optional trailing "# ..." comment

    friend bool operator==(const DeckEntry&, const DeckEntry&) = default;
};

struct DeckParseError : std::runtime_error {
    int line;
    DeckParseError(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

/// Ordered KEY = VALUE file with leading comment lines. Keys are unique
/// and their order survives render/parse.
class ParameterDeck {
public:
    void add_header_comment(std::string text);
    void set(std::string key, Scalar value, std::string comment = "");

    const DeckEntry* find(std::string_view key) const;
    bool get_bool(std::string_view key, bool fallback) const;
    long long get_int(std::string_view key, long long fallback) const;
    double get_number(std::string_view key, double fallback) const; // int or double entry
    std::string get_string(std::string_view key, std::string fallback) const;

    const std::vector<DeckEntry>& entries() const { return entries_; }
    const std::vector<std::string>& header_comments() const { return header_comments_; }
    bool empty() const { return entries_.empty() && header_comments_.empty(); }

    friend bool operator==(const ParameterDeck&, const ParameterDeck&) = default;

private:
    std::vector<DeckEntry> entries_;
    std::vector<std::string> header_comments_;
};

/// Deterministic decimal rendering: up to 12 significant digits, plain
/// decimals inside [1e-4, 1e6), exponent form outside ("2.5e-5").
std::string render_number(double value);

std::string render_scalar(const Scalar& value);

/// One `KEY = VALUE` line per entry with the key field padded to 32
/// columns; byte-deterministic for equal decks.
std::string render_deck(const ParameterDeck& deck);

/// Inverts render_deck: parse_deck(render_deck(d)) == d for every valid
/// deck. Unknown keys are preserved verbatim. Values classify as
/// .true./.false., integer, number (Fortran 1.d0 exponents accepted) or
/// bare string, in that order.
ParameterDeck parse_deck(std::string_view text);

} // namespace smcp
