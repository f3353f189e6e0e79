#include "specfem_mcp/deck.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace smcp {

namespace {

constexpr int kKeyColumns = 32;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
    if (key.empty()) {
        return false;
    }
    for (char c : key) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_';
        if (!ok) {
            return false;
        }
    }
    return !(key[0] >= '0' && key[0] <= '9');
}

bool parse_integer(std::string_view token, long long& out) {
    if (token.empty()) {
        return false;
    }
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (*first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

bool parse_double(std::string_view token, double& out) {
    if (token.empty()) {
        return false;
    }
    std::string normalized(token);
    for (char& c : normalized) {
        if (c == 'd' || c == 'D') {
            c = 'e'; // Fortran exponent marker
        }
    }
    const char* begin = normalized.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + normalized.size() && std::isfinite(out);
}

Scalar classify_value(std::string_view token) {
    if (token == ".true.") {
        return true;
    }
    if (token == ".false.") {
        return false;
    }
    long long i = 0;
    if (parse_integer(token, i)) {
        return i;
    }
    double d = 0;
    if (parse_double(token, d)) {
        return d;
    }
    return std::string(token);
}

} // namespace

void ParameterDeck::add_header_comment(std::string text) {
    if (text.find('\n') != std::string::npos) {
        throw std::invalid_argument("deck comment must be a single line");
    }
    header_comments_.push_back(std::move(text));
}

void ParameterDeck::set(std::string key, Scalar value, std::string comment) {
    if (!valid_key(key)) {
        throw std::invalid_argument("invalid deck key: '" + key + "'");
    }
    if (comment.find('\n') != std::string::npos) {
        throw std::invalid_argument("deck comment must be a single line");
    }
    if (const auto* s = std::get_if<std::string>(&value)) {
        if (s->find('\n') != std::string::npos || s->find('#') != std::string::npos) {
            throw std::invalid_argument("string value for '" + key +
                                        "' may not contain '#' or newlines");
        }
        if (!s->empty() && (trim(*s).size() != s->size())) {
            throw std::invalid_argument("string value for '" + key +
                                        "' may not start or end with whitespace");
        }
    }
    for (auto& entry : entries_) {
        if (entry.key == key) {
            entry.value = std::move(value);
            entry.comment = std::move(comment);
            return;
        }
    }
    entries_.push_back({std::move(key), std::move(value), std::move(comment)});
}

const DeckEntry* ParameterDeck::find(std::string_view key) const {
    for (const auto& entry : entries_) {
        if (entry.key == key) {
            return &entry;
        }
    }
    return nullptr;
}

bool ParameterDeck::get_bool(std::string_view key, bool fallback) const {
    const DeckEntry* e = find(key);
    if (e == nullptr) {
        return fallback;
    }
    if (const auto* b = std::get_if<bool>(&e->value)) {
        return *b;
    }
    return fallback;
}

long long ParameterDeck::get_int(std::string_view key, long long fallback) const {
    const DeckEntry* e = find(key);
    if (e == nullptr) {
        return fallback;
    }
    if (const auto* i = std::get_if<long long>(&e->value)) {
        return *i;
    }
    return fallback;
}

double ParameterDeck::get_number(std::string_view key, double fallback) const {
    const DeckEntry* e = find(key);
    if (e == nullptr) {
        return fallback;
    }
    if (const auto* d = std::get_if<double>(&e->value)) {
        return *d;
    }
    if (const auto* i = std::get_if<long long>(&e->value)) {
        return static_cast<double>(*i);
    }
    return fallback;
}

std::string ParameterDeck::get_string(std::string_view key, std::string fallback) const {
    const DeckEntry* e = find(key);
    if (e == nullptr) {
        return fallback;
    }
    if (const auto* s = std::get_if<std::string>(&e->value)) {
        return *s;
    }
    return fallback;
}

std::string render_number(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("cannot render non-finite number");
    }
    if (value == 0.0) {
        return "0.0";
    }
    char buf[48];
    const double magnitude = std::fabs(value);
    if (magnitude >= 1e-4 && magnitude < 1e6) {
        std::snprintf(buf, sizeof buf, "%.12g", value);
        std::string s = buf;
        if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) {
            s += ".0";
        }
        return s;
    }
    std::snprintf(buf, sizeof buf, "%.11e", value);
    std::string s = buf;
    const auto epos = s.find('e');
    std::string mantissa = s.substr(0, epos);
    const int exponent = std::atoi(s.c_str() + epos + 1);
    const auto dot = mantissa.find('.');
    const auto last = mantissa.find_last_not_of('0');
    if (last > dot) {
        mantissa.erase(last + 1);
    } else {
        mantissa.erase(dot + 2); // keep one fractional digit: "1.0"
    }
    return mantissa + "e" + std::to_string(exponent);
}

std::string render_scalar(const Scalar& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>) {
                return v ? ".true." : ".false.";
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return render_number(v);
            } else {
                return v;
            }
        },
        value);
}

std::string render_deck(const ParameterDeck& deck) {
    std::ostringstream out;
    for (const auto& comment : deck.header_comments()) {
        out << "# " << comment << "\n";
    }
    for (const auto& entry : deck.entries()) {
        std::string line = entry.key;
        if (line.size() < kKeyColumns) {
            line.append(kKeyColumns - line.size(), ' ');
        } else {
            line += ' ';
        }
        line += "= " + render_scalar(entry.value);
        if (!entry.comment.empty()) {
            line += "  # " + entry.comment;
        }
        out << line << "\n";
    }
    return out.str();
}

ParameterDeck parse_deck(std::string_view text) {
    ParameterDeck deck;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') {
            raw.remove_suffix(1);
        }
        std::string_view line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            std::string_view body = line.substr(1);
            if (!body.empty() && body.front() == ' ') {
                body.remove_prefix(1);
            }
            deck.add_header_comment(std::string(body));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw DeckParseError(line_no, "expected KEY = VALUE, got '" + std::string(line) + "'");
        }
        const std::string key{trim(line.substr(0, eq))};
        if (!valid_key(key)) {
            throw DeckParseError(line_no, "invalid key '" + key + "'");
        }
        if (deck.find(key) != nullptr) {
            throw DeckParseError(line_no, "duplicate key '" + key + "'");
        }
        std::string_view rest = line.substr(eq + 1);
        std::string comment;
        const auto hash = rest.find('#');
        if (hash != std::string_view::npos) {
            std::string_view c = rest.substr(hash + 1);
            if (!c.empty() && c.front() == ' ') {
                c.remove_prefix(1);
            }
            comment = std::string(c);
            rest = rest.substr(0, hash);
        }
        deck.set(key, classify_value(trim(rest)), std::move(comment));
    }
    return deck;
}

} // namespace smcp
