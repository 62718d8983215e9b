#pragma once

#include "retro/circuit.hpp"
#include "retro/error.hpp"

#include <charconv>
#include <string>
#include <string_view>

namespace retro::detail {

// Minimal tokenizer for the line-oriented circuit formats.
struct LineLexer {
    std::string_view line;
    size_t pos = 0;
    size_t line_no = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("parse error, line " + std::to_string(line_no) + ": " + why);
    }
    void skip_ws() {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= line.size();
    }
    std::string_view word() {
        skip_ws();
        size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
        if (start == pos) fail("expected a token");
        return line.substr(start, pos - start);
    }
    uint32_t number() {
        std::string_view w = word();
        uint32_t v = 0;
        auto [next, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
        if (ec != std::errc() || next != w.data() + w.size()) {
            fail("expected a number, got \"" + std::string(w) + "\"");
        }
        return v;
    }
    // "lo..hi" (inclusive) or "none"; hi < lo also reads as empty.
    Span span() {
        std::string_view w = word();
        if (w == "none") return Span{};
        size_t dots = w.find("..");
        if (dots == std::string_view::npos) {
            fail("expected lo..hi or none, got \"" + std::string(w) + "\"");
        }
        uint32_t lo = 0, hi = 0;
        auto [p1, e1] = std::from_chars(w.data(), w.data() + dots, lo);
        auto [p2, e2] = std::from_chars(w.data() + dots + 2, w.data() + w.size(), hi);
        if (e1 != std::errc() || p1 != w.data() + dots || e2 != std::errc() ||
            p2 != w.data() + w.size()) {
            fail("malformed span \"" + std::string(w) + "\"");
        }
        if (hi < lo) return Span{};
        return Span{lo, hi - lo + 1};
    }
};

// Invokes fn(lexer) for every non-empty line after comment stripping.
template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    size_t line_no = 0;
    size_t cursor = 0;
    while (cursor <= text.size()) {
        size_t eol = text.find('\n', cursor);
        std::string_view line = text.substr(
            cursor, eol == std::string_view::npos ? text.size() - cursor : eol - cursor);
        cursor = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        LineLexer lex{line, 0, line_no};
        if (lex.at_end()) continue;
        fn(lex);
    }
}

} // namespace retro::detail
