// Copyright 2026 The fliess-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Line-oriented text format for series:
//
//   # alphabet m=1 components l=1 trunc L=3
//   3/2 x0x1
//   -1 e
//   [2] 0.25 x1        (component prefix, only when l > 1)
//
// Other lines starting with '#' are comments. Without a header the alphabet
// defaults to {x0, x1}, the component count to the largest [j] seen and the
// truncation to the longest word seen.

#pragma once

#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fliess/error.hpp"
#include "fliess/scalar.hpp"
#include "fliess/series.hpp"

namespace fliess {

struct SeriesHeader {
    int m = 1;
    int components = 1;
    int trunc = 0;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::optional<SeriesHeader> match_header(const std::string& line) {
    static const std::regex re(R"(^#\s*alphabet\s+m=(\d+)\s+components\s+l=(\d+)\s+trunc\s+L=(\d+)\s*$)");
    std::smatch mt;
    if (!std::regex_match(line, mt, re)) return std::nullopt;
    return SeriesHeader{std::stoi(mt[1]), std::stoi(mt[2]), std::stoi(mt[3])};
}

}  // namespace detail

/// Parses the series text format. `default_m` is used when no header is present.
template <class S>
Series<S> parse_series(std::string_view text, int default_m = 1) {
    struct Entry {
        int line;
        int comp;
        S value;
        Word word;
    };
    std::optional<SeriesHeader> header;
    std::vector<Entry> entries;
    int max_comp = 1, max_len = 0, lineno = 0;

    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
        ++lineno;
        std::string line(detail::trim(raw));
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (auto h = detail::match_header(line)) {
                if (header) throw SyntaxError("duplicate header", lineno);
                if (!entries.empty()) throw SyntaxError("header after coefficient lines", lineno);
                if (h->m > kMaxLetter) throw SyntaxError("alphabet index too large", lineno);
                if (h->components < 1) throw SyntaxError("components must be >= 1", lineno);
                header = h;
            }
            continue;
        }
        auto tok = detail::split_ws(line);
        int comp = 1;
        if (!tok.empty() && tok.front().size() >= 3 && tok.front().front() == '[' && tok.front().back() == ']') {
            std::string idx = tok.front().substr(1, tok.front().size() - 2);
            if (!detail::all_digits(idx) || idx.size() > 3) throw SyntaxError("malformed component prefix", lineno);
            comp = std::stoi(idx);
            if (comp < 1) throw SyntaxError("component index must be >= 1", lineno);
            tok.erase(tok.begin());
        }
        if (tok.size() != 2) throw SyntaxError("expected '<coeff> <word>'", lineno);
        Entry e{lineno, comp, S(0), Word{}};
        try {
            e.value = parse_scalar<S>(tok[0]);
            e.word = Word::parse(tok[1]);
        } catch (const SyntaxError& err) {
            throw SyntaxError(err.what(), lineno);
        }
        max_comp = std::max(max_comp, comp);
        max_len = std::max(max_len, e.word.size());
        entries.push_back(std::move(e));
    }

    SeriesHeader h = header.value_or(SeriesHeader{default_m, max_comp, max_len});
    Series<S> out(h.m, h.components, h.trunc);
    std::vector<std::map<Word, int>> seen(static_cast<std::size_t>(h.components));
    for (const Entry& e : entries) {
        if (e.comp > h.components) throw SyntaxError("component index exceeds l", e.line);
        if (e.word.max_letter() > h.m)
            throw SyntaxError("word " + e.word.str() + " outside alphabet {x0..x" + std::to_string(h.m) + "}", e.line);
        if (e.word.size() > h.trunc) throw SyntaxError("word " + e.word.str() + " longer than truncation", e.line);
        auto& s = seen[static_cast<std::size_t>(e.comp - 1)];
        if (auto [it, fresh] = s.emplace(e.word, e.line); !fresh)
            throw DuplicateWordError("line " + std::to_string(e.line) + ": word " + e.word.str() +
                                     " already given on line " + std::to_string(it->second));
        out.set(e.word, e.value, e.comp - 1);
    }
    return out;
}

template <class S>
std::string serialize_series(const Series<S>& c) {
    std::ostringstream out;
    out << "# alphabet m=" << c.alphabet_max() << " components l=" << c.components() << " trunc L=" << c.trunc()
        << '\n';
    for (int j = 0; j < c.components(); ++j)
        for (const auto& [w, v] : c.terms(j)) {
            if (c.components() > 1) out << '[' << (j + 1) << "] ";
            out << format_scalar(v) << ' ' << w.str() << '\n';
        }
    return out.str();
}

}  // namespace fliess
