/*
 * Copyright 2026 The ktlive Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KTL_SRC_TEXT_HPP
#define KTL_SRC_TEXT_HPP

#include <string_view>
#include <vector>

namespace ktl {

struct Token {
    std::string_view text;
    std::size_t line;
    std::size_t column;
};

/// Whitespace-separated tokens per non-empty line; '#' starts a comment.
inline std::vector<std::vector<Token>> tokenize_lines(std::string_view text)
{
    std::vector<std::vector<Token>> lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        ++line_no;
        auto line = text.substr(pos, nl - pos);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::vector<Token> tokens;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
            if (i > start) tokens.push_back(Token{line.substr(start, i - start), line_no, start + 1});
        }
        if (!tokens.empty()) lines.push_back(std::move(tokens));
        if (nl == text.size()) break;
        pos = nl + 1;
    }
    return lines;
}

/// `[A-Za-z0-9_~!]+`
inline bool is_symbol(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '~' || c == '!';
        if (!ok) return false;
    }
    return true;
}

}  // namespace ktl

#endif
