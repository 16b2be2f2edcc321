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

#include "ktl/transducer.hpp"

#include <charconv>
#include <sstream>

#include "text.hpp"

namespace ktl {

namespace {

unsigned parse_uint(const Token& tok, std::string_view digits, std::size_t offset = 0)
{
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
        throw ParseError(tok.line, tok.column + offset, "expected an unsigned integer");
    return value;
}

std::vector<std::string> symbol_list(const std::vector<Token>& line)
{
    std::vector<std::string> out;
    for (std::size_t i = 1; i < line.size(); ++i) {
        const auto& tok = line[i];
        if (!is_symbol(tok.text)) throw ParseError(tok.line, tok.column, "invalid symbol '" + std::string(tok.text) + "'");
        for (const auto& s : out)
            if (s == tok.text) throw ParseError(tok.line, tok.column, "duplicate symbol '" + s + "'");
        out.emplace_back(tok.text);
    }
    if (out.empty()) throw ParseError(line[0].line, line[0].column, "empty alphabet");
    return out;
}

unsigned index_of(const std::vector<std::string>& alphabet, const Token& tok)
{
    for (unsigned i = 0; i < alphabet.size(); ++i)
        if (alphabet[i] == tok.text) return i;
    throw ParseError(tok.line, tok.column, "unknown symbol '" + std::string(tok.text) + "'");
}

}  // namespace

TransducerDocument parse_transducer(std::string_view text)
{
    auto lines = tokenize_lines(text);
    if (lines.empty()) throw ParseError(1, 1, "empty transducer document");
    const auto& header = lines.front();
    if (header[0].text != "transducer" || header.size() != 2 || header[1].text.substr(0, 2) != "k=")
        throw ParseError(header[0].line, header[0].column, "expected 'transducer k=<uint>'");
    unsigned k = parse_uint(header[1], header[1].text.substr(2), 2);
    if (k == 0) throw ParseError(header[1].line, header[1].column, "k must be positive");

    TransducerDocument doc;
    std::optional<State> init;
    struct Pending {
        std::vector<Token> line;
    };
    std::vector<Pending> body;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& line = lines[i];
        auto head = line[0].text;
        if (head == "inputs" || head == "outputs") {
            auto& slot = head == "inputs" ? doc.inputs : doc.outputs;
            if (!slot.empty()) throw ParseError(line[0].line, line[0].column, "duplicate '" + std::string(head) + "' line");
            slot = symbol_list(line);
        } else if (head == "init") {
            if (init) throw ParseError(line[0].line, line[0].column, "duplicate 'init' line");
            if (line.size() != 2) throw ParseError(line[0].line, line[0].column, "expected 'init <state>'");
            init = parse_uint(line[1], line[1].text);
        } else if (head == "label" || head == "trans") {
            body.push_back({line});
        } else {
            throw ParseError(line[0].line, line[0].column, "unknown directive '" + std::string(head) + "'");
        }
    }
    if (doc.inputs.empty() || doc.outputs.empty()) throw ParseError(1, 1, "missing 'inputs' or 'outputs' line");
    if (!init) throw ParseError(1, 1, "missing 'init' line");

    Transducer t(k, static_cast<unsigned>(doc.outputs.size()), static_cast<unsigned>(doc.inputs.size()));
    auto state = [&](const Token& tok) {
        State s = parse_uint(tok, tok.text);
        if (s >= k) throw ParseError(tok.line, tok.column, "state " + std::to_string(s) + " out of range");
        return s;
    };
    std::vector<char> labeled(k, 0);
    std::vector<char> defined(static_cast<std::size_t>(k) * doc.inputs.size(), 0);
    for (const auto& [line] : body) {
        if (line[0].text == "label") {
            if (line.size() != 3) throw ParseError(line[0].line, line[0].column, "expected 'label <state> <sym>'");
            State m = state(line[1]);
            if (labeled[m]) throw ParseError(line[0].line, line[0].column, "duplicate label for state " + std::to_string(m));
            labeled[m] = 1;
            t.set_label(m, index_of(doc.outputs, line[2]));
        } else {
            if (line.size() != 4) throw ParseError(line[0].line, line[0].column, "expected 'trans <state> <insym> <state>'");
            State m = state(line[1]);
            Action b = index_of(doc.inputs, line[2]);
            auto& slot = defined[m * doc.inputs.size() + b];
            if (slot) throw ParseError(line[0].line, line[0].column, "duplicate transition");
            slot = 1;
            t.set_next(m, b, state(line[3]));
        }
    }
    if (*init >= k) throw ParseError(1, 1, "initial state out of range");
    t.set_initial(*init);
    for (State m = 0; m < k; ++m) {
        if (!labeled[m]) throw ParseError(1, 1, "state " + std::to_string(m) + " has no label");
        for (std::size_t b = 0; b < doc.inputs.size(); ++b)
            if (!defined[m * doc.inputs.size() + b])
                throw ParseError(1, 1, "missing transition for state " + std::to_string(m) + " on '" + doc.inputs[b] + "'");
    }
    doc.machine = std::move(t);
    return doc;
}

std::string serialize_transducer(const Transducer& t, std::span<const std::string> inputs, std::span<const std::string> outputs)
{
    std::ostringstream out;
    out << "transducer k=" << t.states() << "\ninputs";
    for (const auto& s : inputs) out << ' ' << s;
    out << "\noutputs";
    for (const auto& s : outputs) out << ' ' << s;
    out << "\ninit " << t.initial() << '\n';
    for (State m = 0; m < t.states(); ++m) out << "label " << m << ' ' << outputs[t.label(m)] << '\n';
    for (State m = 0; m < t.states(); ++m)
        for (Action b = 0; b < t.input_size(); ++b) out << "trans " << m << ' ' << inputs[b] << ' ' << t.next(m, b) << '\n';
    return out.str();
}

std::string serialize_transducer(const Transducer& t, const GameGraph& g)
{
    return serialize_transducer(t, g.alphabet(Player::Two), g.alphabet(Player::One));
}

Transducer bind_to_game(const TransducerDocument& doc, const GameGraph& g)
{
    const auto& sigma = g.alphabet(Player::One);
    const auto& gamma = g.alphabet(Player::Two);
    if (doc.inputs.size() != gamma.size())
        throw std::invalid_argument("transducer inputs must be exactly the game's alphabet2");
    std::vector<Action> in_map(doc.inputs.size());
    for (std::size_t i = 0; i < doc.inputs.size(); ++i) {
        auto b = g.find_action(Player::Two, doc.inputs[i]);
        if (!b) throw std::invalid_argument("transducer input '" + doc.inputs[i] + "' is not in the game's alphabet2");
        in_map[i] = *b;
    }
    std::vector<Action> out_map(doc.outputs.size());
    for (std::size_t i = 0; i < doc.outputs.size(); ++i) {
        auto a = g.find_action(Player::One, doc.outputs[i]);
        if (!a) throw std::invalid_argument("transducer output '" + doc.outputs[i] + "' is not in the game's alphabet1");
        out_map[i] = *a;
    }
    const auto& src = doc.machine;
    Transducer t(src.states(), static_cast<unsigned>(sigma.size()), static_cast<unsigned>(gamma.size()));
    t.set_initial(src.initial());
    for (State m = 0; m < src.states(); ++m) {
        t.set_label(m, out_map[src.label(m)]);
        for (Action b = 0; b < src.input_size(); ++b) t.set_next(m, in_map[b], src.next(m, b));
    }
    return t;
}

}  // namespace ktl
