#include "isolab/io.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include "isolab/errors.hpp"

namespace isolab {

namespace {

constexpr std::string_view kGraph6Header = ">>graph6<<";
constexpr unsigned char kGraph6Bias = 63;

bool is_graph6_byte(unsigned char c) { return c >= 63 && c <= 126; }

[[noreturn]] void graph6_error(const std::string& what, std::size_t offset) {
    throw ParseError("graph6: " + what + " at byte " + std::to_string(offset), offset);
}

}  // namespace

Graph parse_graph6(std::string_view text) {
    std::size_t base = 0;
    if (text.starts_with(kGraph6Header)) {
        text.remove_prefix(kGraph6Header.size());
        base = kGraph6Header.size();
    }
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    if (text.empty()) graph6_error("empty input", base);

    for (std::size_t i = 0; i < text.size(); ++i) {
        if (!is_graph6_byte(static_cast<unsigned char>(text[i]))) {
            graph6_error("byte out of range", base + i);
        }
    }

    auto byte = [&](std::size_t i) { return static_cast<unsigned>(text[i]) - kGraph6Bias; };

    std::size_t n = 0;
    std::size_t pos = 0;
    if (text[0] != '~') {
        n = byte(0);
        pos = 1;
    } else if (text.size() >= 2 && text[1] == '~') {
        if (text.size() < 8) graph6_error("truncated length prefix", base + text.size());
        for (std::size_t i = 2; i < 8; ++i) n = (n << 6) | byte(i);
        pos = 8;
    } else {
        if (text.size() < 4) graph6_error("truncated length prefix", base + text.size());
        for (std::size_t i = 1; i < 4; ++i) n = (n << 6) | byte(i);
        pos = 4;
    }
    if (n > kGraph6MaxNodes) graph6_error("node count " + std::to_string(n) + " unsupported", base);

    const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    const std::size_t body = (bits + 5) / 6;
    if (text.size() - pos != body) {
        graph6_error("expected " + std::to_string(body) + " adjacency bytes, found " +
                         std::to_string(text.size() - pos),
                     base + pos);
    }

    std::vector<Edge> edges;
    std::size_t k = 0;
    for (NodeId j = 1; j < n; ++j) {
        for (NodeId i = 0; i < j; ++i, ++k) {
            const unsigned chunk = byte(pos + k / 6);
            if ((chunk >> (5 - k % 6)) & 1U) edges.push_back({i, j});
        }
    }
    if (bits % 6 != 0) {
        const unsigned last = byte(text.size() - 1);
        const unsigned pad_mask = (1U << (6 - bits % 6)) - 1;
        if (last & pad_mask) graph6_error("non-zero padding bits", base + text.size() - 1);
    }
    return Graph(n, std::move(edges));
}

std::string write_graph6(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n > kGraph6MaxNodes) {
        throw ResourceError("graph6: node count " + std::to_string(n) + " exceeds " +
                            std::to_string(kGraph6MaxNodes));
    }
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(n + kGraph6Bias));
    } else {
        out.push_back('~');
        for (int shift = 12; shift >= 0; shift -= 6) {
            out.push_back(static_cast<char>(((n >> shift) & 63U) + kGraph6Bias));
        }
    }
    const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
    std::vector<unsigned char> packed((bits + 5) / 6, 0);
    std::size_t k = 0;
    for (NodeId j = 1; j < n; ++j) {
        for (NodeId i = 0; i < j; ++i, ++k) {
            if (g.has_edge(i, j)) packed[k / 6] |= static_cast<unsigned char>(1U << (5 - k % 6));
        }
    }
    for (unsigned char c : packed) out.push_back(static_cast<char>(c + kGraph6Bias));
    return out;
}

namespace {

[[noreturn]] void line_error(const std::string& what, std::size_t line) {
    throw ParseError("line " + std::to_string(line) + ": " + what, line);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

bool all_digits(std::string_view token) {
    if (token.empty()) return false;
    for (char c : token) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

std::size_t parse_index(std::string_view token, std::size_t line) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        line_error("expected unsigned integer, got '" + std::string(token) + "'", line);
    }
    return value;
}

double parse_real(std::string_view token, std::size_t line) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        line_error("expected real number, got '" + std::string(token) + "'", line);
    }
    if (!std::isfinite(value)) line_error("non-finite feature '" + std::string(token) + "'", line);
    return value;
}

bool is_blank(std::string_view line) { return split_tokens(line).empty(); }

void append_real(std::string& out, double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    std::string_view s(buf, static_cast<std::size_t>(ptr - buf));
    out += s;
    if (s.find_first_of(".e") == std::string_view::npos) out += ".0";
}

}  // namespace

Graph parse_edge_list(std::string_view text, std::size_t first_line) {
    auto lines = split_lines(text);
    while (!lines.empty() && is_blank(lines.back())) lines.pop_back();
    if (lines.empty()) throw ParseError("line " + std::to_string(first_line) + ": missing header", first_line);

    auto header = split_tokens(lines[0]);
    if (header.size() != 2) line_error("header must be 'n d'", first_line);
    const std::size_t n = parse_index(header[0], first_line);
    const std::size_t d = parse_index(header[1], first_line);
    if (d == 0) line_error("feature width must be at least 1", first_line);

    std::vector<Edge> edges;
    std::size_t i = 1;
    for (; i < lines.size(); ++i) {
        const std::size_t lineno = first_line + i;
        auto tokens = split_tokens(lines[i]);
        if (tokens.empty()) line_error("blank line inside graph block", lineno);
        if (tokens.size() != 2 || !all_digits(tokens[0]) || !all_digits(tokens[1])) break;
        const std::size_t u = parse_index(tokens[0], lineno);
        const std::size_t v = parse_index(tokens[1], lineno);
        for (std::size_t x : {u, v}) {
            if (x >= n) line_error("index " + std::to_string(x) + " out of range", lineno);
        }
        if (u == v) line_error("self-loop at node " + std::to_string(u), lineno);
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }

    std::vector<double> features;
    if (i == lines.size()) {
        features.assign(n * d, 1.0);
    } else {
        if (lines.size() - i != n) {
            line_error("expected " + std::to_string(n) + " feature rows, found " +
                           std::to_string(lines.size() - i),
                       first_line + i);
        }
        features.reserve(n * d);
        for (; i < lines.size(); ++i) {
            const std::size_t lineno = first_line + i;
            auto tokens = split_tokens(lines[i]);
            if (tokens.size() != d) {
                line_error("feature row has " + std::to_string(tokens.size()) +
                               " values, expected " + std::to_string(d),
                           lineno);
            }
            for (auto t : tokens) features.push_back(parse_real(t, lineno));
        }
    }
    try {
        return Graph(n, std::move(edges), std::move(features), d);
    } catch (const ContractError& e) {
        line_error(e.what(), first_line);
    }
}

std::string write_edge_list(const Graph& g) {
    std::string out = std::to_string(g.node_count()) + " " + std::to_string(g.feature_width()) + "\n";
    for (const auto& e : g.edges()) {
        out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
        bool first = true;
        for (double x : g.feature_row(v)) {
            if (!first) out += ' ';
            append_real(out, x);
            first = false;
        }
        out += '\n';
    }
    return out;
}

std::vector<Graph> parse_edge_list_file(std::string_view text) {
    std::vector<Graph> graphs;
    auto lines = split_lines(text);
    std::size_t i = 0;
    while (i < lines.size()) {
        if (is_blank(lines[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < lines.size() && !is_blank(lines[j])) ++j;
        // Lines are views into `text`, so the block is a contiguous slice.
        const char* begin = lines[i].data();
        const char* end = lines[j - 1].data() + lines[j - 1].size();
        graphs.push_back(parse_edge_list(std::string_view(begin, static_cast<std::size_t>(end - begin)), i + 1));
        i = j;
    }
    return graphs;
}

}  // namespace isolab
